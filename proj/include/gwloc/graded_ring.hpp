#pragma once

#include "gwloc/rational_function.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gwloc {

class RingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RingGenerator {
  std::string name;
  int degree = 1;  // complex degree, > 0
};

/// Sparse expansion of a product of basis monomials in the monomial basis.
using BasisExpansion = std::vector<std::pair<int, Rational>>;

/// Truncated graded commutative ring presented by a finite monomial basis,
/// a multiplication table and an integration functional supported in the top
/// degree. Immutable after construction; shared freely between threads.
class GradedRing {
public:
  /// Validates and builds a ring. `table` gives, for pairs (i, j) of basis
  /// indices, the expansion of basis[i]*basis[j]; pairs whose degree sum
  /// exceeds the top degree may be omitted (the product is zero), and
  /// products with the unit are synthesized when absent. Rejects tables that
  /// are non-commutative, break the grading, violate the unit law or fail
  /// associativity on basis triples.
  static std::shared_ptr<const GradedRing> from_presentation(
      std::vector<RingGenerator> generators, std::vector<std::vector<int>> basis,
      std::vector<std::tuple<int, int, BasisExpansion>> table, int top_degree,
      std::vector<Rational> integration, std::string name = "");

  // H*(point).
  static std::shared_ptr<const GradedRing> point_ring();
  // H*(P^n) = Q[h]/(h^{n+1}).
  static std::shared_ptr<const GradedRing> projective_ring(int n, const std::string& gen = "h");
  // Tensor product (Kunneth basis, degrees add, integration multiplies).
  static std::shared_ptr<const GradedRing> tensor(const GradedRing& a, const GradedRing& b,
                                                  const std::string& name = "");

  int basis_size() const { return static_cast<int>(basis_.size()); }
  int unit_index() const { return unit_; }
  int top_degree() const { return top_; }
  int degree(int i) const { return degree_[i]; }
  const std::vector<std::vector<int>>& basis() const { return basis_; }
  const std::vector<RingGenerator>& generators() const { return gens_; }
  const Rational& integration_coeff(int i) const { return integration_[i]; }
  const BasisExpansion& mul_basis(int i, int j) const { return table_[i][j]; }
  std::optional<int> find_monomial(const std::vector<int>& exps) const;
  std::string monomial_name(int i) const;
  const std::string& name() const { return name_; }

  bool structurally_equal(const GradedRing& o) const;

private:
  GradedRing() = default;

  std::vector<RingGenerator> gens_;
  std::vector<std::vector<int>> basis_;
  std::vector<int> degree_;
  std::vector<std::vector<BasisExpansion>> table_;
  std::vector<Rational> integration_;
  std::map<std::vector<int>, int> index_;
  int top_ = 0;
  int unit_ = 0;
  std::string name_;
};

using RingPtr = std::shared_ptr<const GradedRing>;

/// Element of H*(X_u) with coefficients in Q(t); sparse over the monomial
/// basis, zero coefficients absent.
class RingClass {
public:
  explicit RingClass(RingPtr ring) : ring_(std::move(ring)) {}

  static RingClass zero(RingPtr ring) { return RingClass(std::move(ring)); }
  static RingClass unit(RingPtr ring);
  static RingClass scalar(RingPtr ring, RF value);
  static RingClass basis_element(RingPtr ring, int index);

  const RingPtr& ring() const { return ring_; }
  bool is_zero() const { return c_.empty(); }
  RF coeff(int i) const;
  const std::map<int, RF>& coeffs() const { return c_; }
  void set_coeff(int i, RF v);

  RingClass operator-() const;
  friend RingClass operator+(const RingClass& a, const RingClass& b);
  friend RingClass operator-(const RingClass& a, const RingClass& b);
  /// Cup product through the multiplication table (degree-truncating).
  friend RingClass operator*(const RingClass& a, const RingClass& b);
  RingClass& operator+=(const RingClass& o) { return *this = *this + o; }
  RingClass& operator-=(const RingClass& o) { return *this = *this - o; }
  RingClass& operator*=(const RingClass& o) { return *this = *this * o; }
  RingClass scaled(const RF& f) const;

  friend bool operator==(const RingClass& a, const RingClass& b);
  friend bool operator!=(const RingClass& a, const RingClass& b) { return !(a == b); }

  /// Part of pure degree d.
  RingClass degree_part(int d) const;
  /// The nilpotent part (everything above degree 0).
  RingClass positive_part() const { return *this - unit_scalar_class(); }

  /// Exact inverse of a unit: 1/u * sum (-n/u)^k with n the nilpotent part.
  /// Requires a nonzero unit-monomial coefficient.
  RingClass invert_unit() const;

  /// Integration functional (top-degree part only).
  RF integrate() const;

  /// Raise to a nonnegative integer power.
  RingClass pow(int k) const;

  std::string pretty() const;
  /// Deterministic serialization used for hashing/canonical keys.
  std::string canonical_key() const;

private:
  RingClass unit_scalar_class() const;

  RingPtr ring_;
  std::map<int, RF> c_;
};

/// Kunneth pairs (e_i, e^i) with sum_i integrate(e_i * x) e^i = x for all x.
/// Fails with "invalid component presentation" when the integration pairing
/// is degenerate.
std::vector<std::pair<RingClass, RingClass>> diagonal_decomposition(const RingPtr& ring);

}  // namespace gwloc
