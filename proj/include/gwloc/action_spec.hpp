#pragma once

#include "gwloc/graded_ring.hpp"

#include <map>
#include <string>
#include <vector>

namespace gwloc {

class SpecError : public std::runtime_error {
public:
  explicit SpecError(const std::string& msg) : std::runtime_error(msg), diagnostics_{msg} {}
  explicit SpecError(std::vector<std::string> diags)
      : std::runtime_error(join(diags)), diagnostics_(std::move(diags)) {}
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& d : v) {
      if (!s.empty()) s += "; ";
      s += d;
    }
    return s;
  }
  std::vector<std::string> diagnostics_;
};

/// One weight piece Q_w^± of the normal bundle of a fixed component.
struct WeightPiece {
  int sign = +1;                  // +1 for Q^+, -1 for Q^-
  int weight = 1;                 // w >= 1
  int rank = 0;
  std::vector<RingClass> chern;   // c_1..c_rank in the component's ring
};

struct FixedComponent {
  std::string id;
  int dim = 0;
  std::vector<Rational> mu;       // moment vector in Q^m
  RingPtr ring;
  std::vector<WeightPiece> normal;
  std::map<std::string, RingClass> restrictions;       // insertion name -> class
  std::vector<std::vector<Rational>> vertex_classes;   // admissible H2 lattice generators

  bool is_point() const { return dim == 0; }
};

struct GraphEdge {
  int from = 0;                   // component index (source, lower moment)
  int to = 0;                     // component index (sink)
  long stab = 1;                  // generic stabilizer order s_e
  std::vector<Rational> orbit_class;  // [O] = (mu_to - mu_from) / s_e
};

struct InsertionClass {
  std::string name;
  int codim = 0;
};

struct MomentGraph {
  std::vector<int> vertices;      // all component indices
  std::vector<GraphEdge> edges;
};

/// Full description of (X, C*-action) as the engine consumes it.
struct ActionSpec {
  int dim_x = 0;
  int h2_rank = 1;
  std::vector<Rational> c1_pairing;    // beta -> int_beta c1(TX), as a covector
  std::vector<Rational> projection;    // p : Q^m -> Q with p(mu) the scalar moment
  std::vector<FixedComponent> components;
  std::vector<GraphEdge> edges;
  std::vector<InsertionClass> insertions;
  /// Vertex GW data for beta_v != 0 (canonical key -> value); see assembly.
  std::map<std::string, RF> correlators;
  /// Largest vertex-side psi power the correlator table answers for.
  int correlator_psi_cap = 0;

  int component_index(const std::string& id) const;
  const InsertionClass& insertion(const std::string& name) const;
  Rational proj(const std::vector<Rational>& v) const;       // p(v)
  Rational c1_dot(const std::vector<Rational>& beta) const;  // int_beta c1

  /// Checks every structural invariant; throws SpecError carrying the full
  /// list of diagnostics on failure.
  void validate() const;
};

/// The oriented graph of the action; validates the partial order and the
/// orbit-class identity [O] = (v - u)/s_e on every edge.
MomentGraph build_moment_graph(const ActionSpec& spec);

/// Decorated invariant curve class (element of Omega): a carrier in V or E
/// together with a class.
struct EdgeDatum {
  bool edge_carrier = false;
  int carrier = 0;                // component index or edge index
  std::vector<Rational> beta;
  long k = 0;                     // edge carriers: beta = k [O]
  long cover_n = 1, cover_m = 1;  // k/s_e reduced: multiplicity vs the generic span class
};

/// All omega = (c, beta') compatible with beta: edge carriers with
/// k [O] <= beta componentwise (k <= bound) and vertex carriers from the
/// declared lattices.
std::vector<EdgeDatum> invariant_curve_classes(const ActionSpec& spec,
                                               const std::vector<Rational>& beta, long bound);

/// Degree of the extended orbit map (Remark: M(p) - m(p)).
long orbit_degree(long m_p, long M_p);
/// Orbit closure class (mu_v - mu_u)/stab.
std::vector<Rational> orbit_class(const std::vector<Rational>& u, const std::vector<Rational>& v,
                                  long stab);

// vector helpers shared by enumeration
bool leq_componentwise(const std::vector<Rational>& a, const std::vector<Rational>& b);
std::vector<Rational> vec_sub(const std::vector<Rational>& a, const std::vector<Rational>& b);
std::vector<Rational> vec_add(const std::vector<Rational>& a, const std::vector<Rational>& b);
std::vector<Rational> vec_scale(const Rational& c, const std::vector<Rational>& v);
bool is_zero_vec(const std::vector<Rational>& v);
std::string vec_str(const std::vector<Rational>& v);

}  // namespace gwloc
