#pragma once

#include "gwloc/action_spec.hpp"
#include "gwloc/triples.hpp"

#include <string>
#include <vector>

namespace gwloc {

/// Number of degree-d rational plane curves through 3d-1 general points,
/// by the classical recursion (independent of the localization engine).
Rational kontsevich_nd(long d);

/// Independent isolated-edge Euler class: the exact moving-weight multiset of
/// the d-fold cover of the coordinate line through fixed points i and j of
/// P^r with the given weights. Throws on repeated weights, d < 1, or a
/// zero-weight section (non-isolated data).
RF classical_edge_euler(const std::vector<long>& weights, int i, int j, long d);

struct OrbitData {
  long m_p = 0;    // min supported weight
  long M_p = 0;    // max supported weight
  bool fixed = false;
  long stab = 0;   // gcd of pairwise differences (0 when fixed)
  long degree = 0; // M(p) - m(p)
};
/// Direct parametrization of the orbit of a point of P^r with the given
/// support (indices of nonzero coordinates).
OrbitData orbit_parametrize(const std::vector<long>& weights, const std::vector<int>& support);

/// Exhaustive generate-and-filter enumeration of minimal triples (independent
/// logic; canonical forms are used only as the comparison metric).
std::vector<DecoratedTriple> brute_force_triples(const ActionSpec& spec,
                                                 const std::vector<Rational>& beta, int n,
                                                 int e_max);

struct OracleReport {
  std::string name;
  std::string inputs;
  std::string oracle_value;
  std::string engine_value;
  bool exact_equal = false;
};

/// The full oracle suite (edge-formula equivalence, enumeration equivalence,
/// orbit parametrization, psi-integral recursion, Kontsevich pins, and the
/// quick pipeline identities). Every comparison is exact.
std::vector<OracleReport> run_selftest();

}  // namespace gwloc
