#pragma once

#include "gwloc/edge_contrib.hpp"
#include "gwloc/triples.hpp"

#include <nlohmann/json_fwd.hpp>

namespace gwloc {

class AssemblyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Insertion {
  std::string name;
  int descendant = 0;  // exponent of the psi class at this marked point
};

/// int_{M_0,n} psi_1^{a_1}...psi_n^{a_n}: the multinomial (n-3)!/prod a_i!
/// when sum a_i = n-3, else 0. Requires n >= 3.
Rational psi_integral(const std::vector<int>& exponents);

/// Localized vertex factor. items = (class on the component, psi power) for
/// every special point; flag_count = number of incident tree edges. For
/// point-like data (beta_v = 0, >= 3 special points):
/// multinomial * int_{X_c}(prod classes * e(N_c)^{flag_count-1});
/// degenerate vertices integrate the bare product; beta_v != 0 consults the
/// user correlator table and fails with "vertex GW data required" otherwise.
RF vertex_correlator(const ActionSpec& spec, int component, const std::vector<Rational>& beta_v,
                     const std::vector<std::pair<RingClass, int>>& items, int flag_count);

/// Equivariant Euler class of the component's normal bundle (restriction of
/// the ambient moving directions to a constant vertex).
RingClass component_normal_euler(const ActionSpec& spec, int component);

struct GraphContribution {
  RF value;                       // contribution including the 1/|A| divisor
  AutomorphismData automorphisms;
  std::vector<std::pair<std::string, std::string>> breakdown;  // label -> pretty value
};

/// Contribution of one labeled minimal triple with the given n insertions
/// (label i sits at the vertex carrying mark i).
GraphContribution graph_contribution(const ActionSpec& spec, const DecoratedTriple& triple,
                                     const std::vector<Insertion>& insertions);

struct InvariantResult {
  bool dimension_matched = false;
  Rational vdim;                 // dim X + c1.beta + n - 3
  Rational insertion_degree;     // sum (codim + descendant)
  RF total;                      // assembled equivariant total
  bool t_independent = false;    // total is a constant rational function
  Rational value;                // the constant, when t_independent
  long skeletons = 0;            // decorated trees evaluated
  std::vector<std::pair<std::string, RF>> breakdown;  // per-skeleton totals
};

/// Sum of all graph contributions for <insertions>_beta. Exact; asserts
/// nothing but records t-(in)dependence in the result. jobs bounds worker
/// threads (deterministic for any value).
InvariantResult gw_invariant(const ActionSpec& spec, const std::vector<Rational>& beta,
                             const std::vector<Insertion>& insertions, int jobs = 1,
                             bool want_breakdown = false);

}  // namespace gwloc
