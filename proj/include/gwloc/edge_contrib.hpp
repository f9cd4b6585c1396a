#pragma once

#include "gwloc/action_spec.hpp"
#include "gwloc/local_class.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gwloc {

class EdgeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Weight piece seen by an edge; Chern classes already pulled back to the
/// carrier ring.
struct EdgeBundlePiece {
  int weight = 1;
  std::vector<RingClass> chern;
  int rank() const { return static_cast<int>(chern.size()); }
};

/// Middle-wall data (the bundles K^±_{w,j} and line classes xi_j^± = c1(L_j^±)
/// are inputs, never derived; vacuous in the isolated regime).
struct EdgeWallData {
  std::vector<EdgeBundlePiece> k_plus, k_minus;
  RingClass xi_plus, xi_minus;
  EdgeWallData(RingPtr ring) : xi_plus(RingClass::zero(ring)), xi_minus(RingClass::zero(ring)) {}
};

/// Everything attached to one edge moduli space M_{omega,2}.
struct EdgeInputs {
  RingPtr carrier;
  long k = 1;          // beta_omega = k * [O]
  long stab = 1;       // generic stabilizer s_e of the primitive orbit
  Rational span;       // S = p(mu_sink - mu_source) > 0
  long cover_n = 1, cover_m = 1;  // k/s_e reduced: multiplicity vs the generic class

  std::vector<EdgeBundlePiece> source_plus;  // Q_w^+ at the source
  std::vector<EdgeBundlePiece> sink_minus;   // Q_w^- at the sink
  std::vector<EdgeWallData> walls;

  std::optional<RingClass> declared_fixed_class;
  RingClass psi1_value, psi2_value;  // psi classes on the carrier (usually 0)

  // Evaluation pullbacks ev_i^*: image of each basis element of the end
  // component's ring in the carrier ring.
  RingPtr source_ring, sink_ring;
  std::vector<RingClass> ev_source, ev_sink;

  int psi_bound = 0;

  EdgeInputs(RingPtr c)
      : carrier(c), psi1_value(RingClass::zero(c)), psi2_value(RingClass::zero(c)) {}

  /// Weight-step per twist index: gamma = S/k.
  Rational gamma() const { return span / Rational(k); }
  RingClass pull_source(const RingClass& cls_on_source) const;
  RingClass pull_sink(const RingClass& cls_on_sink) const;
  /// Signed tangent weight of the edge curve at an end, in units of t.
  Rational tangent_weight(bool at_source) const {
    Rational tau = span / Rational(k);
    return at_source ? tau : -tau;
  }
};

/// Build the inputs for a spec edge with cover multiple k. The carrier is the
/// point ring for isolated ends; for positive-dimensional ends it is the
/// shared component ring (the product-spec case) with identity evaluations.
EdgeInputs make_edge_inputs(const ActionSpec& spec, int edge_index, long k, int psi_bound);

/// One tagged summand of chi_{!=0}.
struct KSummand {
  int sign = +1;  // contributes e(...)^sign to the Euler class
  enum Kind { QPlusSource, QMinusSink, WallKPlus, WallKMinus } kind = QPlusSource;
  int piece = 0;  // index into the relevant piece list
  int weight = 1;
  long l = 0;
  int wall = -1;  // wall index for the wall kinds
  std::string twist;  // descriptor, e.g. "O(2*s0)" or "O(3*L+_1)"
};

struct KClassSum {
  std::vector<KSummand> items;
};

/// The complete tagged decomposition of the virtual normal bundle's K-class,
/// deterministic order (source pieces, sink pieces, walls; each by piece then
/// twist index). Throws EdgeError on a zero-weight section (non-generic
/// edge; wall/carrier data beyond the closed formula would be required).
KClassSum edge_kclass(const EdgeInputs& inputs);

/// Equivariant Euler class of one tagged summand.
LocalClass euler_of_summand(const EdgeInputs& inputs, const KSummand& s);

/// Closed-formula equivariant Euler class of the virtual normal bundle.
LocalClass edge_euler(const EdgeInputs& inputs);

/// Fixed virtual class of M_{omega,2}: the unit (fundamental) class on point
/// and matched-product carriers, or the declared datum; "declared" is
/// mandatory for fractional covers over positive-dimensional carriers.
struct FixedClassResult {
  RingClass value;
  std::string provenance;  // "isolated", "fundamental", "declared"
};
FixedClassResult edge_fixed_class(const EdgeInputs& inputs);

/// c_{omega,n1,n2}: alpha on the source component |-> class on the sink
/// component, via ev_2-pushforward through the carrier diagonal.
RingClass c_operator(const EdgeInputs& inputs, int n1, int n2, const RingClass& alpha);

/// Tangent delta of a weighted blow-up: [T_Ztilde] - [f^* T_Z] as a tagged
/// sum supported on the exceptional divisor.
struct BlowupSummand {
  int sign = +1;
  int rank = 0;
  int weight = 0;  // w of the piece, 0 for the O_E(E) term
  int twist = 0;   // j in O_E(-jE)
  std::string name;
};
struct BlowupDelta {
  std::vector<BlowupSummand> items;
  int rank() const { return 0; }  // pushforward from a divisor
  /// c1 = multiple * [E].
  Rational c1_multiple() const {
    Rational m(0);
    for (const auto& it : items) m += Rational(it.sign) * Rational(it.rank);
    return m;
  }
};
/// pieces: (weight, rank) of the normal-bundle decomposition N = sum Q_w.
BlowupDelta blowup_tangent_delta(const std::vector<std::pair<int, int>>& pieces);

}  // namespace gwloc
