#include "gwloc/edge_contrib.hpp"

#include <numeric>

namespace gwloc {

RingClass EdgeInputs::pull_source(const RingClass& cls) const {
  RingClass out = RingClass::zero(carrier);
  for (const auto& [i, v] : cls.coeffs()) out += ev_source[i].scaled(v);
  return out;
}

RingClass EdgeInputs::pull_sink(const RingClass& cls) const {
  RingClass out = RingClass::zero(carrier);
  for (const auto& [i, v] : cls.coeffs()) out += ev_sink[i].scaled(v);
  return out;
}

EdgeInputs make_edge_inputs(const ActionSpec& spec, int edge_index, long k, int psi_bound) {
  if (edge_index < 0 || edge_index >= static_cast<int>(spec.edges.size()))
    throw EdgeError("edge index out of range");
  if (k < 1) throw EdgeError("cover multiple k must be >= 1");
  const GraphEdge& ge = spec.edges[edge_index];
  const FixedComponent& src = spec.components[ge.from];
  const FixedComponent& snk = spec.components[ge.to];

  RingPtr carrier;
  if (src.is_point() && snk.is_point())
    carrier = src.ring;
  else if (src.ring->structurally_equal(*snk.ring))
    carrier = src.ring;
  else
    throw EdgeError("edge (" + src.id + "," + snk.id +
                    "): carrier ring for mismatched end components must be supplied; the closed "
                    "formula only covers point or matched-product carriers");

  EdgeInputs in(carrier);
  in.k = k;
  in.stab = ge.stab;
  in.span = spec.proj(vec_sub(snk.mu, src.mu));
  if (!in.span.is_positive()) throw EdgeError("edge has nonpositive moment span");
  long g = std::gcd(k, ge.stab);
  in.cover_n = k / g;
  in.cover_m = ge.stab / g;
  in.psi_bound = psi_bound;

  in.source_ring = src.ring;
  in.sink_ring = snk.ring;
  // ends share the carrier's basis (identity for matched rings; trivial for
  // points)
  for (int i = 0; i < src.ring->basis_size(); ++i)
    in.ev_source.push_back(RingClass::basis_element(carrier, i));
  for (int i = 0; i < snk.ring->basis_size(); ++i)
    in.ev_sink.push_back(RingClass::basis_element(carrier, i));

  for (const auto& p : src.normal) {
    if (p.sign != +1) continue;
    EdgeBundlePiece piece;
    piece.weight = p.weight;
    for (const auto& ch : p.chern) piece.chern.push_back(in.pull_source(ch));
    in.source_plus.push_back(std::move(piece));
  }
  for (const auto& p : snk.normal) {
    if (p.sign != -1) continue;
    EdgeBundlePiece piece;
    piece.weight = p.weight;
    for (const auto& ch : p.chern) piece.chern.push_back(in.pull_sink(ch));
    in.sink_minus.push_back(std::move(piece));
  }
  return in;
}

namespace {

// Twist indices l = 0..L-1 for a piece of weight w: positive section weights
// (w - l*gamma) > 0, at most k+1 sections per piece. A zero section weight at
// index z = k is the usual reparametrization direction of the cover; a zero
// strictly inside the section range means the fixed locus is larger than the
// closed formula assumes.
long piece_range(const EdgeInputs& in, int w, const char* side) {
  Rational steps = Rational(w) / in.gamma();  // = w*k/span
  long cap = in.k + 1;
  long l_pos;
  if (steps.is_integer()) {
    long z = static_cast<long>(steps.num());
    if (z < in.k)
      throw EdgeError(std::string("non-generic edge: zero-weight section in a ") + side +
                      " piece of weight " + std::to_string(w) +
                      " (cover " + std::to_string(in.cover_n) + "/" + std::to_string(in.cover_m) +
                      "); the closed formula does not apply, supply wall/carrier data");
    l_pos = z;
  } else {
    l_pos = static_cast<long>(steps.floor()) + 1;
  }
  return std::min(l_pos, cap);
}

std::string twist_name(const char* base, long l, long m) {
  long units = l * m;
  return "O(" + std::to_string(units) + "*" + base + ")";
}

}  // namespace

KClassSum edge_kclass(const EdgeInputs& in) {
  KClassSum sum;
  for (int p = 0; p < static_cast<int>(in.source_plus.size()); ++p) {
    long L = piece_range(in, in.source_plus[p].weight, "source");
    for (long l = 0; l < L; ++l)
      sum.items.push_back({+1, KSummand::QPlusSource, p, in.source_plus[p].weight, l, -1,
                           twist_name("s0", l, 1)});
  }
  for (int p = 0; p < static_cast<int>(in.sink_minus.size()); ++p) {
    long L = piece_range(in, in.sink_minus[p].weight, "sink");
    for (long l = 0; l < L; ++l)
      sum.items.push_back({+1, KSummand::QMinusSink, p, in.sink_minus[p].weight, l, -1,
                           twist_name("s_inf", l, 1)});
  }
  for (int wall = 0; wall < static_cast<int>(in.walls.size()); ++wall) {
    const auto& wd = in.walls[wall];
    for (int p = 0; p < static_cast<int>(wd.k_plus.size()); ++p) {
      int w = wd.k_plus[p].weight;
      Rational steps = Rational(w) / in.gamma();
      long L = steps.is_integer() ? static_cast<long>(steps.num())
                                  : static_cast<long>(steps.floor()) + 1;
      for (long l = 1; l < L; ++l) {  // l = 0 cancels between the pair
        sum.items.push_back({+1, KSummand::WallKPlus, p, w, l, wall,
                             twist_name(("L+_" + std::to_string(wall)).c_str(), l, in.cover_m)});
        sum.items.push_back({-1, KSummand::WallKPlus, p, w, l, wall,
                             twist_name(("-L-_" + std::to_string(wall)).c_str(), l, in.cover_m)});
      }
    }
    for (int p = 0; p < static_cast<int>(wd.k_minus.size()); ++p) {
      int w = wd.k_minus[p].weight;
      Rational steps = Rational(w) / in.gamma();
      long L = steps.is_integer() ? static_cast<long>(steps.num())
                                  : static_cast<long>(steps.floor()) + 1;
      for (long l = 1; l < L; ++l) {
        sum.items.push_back({+1, KSummand::WallKMinus, p, w, l, wall,
                             twist_name(("L-_" + std::to_string(wall)).c_str(), l, in.cover_m)});
        sum.items.push_back({-1, KSummand::WallKMinus, p, w, l, wall,
                             twist_name(("-L+_" + std::to_string(wall)).c_str(), l, in.cover_m)});
      }
    }
  }
  return sum;
}

LocalClass euler_of_summand(const EdgeInputs& in, const KSummand& s) {
  const int B = in.psi_bound;
  const Rational g = in.gamma();
  auto scalar_t = [&](const Rational& c) {
    return LocalClass::from_ring_class(RingClass::scalar(in.carrier, RF::t_power(c, 1)), B);
  };
  const Rational lg = Rational(s.l) * g;
  switch (s.kind) {
    case KSummand::QPlusSource: {
      LocalClass arg = scalar_t(Rational(s.weight) - lg) - LocalClass::psi(in.carrier, 1, B).scaled(RF(lg));
      return p_eval(in.source_plus[s.piece].chern, arg);
    }
    case KSummand::QMinusSink: {
      LocalClass arg = scalar_t(Rational(-s.weight) + lg) - LocalClass::psi(in.carrier, 2, B).scaled(RF(lg));
      return p_eval(in.sink_minus[s.piece].chern, arg);
    }
    case KSummand::WallKPlus: {
      const auto& wd = in.walls[s.wall];
      RingClass xi = (s.sign > 0 ? wd.xi_plus : wd.xi_minus).scaled(RF(Rational(s.l * in.cover_m)));
      LocalClass arg = scalar_t(Rational(s.weight) - lg) +
                       LocalClass::from_ring_class(s.sign > 0 ? xi : -xi, B);
      return p_eval(wd.k_plus[s.piece].chern, arg);
    }
    case KSummand::WallKMinus: {
      const auto& wd = in.walls[s.wall];
      RingClass xi = (s.sign > 0 ? wd.xi_minus : wd.xi_plus).scaled(RF(Rational(s.l * in.cover_m)));
      LocalClass arg = scalar_t(Rational(-s.weight) + lg) +
                       LocalClass::from_ring_class(s.sign > 0 ? xi : -xi, B);
      return p_eval(wd.k_minus[s.piece].chern, arg);
    }
  }
  throw EdgeError("unreachable summand kind");
}

LocalClass edge_euler(const EdgeInputs& in) {
  KClassSum sum = edge_kclass(in);
  LocalClass result = LocalClass::unit(in.carrier, in.psi_bound);
  LocalClass denominator = LocalClass::unit(in.carrier, in.psi_bound);
  for (const auto& s : sum.items) {
    LocalClass f = euler_of_summand(in, s);
    if (s.sign > 0)
      result *= f;
    else
      denominator *= f;
  }
  return result * denominator.invert();
}

FixedClassResult edge_fixed_class(const EdgeInputs& in) {
  if (in.declared_fixed_class) return {*in.declared_fixed_class, "declared"};
  if (in.carrier->top_degree() == 0) return {RingClass::unit(in.carrier), "isolated"};
  if (in.cover_m != 1)
    throw EdgeError("non-generic omega (cover " + std::to_string(in.cover_n) + "/" +
                    std::to_string(in.cover_m) +
                    ") over a positive-dimensional carrier: declared fixed-class datum required");
  return {RingClass::unit(in.carrier), "fundamental"};
}

RingClass c_operator(const EdgeInputs& in, int n1, int n2, const RingClass& alpha) {
  if (alpha.ring().get() != in.source_ring.get())
    throw EdgeError("c_operator: alpha must live on the source component's ring");
  if (n1 < 0 || n2 < 0) throw EdgeError("c_operator: negative psi powers");
  int bound = std::max(in.psi_bound, n1 + n2);
  EdgeInputs work = in;
  work.psi_bound = bound;
  LocalClass euler = edge_euler(work);
  LocalClass density =
      LocalClass::from_ring_class(edge_fixed_class(work).value, bound) * euler.invert();
  RingClass integrand = work.pull_source(alpha) * density.psi_coeff(n1, n2);
  // ev_2 pushforward through the sink diagonal.
  RingClass out = RingClass::zero(in.sink_ring);
  for (const auto& [e_i, e_dual] : diagonal_decomposition(in.sink_ring)) {
    RF pairing = (integrand * work.pull_sink(e_i)).integrate();
    out += e_dual.scaled(pairing);
  }
  return out;
}

BlowupDelta blowup_tangent_delta(const std::vector<std::pair<int, int>>& pieces) {
  BlowupDelta d;
  d.items.push_back({+1, 1, 0, 0, "O_E(E)"});
  for (const auto& [w, rank] : pieces) {
    if (w < 1) throw EdgeError("blow-up weight must be >= 1");
    if (rank < 0) throw EdgeError("negative rank in blow-up piece");
    for (int j = 0; j < w; ++j)
      d.items.push_back({-1, rank, w, j,
                         "Q_" + std::to_string(w) + "(x)O_E(-" + std::to_string(j) + "E)"});
  }
  return d;
}

}  // namespace gwloc
