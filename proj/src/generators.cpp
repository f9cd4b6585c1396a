#include "gwloc/generators.hpp"

#include <algorithm>
#include <set>

namespace gwloc {

ActionSpec projective_space_spec(int N, const std::vector<long>& weights) {
  if (static_cast<int>(weights.size()) != N + 1)
    throw SpecError("projective_space_spec: expected " + std::to_string(N + 1) + " weights");
  {
    std::set<long> s(weights.begin(), weights.end());
    if (static_cast<int>(s.size()) != N + 1)
      throw SpecError("non-isolated fixed locus; supply a full ActionSpec manually");
  }

  ActionSpec spec;
  spec.dim_x = N;
  spec.h2_rank = 1;
  spec.c1_pairing = {Rational(N + 1)};
  spec.projection = {Rational(1)};
  for (int k = 1; k <= N; ++k)
    spec.insertions.push_back({"H^" + std::to_string(k), k});
  if (N >= 1) {
    spec.insertions.push_back({"H", 1});
    spec.insertions.push_back({"pt", N});
  } else {
    spec.insertions.push_back({"pt", 0});
  }

  auto point = GradedRing::point_ring();
  for (int i = 0; i <= N; ++i) {
    FixedComponent c;
    c.id = std::to_string(i);
    c.dim = 0;
    c.mu = {Rational(weights[i])};
    c.ring = point;
    for (int j = 0; j <= N; ++j) {
      if (j == i) continue;
      WeightPiece p;
      p.sign = weights[j] > weights[i] ? +1 : -1;
      p.weight = static_cast<int>(std::abs(weights[j] - weights[i]));
      p.rank = 1;
      p.chern = {RingClass::zero(point)};
      c.normal.push_back(std::move(p));
    }
    std::sort(c.normal.begin(), c.normal.end(), [](const WeightPiece& a, const WeightPiece& b) {
      return std::tie(a.sign, a.weight) < std::tie(b.sign, b.weight);
    });
    for (int k = 1; k <= N; ++k) {
      RingClass r = RingClass::scalar(point, RF::t_power(Rational(weights[i]), 1)).pow(k);
      c.restrictions.insert_or_assign("H^" + std::to_string(k), r);
      if (k == 1) c.restrictions.insert_or_assign("H", r);
      if (k == N) c.restrictions.insert_or_assign("pt", r);
    }
    if (N == 0) c.restrictions.insert_or_assign("pt", RingClass::unit(point));
    spec.components.push_back(std::move(c));
  }

  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      if (weights[i] >= weights[j]) continue;
      GraphEdge e;
      e.from = i;
      e.to = j;
      e.stab = weights[j] - weights[i];
      e.orbit_class = {Rational(1)};
      spec.edges.push_back(std::move(e));
    }
  std::sort(spec.edges.begin(), spec.edges.end(), [&](const GraphEdge& a, const GraphEdge& b) {
    return std::tie(spec.components[a.from].id, spec.components[a.to].id) <
           std::tie(spec.components[b.from].id, spec.components[b.to].id);
  });

  spec.validate();
  return spec;
}

ActionSpec trivial_spec(RingPtr ring, int h2_rank, std::vector<Rational> c1_pairing,
                        std::vector<std::vector<Rational>> curve_classes, const std::string& id) {
  ActionSpec spec;
  spec.dim_x = ring->top_degree();
  spec.h2_rank = h2_rank;
  spec.c1_pairing = std::move(c1_pairing);
  spec.projection.assign(h2_rank, Rational(0));

  FixedComponent c;
  c.id = id;
  c.dim = ring->top_degree();
  c.mu.assign(h2_rank, Rational(0));
  c.ring = ring;
  c.vertex_classes = std::move(curve_classes);
  for (int b = 0; b < ring->basis_size(); ++b) {
    if (ring->degree(b) == 0) continue;
    std::string name = "Y:" + ring->monomial_name(b);
    spec.insertions.push_back({name, ring->degree(b)});
    c.restrictions.insert_or_assign(name, RingClass::basis_element(ring, b));
  }
  spec.components.push_back(std::move(c));
  // No edges: trivial action. Note: validate() rejects nothing here since the
  // projection constraint only applies to edges.
  spec.validate();
  return spec;
}

ActionSpec product_spec(const ActionSpec& a, const ActionSpec& b) {
  if (b.components.size() != 1 || !b.edges.empty())
    throw SpecError("product_spec: second factor must be a trivial-action spec (one component)");
  const FixedComponent& y = b.components[0];

  ActionSpec spec;
  spec.dim_x = a.dim_x + b.dim_x;
  spec.h2_rank = a.h2_rank + b.h2_rank;
  spec.c1_pairing = a.c1_pairing;
  spec.c1_pairing.insert(spec.c1_pairing.end(), b.c1_pairing.begin(), b.c1_pairing.end());
  spec.projection = a.projection;
  spec.projection.insert(spec.projection.end(), b.h2_rank, Rational(0));

  auto pad = [&](std::vector<Rational> v, const std::vector<Rational>& tail) {
    v.insert(v.end(), tail.begin(), tail.end());
    return v;
  };
  auto pad_front = [&](const std::vector<Rational>& tail) {
    std::vector<Rational> v(a.h2_rank, Rational(0));
    v.insert(v.end(), tail.begin(), tail.end());
    return v;
  };

  for (const auto& ins : a.insertions) spec.insertions.push_back(ins);
  for (const auto& ins : b.insertions) spec.insertions.push_back(ins);
  for (const auto& ia : a.insertions)
    for (const auto& ib : b.insertions)
      spec.insertions.push_back({ia.name + "*" + ib.name, ia.codim + ib.codim});

  for (const auto& ca : a.components) {
    FixedComponent c;
    c.id = ca.id;
    c.dim = ca.dim + y.dim;
    c.mu = pad(ca.mu, y.mu);
    c.ring = GradedRing::tensor(*ca.ring, *y.ring, ca.ring->name() + "x" + y.ring->name());
    // Basis index map of the tensor ring: (i, j) -> i * |B_y| + j.
    const int By = y.ring->basis_size();
    auto lift_a = [&](const RingClass& r) {
      RingClass out(c.ring);
      for (const auto& [i, v] : r.coeffs()) out.set_coeff(i * By + y.ring->unit_index(), v);
      return out;
    };
    auto lift_pair = [&](const RingClass& ra, const RingClass& ry) {
      RingClass out(c.ring);
      for (const auto& [i, va] : ra.coeffs())
        for (const auto& [j, vy] : ry.coeffs()) out.set_coeff(i * By + j, va * vy);
      return out;
    };
    for (const auto& p : ca.normal) {
      WeightPiece q;
      q.sign = p.sign;
      q.weight = p.weight;
      q.rank = p.rank;
      for (const auto& ch : p.chern) q.chern.push_back(lift_a(ch));
      c.normal.push_back(std::move(q));
    }
    for (const auto& ins : a.insertions)
      c.restrictions.insert_or_assign(ins.name, lift_a(ca.restrictions.at(ins.name)));
    for (const auto& ins : b.insertions)
      c.restrictions.insert_or_assign(ins.name, lift_pair(RingClass::unit(ca.ring), y.restrictions.at(ins.name)));
    for (const auto& ia : a.insertions)
      for (const auto& ib : b.insertions)
        c.restrictions.insert_or_assign(
            ia.name + "*" + ib.name,
            lift_pair(ca.restrictions.at(ia.name), y.restrictions.at(ib.name)));
    for (const auto& v : ca.vertex_classes) c.vertex_classes.push_back(pad(v, std::vector<Rational>(b.h2_rank, Rational(0))));
    for (const auto& v : y.vertex_classes) c.vertex_classes.push_back(pad_front(v));
    spec.components.push_back(std::move(c));
  }

  for (const auto& ea : a.edges) {
    GraphEdge e;
    e.from = ea.from;
    e.to = ea.to;
    e.stab = ea.stab;
    e.orbit_class = pad(ea.orbit_class, std::vector<Rational>(b.h2_rank, Rational(0)));
    spec.edges.push_back(std::move(e));
  }

  spec.validate();
  return spec;
}

}  // namespace gwloc
