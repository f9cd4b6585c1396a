#include "gwloc/action_spec.hpp"

#include <numeric>
#include <set>
#include <sstream>

namespace gwloc {

int ActionSpec::component_index(const std::string& id) const {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].id == id) return static_cast<int>(i);
  throw SpecError("unknown component id '" + id + "'");
}

const InsertionClass& ActionSpec::insertion(const std::string& name) const {
  for (const auto& ins : insertions)
    if (ins.name == name) return ins;
  throw SpecError("unknown insertion class '" + name + "'");
}

Rational ActionSpec::proj(const std::vector<Rational>& v) const {
  Rational s(0);
  for (std::size_t i = 0; i < v.size(); ++i) s += projection[i] * v[i];
  return s;
}

Rational ActionSpec::c1_dot(const std::vector<Rational>& beta) const {
  Rational s(0);
  for (std::size_t i = 0; i < beta.size(); ++i) s += c1_pairing[i] * beta[i];
  return s;
}

bool leq_componentwise(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] <= b[i])) return false;
  return true;
}

std::vector<Rational> vec_sub(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

std::vector<Rational> vec_add(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

std::vector<Rational> vec_scale(const Rational& c, const std::vector<Rational>& v) {
  std::vector<Rational> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

bool is_zero_vec(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

std::string vec_str(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].pretty();
  }
  return s + ")";
}

namespace {

// Pure t-degree of an RF that should be a monomial c*t^k; -1 on failure.
bool monomial_t_degree(const RF& f, int& deg) {
  if (f.is_zero()) return false;
  if (f.den().degree() != 0) {
    // c / t^k
    if (f.den().order_at_zero() != f.den().degree()) return false;
    if (f.num().degree() != 0) return false;
    deg = -f.den().degree();
    return true;
  }
  int oz = f.num().order_at_zero();
  if (oz != f.num().degree()) return false;
  deg = oz;
  return true;
}

}  // namespace

void ActionSpec::validate() const {
  std::vector<std::string> diags;
  auto fail = [&diags](const std::string& m) { diags.push_back(m); };

  const std::size_t m = static_cast<std::size_t>(h2_rank);
  if (c1_pairing.size() != m) fail("c1_pairing length must equal h2_rank");
  if (projection.size() != m) fail("moment projection length must equal h2_rank");
  if (components.empty()) fail("no fixed components");

  std::set<std::string> ids;
  std::set<std::vector<std::string>> mus;
  for (const auto& c : components) {
    if (!ids.insert(c.id).second) fail("duplicate component id '" + c.id + "'");
    if (c.mu.size() != m) fail("component '" + c.id + "': moment vector length != h2_rank");
    if (!c.ring) {
      fail("component '" + c.id + "': component ring incomplete");
      continue;
    }
    if (c.ring->top_degree() != c.dim)
      fail("component '" + c.id + "': ring top degree " +
           std::to_string(c.ring->top_degree()) + " != dimension " + std::to_string(c.dim));
    int normal_rank = 0;
    for (const auto& p : c.normal) {
      if (p.weight < 1) fail("component '" + c.id + "': normal piece with weight < 1");
      if (p.sign != 1 && p.sign != -1) fail("component '" + c.id + "': normal piece sign must be +/-");
      if (static_cast<int>(p.chern.size()) != p.rank)
        fail("component '" + c.id + "': chern list length != rank");
      for (std::size_t i = 0; i < p.chern.size(); ++i) {
        if (p.chern[i].ring().get() != c.ring.get()) {
          fail("component '" + c.id + "': chern class in a foreign ring");
          continue;
        }
        if (p.chern[i] != p.chern[i].degree_part(static_cast<int>(i) + 1) && !p.chern[i].is_zero())
          fail("component '" + c.id + "': c_" + std::to_string(i + 1) + " is not of pure degree " +
               std::to_string(i + 1));
      }
      normal_rank += p.rank;
    }
    if (normal_rank + c.dim != dim_x)
      fail("component '" + c.id + "': normal rank " + std::to_string(normal_rank) +
           " + dim " + std::to_string(c.dim) + " != dim X = " + std::to_string(dim_x));
    for (const auto& v : c.vertex_classes)
      if (v.size() != m) fail("component '" + c.id + "': vertex class length != h2_rank");
    // Insertion restrictions: present and homogeneous of the declared codimension.
    for (const auto& ins : insertions) {
      auto it = c.restrictions.find(ins.name);
      if (it == c.restrictions.end()) {
        fail("component '" + c.id + "': missing restriction of insertion '" + ins.name + "'");
        continue;
      }
      if (it->second.ring().get() != c.ring.get()) {
        fail("component '" + c.id + "': restriction of '" + ins.name + "' in a foreign ring");
        continue;
      }
      for (const auto& [bi, coeff] : it->second.coeffs()) {
        int tdeg = 0;
        if (!monomial_t_degree(coeff, tdeg) || c.ring->degree(bi) + tdeg != ins.codim)
          fail("component '" + c.id + "': restriction of '" + ins.name +
               "' is not homogeneous of codimension " + std::to_string(ins.codim));
      }
    }
    std::vector<std::string> key;
    for (const auto& x : c.mu) key.push_back(x.str());
    if (!mus.insert(key).second) fail("two components share the moment vector " + vec_str(c.mu));
  }

  const int n = static_cast<int>(components.size());
  for (const auto& e : edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
      fail("edge endpoint out of range");
      continue;
    }
    const auto& u = components[e.from].mu;
    const auto& v = components[e.to].mu;
    if (e.stab < 1) fail("edge (" + components[e.from].id + "," + components[e.to].id +
                         "): stabilizer order must be >= 1");
    bool leq = leq_componentwise(u, v);
    bool strict = leq && u != v;
    if (!strict)
      fail("edge (" + components[e.from].id + "," + components[e.to].id +
           ") violates partial order (needs u <= v componentwise, u != v)");
    if (proj(vec_sub(v, u)) <= Rational(0))
      fail("edge (" + components[e.from].id + "," + components[e.to].id +
           ") has nonpositive moment span under the projection");
    if (e.orbit_class.size() != m) {
      fail("edge orbit class length != h2_rank");
      continue;
    }
    auto expect = orbit_class(u, v, e.stab);
    if (expect != e.orbit_class)
      fail("edge (" + components[e.from].id + "," + components[e.to].id +
           "): orbit class != (v-u)/stab, got " + vec_str(e.orbit_class) + " want " +
           vec_str(expect));
    // c1 consistency: s_e * (c1 . [O]) equals the signed weight sum at the
    // source minus the signed weight sum at the sink.
    if (strict) {
      auto signed_sum = [](const FixedComponent& c) {
        Rational s(0);
        for (const auto& p : c.normal) s += Rational(p.sign) * Rational(p.weight) * Rational(p.rank);
        return s;
      };
      Rational lhs = Rational(e.stab) * c1_dot(e.orbit_class);
      Rational rhs = signed_sum(components[e.from]) - signed_sum(components[e.to]);
      if (lhs != rhs)
        fail("edge (" + components[e.from].id + "," + components[e.to].id +
             "): c1 pairing inconsistent with declared weights (s_e*c1.[O] = " + lhs.pretty() +
             ", signed weight difference = " + rhs.pretty() + ")");
    }
  }

  if (!diags.empty()) throw SpecError(std::move(diags));
}

MomentGraph build_moment_graph(const ActionSpec& spec) {
  spec.validate();
  MomentGraph g;
  for (std::size_t i = 0; i < spec.components.size(); ++i) g.vertices.push_back(static_cast<int>(i));
  g.edges = spec.edges;
  return g;
}

std::vector<EdgeDatum> invariant_curve_classes(const ActionSpec& spec,
                                               const std::vector<Rational>& beta, long bound) {
  if (bound < 1) throw SpecError("invariant_curve_classes: bound must be >= 1");
  std::vector<EdgeDatum> out;
  // Vertex carriers: nonnegative lattice combinations <= beta (0 included).
  for (std::size_t ci = 0; ci < spec.components.size(); ++ci) {
    const auto& gens = spec.components[ci].vertex_classes;
    std::vector<std::vector<Rational>> reach{std::vector<Rational>(spec.h2_rank, Rational(0))};
    std::set<std::string> seen{vec_str(reach[0])};
    for (std::size_t pos = 0; pos < reach.size(); ++pos) {
      auto cur = reach[pos];
      for (const auto& g : gens) {
        auto next = vec_add(cur, g);
        if (!leq_componentwise(next, beta)) continue;
        if (seen.insert(vec_str(next)).second) reach.push_back(next);
      }
    }
    for (auto& v : reach) {
      EdgeDatum d;
      d.edge_carrier = false;
      d.carrier = static_cast<int>(ci);
      d.beta = v;
      out.push_back(std::move(d));
    }
  }
  // Edge carriers: k [O] <= beta componentwise, 1 <= k <= bound.
  for (std::size_t ei = 0; ei < spec.edges.size(); ++ei) {
    const auto& e = spec.edges[ei];
    for (long k = 1; k <= bound; ++k) {
      auto cls = vec_scale(Rational(k), e.orbit_class);
      if (!leq_componentwise(cls, beta)) break;
      EdgeDatum d;
      d.edge_carrier = true;
      d.carrier = static_cast<int>(ei);
      d.beta = std::move(cls);
      d.k = k;
      long g = std::gcd(k, e.stab);
      d.cover_n = k / g;
      d.cover_m = e.stab / g;
      out.push_back(std::move(d));
    }
  }
  return out;
}

long orbit_degree(long m_p, long M_p) {
  if (m_p > M_p) throw SpecError("orbit_degree: need m(p) <= M(p)");
  return M_p - m_p;
}

std::vector<Rational> orbit_class(const std::vector<Rational>& u, const std::vector<Rational>& v,
                                  long stab) {
  if (stab < 1) throw SpecError("orbit_class: stabilizer must be >= 1");
  return vec_scale(Rational(1, stab), vec_sub(v, u));
}

}  // namespace gwloc
