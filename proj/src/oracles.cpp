#include "gwloc/oracles.hpp"

#include "gwloc/assembly.hpp"
#include "gwloc/generators.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace gwloc {

namespace {

Rational binom(long n, long k) {
  if (k < 0 || k > n) return Rational(0);
  BigInt r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return Rational(r);
}

}  // namespace

Rational kontsevich_nd(long d) {
  if (d < 1) throw SpecError("kontsevich_nd: d must be >= 1");
  std::vector<Rational> n(d + 1);
  n[1] = Rational(1);
  for (long m = 2; m <= d; ++m) {
    Rational total(0);
    for (long d1 = 1; d1 < m; ++d1) {
      long d2 = m - d1;
      Rational term = n[d1] * n[d2] * Rational(d1) * Rational(d1) * Rational(d2);
      term *= Rational(d2) * binom(3 * m - 4, 3 * d1 - 2) - Rational(d1) * binom(3 * m - 4, 3 * d1 - 1);
      total += term;
    }
    n[m] = total;
  }
  return n[d];
}

RF classical_edge_euler(const std::vector<long>& weights, int i, int j, long d) {
  if (d < 1) throw SpecError("classical_edge_euler: cover degree must be >= 1 (not an edge)");
  if (i == j) throw SpecError("classical_edge_euler: endpoints must differ");
  {
    std::set<long> s(weights.begin(), weights.end());
    if (s.size() != weights.size())
      throw SpecError("classical_edge_euler: non-isolated data (repeated weights)");
  }
  const Rational ai(weights[i]), aj(weights[j]);
  Rational coeff(1);
  long count = 0;
  auto push = [&](const Rational& w) {
    if (w.is_zero())
      throw SpecError("classical_edge_euler: zero-weight section (non-generic edge)");
    coeff *= w;
    ++count;
  };
  // Tangent sections of the d-fold cover of the line: +/- b*(a_j - a_i)/d.
  for (long b = 1; b <= d; ++b) {
    Rational step = Rational(b) * (aj - ai) / Rational(d);
    push(step);
    push(-step);
  }
  // Transverse directions: sections s^a u^b d/dz_k with weight
  // a_k - (a*a_i + b*a_j)/d, a + b = d.
  for (int k = 0; k < static_cast<int>(weights.size()); ++k) {
    if (k == i || k == j) continue;
    for (long b = 0; b <= d; ++b) {
      long a = d - b;
      push(Rational(weights[k]) - (Rational(a) * ai + Rational(b) * aj) / Rational(d));
    }
  }
  return RF::t_power(coeff, static_cast<int>(count));
}

OrbitData orbit_parametrize(const std::vector<long>& weights, const std::vector<int>& support) {
  if (support.empty()) throw SpecError("orbit_parametrize: empty support");
  OrbitData o;
  o.m_p = o.M_p = weights.at(support[0]);
  for (int s : support) {
    o.m_p = std::min(o.m_p, weights.at(s));
    o.M_p = std::max(o.M_p, weights.at(s));
  }
  o.degree = o.M_p - o.m_p;
  if (support.size() == 1) {
    o.fixed = true;
    o.stab = 0;
    return o;
  }
  long g = 0;
  for (std::size_t x = 0; x < support.size(); ++x)
    for (std::size_t y = x + 1; y < support.size(); ++y)
      g = std::gcd(g, std::abs(weights.at(support[x]) - weights.at(support[y])));
  o.stab = g;
  return o;
}

namespace {

// ----- independent generate-and-filter enumeration -----

// Nonnegative lattice combinations of the component's declared vertex
// classes, bounded by `limit`; recursion over generator counts (deliberately
// different from the engine's breadth-first reachability).
void lattice_combos(const std::vector<std::vector<Rational>>& gens, std::size_t idx,
                    const std::vector<Rational>& acc, const std::vector<Rational>& limit,
                    std::vector<std::vector<Rational>>& out) {
  if (idx == gens.size()) {
    out.push_back(acc);
    return;
  }
  std::vector<Rational> cur = acc;
  while (true) {
    lattice_combos(gens, idx + 1, cur, limit, out);
    cur = vec_add(cur, gens[idx]);
    if (!leq_componentwise(cur, limit)) break;
  }
}

// Literal Def. 2.7(4) check: for every pair of vertices whose connecting path
// runs through degree-2 class-0 interior vertices only, and for every
// candidate multiple of the endpoint pair's orbit class, some edge class must
// differ from the proportional split.
bool brute_minimal(const DecoratedTriple& t, const ActionSpec& spec) {
  const int V = static_cast<int>(t.vertices.size());
  auto adj = t.adjacency();
  for (int x = 0; x < V; ++x)
    for (int y = 0; y < V; ++y) {
      if (x == y) continue;
      // unique tree path x -> y
      std::vector<int> parent(V, -1), parent_edge(V, -1);
      std::vector<int> stack{x};
      parent[x] = x;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int ei : adj[v]) {
          const auto& e = t.edges[ei];
          int u = e.a == v ? e.b : e.a;
          if (parent[u] >= 0) continue;
          parent[u] = v;
          parent_edge[u] = ei;
          stack.push_back(u);
        }
      }
      std::vector<int> verts{y}, path_edges;
      for (int v = y; v != x; v = parent[v]) {
        path_edges.push_back(parent_edge[v]);
        verts.push_back(parent[v]);
      }
      std::reverse(verts.begin(), verts.end());
      std::reverse(path_edges.begin(), path_edges.end());
      if (path_edges.size() < 2) continue;  // need an interior vertex
      bool interior_ok = true;
      for (std::size_t p = 1; p + 1 < verts.size(); ++p) {
        int v = verts[p];
        if (adj[v].size() != 2 || !is_zero_vec(t.vertices[v].beta)) interior_ok = false;
      }
      if (!interior_ok) continue;
      const auto& u1 = spec.components[t.vertices[verts.front()].component].mu;
      const auto& us = spec.components[t.vertices[verts.back()].component].mu;
      auto span = vec_sub(us, u1);
      // candidates over every moment edge joining the endpoint components
      for (const auto& ge : spec.edges) {
        bool joins = (ge.from == t.vertices[verts.front()].component &&
                      ge.to == t.vertices[verts.back()].component) ||
                     (ge.to == t.vertices[verts.front()].component &&
                      ge.from == t.vertices[verts.back()].component);
        if (!joins) continue;
        for (long k = 1; k <= 64; ++k) {  // ample bound for desk-scale cases
          auto beta_c = vec_scale(Rational(k), ge.orbit_class);
          // lambda with beta_c = lambda * (us - u1), if consistent
          Rational lambda;
          bool ok = false;
          for (std::size_t c = 0; c < span.size(); ++c)
            if (!span[c].is_zero()) {
              lambda = beta_c[c] / span[c];
              ok = true;
              break;
            }
          if (!ok || beta_c != vec_scale(lambda, span)) continue;
          bool all_match = true;
          for (std::size_t p = 0; p < path_edges.size(); ++p) {
            const auto& e = t.edges[path_edges[p]];
            auto cls = vec_scale(Rational(e.k), spec.edges[e.graph_edge].orbit_class);
            auto gap = vec_sub(spec.components[t.vertices[verts[p + 1]].component].mu,
                               spec.components[t.vertices[verts[p]].component].mu);
            if (cls != vec_scale(lambda, gap)) {
              all_match = false;
              break;
            }
          }
          if (all_match) return false;
        }
      }
    }
  return true;
}

}  // namespace

std::vector<DecoratedTriple> brute_force_triples(const ActionSpec& spec,
                                                 const std::vector<Rational>& beta, int n,
                                                 int e_max) {
  std::vector<DecoratedTriple> out;
  std::set<std::string> seen;
  const int m = spec.h2_rank;

  auto emit = [&](DecoratedTriple t) {
    // class-sum filter
    std::vector<Rational> total(m, Rational(0));
    for (const auto& v : t.vertices) total = vec_add(total, v.beta);
    for (const auto& e : t.edges)
      total = vec_add(total, vec_scale(Rational(e.k), spec.edges[e.graph_edge].orbit_class));
    if (total != beta) return;
    if (t.edges.empty() && is_zero_vec(t.vertices[0].beta) && n < 3) return;
    if (!brute_minimal(t, spec)) return;
    std::string canon = canonical_form(t);
    if (seen.insert(canon).second) out.push_back(std::move(t));
  };

  for (int V = 1; V <= e_max + 1; ++V) {
    // all edge subsets of size V-1 over the V*(V-1)/2 vertex pairs
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < V; ++a)
      for (int b = a + 1; b < V; ++b) pairs.emplace_back(a, b);
    const int P = static_cast<int>(pairs.size());
    std::vector<int> pick;
    std::function<void(int)> choose = [&](int start) {
      if (static_cast<int>(pick.size()) == V - 1) {
        // connectivity check
        std::vector<int> reach{0};
        std::set<int> vis{0};
        for (std::size_t h = 0; h < reach.size(); ++h)
          for (int pi : pick) {
            auto [a, b] = pairs[pi];
            int other = -1;
            if (a == reach[h]) other = b;
            if (b == reach[h]) other = a;
            if (other >= 0 && !vis.count(other)) {
              vis.insert(other);
              reach.push_back(other);
            }
          }
        if (static_cast<int>(vis.size()) != V) return;
        // decorate
        std::vector<int> comp(V, 0);
        std::function<void(int)> comps = [&](int v) {
          if (v == V) {
            std::vector<DecoratedTriple::Edge> edges(pick.size());
            std::function<void(std::size_t)> decorate_edges = [&](std::size_t idx) {
              if (idx == pick.size()) {
                // vertex classes
                std::vector<std::vector<std::vector<Rational>>> options(V);
                for (int v2 = 0; v2 < V; ++v2) {
                  lattice_combos(spec.components[comp[v2]].vertex_classes, 0,
                                 std::vector<Rational>(m, Rational(0)), beta, options[v2]);
                  std::sort(options[v2].begin(), options[v2].end(),
                            [](const auto& a, const auto& b) { return vec_str(a) < vec_str(b); });
                  options[v2].erase(std::unique(options[v2].begin(), options[v2].end()),
                                    options[v2].end());
                }
                std::vector<std::vector<Rational>> bv(V);
                std::function<void(int)> betas = [&](int v2) {
                  if (v2 == V) {
                    // marks
                    std::vector<int> where(n, 0);
                    while (true) {
                      DecoratedTriple t;
                      for (int w = 0; w < V; ++w) t.vertices.push_back({comp[w], bv[w], {}});
                      for (int label = 0; label < n; ++label)
                        t.vertices[where[label]].marks.push_back(label);
                      t.edges = edges;
                      emit(t);
                      int pos = n - 1;
                      while (pos >= 0 && where[pos] == V - 1) where[pos--] = 0;
                      if (pos < 0) break;
                      ++where[pos];
                    }
                    return;
                  }
                  for (const auto& opt : options[v2]) {
                    bv[v2] = opt;
                    betas(v2 + 1);
                  }
                };
                betas(0);
                return;
              }
              auto [a, b] = pairs[pick[idx]];
              for (std::size_t ge = 0; ge < spec.edges.size(); ++ge) {
                bool joins = (spec.edges[ge].from == comp[a] && spec.edges[ge].to == comp[b]) ||
                             (spec.edges[ge].from == comp[b] && spec.edges[ge].to == comp[a]);
                if (!joins) continue;
                for (long k = 1;; ++k) {
                  if (!leq_componentwise(vec_scale(Rational(k), spec.edges[ge].orbit_class), beta))
                    break;
                  edges[idx] = {a, b, static_cast<int>(ge), k};
                  decorate_edges(idx + 1);
                }
              }
            };
            decorate_edges(0);
            return;
          }
          for (std::size_t c = 0; c < spec.components.size(); ++c) {
            comp[v] = static_cast<int>(c);
            comps(v + 1);
          }
        };
        comps(0);
        return;
      }
      for (int p = start; p < P; ++p) {
        pick.push_back(p);
        choose(p + 1);
        pick.pop_back();
      }
    };
    choose(0);
  }
  std::sort(out.begin(), out.end(), [](const DecoratedTriple& a, const DecoratedTriple& b) {
    return canonical_form(a) < canonical_form(b);
  });
  return out;
}

namespace {

// String-equation evaluator for genus-0 psi intersections (independent of
// the multinomial formula).
Rational psi_by_string(std::vector<int> exps) {
  const int n = static_cast<int>(exps.size());
  if (n == 3) {
    for (int a : exps)
      if (a != 0) return Rational(0);
    return Rational(1);
  }
  int sum = 0;
  for (int a : exps) sum += a;
  if (sum != n - 3) return Rational(0);
  // remove the last point (it has exponent 0 somewhere if sum < n-3 at that
  // slot; pick a zero-exponent slot to apply the string equation backwards)
  int zero_at = -1;
  for (int i = 0; i < n; ++i)
    if (exps[i] == 0) zero_at = i;
  if (zero_at < 0) return Rational(0);  // cannot happen when sum = n-3, n > 3
  exps.erase(exps.begin() + zero_at);
  Rational total(0);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    auto reduced = exps;
    --reduced[i];
    total += psi_by_string(reduced);
  }
  return total;
}

void report(std::vector<OracleReport>& out, const std::string& name, const std::string& inputs,
            const std::string& oracle, const std::string& engine) {
  out.push_back({name, inputs, oracle, engine, oracle == engine});
}

}  // namespace

std::vector<OracleReport> run_selftest() {
  std::vector<OracleReport> out;

  // Kontsevich pins (frozen classical values).
  const char* expected[] = {"1/1", "1/1", "12/1", "620/1", "87304/1"};
  for (long d = 1; d <= 5; ++d)
    report(out, "kontsevich_nd", "d=" + std::to_string(d), expected[d - 1],
           kontsevich_nd(d).str());

  auto p1 = projective_space_spec(1, {0, 1});
  auto p2 = projective_space_spec(2, {0, 1, 5});

  // Edge Euler classes against the classical multiset, every edge, d = 1..3.
  struct Case {
    const ActionSpec* spec;
    std::vector<long> weights;
    const char* name;
  };
  Case cases[] = {{&p1, {0, 1}, "P1"}, {&p2, {0, 1, 5}, "P2"}};
  for (const auto& c : cases)
    for (std::size_t ei = 0; ei < c.spec->edges.size(); ++ei)
      for (long d = 1; d <= 3; ++d) {
        const auto& ge = c.spec->edges[ei];
        int i = std::stoi(c.spec->components[ge.from].id);
        int jj = std::stoi(c.spec->components[ge.to].id);
        RF oracle = classical_edge_euler(c.weights, i, jj, d);
        EdgeInputs in = make_edge_inputs(*c.spec, static_cast<int>(ei), d, 0);
        RF engine = edge_euler(in).psi_coeff(0, 0).coeff(in.carrier->unit_index());
        report(out, "edge_euler",
               std::string(c.name) + " edge(" + c.spec->components[ge.from].id + "," +
                   c.spec->components[ge.to].id + ") d=" + std::to_string(d),
               oracle.pretty(), engine.pretty());
      }

  // Enumeration vs brute force.
  struct ECase {
    const ActionSpec* spec;
    const char* name;
    long beta;
    int n;
    int emax;
  };
  ECase ecases[] = {{&p1, "P1", 1, 2, 2}, {&p1, "P1", 2, 2, 3}, {&p2, "P2", 1, 2, 2},
                    {&p2, "P2", 2, 1, 3}};
  for (const auto& ec : ecases) {
    std::vector<Rational> beta{Rational(ec.beta)};
    auto fast = enumerate_triples(*ec.spec, beta, ec.n);
    auto brute = brute_force_triples(*ec.spec, beta, ec.n, ec.emax);
    std::set<std::string> fs, bs;
    for (const auto& t : fast) fs.insert(canonical_form(t));
    for (const auto& t : brute) bs.insert(canonical_form(t));
    report(out, "enumerate_triples",
           std::string(ec.name) + " beta=" + std::to_string(ec.beta) + " n=" + std::to_string(ec.n),
           std::to_string(bs.size()) + (fs == bs ? " (set equal)" : " (set DIFFERS)"),
           std::to_string(fs.size()) + " (set equal)");
  }

  // Orbit parametrization against the generated moment graph.
  for (std::size_t ei = 0; ei < p2.edges.size(); ++ei) {
    const auto& ge = p2.edges[ei];
    std::vector<int> support{std::stoi(p2.components[ge.from].id),
                             std::stoi(p2.components[ge.to].id)};
    OrbitData o = orbit_parametrize({0, 1, 5}, support);
    report(out, "orbit_parametrize",
           "P2 support {" + p2.components[ge.from].id + "," + p2.components[ge.to].id + "}",
           std::to_string(o.stab) + "," + (Rational(o.degree) / Rational(o.stab)).pretty(),
           std::to_string(ge.stab) + "," + ge.orbit_class[0].pretty());
  }

  // psi integrals against the string recursion.
  std::vector<std::vector<int>> psis = {{0, 0, 0}, {1, 0, 0, 0}, {2, 1, 0, 0, 0, 0},
                                        {1, 1, 1, 0, 0, 0}, {3, 0, 0, 0, 0, 0}};
  for (const auto& e : psis) {
    std::string in;
    for (int a : e) in += std::to_string(a) + ",";
    report(out, "psi_integral", in, psi_by_string(e).str(), psi_integral(e).str());
  }

  // Pipeline identities: degree-1 invariants on both specs.
  {
    auto r = gw_invariant(p1, {Rational(1)}, {{"H", 0}, {"H", 0}});
    report(out, "gw_invariant", "P1 <H,H> beta=1", "1/1",
           r.t_independent ? r.value.str() : ("t-dependent: " + r.total.pretty()));
  }
  {
    auto r = gw_invariant(p2, {Rational(1)}, {{"pt", 0}, {"pt", 0}});
    report(out, "gw_invariant", "P2 <pt,pt> d=1", kontsevich_nd(1).str(),
           r.t_independent ? r.value.str() : ("t-dependent: " + r.total.pretty()));
  }

  return out;
}

}  // namespace gwloc
