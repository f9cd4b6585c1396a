#include "gwloc/triples.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace gwloc {

using nlohmann::json;

std::vector<std::vector<int>> DecoratedTriple::adjacency() const {
  std::vector<std::vector<int>> adj(vertices.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].a].push_back(static_cast<int>(i));
    adj[edges[i].b].push_back(static_cast<int>(i));
  }
  return adj;
}

json DecoratedTriple::to_json(const ActionSpec& spec) const {
  json vs = json::array();
  for (const auto& v : vertices) {
    json marks = json::array();
    for (int m : v.marks) marks.push_back(m + 1);  // 1-based in reports
    json beta = json::array();
    for (const auto& b : v.beta) beta.push_back(b.str());
    vs.push_back(json{{"component", spec.components[v.component].id},
                      {"beta", beta},
                      {"marks", marks}});
  }
  json es = json::array();
  for (const auto& e : edges) {
    const auto& ge = spec.edges[e.graph_edge];
    json beta = json::array();
    for (const auto& b : vec_scale(Rational(e.k), ge.orbit_class)) beta.push_back(b.str());
    long g = std::gcd(e.k, ge.stab);
    es.push_back(json{{"a", e.a},
                      {"b", e.b},
                      {"from", spec.components[ge.from].id},
                      {"to", spec.components[ge.to].id},
                      {"k", e.k},
                      {"stab", ge.stab},
                      {"cover", std::to_string(e.k / g) + "/" + std::to_string(ge.stab / g)},
                      {"beta", beta}});
  }
  return json{{"vertices", vs}, {"edges", es}};
}

namespace {

std::string vertex_key(const DecoratedTriple::Vertex& v) {
  std::string s = std::to_string(v.component) + ";" + vec_str(v.beta) + ";[";
  for (int m : v.marks) s += std::to_string(m) + ",";
  return s + "]";
}

std::string edge_key(const DecoratedTriple::Edge& e) {
  return std::to_string(e.graph_edge) + "," + std::to_string(e.k);
}

struct Encoded {
  std::string enc;
  long aut = 1;
};

// AHU encoding of the subtree rooted at v (parent edge excluded), with the
// automorphism order of the rooted decorated subtree.
Encoded encode_rooted(const DecoratedTriple& t, const std::vector<std::vector<int>>& adj, int v,
                      int parent_edge) {
  std::vector<std::pair<std::string, long>> children;
  for (int ei : adj[v]) {
    if (ei == parent_edge) continue;
    const auto& e = t.edges[ei];
    int child = e.a == v ? e.b : e.a;
    Encoded sub = encode_rooted(t, adj, child, ei);
    children.emplace_back(edge_key(e) + ":" + sub.enc, sub.aut);
  }
  std::sort(children.begin(), children.end());
  long aut = 1;
  std::string enc = vertex_key(t.vertices[v]) + "(";
  for (std::size_t i = 0; i < children.size();) {
    std::size_t j = i;
    while (j < children.size() && children[j].first == children[i].first) ++j;
    long run = static_cast<long>(j - i);
    for (long f = 2; f <= run; ++f) aut *= f;
    for (std::size_t k = i; k < j; ++k) {
      aut *= children[k].second;
      enc += children[k].first + "|";
    }
    i = j;
  }
  enc += ")";
  return {enc, aut};
}

// Tree center(s) by iterative leaf stripping.
std::vector<int> centers(const DecoratedTriple& t) {
  const int V = static_cast<int>(t.vertices.size());
  if (V == 1) return {0};
  auto adj = t.adjacency();
  std::vector<int> deg(V);
  for (int v = 0; v < V; ++v) deg[v] = static_cast<int>(adj[v].size());
  std::vector<bool> removed(V, false);
  std::vector<int> layer;
  for (int v = 0; v < V; ++v)
    if (deg[v] == 1) layer.push_back(v);
  int remaining = V;
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      removed[v] = true;
      --remaining;
      for (int ei : adj[v]) {
        const auto& e = t.edges[ei];
        int u = e.a == v ? e.b : e.a;
        if (removed[u]) continue;
        if (--deg[u] == 1) next.push_back(u);
      }
    }
    layer = std::move(next);
  }
  std::vector<int> cs;
  for (int v = 0; v < V; ++v)
    if (!removed[v]) cs.push_back(v);
  return cs;
}

}  // namespace

std::string canonical_form(const DecoratedTriple& t, long* aut_order) {
  auto adj = t.adjacency();
  auto cs = centers(t);
  if (cs.size() == 1) {
    Encoded e = encode_rooted(t, adj, cs[0], -1);
    if (aut_order) *aut_order = e.aut;
    return "C" + e.enc;
  }
  // Bicentral: the central edge is fixed by every automorphism.
  int ce = -1;
  for (int ei : adj[cs[0]]) {
    const auto& e = t.edges[ei];
    if (e.a == cs[1] || e.b == cs[1]) {
      ce = ei;
      break;
    }
  }
  Encoded e1 = encode_rooted(t, adj, cs[0], ce);
  Encoded e2 = encode_rooted(t, adj, cs[1], ce);
  std::string t1 = edge_key(t.edges[ce]) + ":" + e1.enc;
  std::string t2 = edge_key(t.edges[ce]) + ":" + e2.enc;
  long aut = e1.aut * e2.aut * (t1 == t2 ? 2 : 1);
  if (aut_order) *aut_order = aut;
  if (t2 < t1) std::swap(t1, t2);
  return "B{" + t1 + "," + t2 + "}";
}

AutomorphismData automorphism_data(const DecoratedTriple& t) {
  AutomorphismData a;
  canonical_form(t, &a.tree_order);
  for (const auto& e : t.edges) a.deck *= e.k;
  return a;
}

long automorphism_order(const DecoratedTriple& t) { return automorphism_data(t).total(); }

bool is_minimal(const DecoratedTriple& t, const ActionSpec& spec) {
  const int V = static_cast<int>(t.vertices.size());
  auto adj = t.adjacency();
  auto interior = [&](int v) {
    return adj[v].size() == 2 && is_zero_vec(t.vertices[v].beta);
  };
  std::set<std::vector<int>> seen_chains;
  for (std::size_t ei = 0; ei < t.edges.size(); ++ei) {
    // Maximal chain through edge ei: extend both ways while the boundary
    // vertex is a degree-2 class-0 vertex.
    std::vector<int> chain_edges{static_cast<int>(ei)};
    int head = t.edges[ei].a, tail = t.edges[ei].b;
    auto extend = [&](int& endpoint, bool front) {
      while (interior(endpoint)) {
        int cur = chain_edges[front ? 0 : chain_edges.size() - 1];
        int next_edge = adj[endpoint][0] == cur ? adj[endpoint][1] : adj[endpoint][0];
        if (front)
          chain_edges.insert(chain_edges.begin(), next_edge);
        else
          chain_edges.push_back(next_edge);
        const auto& e = t.edges[next_edge];
        endpoint = e.a == endpoint ? e.b : e.a;
      }
    };
    extend(head, true);
    extend(tail, false);
    if (chain_edges.size() < 2) continue;  // no interior vertex
    auto key = chain_edges;
    std::sort(key.begin(), key.end());
    if (!seen_chains.insert(key).second) continue;

    // Walk the chain to list vertices in order.
    std::vector<int> verts{head};
    int cur = head;
    for (int ce : chain_edges) {
      const auto& e = t.edges[ce];
      cur = e.a == cur ? e.b : e.a;
      verts.push_back(cur);
    }
    const auto& u1 = spec.components[t.vertices[verts.front()].component].mu;
    const auto& us = spec.components[t.vertices[verts.back()].component].mu;
    // Candidate ((u1, us), beta) in Omega with beta equal to the chain total;
    // any other candidate mismatches automatically.
    std::vector<Rational> total(spec.h2_rank, Rational(0));
    for (int ce : chain_edges) {
      const auto& e = t.edges[ce];
      total = vec_add(total, vec_scale(Rational(e.k), spec.edges[e.graph_edge].orbit_class));
    }
    int c1 = t.vertices[verts.front()].component;
    int cs = t.vertices[verts.back()].component;
    bool pair_in_graph = false;
    std::vector<Rational> pair_orbit;
    for (const auto& ge : spec.edges)
      if ((ge.from == c1 && ge.to == cs) || (ge.from == cs && ge.to == c1)) {
        pair_in_graph = true;
        pair_orbit = ge.orbit_class;
        break;
      }
    if (!pair_in_graph) continue;
    // total must be a positive integer multiple of the pair's orbit class.
    {
      Rational ratio;
      bool ok = false;
      for (int i = 0; i < spec.h2_rank; ++i)
        if (!pair_orbit[i].is_zero()) {
          ratio = total[i] / pair_orbit[i];
          ok = true;
          break;
        }
      if (!ok || !ratio.is_integer() || !ratio.is_positive()) continue;
      if (total != vec_scale(ratio, pair_orbit)) continue;
    }
    // Proportional split: beta_j = lambda (mu_{j+1} - mu_j) with
    // lambda (mu_s - mu_1) = total.
    auto span = vec_sub(us, u1);
    Rational lambda;
    {
      bool ok = false;
      for (int i = 0; i < spec.h2_rank; ++i)
        if (!span[i].is_zero()) {
          lambda = total[i] / span[i];
          ok = true;
          break;
        }
      if (!ok) continue;  // u1 == us: no candidate
      if (total != vec_scale(lambda, span)) continue;
    }
    bool all_match = true;
    for (std::size_t j = 0; j < chain_edges.size() && all_match; ++j) {
      const auto& e = t.edges[chain_edges[j]];
      auto beta_j = vec_scale(Rational(e.k), spec.edges[e.graph_edge].orbit_class);
      auto gap = vec_sub(spec.components[t.vertices[verts[j + 1]].component].mu,
                         spec.components[t.vertices[verts[j]].component].mu);
      if (beta_j != vec_scale(lambda, gap)) all_match = false;
    }
    if (all_match) return false;
  }
  (void)V;
  return true;
}

namespace {

// All labeled trees on v vertices via Prufer sequences (v >= 2).
std::vector<std::vector<std::pair<int, int>>> labeled_trees(int v) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (v == 2) {
    out.push_back({{0, 1}});
    return out;
  }
  std::vector<int> seq(v - 2, 0);
  while (true) {
    // decode
    std::vector<int> degree(v, 1);
    for (int x : seq) ++degree[x];
    std::vector<std::pair<int, int>> edges;
    std::set<int> leaves;
    std::vector<int> deg = degree;
    for (int i = 0; i < v; ++i)
      if (deg[i] == 1) leaves.insert(i);
    for (int x : seq) {
      int leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      edges.emplace_back(leaf, x);
      if (--deg[x] == 1) leaves.insert(x);
    }
    int a = *leaves.begin(), b = *std::next(leaves.begin());
    edges.emplace_back(a, b);
    out.push_back(std::move(edges));
    // next sequence
    int pos = v - 3;
    while (pos >= 0 && seq[pos] == v - 1) seq[pos--] = 0;
    if (pos < 0) break;
    ++seq[pos];
  }
  return out;
}

// Admissible beta_v values for a component (nonnegative lattice combinations
// bounded by `limit` componentwise, zero included).
std::vector<std::vector<Rational>> vertex_class_options(const ActionSpec& spec, int comp,
                                                        const std::vector<Rational>& limit) {
  std::vector<std::vector<Rational>> reach{std::vector<Rational>(spec.h2_rank, Rational(0))};
  std::set<std::string> seen{vec_str(reach[0])};
  for (std::size_t pos = 0; pos < reach.size(); ++pos) {
    auto cur = reach[pos];
    for (const auto& g : spec.components[comp].vertex_classes) {
      auto next = vec_add(cur, g);
      if (!leq_componentwise(next, limit)) continue;
      if (seen.insert(vec_str(next)).second) reach.push_back(next);
    }
  }
  return reach;
}

}  // namespace

std::vector<TripleSkeleton> enumerate_skeletons(const ActionSpec& spec,
                                                const std::vector<Rational>& beta,
                                                bool allow_no_edges) {
  std::vector<TripleSkeleton> out;
  std::set<std::string> seen;

  // Single-vertex skeletons.
  if (allow_no_edges) {
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
      for (const auto& bv : vertex_class_options(spec, static_cast<int>(c), beta)) {
        if (bv != beta) continue;
        DecoratedTriple t;
        t.vertices.push_back({static_cast<int>(c), beta, {}});
        TripleSkeleton sk;
        sk.canonical = canonical_form(t, &sk.aut_order);
        sk.deck = 1;
        sk.tree = std::move(t);
        if (seen.insert(sk.canonical).second) out.push_back(std::move(sk));
      }
    }
  }
  if (is_zero_vec(beta) || spec.edges.empty()) return out;

  // Edge budget: every edge consumes at least the smallest orbit-class mass.
  Rational total_mass(0);
  for (const auto& b : beta) total_mass += b;
  Rational min_mass;
  bool first = true;
  for (const auto& ge : spec.edges) {
    Rational m(0);
    for (const auto& x : ge.orbit_class) m += x;
    if (first || m < min_mass) {
      min_mass = m;
      first = false;
    }
  }
  if (!min_mass.is_positive()) throw SpecError("edge with nonpositive orbit-class mass");
  long e_max = static_cast<long>((total_mass / min_mass).floor());
  if (e_max < 1) return out;

  // Parallel moment edges between the same component pair are looked up here.
  auto edges_between = [&](int ca, int cb) {
    std::vector<int> r;
    for (std::size_t i = 0; i < spec.edges.size(); ++i)
      if ((spec.edges[i].from == ca && spec.edges[i].to == cb) ||
          (spec.edges[i].from == cb && spec.edges[i].to == ca))
        r.push_back(static_cast<int>(i));
    return r;
  };

  for (long E = 1; E <= e_max; ++E) {
    int V = static_cast<int>(E) + 1;
    for (const auto& shape : labeled_trees(V)) {
      // Assign components, then edge decorations, then vertex classes.
      std::vector<int> comp(V, -1);
      std::function<void(int)> assign_comp = [&](int v) {
        if (v == V) {
          // edge decorations
          std::vector<DecoratedTriple::Edge> edges(shape.size());
          std::function<void(std::size_t, std::vector<Rational>)> assign_edges =
              [&](std::size_t i, std::vector<Rational> used) {
                if (i == shape.size()) {
                  auto residual = vec_sub(beta, used);
                  for (const auto& x : residual)
                    if (x.is_negative()) return;
                  // vertex classes summing to residual
                  std::vector<std::vector<Rational>> bv(V);
                  std::function<void(int, std::vector<Rational>)> assign_bv =
                      [&](int w, std::vector<Rational> acc) {
                        if (w == V) {
                          if (acc != residual) return;
                          DecoratedTriple t;
                          for (int x = 0; x < V; ++x) t.vertices.push_back({comp[x], bv[x], {}});
                          t.edges = edges;
                          if (!is_minimal(t, spec)) return;
                          TripleSkeleton sk;
                          sk.canonical = canonical_form(t, &sk.aut_order);
                          if (!seen.insert(sk.canonical).second) return;
                          sk.deck = 1;
                          for (const auto& e : t.edges) sk.deck *= e.k;
                          sk.tree = std::move(t);
                          out.push_back(std::move(sk));
                          return;
                        }
                        for (const auto& opt : vertex_class_options(spec, comp[w], residual)) {
                          auto next = vec_add(acc, opt);
                          if (!leq_componentwise(next, residual)) continue;
                          bv[w] = opt;
                          assign_bv(w + 1, next);
                        }
                      };
                  assign_bv(0, std::vector<Rational>(spec.h2_rank, Rational(0)));
                  return;
                }
                auto [sa, sb] = shape[i];
                for (int ge : edges_between(comp[sa], comp[sb])) {
                  for (long k = 1;; ++k) {
                    auto cls = vec_scale(Rational(k), spec.edges[ge].orbit_class);
                    auto next = vec_add(used, cls);
                    if (!leq_componentwise(next, beta)) break;
                    edges[i] = {sa, sb, ge, k};
                    assign_edges(i + 1, next);
                  }
                }
              };
          assign_edges(0, std::vector<Rational>(spec.h2_rank, Rational(0)));
          return;
        }
        for (std::size_t c = 0; c < spec.components.size(); ++c) {
          // adjacency feasibility: every already-assigned neighbor must be
          // joined to c by some moment edge
          bool ok = true;
          for (const auto& [sa, sb] : shape) {
            int other = -1;
            if (sa == v && comp[sb] >= 0) other = comp[sb];
            if (sb == v && comp[sa] >= 0) other = comp[sa];
            if (other >= 0 && edges_between(static_cast<int>(c), other).empty()) ok = false;
          }
          if (!ok) continue;
          comp[v] = static_cast<int>(c);
          assign_comp(v + 1);
          comp[v] = -1;
        }
      };
      assign_comp(0);
    }
  }
  return out;
}

std::vector<DecoratedTriple> enumerate_triples(const ActionSpec& spec,
                                               const std::vector<Rational>& beta, int n) {
  for (const auto& b : beta)
    if (b.is_negative()) throw SpecError("beta must be nonnegative in the declared lattice");
  if (n < 0) throw SpecError("negative number of markings");
  if (is_zero_vec(beta) && n < 3) throw SpecError("unstable (n, beta): need n >= 3 when beta = 0");

  auto skeletons = enumerate_skeletons(spec, beta, /*allow_no_edges=*/true);
  std::vector<std::pair<std::string, DecoratedTriple>> found;
  std::set<std::string> seen;
  for (const auto& sk : skeletons) {
    const int V = static_cast<int>(sk.tree.vertices.size());
    // Distribute the n labeled marks over the vertices.
    std::vector<int> where(n, 0);
    while (true) {
      DecoratedTriple t = sk.tree;
      for (int label = 0; label < n; ++label) t.vertices[where[label]].marks.push_back(label);
      // single-vertex stability: a lone class-0 vertex needs >= 3 specials
      bool stable = true;
      if (t.edges.empty() && is_zero_vec(t.vertices[0].beta) && n < 3) stable = false;
      if (stable) {
        std::string canon = canonical_form(t);
        if (seen.insert(canon).second) found.emplace_back(std::move(canon), std::move(t));
      }
      int pos = n - 1;
      while (pos >= 0 && where[pos] == V - 1) where[pos--] = 0;
      if (pos < 0) break;
      ++where[pos];
    }
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<DecoratedTriple> out;
  out.reserve(found.size());
  for (auto& [canon, t] : found) out.push_back(std::move(t));
  return out;
}

}  // namespace gwloc
