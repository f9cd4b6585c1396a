#pragma once

#include "gwloc/action_spec.hpp"

#include <nlohmann/json_fwd.hpp>

namespace gwloc {

/// Decorated tree indexing a fixed-locus component: vertices carry
/// (component, beta_v) and labeled marks; edges carry (moment-graph edge, k)
/// with class k*[O]. Edge markings are fixed at zero.
struct DecoratedTriple {
  struct Vertex {
    int component = 0;
    std::vector<Rational> beta;
    std::vector<int> marks;  // sorted mark labels (0-based)
  };
  struct Edge {
    int a = 0, b = 0;        // tree vertex indices
    int graph_edge = 0;      // index into ActionSpec::edges
    long k = 1;              // beta_e = k * [O]
  };

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  int degree(int v) const {
    int d = 0;
    for (const auto& e : edges) d += (e.a == v) + (e.b == v);
    return d;
  }
  int mark_count() const {
    int n = 0;
    for (const auto& v : vertices) n += static_cast<int>(v.marks.size());
    return n;
  }
  std::vector<std::vector<int>> adjacency() const;  // vertex -> incident edge indices

  nlohmann::json to_json(const ActionSpec& spec) const;
};

struct AutomorphismData {
  long tree_order = 1;   // decorated-tree automorphisms (marking labels fixed pointwise)
  long deck = 1;         // product of the edge cover multiplicities k_e
  long total() const { return tree_order * deck; }
};

/// Canonical form of the decorated (marked) tree; equal strings iff
/// isomorphic. Also reports the decoration-preserving automorphism order.
std::string canonical_form(const DecoratedTriple& t, long* aut_order = nullptr);

AutomorphismData automorphism_data(const DecoratedTriple& t);
long automorphism_order(const DecoratedTriple& t);

/// Def. 2.7(4): every maximal chain through degree-2 class-0 interior
/// vertices must fail the proportional-split comparison for the candidate
/// invariant class of its endpoints.
bool is_minimal(const DecoratedTriple& t, const ActionSpec& spec);

/// All minimal triples for (beta, n), labeled markings, one per isomorphism
/// class, in canonical order. Throws on unstable (n, beta).
std::vector<DecoratedTriple> enumerate_triples(const ActionSpec& spec,
                                               const std::vector<Rational>& beta, int n);

/// Marking-free skeletons used by the assembly: each decorated tree up to
/// isomorphism with its automorphism order and deck factor.
struct TripleSkeleton {
  DecoratedTriple tree;  // marks empty
  long aut_order = 1;
  long deck = 1;
  std::string canonical;
};
std::vector<TripleSkeleton> enumerate_skeletons(const ActionSpec& spec,
                                                const std::vector<Rational>& beta,
                                                bool allow_no_edges);

}  // namespace gwloc
