#include "gwloc/assembly.hpp"

#include "gwloc/spec_json.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

namespace gwloc {

namespace {

Rational factorial(long n) {
  BigInt f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

Rational binomial(long n, long k) {
  if (k < 0 || k > n) return Rational(0);
  return factorial(n) / (factorial(k) * factorial(n - k));
}

}  // namespace

Rational psi_integral(const std::vector<int>& exponents) {
  const long n = static_cast<long>(exponents.size());
  if (n < 3) throw AssemblyError("psi_integral requires n >= 3 marked points");
  long sum = 0;
  for (int a : exponents) {
    if (a < 0) throw AssemblyError("negative psi exponent");
    sum += a;
  }
  if (sum != n - 3) return Rational(0);
  Rational r = factorial(n - 3);
  for (int a : exponents) r /= factorial(a);
  return r;
}

RingClass component_normal_euler(const ActionSpec& spec, int component) {
  const FixedComponent& c = spec.components[component];
  RingClass result = RingClass::unit(c.ring);
  for (const auto& p : c.normal) {
    LocalClass arg = LocalClass::from_ring_class(
        RingClass::scalar(c.ring, RF::t_power(Rational(p.sign) * Rational(p.weight), 1)), 0);
    result *= p_eval(p.chern, arg).psi_coeff(0, 0);
  }
  return result;
}

RF vertex_correlator(const ActionSpec& spec, int component,
                     const std::vector<Rational>& beta_v,
                     const std::vector<std::pair<RingClass, int>>& items, int flag_count) {
  const FixedComponent& c = spec.components[component];
  if (!is_zero_vec(beta_v)) {
    std::vector<std::pair<std::string, int>> key_items;
    for (const auto& [cls, psi] : items) key_items.emplace_back(cls.canonical_key(), psi);
    auto it = spec.correlators.find(correlator_key(c.id, beta_v, std::move(key_items)));
    if (it == spec.correlators.end())
      throw AssemblyError("vertex GW data required: no correlator entry for component '" + c.id +
                          "' with beta_v = " + vec_str(beta_v));
    return it->second;
  }
  RingClass product = RingClass::unit(c.ring);
  for (const auto& [cls, psi] : items) {
    (void)psi;
    product *= cls;
  }
  const int k = static_cast<int>(items.size());
  if (k <= 2) return product.integrate();  // degenerate: no psi integral
  std::vector<int> exps;
  for (const auto& [cls, psi] : items) exps.push_back(psi);
  Rational m = psi_integral(exps);
  if (m.is_zero()) return RF();
  RingClass moving = component_normal_euler(spec, component);
  RingClass factor = flag_count >= 1 ? moving.pow(flag_count - 1) : moving.invert_unit();
  return (product * factor).integrate() * RF(m);
}

namespace {

struct EdgeCtx {
  EdgeInputs inputs;
  RingClass density;  // fixed class times inverse Euler class, psi substituted
  Rational tau_source, tau_sink;  // tangent weights in units of t
  EdgeCtx(EdgeInputs in, RingClass d)
      : inputs(std::move(in)), density(std::move(d)) {}
};

using EdgeCache = std::map<std::pair<int, long>, std::shared_ptr<const EdgeCtx>>;

std::shared_ptr<const EdgeCtx> edge_context(const ActionSpec& spec, EdgeCache& cache,
                                            int graph_edge, long k) {
  auto key = std::make_pair(graph_edge, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  EdgeInputs in = make_edge_inputs(spec, graph_edge, k, /*psi_bound=*/0);
  if (!in.psi1_value.is_zero() || !in.psi2_value.is_zero())
    in.psi_bound = in.carrier->top_degree();
  LocalClass euler = edge_euler(in);
  RingClass density =
      (LocalClass::from_ring_class(edge_fixed_class(in).value, in.psi_bound) * euler.invert())
          .substitute_psi(in.psi1_value, in.psi2_value);
  auto ctx = std::make_shared<EdgeCtx>(std::move(in), std::move(density));
  ctx->tau_source = ctx->inputs.tangent_weight(true);
  ctx->tau_sink = ctx->inputs.tangent_weight(false);
  cache.emplace(key, ctx);
  return ctx;
}

struct Flag {
  int tree_edge = 0;
  bool at_source = false;
};

struct VertexOption {
  RF scalar;
  // multiplier per incident flag, in that edge's carrier ring
  std::vector<RingClass> multipliers;
};

// Cached diagonal decompositions, keyed by ring identity.
using DiagCache = std::map<const GradedRing*, std::vector<std::pair<RingClass, RingClass>>>;

const std::vector<std::pair<RingClass, RingClass>>& diagonal_of(DiagCache& cache,
                                                                const RingPtr& ring) {
  auto it = cache.find(ring.get());
  if (it != cache.end()) return it->second;
  return cache.emplace(ring.get(), diagonal_decomposition(ring)).first->second;
}

class GraphEvaluator {
public:
  GraphEvaluator(const ActionSpec& spec, const DecoratedTriple& tree,
                 const std::vector<std::vector<Insertion>>& marks, EdgeCache& edges,
                 DiagCache& diagonals)
      : spec_(spec), tree_(tree), marks_(marks), diagonals_(diagonals) {
    const int V = static_cast<int>(tree.vertices.size());
    flags_.assign(V, {});
    for (std::size_t ei = 0; ei < tree.edges.size(); ++ei) {
      const auto& e = tree.edges[ei];
      auto ctx = edge_context(spec, edges, e.graph_edge, e.k);
      ctx_.push_back(ctx);
      const auto& ge = spec.edges[e.graph_edge];
      bool a_is_source = tree.vertices[e.a].component == ge.from;
      flags_[e.a].push_back({static_cast<int>(ei), a_is_source});
      flags_[e.b].push_back({static_cast<int>(ei), !a_is_source});
    }
  }

  RF evaluate() {
    const int V = static_cast<int>(tree_.vertices.size());
    options_.resize(V);
    for (int v = 0; v < V; ++v) {
      options_[v] = vertex_options(v);
      if (options_[v].empty()) return RF();  // psi budget unrealizable
    }
    RF total;
    std::vector<int> choice(V, 0);
    while (true) {
      total += state_value(choice);
      int pos = V - 1;
      while (pos >= 0 && choice[pos] + 1 == static_cast<int>(options_[pos].size()))
        choice[pos--] = 0;
      if (pos < 0) break;
      ++choice[pos];
    }
    return total;
  }

private:
  // Evaluation pullback of a class on the flag's end component into the
  // edge's carrier ring.
  RingClass pull(const Flag& f, const RingClass& cls) const {
    const EdgeInputs& in = ctx_[f.tree_edge]->inputs;
    return f.at_source ? in.pull_source(cls) : in.pull_sink(cls);
  }
  Rational tau(const Flag& f) const {
    return f.at_source ? ctx_[f.tree_edge]->tau_source : ctx_[f.tree_edge]->tau_sink;
  }
  const RingClass& psi_value(const Flag& f) const {
    const EdgeInputs& in = ctx_[f.tree_edge]->inputs;
    return f.at_source ? in.psi1_value : in.psi2_value;
  }
  // (tau*t - psi)^{-1} on the edge carrier.
  RingClass node_inverse(const Flag& f) const {
    RingClass lin = RingClass::scalar(ctx_[f.tree_edge]->inputs.carrier,
                                      RF::t_power(tau(f), 1)) -
                    psi_value(f);
    return lin.invert_unit();
  }

  std::vector<VertexOption> vertex_options(int v) {
    const auto& vert = tree_.vertices[v];
    const auto& comp = spec_.components[vert.component];
    const auto& fl = flags_[v];
    const int d = static_cast<int>(fl.size());
    const auto& marks = marks_[v];
    const int m = static_cast<int>(marks.size());
    const int kv = d + m;

    auto restriction = [&](const Insertion& ins) -> const RingClass& {
      auto it = comp.restrictions.find(ins.name);
      if (it == comp.restrictions.end())
        throw AssemblyError("component '" + comp.id + "' has no restriction for insertion '" +
                            ins.name + "'");
      return it->second;
    };

    std::vector<VertexOption> out;

    if (!is_zero_vec(vert.beta) || (kv >= 3)) {
      // Moduli or table vertex: expand every flag's node factor
      // 1/(tau t - psi_edge - psi_vertex) in vertex-side psi powers and pair
      // the fibre product through the component diagonal.
      int mark_psi = 0;
      for (const auto& ins : marks) mark_psi += ins.descendant;
      bool table = !is_zero_vec(vert.beta);
      int budget;
      if (table) {
        budget = spec_.correlator_psi_cap;
      } else {
        budget = kv - 3 - mark_psi;
        if (budget < 0) return out;  // psi integral vanishes identically
      }
      const auto& diag = diagonal_of(diagonals_, comp.ring);
      RingClass moving = component_normal_euler(spec_, vert.component);
      RingClass moving_factor =
          d >= 1 ? moving.pow(d - 1) : moving.invert_unit();

      // enumerate per-flag (diagonal index, psi power)
      std::vector<int> di(d, 0), dj(d, 0);
      std::function<void(int, int)> rec = [&](int pos, int used) {
        if (pos == d) {
          if (!table && used != budget) return;
          VertexOption opt;
          std::vector<std::pair<RingClass, int>> items;
          RingClass vertex_class = RingClass::unit(comp.ring);
          std::vector<int> exps;
          for (int f = 0; f < d; ++f) {
            items.emplace_back(diag[di[f]].first, dj[f]);
            vertex_class *= diag[di[f]].first;
            exps.push_back(dj[f]);
          }
          for (const auto& ins : marks) {
            items.emplace_back(restriction(ins), ins.descendant);
            vertex_class *= restriction(ins);
            exps.push_back(ins.descendant);
          }
          if (table) {
            opt.scalar = vertex_correlator(spec_, vert.component, vert.beta, items, d);
          } else {
            Rational mult = psi_integral(exps);
            if (mult.is_zero()) return;
            opt.scalar = (vertex_class * moving_factor).integrate() * RF(mult);
          }
          if (opt.scalar.is_zero()) return;
          for (int f = 0; f < d; ++f) {
            RingClass inv = node_inverse(fl[f]);
            opt.multipliers.push_back(pull(fl[f], diag[di[f]].second) * inv.pow(dj[f] + 1));
          }
          out.push_back(std::move(opt));
          return;
        }
        for (di[pos] = 0; di[pos] < static_cast<int>(diag.size()); ++di[pos])
          for (dj[pos] = 0; dj[pos] + used <= budget; ++dj[pos]) rec(pos + 1, used + dj[pos]);
      };
      rec(0, 0);
      return out;
    }

    // Degenerate vertices (beta_v = 0, d + m <= 2).
    if (d == 1 && m == 0) {
      // Unmarked leaf: moving automorphisms of the edge's free end.
      VertexOption opt;
      opt.scalar = RF(Rational(1));
      const Flag& f = fl[0];
      RingClass lin =
          RingClass::scalar(ctx_[f.tree_edge]->inputs.carrier, RF::t_power(tau(f), 1)) -
          psi_value(f);
      opt.multipliers.push_back(std::move(lin));
      out.push_back(std::move(opt));
      return out;
    }
    if (d == 1 && m == 1) {
      // Marked leaf: the mark rides the edge end; its psi class is the edge
      // cotangent there.
      VertexOption opt;
      opt.scalar = RF(Rational(1));
      const Flag& f = fl[0];
      RingClass cot =
          psi_value(f) - RingClass::scalar(ctx_[f.tree_edge]->inputs.carrier, RF::t_power(tau(f), 1));
      RingClass mult = pull(f, restriction(marks[0])) * cot.pow(marks[0].descendant);
      opt.multipliers.push_back(std::move(mult));
      out.push_back(std::move(opt));
      return out;
    }
    if (d == 2 && m == 0) {
      // Pass-through vertex: node smoothing of the two edge branches plus the
      // moving part of the matching condition.
      const Flag &f1 = fl[0], &f2 = fl[1];
      Rational s = tau(f1) + tau(f2);
      if (s.is_zero())
        throw AssemblyError(
            "zero node-smoothing weight at a pass-through vertex of a minimal triple; "
            "input data is inconsistent");
      const auto& diag = diagonal_of(diagonals_, comp.ring);
      RingClass moving = component_normal_euler(spec_, vert.component);
      int cap1 = psi_value(f1).is_zero() ? 0 : ctx_[f1.tree_edge]->inputs.carrier->top_degree();
      int cap2 = psi_value(f2).is_zero() ? 0 : ctx_[f2.tree_edge]->inputs.carrier->top_degree();
      for (std::size_t i = 0; i < diag.size(); ++i)
        for (int a = 0; a <= cap1; ++a)
          for (int b = 0; b <= cap2; ++b) {
            VertexOption opt;
            // binom(a+b, a) / (s t)^{a+b+1}
            RF inv = RF::t_power(s, 1).inverse();
            RF coeff = RF(binomial(a + b, a));
            for (int p = 0; p < a + b + 1; ++p) coeff *= inv;
            opt.scalar = coeff;
            RingClass m1 = pull(f1, diag[i].first * moving) * psi_value(f1).pow(a);
            RingClass m2 = pull(f2, diag[i].second) * psi_value(f2).pow(b);
            opt.multipliers = {std::move(m1), std::move(m2)};
            if (!opt.scalar.is_zero()) out.push_back(std::move(opt));
          }
      return out;
    }
    throw AssemblyError("unstable vertex in triple (degree " + std::to_string(d) + ", marks " +
                        std::to_string(m) + ")");
  }

  RF state_value(const std::vector<int>& choice) const {
    RF value(Rational(1));
    // per tree edge, the end multipliers chosen by the two vertices
    std::vector<RingClass> src_mult, snk_mult;
    for (std::size_t e = 0; e < tree_.edges.size(); ++e) {
      src_mult.push_back(RingClass::unit(ctx_[e]->inputs.carrier));
      snk_mult.push_back(RingClass::unit(ctx_[e]->inputs.carrier));
    }
    for (std::size_t v = 0; v < tree_.vertices.size(); ++v) {
      const VertexOption& opt = options_[v][choice[v]];
      value *= opt.scalar;
      if (value.is_zero()) return RF();
      for (std::size_t f = 0; f < flags_[v].size(); ++f) {
        const Flag& fl = flags_[v][f];
        if (fl.at_source)
          src_mult[fl.tree_edge] *= opt.multipliers[f];
        else
          snk_mult[fl.tree_edge] *= opt.multipliers[f];
      }
    }
    for (std::size_t e = 0; e < tree_.edges.size(); ++e) {
      RF integral = (ctx_[e]->density * src_mult[e] * snk_mult[e]).integrate();
      value *= integral;
      if (value.is_zero()) return RF();
    }
    return value;
  }

  const ActionSpec& spec_;
  const DecoratedTriple& tree_;
  const std::vector<std::vector<Insertion>>& marks_;
  DiagCache& diagonals_;
  std::vector<std::shared_ptr<const EdgeCtx>> ctx_;
  std::vector<std::vector<Flag>> flags_;
  std::vector<std::vector<VertexOption>> options_;
};

RF graph_value(const ActionSpec& spec, const DecoratedTriple& tree,
               const std::vector<std::vector<Insertion>>& marks, EdgeCache& edges,
               DiagCache& diagonals) {
  GraphEvaluator ev(spec, tree, marks, edges, diagonals);
  return ev.evaluate();
}

}  // namespace

GraphContribution graph_contribution(const ActionSpec& spec, const DecoratedTriple& triple,
                                     const std::vector<Insertion>& insertions) {
  std::vector<std::vector<Insertion>> marks(triple.vertices.size());
  int n = 0;
  for (std::size_t v = 0; v < triple.vertices.size(); ++v)
    for (int label : triple.vertices[v].marks) {
      if (label < 0 || label >= static_cast<int>(insertions.size()))
        throw AssemblyError("triple carries a mark label without a matching insertion");
      marks[v].push_back(insertions[label]);
      ++n;
    }
  if (n != static_cast<int>(insertions.size()))
    throw AssemblyError("number of insertions does not match the triple's markings");

  GraphContribution out;
  out.automorphisms = automorphism_data(triple);
  EdgeCache edges;
  DiagCache diagonals;
  RF raw = graph_value(spec, triple, marks, edges, diagonals);
  out.value = raw / RF(Rational(out.automorphisms.total()));
  out.breakdown.emplace_back("automorphism_order", std::to_string(out.automorphisms.total()));
  for (std::size_t e = 0; e < triple.edges.size(); ++e) {
    auto ctx = edge_context(spec, edges, triple.edges[e].graph_edge, triple.edges[e].k);
    EdgeInputs in = ctx->inputs;
    in.psi_bound = 2;
    out.breakdown.emplace_back("edge_" + std::to_string(e) + "_euler",
                               edge_euler(in).pretty());
  }
  out.breakdown.emplace_back("value", out.value.pretty());
  return out;
}

InvariantResult gw_invariant(const ActionSpec& spec, const std::vector<Rational>& beta,
                             const std::vector<Insertion>& insertions, int jobs,
                             bool want_breakdown) {
  const int n = static_cast<int>(insertions.size());
  if (is_zero_vec(beta) && n < 3)
    throw AssemblyError("unstable (n, beta): need n >= 3 when beta = 0");

  InvariantResult res;
  res.vdim = Rational(spec.dim_x) + spec.c1_dot(beta) + Rational(n) - Rational(3);
  Rational deg(0);
  for (const auto& ins : insertions)
    deg += Rational(spec.insertion(ins.name).codim) + Rational(ins.descendant);
  res.insertion_degree = deg;
  res.dimension_matched = (deg == res.vdim);

  // Species of identical insertions; contributions depend only on per-vertex
  // species counts, so labeled markings are grouped with multinomial weights.
  std::vector<std::pair<Insertion, long>> species;
  for (const auto& ins : insertions) {
    bool found = false;
    for (auto& [s, cnt] : species)
      if (s.name == ins.name && s.descendant == ins.descendant) {
        ++cnt;
        found = true;
      }
    if (!found) species.emplace_back(ins, 1);
  }

  auto skeletons = enumerate_skeletons(spec, beta, /*allow_no_edges=*/true);
  res.skeletons = static_cast<long>(skeletons.size());

  // Pre-warm shared caches serially so workers only read them.
  EdgeCache edges;
  DiagCache diagonals;
  for (const auto& sk : skeletons) {
    for (const auto& e : sk.tree.edges) edge_context(spec, edges, e.graph_edge, e.k);
    for (const auto& v : sk.tree.vertices) diagonal_of(diagonals, spec.components[v.component].ring);
  }

  std::vector<RF> per_skeleton(skeletons.size());
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t s = begin; s < end; ++s) {
        const auto& sk = skeletons[s];
        const int V = static_cast<int>(sk.tree.vertices.size());
        RF sum;
        // distribute each species over the vertices
        std::vector<std::vector<Insertion>> marks(V);
        std::vector<std::vector<long>> counts(species.size(), std::vector<long>(V, 0));
        std::function<void(std::size_t)> rec = [&](std::size_t sp) {
          if (sp == species.size()) {
            Rational weight(1);
            for (std::size_t q = 0; q < species.size(); ++q) {
              weight *= factorial(species[q].second);
              for (int v = 0; v < V; ++v) weight /= factorial(counts[q][v]);
            }
            for (int v = 0; v < V; ++v) {
              marks[v].clear();
              for (std::size_t q = 0; q < species.size(); ++q)
                for (long c = 0; c < counts[q][v]; ++c) marks[v].push_back(species[q].first);
            }
            RF value = graph_value(spec, sk.tree, marks, edges, diagonals);
            sum += value * RF(weight);
            return;
          }
          long total = species[sp].second;
          std::function<void(int, long)> place = [&](int v, long left) {
            if (v == V - 1) {
              counts[sp][v] = left;
              rec(sp + 1);
              return;
            }
            for (long c = 0; c <= left; ++c) {
              counts[sp][v] = c;
              place(v + 1, left - c);
            }
          };
          place(0, total);
        };
        rec(0);
        per_skeleton[s] = sum / RF(Rational(sk.aut_order) * Rational(sk.deck));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  jobs = std::max(1, jobs);
  if (jobs == 1 || skeletons.size() <= 1) {
    work(0, skeletons.size());
  } else {
    std::vector<std::thread> threads;
    std::size_t chunk = (skeletons.size() + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j) {
      std::size_t begin = j * chunk, end = std::min(skeletons.size(), begin + chunk);
      if (begin >= end) break;
      threads.emplace_back(work, begin, end);
    }
    for (auto& t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  RF total;
  for (std::size_t s = 0; s < skeletons.size(); ++s) {
    total += per_skeleton[s];
    if (want_breakdown) res.breakdown.emplace_back(skeletons[s].canonical, per_skeleton[s]);
  }
  res.total = total;
  res.t_independent = total.is_constant();
  if (res.t_independent) res.value = total.constant_value();
  return res;
}

}  // namespace gwloc
