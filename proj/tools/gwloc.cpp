#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gwloc/assembly.hpp"
#include "gwloc/generators.hpp"
#include "gwloc/oracles.hpp"
#include "gwloc/spec_json.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace gwloc;
using nlohmann::json;

namespace {

struct CliError : std::runtime_error {
  int code;
  CliError(int c, const std::string& m) : std::runtime_error(m), code(c) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(2, "cannot open file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Rational> parse_beta(const std::string& s, int m) {
  std::vector<Rational> beta;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) beta.push_back(Rational::parse(part));
  if (static_cast<int>(beta.size()) != m)
    throw CliError(2, "beta needs " + std::to_string(m) + " comma-separated components");
  return beta;
}

// "name", "name^k" (descendant power via psi), e.g. "pt,pt,H^2*psi^1"? The
// descendant exponent is written name:a.
std::vector<Insertion> parse_insertions(const std::string& s) {
  std::vector<Insertion> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    Insertion ins;
    auto colon = part.find(':');
    if (colon == std::string::npos) {
      ins.name = part;
    } else {
      ins.name = part.substr(0, colon);
      ins.descendant = std::stoi(part.substr(colon + 1));
    }
    out.push_back(std::move(ins));
  }
  return out;
}

json local_class_json(const LocalClass& c) {
  json terms = json::array();
  for (const auto& [k, v] : c.terms())
    terms.push_back(json{{"psi1", k.first}, {"psi2", k.second}, {"class", ring_class_to_json(v)}});
  return terms;
}

int emit(json& report, bool pretty, std::chrono::steady_clock::time_point start) {
  report["timing_ms"] = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                              std::chrono::steady_clock::now() - start)
                                              .count());
  std::cout << (pretty ? report.dump(2) : report.dump()) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact genus-0 equivariant Gromov-Witten invariants by virtual localization"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent the JSON report and add human-readable fields");

  // pn
  auto* pn = app.add_subcommand("pn", "emit a generated P^N action config");
  int pn_dim = 1;
  std::string pn_weights = "0,1";
  pn->add_option("--dim", pn_dim, "projective dimension N")->required();
  pn->add_option("--weights", pn_weights, "comma-separated integer weights a_0..a_N")->required();

  // graphs
  auto* graphs = app.add_subcommand("graphs", "enumerate the minimal triples for (beta, n)");
  std::string g_config, g_beta;
  int g_n = 0;
  graphs->add_option("--config", g_config)->required();
  graphs->add_option("--beta", g_beta)->required();
  graphs->add_option("--n", g_n)->required();

  // edge
  auto* edge = app.add_subcommand("edge", "edge Euler class and K-class sum");
  std::string e_config, e_omega, e_cover, e_data;
  long e_k = 0;
  int e_psi = 2;
  edge->add_option("--config", e_config)->required();
  edge->add_option("--omega", e_omega, "edge as 'fromId:toId'")->required();
  edge->add_option("--cover", e_cover, "multiplicity n[/m] relative to the generic span class");
  edge->add_option("--k", e_k, "multiple of the primitive orbit class");
  edge->add_option("--data", e_data, "edge descriptor JSON with wall/fixed-class data");
  edge->add_option("--psi-bound", e_psi, "psi truncation bound for the report");

  // invariant
  auto* inv = app.add_subcommand("invariant", "assemble a Gromov-Witten invariant");
  std::string i_config, i_beta, i_insertions;
  bool i_breakdown = false;
  int i_jobs = 1;
  inv->add_option("--config", i_config)->required();
  inv->add_option("--beta", i_beta)->required();
  inv->add_option("--insertions", i_insertions,
                  "comma-separated insertion names; name:a adds a psi^a descendant")
      ->required();
  inv->add_flag("--breakdown", i_breakdown, "include the per-graph breakdown");
  inv->add_option("--jobs", i_jobs, "worker threads for the graph sum");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "run the oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto start = std::chrono::steady_clock::now();
  json report;
  report["schema"] = "gwloc/1";
  report["diagnostics"] = json::array();

  try {
    if (*pn) {
      std::vector<long> weights;
      std::stringstream ss(pn_weights);
      std::string part;
      while (std::getline(ss, part, ',')) weights.push_back(std::stol(part));
      ActionSpec spec = projective_space_spec(pn_dim, weights);
      json config = serialize_action_spec(spec);
      std::cout << (pretty ? config.dump(2) : config.dump()) << "\n";
      return 0;
    }

    if (*graphs) {
      std::string text = read_file(g_config);
      ActionSpec spec = parse_action_spec(text);
      report["command"] = "graphs";
      report["config_digest"] = fnv1a(text);
      auto beta = parse_beta(g_beta, spec.h2_rank);
      auto triples = enumerate_triples(spec, beta, g_n);
      json list = json::array();
      for (const auto& t : triples) {
        json tj = t.to_json(spec);
        AutomorphismData a = automorphism_data(t);
        tj["automorphisms"] =
            json{{"tree", a.tree_order}, {"deck", a.deck}, {"total", a.total()}};
        list.push_back(std::move(tj));
      }
      report["results"] = json{{"beta", g_beta}, {"n", g_n},
                               {"count", triples.size()}, {"triples", list}};
      return emit(report, pretty, start);
    }

    if (*edge) {
      std::string text = read_file(e_config);
      ActionSpec spec = parse_action_spec(text);
      report["command"] = "edge";
      report["config_digest"] = fnv1a(text);
      auto colon = e_omega.find(':');
      if (colon == std::string::npos) throw CliError(2, "--omega must be 'fromId:toId'");
      int from = spec.component_index(e_omega.substr(0, colon));
      int to = spec.component_index(e_omega.substr(colon + 1));
      int edge_index = -1;
      for (std::size_t i = 0; i < spec.edges.size(); ++i)
        if (spec.edges[i].from == from && spec.edges[i].to == to)
          edge_index = static_cast<int>(i);
      if (edge_index < 0) throw CliError(2, "no moment-graph edge " + e_omega);
      long k = e_k;
      if (!e_cover.empty()) {
        auto slash = e_cover.find('/');
        long n = std::stol(e_cover.substr(0, slash == std::string::npos ? e_cover.size() : slash));
        long m = slash == std::string::npos ? 1 : std::stol(e_cover.substr(slash + 1));
        if (n < 1 || m < 1) throw CliError(2, "--cover needs positive n[/m]");
        long s = spec.edges[edge_index].stab;
        if ((n * s) % m != 0)
          throw CliError(2, "--cover " + e_cover + " is not an integer multiple of the primitive class (stab " +
                                std::to_string(s) + ")");
        k = n * s / m;
      }
      if (k < 1) k = 1;
      EdgeInputs in = make_edge_inputs(spec, edge_index, k, e_psi);
      if (!e_data.empty()) {
        json data = json::parse(read_file(e_data));
        auto parse_pieces = [&](const json& arr) {
          std::vector<EdgeBundlePiece> ps;
          for (const auto& pj : arr) {
            EdgeBundlePiece p;
            p.weight = pj.at("weight").get<int>();
            for (const auto& ch : pj.at("chern"))
              p.chern.push_back(parse_class_expr(ch.get<std::string>(), in.carrier));
            ps.push_back(std::move(p));
          }
          return ps;
        };
        if (data.contains("walls"))
          for (const auto& wj : data.at("walls")) {
            EdgeWallData w(in.carrier);
            if (wj.contains("k_plus")) w.k_plus = parse_pieces(wj.at("k_plus"));
            if (wj.contains("k_minus")) w.k_minus = parse_pieces(wj.at("k_minus"));
            if (wj.contains("xi_plus"))
              w.xi_plus = parse_class_expr(wj.at("xi_plus").get<std::string>(), in.carrier);
            if (wj.contains("xi_minus"))
              w.xi_minus = parse_class_expr(wj.at("xi_minus").get<std::string>(), in.carrier);
            in.walls.push_back(std::move(w));
          }
        if (data.contains("fixed_class"))
          in.declared_fixed_class =
              parse_class_expr(data.at("fixed_class").get<std::string>(), in.carrier);
      }
      KClassSum ks = edge_kclass(in);
      LocalClass euler = edge_euler(in);
      FixedClassResult fixed = edge_fixed_class(in);
      json items = json::array();
      for (const auto& s : ks.items) {
        const char* kind = s.kind == KSummand::QPlusSource  ? "Q+_source"
                           : s.kind == KSummand::QMinusSink ? "Q-_sink"
                           : s.kind == KSummand::WallKPlus  ? "wall_K+"
                                                            : "wall_K-";
        json ij{{"sign", s.sign}, {"kind", kind}, {"w", s.weight},
                {"l", s.l},       {"twist", s.twist}};
        if (s.wall >= 0) ij["wall"] = s.wall;
        items.push_back(std::move(ij));
      }
      json results{{"omega", e_omega},
                   {"k", in.k},
                   {"cover", std::to_string(in.cover_n) + "/" + std::to_string(in.cover_m)},
                   {"stab", in.stab},
                   {"span", in.span.str()},
                   {"kclass", items},
                   {"euler", local_class_json(euler)},
                   {"fixed_class", json{{"value", ring_class_to_json(fixed.value)},
                                        {"provenance", fixed.provenance}}}};
      if (pretty) results["euler_pretty"] = euler.pretty();
      report["results"] = std::move(results);
      return emit(report, pretty, start);
    }

    if (*inv) {
      std::string text = read_file(i_config);
      ActionSpec spec = parse_action_spec(text);
      report["command"] = "invariant";
      report["config_digest"] = fnv1a(text);
      auto beta = parse_beta(i_beta, spec.h2_rank);
      auto insertions = parse_insertions(i_insertions);
      auto res = gw_invariant(spec, beta, insertions, i_jobs, i_breakdown);
      json rj{{"beta", i_beta},
              {"insertions", i_insertions},
              {"vdim", res.vdim.str()},
              {"insertion_degree", res.insertion_degree.str()},
              {"dimension_matched", res.dimension_matched},
              {"t_independent", res.t_independent},
              {"skeletons", res.skeletons}};
      if (res.t_independent)
        rj["total"] = res.value.str();
      else
        rj["total_class"] = rf_to_json(res.total);
      if (!res.dimension_matched) rj["note"] = "non-numerical";
      if (i_breakdown) {
        json bd = json::array();
        for (const auto& [canon, value] : res.breakdown)
          bd.push_back(json{{"skeleton", canon}, {"value", rf_to_json(value)}});
        rj["breakdown"] = std::move(bd);
      }
      report["results"] = std::move(rj);
      int rc = 0;
      if (res.dimension_matched && !res.t_independent) {
        report["diagnostics"].push_back(
            "t-dependent total for a dimension-matched query: input data or formula "
            "interpretation is inconsistent");
        rc = 1;
      }
      emit(report, pretty, start);
      return rc;
    }

    if (*selftest) {
      report["command"] = "selftest";
      auto reports = run_selftest();
      bool all = true;
      json list = json::array();
      for (const auto& r : reports) {
        all = all && r.exact_equal;
        list.push_back(json{{"name", r.name},
                            {"inputs", r.inputs},
                            {"oracle", r.oracle_value},
                            {"engine", r.engine_value},
                            {"verdict", r.exact_equal ? "exact-equal" : "MISMATCH"}});
      }
      report["results"] = json{{"reports", list}, {"all_exact", all}};
      emit(report, pretty, start);
      return all ? 0 : 1;
    }
  } catch (const CliError& e) {
    report["diagnostics"].push_back(e.what());
    emit(report, pretty, start);
    return e.code;
  } catch (const SpecError& e) {
    for (const auto& d : e.diagnostics()) report["diagnostics"].push_back(d);
    emit(report, pretty, start);
    return 2;
  } catch (const std::exception& e) {
    report["diagnostics"].push_back(e.what());
    emit(report, pretty, start);
    return 1;
  }
  return 2;
}
