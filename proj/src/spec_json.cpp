#include "gwloc/spec_json.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gwloc {

using nlohmann::json;

namespace {

struct ExprToken {
  enum Kind { Number, Name, Times, Plus, Minus, Caret, End } kind;
  std::string text;
};

class ExprLexer {
public:
  explicit ExprLexer(const std::string& s) : s_(s) {}
  ExprToken next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ >= s_.size()) return {ExprToken::End, ""};
    char c = s_[pos_];
    if (c == '*') return ++pos_, ExprToken{ExprToken::Times, "*"};
    if (c == '+') return ++pos_, ExprToken{ExprToken::Plus, "+"};
    if (c == '-') return ++pos_, ExprToken{ExprToken::Minus, "-"};
    if (c == '^') return ++pos_, ExprToken{ExprToken::Caret, "^"};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
        ++pos_;
      return {ExprToken::Number, s_.substr(start, pos_ - start)};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                  s_[pos_] == '_' || s_[pos_] == '\''))
        ++pos_;
      return {ExprToken::Name, s_.substr(start, pos_ - start)};
    }
    throw SpecError(std::string("unexpected character '") + c + "' in class expression");
  }

private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

long parse_exponent(ExprLexer& lex, ExprToken& tok) {
  tok = lex.next();
  bool neg = false;
  if (tok.kind == ExprToken::Minus) {
    neg = true;
    tok = lex.next();
  }
  if (tok.kind != ExprToken::Number || tok.text.find('/') != std::string::npos)
    throw SpecError("expected integer exponent in class expression");
  long e = std::stol(tok.text);
  tok = lex.next();
  return neg ? -e : e;
}

}  // namespace

RingClass parse_class_expr(const std::string& expr, const RingPtr& ring) {
  ExprLexer lex(expr);
  RingClass out = RingClass::zero(ring);
  ExprToken tok = lex.next();
  if (tok.kind == ExprToken::End) throw SpecError("empty class expression");
  while (tok.kind != ExprToken::End) {
    Rational sign(1);
    while (tok.kind == ExprToken::Plus || tok.kind == ExprToken::Minus) {
      if (tok.kind == ExprToken::Minus) sign = -sign;
      tok = lex.next();
    }
    Rational coeff = sign;
    long tpow = 0;
    std::vector<int> exps(ring->generators().size(), 0);
    bool any = false;
    while (true) {
      if (tok.kind == ExprToken::Number) {
        coeff *= Rational::parse(tok.text);
        tok = lex.next();
        any = true;
      } else if (tok.kind == ExprToken::Name) {
        std::string name = tok.text;
        tok = lex.next();
        long e = 1;
        if (tok.kind == ExprToken::Caret) e = parse_exponent(lex, tok);
        if (name == "t") {
          tpow += e;
        } else {
          auto it = std::find_if(ring->generators().begin(), ring->generators().end(),
                                 [&](const RingGenerator& g) { return g.name == name; });
          if (it == ring->generators().end())
            throw SpecError("unknown generator '" + name + "' in class expression");
          exps[it - ring->generators().begin()] += static_cast<int>(e);
        }
        any = true;
      } else {
        break;
      }
      if (tok.kind == ExprToken::Times) tok = lex.next();
    }
    if (!any) throw SpecError("malformed class expression: '" + expr + "'");
    auto idx = ring->find_monomial(exps);
    if (!idx)
      throw SpecError("monomial outside the ring basis in class expression: '" + expr + "'");
    out.set_coeff(*idx, out.coeff(*idx) + RF::t_power(coeff, static_cast<int>(tpow)));
  }
  return out;
}

std::string class_expr_string(const RingClass& c) {
  if (c.is_zero()) return "0";
  std::string s;
  const auto& ring = *c.ring();
  for (const auto& [i, v] : c.coeffs()) {
    // Coefficient must be a Laurent polynomial in t: num poly over t^k.
    int shift = 0;
    if (v.den().degree() != 0) {
      if (v.den().order_at_zero() != v.den().degree())
        throw SpecError("class not expressible as monomial terms");
      shift = -v.den().degree();
    }
    for (int j = 0; j <= v.num().degree(); ++j) {
      Rational q = v.num().coeff(j);
      if (q.is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += q.str();
      int k = j + shift;
      if (k != 0) s += "*t^" + std::to_string(k);
      if (i != ring.unit_index()) s += "*" + ring.monomial_name(i);
    }
  }
  return s;
}

std::string correlator_key(const std::string& component_id, const std::vector<Rational>& beta,
                           std::vector<std::pair<std::string, int>> items) {
  std::sort(items.begin(), items.end());
  std::ostringstream os;
  os << component_id << "|" << vec_str(beta) << "|";
  for (const auto& [cls, psi] : items) os << cls << "^" << psi << ";";
  return os.str();
}

namespace {

std::vector<Rational> parse_rational_array(const json& a, const std::string& what) {
  if (!a.is_array()) throw SpecError(what + " must be an array of \"p/q\" strings");
  std::vector<Rational> out;
  for (const auto& x : a) out.push_back(Rational::parse(x.get<std::string>()));
  return out;
}

std::vector<int> parse_int_array(const json& a) {
  std::vector<int> out;
  for (const auto& x : a) out.push_back(x.get<int>());
  return out;
}

RingPtr parse_ring(const json& j, const std::string& where, const std::string& name) {
  for (const char* key : {"generators", "basis", "table", "integration"})
    if (!j.contains(key))
      throw SpecError(where + ": component ring incomplete (missing '" + std::string(key) + "')");
  std::vector<RingGenerator> gens;
  for (const auto& g : j.at("generators"))
    gens.push_back({g.at("name").get<std::string>(), g.at("degree").get<int>()});
  std::vector<std::vector<int>> basis;
  for (const auto& b : j.at("basis")) basis.push_back(parse_int_array(b));
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
  auto lookup = [&](const json& m) {
    auto exps = parse_int_array(m);
    auto it = index.find(exps);
    if (it == index.end()) throw SpecError(where + ": table monomial outside basis");
    return it->second;
  };
  std::vector<std::tuple<int, int, BasisExpansion>> table;
  for (const auto& e : j.at("table")) {
    BasisExpansion val;
    for (const auto& term : e.at("value"))
      val.emplace_back(lookup(term.at("monomial")),
                       Rational::parse(term.at("coeff").get<std::string>()));
    table.emplace_back(lookup(e.at("lhs")), lookup(e.at("rhs")), std::move(val));
  }
  int top = j.contains("top_degree") ? j.at("top_degree").get<int>() : 0;
  if (!j.contains("top_degree")) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      int d = 0;
      for (std::size_t g = 0; g < gens.size(); ++g) d += basis[i][g] * gens[g].degree;
      top = std::max(top, d);
    }
  }
  std::vector<Rational> integration(basis.size(), Rational(0));
  for (const auto& term : j.at("integration"))
    integration[lookup(term.at("monomial"))] = Rational::parse(term.at("coeff").get<std::string>());
  try {
    return GradedRing::from_presentation(std::move(gens), std::move(basis), std::move(table), top,
                                         std::move(integration), name);
  } catch (const RingError& e) {
    throw SpecError(where + ": " + e.what());
  }
}

}  // namespace

ActionSpec parse_action_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw SpecError(std::string("config is not valid JSON: ") + e.what());
  }
  ActionSpec spec;
  try {
    spec.dim_x = j.at("dim_x").get<int>();
    spec.h2_rank = j.at("h2_rank").get<int>();
    spec.c1_pairing = parse_rational_array(j.at("c1_pairing"), "c1_pairing");
    if (j.contains("moment_projection"))
      spec.projection = parse_rational_array(j.at("moment_projection"), "moment_projection");
    else {
      spec.projection.assign(spec.h2_rank, Rational(0));
      if (spec.h2_rank > 0) spec.projection[0] = Rational(1);
    }
    if (j.contains("insertions"))
      for (const auto& ins : j.at("insertions"))
        spec.insertions.push_back(
            {ins.at("name").get<std::string>(), ins.at("codim").get<int>()});

    for (const auto& cj : j.at("components")) {
      FixedComponent c;
      c.id = cj.at("id").get<std::string>();
      const std::string where = "component '" + c.id + "'";
      c.dim = cj.at("dim").get<int>();
      c.mu = parse_rational_array(cj.at("mu"), where + ".mu");
      if (!cj.contains("ring")) throw SpecError(where + ": component ring incomplete");
      c.ring = parse_ring(cj.at("ring"), where, c.id);
      if (cj.contains("normal"))
        for (const auto& nj : cj.at("normal")) {
          WeightPiece p;
          std::string sign = nj.at("sign").get<std::string>();
          if (sign != "+" && sign != "-") throw SpecError(where + ": normal piece sign must be '+' or '-'");
          p.sign = sign == "+" ? +1 : -1;
          p.weight = nj.at("weight").get<int>();
          p.rank = nj.at("rank").get<int>();
          for (const auto& ch : nj.at("chern"))
            p.chern.push_back(parse_class_expr(ch.get<std::string>(), c.ring));
          c.normal.push_back(std::move(p));
        }
      if (cj.contains("restrictions"))
        for (const auto& [name, expr] : cj.at("restrictions").items())
          c.restrictions.insert_or_assign(name, parse_class_expr(expr.get<std::string>(), c.ring));
      if (cj.contains("vertex_classes"))
        for (const auto& v : cj.at("vertex_classes"))
          c.vertex_classes.push_back(parse_rational_array(v, where + ".vertex_classes"));
      spec.components.push_back(std::move(c));
    }

    if (j.contains("edges"))
      for (const auto& ej : j.at("edges")) {
        GraphEdge e;
        e.from = spec.component_index(ej.at("from").get<std::string>());
        e.to = spec.component_index(ej.at("to").get<std::string>());
        e.stab = ej.at("stab").get<long>();
        e.orbit_class = parse_rational_array(ej.at("orbit_class"), "edge orbit_class");
        spec.edges.push_back(std::move(e));
      }

    if (j.contains("correlator_psi_cap"))
      spec.correlator_psi_cap = j.at("correlator_psi_cap").get<int>();
    if (j.contains("correlators"))
      for (const auto& cj : j.at("correlators")) {
        std::string cid = cj.at("component").get<std::string>();
        int ci = spec.component_index(cid);
        auto beta = parse_rational_array(cj.at("beta"), "correlator beta");
        std::vector<std::pair<std::string, int>> items;
        for (const auto& it : cj.at("items"))
          items.emplace_back(
              parse_class_expr(it.at("class").get<std::string>(), spec.components[ci].ring)
                  .canonical_key(),
              it.at("psi").get<int>());
        spec.correlators[correlator_key(cid, beta, std::move(items))] =
            RF(Rational::parse(cj.at("value").get<std::string>()));
      }
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    throw SpecError(std::string("config schema violation: ") + e.what());
  }

  spec.validate();
  return spec;
}

json rf_to_json(const RF& f) {
  json num = json::array(), den = json::array();
  for (const auto& c : f.num().coeffs()) num.push_back(c.str());
  for (const auto& c : f.den().coeffs()) den.push_back(c.str());
  return json{{"num", num}, {"den", den}};
}

json ring_class_to_json(const RingClass& c) {
  json terms = json::array();
  for (const auto& [i, v] : c.coeffs())
    terms.push_back(json{{"monomial", c.ring()->monomial_name(i)}, {"coeff", rf_to_json(v)}});
  return terms;
}

json serialize_action_spec(const ActionSpec& spec) {
  json j;
  j["schema"] = "gwloc/1";
  j["dim_x"] = spec.dim_x;
  j["h2_rank"] = spec.h2_rank;
  auto rat_array = [](const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
  };
  j["c1_pairing"] = rat_array(spec.c1_pairing);
  j["moment_projection"] = rat_array(spec.projection);
  j["insertions"] = json::array();
  for (const auto& ins : spec.insertions)
    j["insertions"].push_back(json{{"name", ins.name}, {"codim", ins.codim}});
  j["components"] = json::array();
  for (const auto& c : spec.components) {
    json cj;
    cj["id"] = c.id;
    cj["dim"] = c.dim;
    cj["mu"] = rat_array(c.mu);
    json ring;
    ring["generators"] = json::array();
    for (const auto& g : c.ring->generators())
      ring["generators"].push_back(json{{"name", g.name}, {"degree", g.degree}});
    ring["basis"] = json::array();
    for (const auto& b : c.ring->basis()) ring["basis"].push_back(b);
    ring["top_degree"] = c.ring->top_degree();
    ring["table"] = json::array();
    for (int i = 0; i < c.ring->basis_size(); ++i)
      for (int k = i; k < c.ring->basis_size(); ++k) {
        if (c.ring->degree(i) + c.ring->degree(k) > c.ring->top_degree()) continue;
        json value = json::array();
        for (const auto& [idx, coeff] : c.ring->mul_basis(i, k))
          value.push_back(json{{"monomial", c.ring->basis()[idx]}, {"coeff", coeff.str()}});
        ring["table"].push_back(
            json{{"lhs", c.ring->basis()[i]}, {"rhs", c.ring->basis()[k]}, {"value", value}});
      }
    ring["integration"] = json::array();
    for (int i = 0; i < c.ring->basis_size(); ++i)
      if (!c.ring->integration_coeff(i).is_zero())
        ring["integration"].push_back(
            json{{"monomial", c.ring->basis()[i]}, {"coeff", c.ring->integration_coeff(i).str()}});
    cj["ring"] = std::move(ring);
    cj["normal"] = json::array();
    for (const auto& p : c.normal) {
      json nj;
      nj["sign"] = p.sign > 0 ? "+" : "-";
      nj["weight"] = p.weight;
      nj["rank"] = p.rank;
      nj["chern"] = json::array();
      for (const auto& ch : p.chern) nj["chern"].push_back(class_expr_string(ch));
      cj["normal"].push_back(std::move(nj));
    }
    cj["restrictions"] = json::object();
    for (const auto& [name, cls] : c.restrictions) cj["restrictions"][name] = class_expr_string(cls);
    if (!c.vertex_classes.empty()) {
      cj["vertex_classes"] = json::array();
      for (const auto& v : c.vertex_classes) cj["vertex_classes"].push_back(rat_array(v));
    }
    j["components"].push_back(std::move(cj));
  }
  j["edges"] = json::array();
  for (const auto& e : spec.edges)
    j["edges"].push_back(json{{"from", spec.components[e.from].id},
                              {"to", spec.components[e.to].id},
                              {"stab", e.stab},
                              {"orbit_class", rat_array(e.orbit_class)}});
  return j;
}

}  // namespace gwloc
