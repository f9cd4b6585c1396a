#include "gwloc/graded_ring.hpp"

#include <algorithm>
#include <sstream>

namespace gwloc {

namespace {

std::vector<int> add_exps(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

BasisExpansion normalize_expansion(BasisExpansion e) {
  std::map<int, Rational> acc;
  for (auto& [i, c] : e) acc[i] += c;
  BasisExpansion out;
  for (auto& [i, c] : acc)
    if (!c.is_zero()) out.emplace_back(i, c);
  return out;
}

// expansion * basis[k]
BasisExpansion mul_expansion_basis(const GradedRing& R, const BasisExpansion& e, int k) {
  std::map<int, Rational> acc;
  for (const auto& [i, c] : e)
    for (const auto& [j, d] : R.mul_basis(i, k)) acc[j] += c * d;
  BasisExpansion out;
  for (auto& [i, c] : acc)
    if (!c.is_zero()) out.emplace_back(i, c);
  return out;
}

}  // namespace

std::shared_ptr<const GradedRing> GradedRing::from_presentation(
    std::vector<RingGenerator> generators, std::vector<std::vector<int>> basis,
    std::vector<std::tuple<int, int, BasisExpansion>> table, int top_degree,
    std::vector<Rational> integration, std::string name) {
  auto ring = std::shared_ptr<GradedRing>(new GradedRing());
  GradedRing& R = *ring;
  R.gens_ = std::move(generators);
  R.basis_ = std::move(basis);
  R.top_ = top_degree;
  R.name_ = std::move(name);

  for (const auto& g : R.gens_)
    if (g.degree <= 0) throw RingError("generator '" + g.name + "' must have positive degree");
  if (R.basis_.empty()) throw RingError("empty monomial basis");
  if (top_degree < 0) throw RingError("negative top degree");

  const int B = static_cast<int>(R.basis_.size());
  R.degree_.resize(B);
  int unit = -1;
  for (int i = 0; i < B; ++i) {
    const auto& m = R.basis_[i];
    if (m.size() != R.gens_.size())
      throw RingError("basis monomial arity mismatch (expected one exponent per generator)");
    int d = 0;
    for (std::size_t g = 0; g < m.size(); ++g) {
      if (m[g] < 0) throw RingError("negative exponent in basis monomial");
      d += m[g] * R.gens_[g].degree;
    }
    if (d > top_degree) throw RingError("basis monomial above the top degree");
    R.degree_[i] = d;
    if (d == 0) unit = i;
    if (!R.index_.emplace(m, i).second) throw RingError("duplicate basis monomial");
  }
  if (unit < 0) throw RingError("missing unit monomial in basis");
  R.unit_ = unit;

  if (static_cast<int>(integration.size()) != B)
    throw RingError("integration vector length must match basis size");
  for (int i = 0; i < B; ++i)
    if (!integration[i].is_zero() && R.degree_[i] != top_degree)
      throw RingError("integration support outside top degree");
  R.integration_ = std::move(integration);

  // Assemble the table; mirror the given (i, j) entries and synthesize unit
  // products. Missing entries are zero, legal only above the top degree.
  R.table_.assign(B, std::vector<BasisExpansion>(B));
  std::vector<std::vector<bool>> given(B, std::vector<bool>(B, false));
  std::map<std::pair<int, int>, BasisExpansion> explicit_entries;
  for (auto& [i, j, e] : table) {
    if (i < 0 || i >= B || j < 0 || j >= B) throw RingError("table entry out of range");
    auto norm = normalize_expansion(std::move(e));
    if (auto it = explicit_entries.find({i, j});
        it != explicit_entries.end() && it->second != norm)
      throw RingError("conflicting table entries for a basis pair");
    if (auto it = explicit_entries.find({j, i});
        it != explicit_entries.end() && it->second != norm)
      throw RingError("non-commutative table entry at (" + std::to_string(i) + "," +
                      std::to_string(j) + ")");
    explicit_entries[{i, j}] = norm;
    R.table_[i][j] = norm;
    R.table_[j][i] = std::move(norm);
    given[i][j] = given[j][i] = true;
  }
  for (int j = 0; j < B; ++j) {
    BasisExpansion id{{j, Rational(1)}};
    if (given[unit][j]) {
      if (R.table_[unit][j] != id) throw RingError("unit law violated in table");
    } else {
      R.table_[unit][j] = id;
      R.table_[j][unit] = id;
      given[unit][j] = given[j][unit] = true;
    }
  }
  for (int i = 0; i < B; ++i)
    for (int j = 0; j < B; ++j) {
      int d = R.degree_[i] + R.degree_[j];
      if (!given[i][j] && d <= top_degree)
        throw RingError("incomplete multiplication table: missing product of '" +
                        R.monomial_name(i) + "' and '" + R.monomial_name(j) + "'");
      for (const auto& [k, c] : R.table_[i][j]) {
        (void)c;
        if (R.degree_[k] != d)
          throw RingError("degree-violating table entry: '" + R.monomial_name(i) + "'*'" +
                          R.monomial_name(j) + "' hits degree " + std::to_string(R.degree_[k]) +
                          " instead of " + std::to_string(d));
      }
    }

  // Associativity on basis triples.
  for (int i = 0; i < B; ++i)
    for (int j = i; j < B; ++j)
      for (int k = j; k < B; ++k) {
        auto left = mul_expansion_basis(R, R.table_[i][j], k);
        auto right = mul_expansion_basis(R, R.table_[j][k], i);
        if (left != right)
          throw RingError("non-associative multiplication table at (" + R.monomial_name(i) + "," +
                          R.monomial_name(j) + "," + R.monomial_name(k) + ")");
      }

  return ring;
}

std::shared_ptr<const GradedRing> GradedRing::point_ring() {
  return from_presentation({}, {{}}, {}, 0, {Rational(1)}, "point");
}

std::shared_ptr<const GradedRing> GradedRing::projective_ring(int n, const std::string& gen) {
  std::vector<std::vector<int>> basis;
  std::vector<std::tuple<int, int, BasisExpansion>> table;
  std::vector<Rational> integration(n + 1, Rational(0));
  for (int i = 0; i <= n; ++i) basis.push_back({i});
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      if (i + j <= n) table.emplace_back(i, j, BasisExpansion{{i + j, Rational(1)}});
  integration[n] = Rational(1);
  return from_presentation({{gen, 1}}, std::move(basis), std::move(table), n,
                           std::move(integration), "P" + std::to_string(n));
}

std::shared_ptr<const GradedRing> GradedRing::tensor(const GradedRing& a, const GradedRing& b,
                                                     const std::string& name) {
  std::vector<RingGenerator> gens = a.generators();
  for (auto g : b.generators()) {
    // Keep generator names unique across the factors.
    for (const auto& ga : a.generators())
      if (ga.name == g.name) g.name += "'";
    gens.push_back(g);
  }
  const int Ba = a.basis_size(), Bb = b.basis_size();
  auto pair_index = [Bb](int i, int j) { return i * Bb + j; };
  std::vector<std::vector<int>> basis;
  for (int i = 0; i < Ba; ++i)
    for (int j = 0; j < Bb; ++j) {
      std::vector<int> m = a.basis()[i];
      m.insert(m.end(), b.basis()[j].begin(), b.basis()[j].end());
      basis.push_back(std::move(m));
    }
  std::vector<std::tuple<int, int, BasisExpansion>> table;
  for (int i1 = 0; i1 < Ba; ++i1)
    for (int j1 = 0; j1 < Bb; ++j1)
      for (int i2 = 0; i2 < Ba; ++i2)
        for (int j2 = 0; j2 < Bb; ++j2) {
          BasisExpansion e;
          for (const auto& [ka, ca] : a.mul_basis(i1, i2))
            for (const auto& [kb, cb] : b.mul_basis(j1, j2))
              e.emplace_back(pair_index(ka, kb), ca * cb);
          table.emplace_back(pair_index(i1, j1), pair_index(i2, j2), std::move(e));
        }
  std::vector<Rational> integration;
  for (int i = 0; i < Ba; ++i)
    for (int j = 0; j < Bb; ++j)
      integration.push_back(a.integration_coeff(i) * b.integration_coeff(j));
  return from_presentation(std::move(gens), std::move(basis), std::move(table),
                           a.top_degree() + b.top_degree(), std::move(integration),
                           name.empty() ? a.name() + "x" + b.name() : name);
}

std::optional<int> GradedRing::find_monomial(const std::vector<int>& exps) const {
  auto it = index_.find(exps);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string GradedRing::monomial_name(int i) const {
  const auto& m = basis_[i];
  std::string s;
  for (std::size_t g = 0; g < m.size(); ++g) {
    if (m[g] == 0) continue;
    if (!s.empty()) s += "*";
    s += gens_[g].name;
    if (m[g] > 1) s += "^" + std::to_string(m[g]);
  }
  return s.empty() ? "1" : s;
}

bool GradedRing::structurally_equal(const GradedRing& o) const {
  if (top_ != o.top_ || basis_ != o.basis_ || integration_ != o.integration_) return false;
  if (gens_.size() != o.gens_.size()) return false;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].degree != o.gens_[i].degree) return false;
  for (int i = 0; i < basis_size(); ++i)
    for (int j = 0; j < basis_size(); ++j)
      if (table_[i][j] != o.table_[i][j]) return false;
  return true;
}

RingClass RingClass::unit(RingPtr ring) {
  RingClass r(ring);
  r.c_.emplace(ring->unit_index(), RF(Rational(1)));
  return r;
}

RingClass RingClass::scalar(RingPtr ring, RF value) {
  RingClass r(ring);
  if (!value.is_zero()) r.c_.emplace(ring->unit_index(), std::move(value));
  return r;
}

RingClass RingClass::basis_element(RingPtr ring, int index) {
  RingClass r(ring);
  r.c_.emplace(index, RF(Rational(1)));
  return r;
}

RF RingClass::coeff(int i) const {
  auto it = c_.find(i);
  return it == c_.end() ? RF() : it->second;
}

void RingClass::set_coeff(int i, RF v) {
  if (v.is_zero())
    c_.erase(i);
  else
    c_[i] = std::move(v);
}

RingClass RingClass::operator-() const {
  RingClass r(ring_);
  for (const auto& [i, v] : c_) r.c_.emplace(i, -v);
  return r;
}

static void require_same_ring(const RingClass& a, const RingClass& b) {
  if (a.ring().get() != b.ring().get()) throw RingError("ring mismatch");
}

RingClass operator+(const RingClass& a, const RingClass& b) {
  require_same_ring(a, b);
  RingClass r = a;
  for (const auto& [i, v] : b.coeffs()) r.set_coeff(i, r.coeff(i) + v);
  return r;
}

RingClass operator-(const RingClass& a, const RingClass& b) { return a + (-b); }

RingClass operator*(const RingClass& a, const RingClass& b) {
  require_same_ring(a, b);
  RingClass r(a.ring());
  const GradedRing& R = *a.ring();
  std::map<int, RF> acc;
  for (const auto& [i, u] : a.coeffs())
    for (const auto& [j, v] : b.coeffs()) {
      RF uv = u * v;
      for (const auto& [k, c] : R.mul_basis(i, j)) acc[k] += RF(c) * uv;
    }
  for (auto& [k, v] : acc) r.set_coeff(k, std::move(v));
  return r;
}

RingClass RingClass::scaled(const RF& f) const {
  RingClass r(ring_);
  if (f.is_zero()) return r;
  for (const auto& [i, v] : c_) r.set_coeff(i, v * f);
  return r;
}

bool operator==(const RingClass& a, const RingClass& b) {
  return a.ring().get() == b.ring().get() && a.coeffs() == b.coeffs();
}

RingClass RingClass::degree_part(int d) const {
  RingClass r(ring_);
  for (const auto& [i, v] : c_)
    if (ring_->degree(i) == d) r.c_.emplace(i, v);
  return r;
}

RingClass RingClass::unit_scalar_class() const {
  return RingClass::scalar(ring_, coeff(ring_->unit_index()));
}

RingClass RingClass::invert_unit() const {
  RF u = coeff(ring_->unit_index());
  if (u.is_zero()) throw RingError("non-invertible class (zero unit coefficient)");
  RF uinv = u.inverse();
  RingClass n = positive_part();  // nilpotent: degree >= 1
  // 1/(u + n) = (1/u) sum_k (-n/u)^k ; terminates at the top degree.
  RingClass term = RingClass::scalar(ring_, uinv);
  RingClass result = term;
  for (int k = 1; k <= ring_->top_degree(); ++k) {
    term = (term * n).scaled(-uinv);
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

RF RingClass::integrate() const {
  RF total;
  for (const auto& [i, v] : c_) {
    const Rational& w = ring_->integration_coeff(i);
    if (!w.is_zero()) total += v * RF(w);
  }
  return total;
}

RingClass RingClass::pow(int k) const {
  if (k < 0) throw RingError("negative ring-class power");
  RingClass r = RingClass::unit(ring_);
  for (int i = 0; i < k; ++i) r *= *this;
  return r;
}

std::string RingClass::pretty() const {
  if (c_.empty()) return "0";
  std::string s;
  for (const auto& [i, v] : c_) {
    if (!s.empty()) s += " + ";
    s += "(" + v.pretty() + ")";
    if (i != ring_->unit_index()) s += "*" + ring_->monomial_name(i);
  }
  return s;
}

std::string RingClass::canonical_key() const {
  std::ostringstream os;
  for (const auto& [i, v] : c_) {
    os << i << ":";
    for (const auto& c : v.num().coeffs()) os << c.str() << ",";
    os << ";";
    for (const auto& c : v.den().coeffs()) os << c.str() << ",";
    os << "|";
  }
  return os.str();
}

std::vector<std::pair<RingClass, RingClass>> diagonal_decomposition(const RingPtr& ring) {
  const int B = ring->basis_size();
  // Gram matrix of the integration pairing on the monomial basis (rational
  // entries: basis products have rational expansions).
  std::vector<std::vector<Rational>> g(B, std::vector<Rational>(B));
  for (int i = 0; i < B; ++i)
    for (int j = 0; j < B; ++j) {
      Rational s(0);
      for (const auto& [k, c] : ring->mul_basis(i, j)) s += c * ring->integration_coeff(k);
      g[i][j] = s;
    }
  // Exact Gauss-Jordan inverse.
  std::vector<std::vector<Rational>> inv(B, std::vector<Rational>(B));
  for (int i = 0; i < B; ++i) inv[i][i] = Rational(1);
  for (int col = 0; col < B; ++col) {
    int pivot = -1;
    for (int r = col; r < B; ++r)
      if (!g[r][col].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw RingError("invalid component presentation (singular integration pairing)");
    std::swap(g[pivot], g[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = g[col][col].inverse();
    for (int c = 0; c < B; ++c) {
      g[col][c] *= p;
      inv[col][c] *= p;
    }
    for (int r = 0; r < B; ++r) {
      if (r == col || g[r][col].is_zero()) continue;
      Rational f = g[r][col];
      for (int c = 0; c < B; ++c) {
        g[r][c] -= f * g[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  // e_i = b_i, e^i = sum_j inv[j][i] b_j.
  std::vector<std::pair<RingClass, RingClass>> out;
  for (int i = 0; i < B; ++i) {
    RingClass dual(ring);
    for (int j = 0; j < B; ++j)
      if (!inv[j][i].is_zero()) dual.set_coeff(j, RF(inv[j][i]));
    out.emplace_back(RingClass::basis_element(ring, i), std::move(dual));
  }
  return out;
}

}  // namespace gwloc
