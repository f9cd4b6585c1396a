#pragma once

#include "gwloc/rational.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace gwloc {

/// Dense univariate polynomial in the equivariant parameter t over Q.
/// Coefficients ascending; the zero polynomial has an empty coefficient list.
class Poly {
public:
  Poly() = default;
  Poly(Rational c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  Poly(std::initializer_list<Rational> cs) : c_(cs) { trim(); }
  explicit Poly(std::vector<Rational> cs) : c_(std::move(cs)) { trim(); }

  static Poly t() { return Poly({Rational(0), Rational(1)}); }
  // c * t^k
  static Poly monomial(Rational c, int k) {
    std::vector<Rational> v(k + 1);
    v[k] = std::move(c);
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rational(0);
  }
  const Rational& leading() const {
    if (is_zero()) throw RationalError("leading coefficient of zero polynomial");
    return c_.back();
  }
  // Multiplicity of the root t = 0.
  int order_at_zero() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<int>(i);
    return -1;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(int(i)) + b.coeff(int(i));
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(v));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator*(const Rational& c, const Poly& p) { return Poly(c) * p; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Euclidean division; remainder degree < divisor degree.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw RationalError("polynomial division by zero");
    std::vector<Rational> rem = a.c_;
    std::vector<Rational> quo(a.c_.size() > b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 1);
    int db = b.degree();
    Rational lb = b.leading();
    for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
      if (rem[i].is_zero()) continue;
      Rational f = rem[i] / lb;
      quo[i - db] = f;
      for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
    }
    q = Poly(std::move(quo));
    r = Poly(std::move(rem));
  }

  // Exact division; throws if the remainder is nonzero.
  Poly divide_exact(const Poly& b) const {
    Poly q, r;
    divmod(*this, b, q, r);
    if (!r.is_zero()) throw RationalError("inexact polynomial division");
    return q;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    Poly r = *this;
    Rational inv = leading().inverse();
    for (auto& c : r.c_) c *= inv;
    return r;
  }

  // Monic gcd (Euclid over Q[t]); degrees stay small in this engine.
  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly q, r;
      divmod(a, b, q, r);
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  std::string pretty() const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      if (c_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      if (k == 0)
        s += c_[k].pretty();
      else if (c_[k] == Rational(1))
        s += "t" + (k > 1 ? "^" + std::to_string(k) : "");
      else
        s += c_[k].pretty() + "*t" + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return s;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Rational> c_;
};

}  // namespace gwloc
