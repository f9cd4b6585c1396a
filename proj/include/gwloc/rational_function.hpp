#pragma once

#include "gwloc/polynomial.hpp"

#include <string>

namespace gwloc {

/// Element of Q(t): numerator/denominator with gcd 1 and monic denominator.
/// Equality is structural (normal forms are unique).
class RationalFunctionT {
public:
  RationalFunctionT() : num_(), den_(Rational(1)) {}
  RationalFunctionT(Rational c) : num_(std::move(c)), den_(Rational(1)) {}
  RationalFunctionT(long long c) : num_(Rational(c)), den_(Rational(1)) {}
  RationalFunctionT(Poly num) : num_(std::move(num)), den_(Rational(1)) {}
  RationalFunctionT(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  static RationalFunctionT t() { return RationalFunctionT(Poly::t()); }
  // c * t^k, k may be negative.
  static RationalFunctionT t_power(Rational c, int k) {
    if (k >= 0) return RationalFunctionT(Poly::monomial(std::move(c), k));
    return RationalFunctionT(Poly(std::move(c)), Poly::monomial(Rational(1), -k));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  bool is_constant() const { return den_.degree() == 0 && num_.degree() <= 0; }
  Rational constant_value() const {
    if (!is_constant()) throw RationalError("rational function is not constant: " + pretty());
    return num_.coeff(0);  // den is monic degree 0, i.e. exactly 1
  }

  RationalFunctionT operator-() const {
    RationalFunctionT r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFunctionT operator+(const RationalFunctionT& a, const RationalFunctionT& b) {
    return RationalFunctionT(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunctionT operator-(const RationalFunctionT& a, const RationalFunctionT& b) {
    return a + (-b);
  }
  friend RationalFunctionT operator*(const RationalFunctionT& a, const RationalFunctionT& b) {
    return RationalFunctionT(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunctionT operator/(const RationalFunctionT& a, const RationalFunctionT& b) {
    if (b.is_zero()) throw RationalError("division by zero rational function");
    return RationalFunctionT(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunctionT& operator+=(const RationalFunctionT& o) { return *this = *this + o; }
  RationalFunctionT& operator-=(const RationalFunctionT& o) { return *this = *this - o; }
  RationalFunctionT& operator*=(const RationalFunctionT& o) { return *this = *this * o; }
  RationalFunctionT& operator/=(const RationalFunctionT& o) { return *this = *this / o; }

  RationalFunctionT inverse() const {
    if (is_zero()) throw RationalError("inverse of zero rational function");
    return RationalFunctionT(den_, num_);
  }

  friend bool operator==(const RationalFunctionT& a, const RationalFunctionT& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunctionT& a, const RationalFunctionT& b) {
    return !(a == b);
  }

  std::string pretty() const {
    if (den_.degree() == 0) return num_.pretty();
    return "(" + num_.pretty() + ")/(" + den_.pretty() + ")";
  }

private:
  void normalize() {
    if (den_.is_zero()) throw RationalError("zero denominator in rational function");
    if (num_.is_zero()) {
      den_ = Poly(Rational(1));
      return;
    }
    // Cheap common path: both sides divisible by t^k.
    int oz = std::min(num_.order_at_zero(), den_.order_at_zero());
    if (oz > 0) {
      Poly tk = Poly::monomial(Rational(1), oz);
      num_ = num_.divide_exact(tk);
      den_ = den_.divide_exact(tk);
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divide_exact(g);
      den_ = den_.divide_exact(g);
    }
    Rational lead = den_.leading().inverse();
    num_ = lead * num_;
    den_ = den_.monic();
  }

  Poly num_;
  Poly den_;
};

using RF = RationalFunctionT;

}  // namespace gwloc
