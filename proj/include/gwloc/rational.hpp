#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace gwloc {

using BigInt = boost::multiprecision::cpp_int;

class RationalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Arbitrary-precision rational, always reduced, denominator > 0, zero is 0/1.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }
  Rational(long long n, long long d) : num_(n), den_(d) { reduce(); }

  // Accepts "p", "-p", "p/q".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(BigInt(s));
      return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw RationalError("cannot parse rational: '" + s + "'");
    }
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_positive() const { return num_ > 0; }
  bool is_negative() const { return num_ < 0; }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rational& operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw RationalError("division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    reduce();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  Rational inverse() const {
    if (is_zero()) throw RationalError("inverse of zero");
    return Rational(den_, num_);
  }

  // True iff *this = k * unit for a (positive or negative) integer k; k returned.
  bool integer_multiple_of(const Rational& unit, BigInt& k) const {
    if (unit.is_zero()) return is_zero() ? (k = 0, true) : false;
    Rational q = *this / unit;
    if (!q.is_integer()) return false;
    k = q.num();
    return true;
  }

  // Largest integer <= value.
  BigInt floor() const {
    BigInt q = num_ / den_;
    if (num_ < 0 && q * den_ != num_) --q;
    return q;
  }

  // Serialized "p/q" (always with explicit denominator).
  std::string str() const { return num_.str() + "/" + den_.str(); }
  // Human form: "p" when integral, else "p/q".
  std::string pretty() const { return den_ == 1 ? num_.str() : str(); }

  std::size_t hash() const {
    std::hash<std::string> h;
    return h(str());
  }

private:
  void reduce() {
    if (den_ == 0) throw RationalError("zero denominator");
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    num_ /= g;
    den_ /= g;
  }

  BigInt num_;
  BigInt den_;
};

inline Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }

}  // namespace gwloc
