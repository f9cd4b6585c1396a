#pragma once

#include "gwloc/graded_ring.hpp"

#include <map>

namespace gwloc {

/// Polynomial in the two formal nilpotent cotangent variables psi1, psi2 with
/// RingClass coefficients, truncated above psi-total-degree `bound`.
class LocalClass {
public:
  LocalClass(RingPtr ring, int bound) : ring_(std::move(ring)), bound_(bound) {}

  static LocalClass from_ring_class(RingClass c, int bound) {
    LocalClass r(c.ring(), bound);
    if (!c.is_zero()) r.c_.emplace(std::make_pair(0, 0), std::move(c));
    return r;
  }
  static LocalClass unit(RingPtr ring, int bound) {
    return from_ring_class(RingClass::unit(ring), bound);
  }
  static LocalClass zero(RingPtr ring, int bound) { return LocalClass(std::move(ring), bound); }
  /// psi1 if which == 1, psi2 if which == 2.
  static LocalClass psi(RingPtr ring, int which, int bound) {
    LocalClass r(ring, bound);
    if (bound >= 1) {
      auto key = which == 1 ? std::make_pair(1, 0) : std::make_pair(0, 1);
      r.c_.emplace(key, RingClass::unit(ring));
    }
    return r;
  }

  const RingPtr& ring() const { return ring_; }
  int bound() const { return bound_; }
  bool is_zero() const { return c_.empty(); }
  const std::map<std::pair<int, int>, RingClass>& terms() const { return c_; }

  RingClass psi_coeff(int n1, int n2) const {
    auto it = c_.find({n1, n2});
    return it == c_.end() ? RingClass::zero(ring_) : it->second;
  }
  void set_psi_coeff(int n1, int n2, RingClass v) {
    if (n1 + n2 > bound_ || v.is_zero())
      c_.erase({n1, n2});
    else
      c_.insert_or_assign(std::make_pair(n1, n2), std::move(v));
  }

  LocalClass operator-() const {
    LocalClass r(ring_, bound_);
    for (const auto& [k, v] : c_) r.c_.emplace(k, -v);
    return r;
  }
  friend LocalClass operator+(const LocalClass& a, const LocalClass& b) {
    a.check_compatible(b);
    LocalClass r = a;
    for (const auto& [k, v] : b.c_) r.set_psi_coeff(k.first, k.second, r.psi_coeff(k.first, k.second) + v);
    return r;
  }
  friend LocalClass operator-(const LocalClass& a, const LocalClass& b) { return a + (-b); }
  friend LocalClass operator*(const LocalClass& a, const LocalClass& b) {
    a.check_compatible(b);
    LocalClass r(a.ring_, a.bound_);
    for (const auto& [ka, va] : a.c_)
      for (const auto& [kb, vb] : b.c_) {
        int n1 = ka.first + kb.first, n2 = ka.second + kb.second;
        if (n1 + n2 > a.bound_) continue;
        RingClass prod = va * vb;
        if (prod.is_zero()) continue;
        r.set_psi_coeff(n1, n2, r.psi_coeff(n1, n2) + prod);
      }
    return r;
  }
  LocalClass& operator+=(const LocalClass& o) { return *this = *this + o; }
  LocalClass& operator-=(const LocalClass& o) { return *this = *this - o; }
  LocalClass& operator*=(const LocalClass& o) { return *this = *this * o; }

  LocalClass scaled(const RF& f) const {
    LocalClass r(ring_, bound_);
    if (f.is_zero()) return r;
    for (const auto& [k, v] : c_) r.c_.emplace(k, v.scaled(f));
    return r;
  }

  friend bool operator==(const LocalClass& a, const LocalClass& b) {
    return a.ring_.get() == b.ring_.get() && a.c_ == b.c_;
  }
  friend bool operator!=(const LocalClass& a, const LocalClass& b) { return !(a == b); }

  /// Exact inverse; the psi-free part must be a unit of the ring. Geometric
  /// series in the psi-positive part, terminating by truncation.
  LocalClass invert() const {
    RingClass a0 = psi_coeff(0, 0);
    RingClass a0inv = a0.invert_unit();  // throws if not a unit
    LocalClass eta = *this - from_ring_class(a0, bound_);
    LocalClass a0inv_l = from_ring_class(a0inv, bound_);
    LocalClass term = a0inv_l;
    LocalClass result = a0inv_l;
    for (int k = 1; k <= bound_; ++k) {
      term = (term * eta * a0inv_l);
      term = -term;
      if (term.is_zero()) break;
      result += term;
    }
    return result;
  }

  LocalClass pow(int k) const {
    if (k < 0) throw RingError("negative local-class power");
    LocalClass r = unit(ring_, bound_);
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
  }

  /// Substitute ring classes for psi1 and psi2 (e.g. their actual values on
  /// the carrier, usually zero).
  RingClass substitute_psi(const RingClass& psi1, const RingClass& psi2) const {
    RingClass out = RingClass::zero(ring_);
    for (const auto& [k, v] : c_) out += v * psi1.pow(k.first) * psi2.pow(k.second);
    return out;
  }

  std::string pretty() const {
    if (c_.empty()) return "0";
    std::string s;
    for (const auto& [k, v] : c_) {
      if (!s.empty()) s += " + ";
      s += "(" + v.pretty() + ")";
      if (k.first) s += "*psi1" + (k.first > 1 ? "^" + std::to_string(k.first) : std::string());
      if (k.second) s += "*psi2" + (k.second > 1 ? "^" + std::to_string(k.second) : std::string());
    }
    return s;
  }

private:
  void check_compatible(const LocalClass& o) const {
    if (ring_.get() != o.ring_.get()) throw RingError("ring mismatch");
    if (bound_ != o.bound_) throw RingError("psi truncation bound mismatch");
  }

  RingPtr ring_;
  int bound_;
  std::map<std::pair<int, int>, RingClass> c_;
};

/// Reversed Chern polynomial of a rank-r bundle evaluated at x:
/// p(x) = x^r + c_1 x^{r-1} + ... + c_r.
inline LocalClass p_eval(const std::vector<RingClass>& chern, const LocalClass& x) {
  const int r = static_cast<int>(chern.size());
  LocalClass acc = x.pow(r);
  for (int i = 1; i <= r; ++i) {
    LocalClass term = LocalClass::from_ring_class(chern[i - 1], x.bound()) * x.pow(r - i);
    acc += term;
  }
  return acc;
}

}  // namespace gwloc
