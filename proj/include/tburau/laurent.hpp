#pragma once

#include <cassert>
#include <complex>
#include <map>
#include <optional>
#include <string>

#include "tburau/bigint.hpp"

namespace tburau {

// +- t^m with exact sign and exponent
struct Monomial {
  int sign = 1;  // +1 or -1
  long long exponent = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    return Monomial{a.sign * b.sign, a.exponent + b.exponent};
  }
  Monomial inverse() const { return Monomial{sign, -exponent}; }
  bool is_one() const { return sign == 1 && exponent == 0; }
};

// Element of Z[t, t^-1] with exact integer coefficients.
// Invariant: no stored coefficient is zero.
class LaurentPoly {
public:
  LaurentPoly() = default;
  LaurentPoly(long long c) { if (c != 0) coef_[0] = BigInt(c); }
  LaurentPoly(const BigInt& c, long long exponent = 0) {
    if (!c.is_zero()) coef_[exponent] = c;
  }

  static LaurentPoly t(long long exponent = 1) { return LaurentPoly(BigInt(1), exponent); }
  static LaurentPoly from(const Monomial& m) { return LaurentPoly(BigInt(m.sign), m.exponent); }

  bool is_zero() const { return coef_.empty(); }
  bool is_one() const {
    return coef_.size() == 1 && coef_.begin()->first == 0 && coef_.begin()->second == BigInt(1);
  }

  const std::map<long long, BigInt>& terms() const { return coef_; }

  BigInt coefficient(long long exponent) const {
    auto it = coef_.find(exponent);
    return it == coef_.end() ? BigInt() : it->second;
  }

  void add_term(long long exponent, const BigInt& c) {
    if (c.is_zero()) return;
    auto it = coef_.find(exponent);
    if (it == coef_.end()) { coef_.emplace(exponent, c); return; }
    it->second += c;
    if (it->second.is_zero()) coef_.erase(it);
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [e, c] : b.coef_) r.add_term(e, c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [e, c] : b.coef_) r.add_term(e, -c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [e, c] : a.coef_) r.coef_[e] = -c;
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.coef_)
      for (const auto& [eb, cb] : b.coef_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) { *this = *this + o; return *this; }
  LaurentPoly& operator-=(const LaurentPoly& o) { *this = *this - o; return *this; }
  LaurentPoly& operator*=(const LaurentPoly& o) { *this = *this * o; return *this; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coef_ == b.coef_;
  }

  // +-t^m recognition; empty if the value is not a signed monomial with coefficient 1
  std::optional<Monomial> as_monomial() const {
    if (coef_.size() != 1) return std::nullopt;
    const auto& [e, c] = *coef_.begin();
    if (c == BigInt(1)) return Monomial{1, e};
    if (c == BigInt(-1)) return Monomial{-1, e};
    return std::nullopt;
  }

  // display-only numeric evaluation; never used by any exact computation
  std::complex<double> eval(std::complex<double> tval) const {
    std::complex<double> acc = 0.0;
    for (const auto& [e, c] : coef_) {
      double cd = std::stod(c.to_string());
      acc += cd * std::pow(tval, static_cast<double>(e));
    }
    return acc;
  }

  std::string to_string() const {
    if (coef_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : coef_) {
      std::string cs = c.to_string();
      if (!s.empty() && cs[0] != '-') s += "+";
      if (e == 0) { s += cs; continue; }
      if (cs == "1") cs.clear();
      else if (cs == "-1") cs = "-";
      s += cs + "t";
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

private:
  std::map<long long, BigInt> coef_;
};

inline LaurentPoly pow(const LaurentPoly& p, unsigned n) {
  LaurentPoly r(1), base = p;
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

}  // namespace tburau
