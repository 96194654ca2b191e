#pragma once

#include <algorithm>
#include <cassert>
#include <vector>

#include "pnlv/types.hpp"

namespace pnlv {

/// Truncated series  sum_{k=lo}^{hi} c[k-lo] x^k  in one formal variable.
/// `hi` is the highest order whose coefficient is guaranteed correct;
/// arithmetic tracks that guarantee through products and quotients.
struct TSeries {
  int lo = 0;
  int hi = -1;
  std::vector<Complex> c;

  TSeries() = default;
  TSeries(int lo_, int hi_) : lo(lo_), hi(hi_), c(static_cast<size_t>(hi_ - lo_ + 1), Complex{0.0}) {
    assert(hi >= lo);
  }

  static TSeries monomial(Complex value, int k, int hi_) {
    TSeries s(std::min(k, hi_), hi_);
    if (k <= hi_) s.set(k, value);
    return s;
  }
  static TSeries constant(Complex value, int hi_) { return monomial(value, 0, hi_); }

  int length() const { return hi - lo + 1; }
  Complex at(int k) const {
    if (k < lo || k > hi) return Complex{0.0};
    return c[static_cast<size_t>(k - lo)];
  }
  void set(int k, Complex v) {
    assert(k >= lo && k <= hi);
    c[static_cast<size_t>(k - lo)] = v;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : c) m = std::max(m, std::abs(v));
    return m;
  }

  /// Drop leading coefficients whose size is structural noise relative to
  /// the largest one (exact cancellations computed in floating point).
  void trim_leading(double relTol = 1e-9) {
    const double floor = max_abs() * relTol;
    while (lo < hi && std::abs(c.front()) <= floor) {
      c.erase(c.begin());
      ++lo;
    }
  }
};

inline TSeries operator+(const TSeries& a, const TSeries& b) {
  TSeries r(std::min(a.lo, b.lo), std::min(a.hi, b.hi));
  for (int k = r.lo; k <= r.hi; ++k) r.set(k, a.at(k) + b.at(k));
  return r;
}

inline TSeries operator-(const TSeries& a, const TSeries& b) {
  TSeries r(std::min(a.lo, b.lo), std::min(a.hi, b.hi));
  for (int k = r.lo; k <= r.hi; ++k) r.set(k, a.at(k) - b.at(k));
  return r;
}

inline TSeries operator*(Complex s, const TSeries& a) {
  TSeries r = a;
  for (auto& v : r.c) v *= s;
  return r;
}

inline TSeries operator*(const TSeries& a, const TSeries& b) {
  TSeries r(a.lo + b.lo, std::min(a.lo + b.hi, b.lo + a.hi));
  for (int i = a.lo; i <= a.hi; ++i) {
    const Complex ai = a.at(i);
    if (ai == Complex{0.0}) continue;
    const int jmax = std::min(b.hi, r.hi - i);
    for (int j = b.lo; j <= jmax; ++j) r.set(i + j, r.at(i + j) + ai * b.at(j));
  }
  return r;
}

/// Quotient a/b; the leading coefficient of b must be nonzero.
inline TSeries series_div(const TSeries& a, const TSeries& b) {
  const Complex b0 = b.at(b.lo);
  if (std::abs(b0) == 0.0) throw DivisionNearZero("series_div: zero leading coefficient");
  const int n = std::min(a.hi - a.lo, b.hi - b.lo);
  TSeries r(a.lo - b.lo, a.lo - b.lo + n);
  for (int m = 0; m <= n; ++m) {
    Complex acc = a.at(a.lo + m);
    for (int j = 1; j <= m; ++j) acc -= b.at(b.lo + j) * r.at(r.lo + m - j);
    r.set(r.lo + m, acc / b0);
  }
  return r;
}

/// d/dx of a series in x.
inline TSeries series_ddx(const TSeries& a) {
  TSeries r(a.lo - 1, a.hi - 1);
  for (int k = a.lo; k <= a.hi; ++k) r.set(k - 1, static_cast<double>(k) * a.at(k));
  return r;
}

/// Multiply by x^m (index shift).
inline TSeries series_shift(const TSeries& a, int m) {
  TSeries r = a;
  r.lo += m;
  r.hi += m;
  return r;
}

inline Complex series_eval(const TSeries& a, Complex x) {
  // Horner from the top order down, then the power of the lowest exponent.
  Complex acc{0.0};
  for (int k = a.hi; k >= a.lo; --k) acc = acc * x + a.at(k);
  return acc * std::pow(x, a.lo);
}

}  // namespace pnlv
