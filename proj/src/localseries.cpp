#include "pnlv/localseries.hpp"

#include <cmath>

#include "pnlv/seriesmath.hpp"

namespace pnlv {

namespace {

// ---- Laurent recursion at a pole ----------------------------------------

struct LaurentShape {
  int lo;            // leading exponent
  int freeSlot;      // resonance index carrying h
  int residualShift; // residual order determining c_k is k + shift
};

LaurentShape laurent_shape(EquationKind k) {
  switch (k) {
    case EquationKind::PI: return {-2, 4, -2};
    case EquationKind::PII: return {-1, 3, -2};
    case EquationKind::PIV: return {-1, 2, -3};
  }
  return {};
}

// Linear factor multiplying c_k in the residual order that determines it.
Complex laurent_multiplier(const EquationSpec& eq, int eps, int k) {
  const double kk = static_cast<double>(k);
  switch (eq.kind) {
    case EquationKind::PI: return kk * (kk - 1.0) - 12.0;
    case EquationKind::PII: return kk * (kk - 1.0) - 6.0;
    case EquationKind::PIV: return 2.0 * static_cast<double>(eps) * (kk * kk - 4.0);
  }
  return {};
}

TSeries laurent_residual(const EquationSpec& eq, const TSeries& w, Complex p) {
  const int hiZ = w.hi + 8;
  const TSeries z = TSeries::monomial(p, 0, hiZ) + TSeries::monomial(1.0, 1, hiZ);
  switch (eq.kind) {
    case EquationKind::PI:
      return series_ddx(series_ddx(w)) - 6.0 * (w * w) - z;
    case EquationKind::PII:
      return series_ddx(series_ddx(w)) - 2.0 * (w * w * w) - z * w -
             TSeries::constant(eq.alpha, w.hi);
    case EquationKind::PIV: {
      const TSeries w2 = w * w;
      const TSeries d1 = series_ddx(w);
      return 2.0 * (w * series_ddx(d1)) - d1 * d1 - 3.0 * (w2 * w2) - 8.0 * (z * (w2 * w)) -
             4.0 * ((z * z - TSeries::constant(eq.alpha, hiZ)) * w2) -
             TSeries::constant(2.0 * eq.beta, w.hi);
    }
  }
  return {};
}

TSeries laurent_w_tseries(const PoleSeed& seed, int N) {
  const LaurentShape shape = laurent_shape(seed.eq.kind);
  if (N < shape.freeSlot) throw WrongParameters("laurent_w: N must reach the free coefficient");
  const int eps = (seed.eq.kind == EquationKind::PI) ? 1 : seed.eps;
  TSeries w(shape.lo, N);
  w.set(shape.lo, seed.eq.kind == EquationKind::PI ? Complex{1.0}
                                                   : Complex{static_cast<double>(eps)});
  for (int k = shape.lo + 1; k <= N; ++k) {
    if (k == shape.freeSlot) {
      w.set(k, seed.h);
      continue;
    }
    const TSeries R = laurent_residual(seed.eq, w, seed.p);
    const int m = k + shape.residualShift;
    w.set(k, -R.at(m) / laurent_multiplier(seed.eq, eps, k));
  }
  return w;
}

// Drop coefficients below `lo`, which are exact cancellations computed in
// floating point; complain if one of them is not actually small.
TSeries force_lo(TSeries s, int lo, double relTol = 1e-8) {
  const double floor = s.max_abs() * relTol;
  while (s.lo < lo) {
    if (std::abs(s.c.front()) > floor)
      throw Error("series cancellation check failed (leading coefficient not structural noise)");
    s.c.erase(s.c.begin());
    ++s.lo;
  }
  return s;
}

TSeries laurent_W_tseries(const PoleSeed& seed, int N) {
  const int Nw = N + 6;
  const TSeries w = laurent_w_tseries(seed, Nw);
  const int hiZ = Nw + 8;
  const TSeries z = TSeries::monomial(seed.p, 0, hiZ) + TSeries::monomial(1.0, 1, hiZ);
  const TSeries d1 = series_ddx(w);
  switch (seed.eq.kind) {
    case EquationKind::PI:
      return force_lo(0.5 * (4.0 * (w * w * w) + 2.0 * (z * w) - d1 * d1), -1);
    case EquationKind::PII: {
      const TSeries w2 = w * w;
      return force_lo(w2 * w2 + z * w2 + 2.0 * seed.eq.alpha * w - d1 * d1, -1);
    }
    case EquationKind::PIV: {
      const TSeries w2 = w * w;
      TSeries num = w2 * w2 + 4.0 * (z * (w2 * w)) +
                    4.0 * ((z * z - TSeries::constant(seed.eq.alpha, hiZ)) * w2) -
                    TSeries::constant(2.0 * seed.eq.beta, w.hi) - d1 * d1;
      num = force_lo(num, -2);
      return series_div(num, 4.0 * w);
    }
  }
  return {};
}

SeriesExpansion pack_pole_series(const PoleSeed& seed, const TSeries& s, int N) {
  SeriesExpansion e;
  e.variable = SeriesVariable::AroundPole;
  e.polePoint = seed.p;
  e.exponentStep = Rational(1);
  e.leadingExponent = Rational(s.lo);
  e.truncationOrder = N;
  e.coeffs.assign(s.c.begin(), s.c.begin() + std::min<size_t>(s.c.size(), N - s.lo + 1));
  e.residualOrder = Rational(N + 1 + laurent_shape(seed.eq.kind).residualShift);
  return e;
}

// ---- asymptotic recursion at infinity ------------------------------------

struct InfinitySetup {
  int q;  // exponent grid: powers of u = z^(-1/q)
  int lo; // leading u-exponent
  Complex lead;
};

InfinitySetup family_setup(const AsymptoticFamily& family, const EquationSpec& eq) {
  const double sgn = family.squareRootBranch == RootBranch::Plus ? 1.0 : -1.0;
  switch (family.tag) {
    case FamilyTag::I:
      if (eq.kind != EquationKind::PI) throw WrongParameters("family I needs equation (I)");
      return {2, -1, sgn * std::sqrt(Complex(-1.0 / 6.0))};
    case FamilyTag::IIa:
      if (eq.kind != EquationKind::PII) throw WrongParameters("family IIa needs equation (II)");
      return {2, 2, -eq.alpha};
    case FamilyTag::IIb:
      if (eq.kind != EquationKind::PII) throw WrongParameters("family IIb needs equation (II)");
      return {2, -1, sgn * std::sqrt(Complex(-0.5))};
    case FamilyTag::IVa:
      if (eq.kind != EquationKind::PIV) throw WrongParameters("family IVa needs equation (IV)");
      return {1, -1, Complex(-2.0 / 3.0)};
    case FamilyTag::IVb:
      if (eq.kind != EquationKind::PIV) throw WrongParameters("family IVb needs equation (IV)");
      return {1, -1, Complex(-2.0)};
    case FamilyTag::IVcPlus:
    case FamilyTag::IVcMinus: {
      if (eq.kind != EquationKind::PIV) throw WrongParameters("family IVc needs equation (IV)");
      if (std::abs(eq.gamma) < 1e-14)
        throw UnsupportedFamily("IVc with gamma=0 degenerates to w~0; use log_derivative_series");
      const Complex g = family.tag == FamilyTag::IVcPlus ? eq.gamma : -eq.gamma;
      return {1, 1, g};
    }
  }
  return {};
}

// d/dz acting on series in u = z^(-1/q):  d/dz = -(1/q) u^(q+1) d/du.
TSeries ddz_at_infinity(const TSeries& s, int q) {
  return (-1.0 / static_cast<double>(q)) * series_shift(series_ddx(s), q + 1);
}

TSeries infinity_residual(const EquationSpec& eq, const TSeries& w, int q) {
  const int hiZ = w.hi + 4 * q + 8;
  const TSeries z = TSeries::monomial(1.0, -q, hiZ);
  const TSeries d1 = ddz_at_infinity(w, q);
  const TSeries d2 = ddz_at_infinity(d1, q);
  switch (eq.kind) {
    case EquationKind::PI:
      return d2 - 6.0 * (w * w) - z;
    case EquationKind::PII:
      return d2 - 2.0 * (w * w * w) - z * w - TSeries::constant(eq.alpha, w.hi + 2 * q);
    case EquationKind::PIV: {
      const TSeries w2 = w * w;
      return 2.0 * (w * d2) - d1 * d1 - 3.0 * (w2 * w2) - 8.0 * (z * (w2 * w)) -
             4.0 * ((z * z - TSeries::constant(eq.alpha, hiZ)) * w2) -
             TSeries::constant(2.0 * eq.beta, w.hi + 2 * q);
    }
  }
  return {};
}

// Solve unknown coefficients order by order.  The unknown enters the residual
// linearly at its indicial order; the factor is probed numerically.
struct SlotSolveResult {
  int nextResidualIndex = 0;  // u-order of the residual left by the truncation
};

template <typename ResidualFn>
int probe_slot(const TSeries& w, int slot, const TSeries& R0, const ResidualFn& residual,
               Complex* lambda) {
  TSeries probe = w;
  if (slot > probe.hi) {
    probe.hi = slot;
    probe.c.resize(static_cast<size_t>(probe.hi - probe.lo + 1), Complex{0.0});
  }
  probe.set(slot, probe.at(slot) + 1.0);
  const TSeries R1 = residual(probe);
  const double scale = std::max({1.0, R0.max_abs(), R1.max_abs()});
  for (int k = R1.lo; k <= std::min(R0.hi, R1.hi); ++k) {
    const Complex d = R1.at(k) - R0.at(k);
    if (std::abs(d) > 1e-9 * scale) {
      *lambda = d;
      return k;
    }
  }
  throw Error("asymptotic recursion: no linear residual slot found");
}

template <typename ResidualFn>
SlotSolveResult solve_slots(TSeries& w, int N, const ResidualFn& residual) {
  TSeries R0 = residual(w);
  for (int j = 1; j <= N; ++j) {
    const int slot = w.lo + j;
    Complex lambda;
    const int m = probe_slot(w, slot, R0, residual, &lambda);
    if (std::abs(lambda) < 1e-8) throw Error("asymptotic recursion: degenerate multiplier");
    w.set(slot, -R0.at(m) / lambda);
    R0 = residual(w);
  }
  // order of the residual the truncation leaves behind: probe the next slot
  // on a zero-extended copy so the comparison window reaches far enough
  TSeries wext = w;
  wext.hi += 1;
  wext.c.push_back(Complex{0.0});
  const TSeries R0e = residual(wext);
  Complex lambda;
  SlotSolveResult out;
  out.nextResidualIndex = probe_slot(wext, wext.hi, R0e, residual, &lambda);
  return out;
}

TSeries asymptotic_w_tseries(const AsymptoticFamily& family, const EquationSpec& eq, int N,
                             int* qOut, int* nextResidual) {
  const InfinitySetup setup = family_setup(family, eq);
  TSeries w(setup.lo, setup.lo + N);
  w.set(setup.lo, setup.lead);
  auto residual = [&](const TSeries& s) { return infinity_residual(eq, s, setup.q); };
  const SlotSolveResult r = solve_slots(w, N, residual);
  *qOut = setup.q;
  if (nextResidual) *nextResidual = r.nextResidualIndex;
  return w;
}

SeriesExpansion pack_infinity_series(const TSeries& s, int q, int N, int nextResidualIndex) {
  SeriesExpansion e;
  e.variable = SeriesVariable::AtInfinity;
  e.exponentStep = Rational(1, q);
  e.leadingExponent = Rational(-s.lo, q);
  e.truncationOrder = N;
  e.coeffs.assign(s.c.begin(), s.c.begin() + std::min<size_t>(s.c.size(), N + 1));
  e.residualOrder = Rational(-nextResidualIndex, q);
  return e;
}

}  // namespace

const char* family_name(FamilyTag t) {
  switch (t) {
    case FamilyTag::I: return "i";
    case FamilyTag::IIa: return "iia";
    case FamilyTag::IIb: return "iib";
    case FamilyTag::IVa: return "iva";
    case FamilyTag::IVb: return "ivb";
    case FamilyTag::IVcPlus: return "ivc+";
    case FamilyTag::IVcMinus: return "ivc-";
  }
  return "?";
}

int laurent_free_slot(EquationKind kind) { return laurent_shape(kind).freeSlot; }

SeriesExpansion laurent_w(const PoleSeed& seed, int N) {
  return pack_pole_series(seed, laurent_w_tseries(seed, N), N);
}

SeriesExpansion laurent_W(const PoleSeed& seed, int N) {
  TSeries W = laurent_W_tseries(seed, N);
  SeriesExpansion e;
  e.variable = SeriesVariable::AroundPole;
  e.polePoint = seed.p;
  e.exponentStep = Rational(1);
  e.leadingExponent = Rational(W.lo);
  e.truncationOrder = N;
  const int count = std::min(W.hi, N) - W.lo + 1;
  e.coeffs.assign(W.c.begin(), W.c.begin() + count);
  e.residualOrder = Rational(N + 1);
  return e;
}

Jet seed_jet(const PoleSeed& seed, Complex offset, int N) {
  if (std::abs(offset) == 0.0) throw OffsetOutsideValidity("seed_jet: zero offset");
  const TSeries w = laurent_w_tseries(seed, N);
  // empirical tail bound: the last terms must already be negligible
  double tail = 0.0;
  for (int k = std::max(w.lo, w.hi - 2); k <= w.hi; ++k)
    tail = std::max(tail, std::abs(w.at(k)) * std::pow(std::abs(offset), k));
  const Complex wv = series_eval(w, offset);
  if (tail > 1e-8 * std::max(1.0, std::abs(wv)))
    throw OffsetOutsideValidity("seed_jet: offset outside the validated radius");
  Jet jet;
  jet.z = seed.p + offset;
  jet.w = wv;
  const TSeries d1 = series_ddx(w);
  jet.w1 = series_eval(d1, offset);
  if (seed.eq.kind == EquationKind::PIV) jet.w2 = series_eval(series_ddx(d1), offset);
  return jet;
}

PoleSeed detect_pole(const EquationSpec& eq, const std::vector<Jet>& samples, double fitTol,
                     double* residualOut) {
  if (samples.size() < 4) throw FitFailed("detect_pole: need at least 4 samples");
  const bool doublePole = eq.kind == EquationKind::PI;
  const int kres = laurent_free_slot(eq.kind);

  // initial guesses from the sample deepest into the pole
  const Jet* best = &samples[0];
  for (const auto& s : samples)
    if (std::abs(s.w) > std::abs(best->w)) best = &s;
  Complex x0 = doublePole ? -2.0 * best->w / best->w1 : -best->w / best->w1;
  PoleSeed seed;
  seed.eq = eq;
  seed.p = best->z - x0;
  seed.h = 0.0;
  seed.eps = 1;
  if (!doublePole) {
    const double re = (best->w * x0).real();
    seed.eps = re >= 0.0 ? 1 : -1;
  }

  const int N = 16;
  double res = 0.0;
  for (int iter = 0; iter < 60; ++iter) {
    const TSeries model = laurent_w_tseries(seed, N);
    const TSeries dmodel = series_ddx(model);
    double a11 = 0.0, a22 = 0.0;
    Complex a12{0.0}, b1{0.0}, b2{0.0};
    double rss = 0.0;
    for (const auto& s : samples) {
      const Complex x = s.z - seed.p;
      const double wgt = 1.0 / std::max(1e-300, std::norm(s.w));
      const Complex r = series_eval(model, x) - s.w;
      const Complex jp = -series_eval(dmodel, x);
      const Complex jh = std::pow(x, kres);
      a11 += std::norm(jp) * wgt;
      a22 += std::norm(jh) * wgt;
      a12 += std::conj(jp) * jh * wgt;
      b1 -= std::conj(jp) * r * wgt;
      b2 -= std::conj(jh) * r * wgt;
      rss += std::norm(r) * wgt;
    }
    res = std::sqrt(rss / static_cast<double>(samples.size()));
    // column-scaled normal equations: the two columns differ by orders of
    // magnitude, so solve in unit-diagonal form
    const double s1 = std::sqrt(a11), s2 = std::sqrt(a22);
    if (s1 <= 0.0 || s2 <= 0.0) break;
    const Complex c12 = a12 / (s1 * s2);
    const double det = 1.0 - std::norm(c12);
    if (det <= 1e-12) break;
    const Complex g1 = b1 / s1, g2 = b2 / s2;
    const Complex dp = (g1 - c12 * g2) / det / s1;
    const Complex dh = (g2 - std::conj(c12) * g1) / det / s2;
    seed.p += dp;
    seed.h += dh;
    if (std::abs(dp) < 1e-15 * local_scale(seed.p) && std::abs(dh) < 1e-13 * (1.0 + std::abs(seed.h)))
      break;
  }
  {
    // final residual with the converged parameters
    const TSeries model = laurent_w_tseries(seed, N);
    double rss = 0.0;
    for (const auto& s : samples)
      rss += std::norm(series_eval(model, s.z - seed.p) - s.w) / std::max(1e-300, std::norm(s.w));
    res = std::sqrt(rss / static_cast<double>(samples.size()));
  }
  if (residualOut) *residualOut = res;
  if (!(res <= fitTol)) throw FitFailed("detect_pole: fit residual above tolerance");
  return seed;
}

SeriesExpansion asymptotic_series(const AsymptoticFamily& family, const EquationSpec& eq, int N) {
  if (N > 24) throw WrongParameters("asymptotic_series: N capped at 24");
  int q = 1, nextRes = 0;
  const TSeries w = asymptotic_w_tseries(family, eq, N, &q, &nextRes);
  return pack_infinity_series(w, q, N, nextRes);
}

SeriesExpansion asymptotic_series_W(const AsymptoticFamily& family, const EquationSpec& eq,
                                    int N) {
  if (N > 24) throw WrongParameters("asymptotic_series_W: N capped at 24");
  int q = 1;
  const int Nw = std::min(24, N + 8);
  const TSeries w = asymptotic_w_tseries(family, eq, Nw, &q, nullptr);
  const int hiZ = w.hi + 4 * q + 8;
  const TSeries z = TSeries::monomial(1.0, -q, hiZ);
  const TSeries d1 = ddz_at_infinity(w, q);
  TSeries W;
  switch (eq.kind) {
    case EquationKind::PI:
      W = 0.5 * (4.0 * (w * w * w) + 2.0 * (z * w) - d1 * d1);
      break;
    case EquationKind::PII: {
      const TSeries w2 = w * w;
      W = w2 * w2 + z * w2 + 2.0 * eq.alpha * w - d1 * d1;
      break;
    }
    case EquationKind::PIV: {
      const TSeries w2 = w * w;
      TSeries num = w2 * w2 + 4.0 * (z * (w2 * w)) +
                    4.0 * ((z * z - TSeries::constant(eq.alpha, hiZ)) * w2) -
                    TSeries::constant(2.0 * eq.beta, w.hi + 2 * q) - d1 * d1;
      num.trim_leading(1e-9);
      W = series_div(num, 4.0 * w);
      break;
    }
  }
  if (W.max_abs() < 1e-12) {
    // exponentially small first integral ((ii)_a with alpha=0): zero tail
    SeriesExpansion e;
    e.variable = SeriesVariable::AtInfinity;
    e.exponentStep = Rational(1, q);
    e.leadingExponent = Rational(0);
    e.coeffs.assign(static_cast<size_t>(N + 1), Complex{0.0});
    e.truncationOrder = N;
    return e;
  }
  W.trim_leading(1e-9);
  const int count = std::min(N + 1, W.length());
  SeriesExpansion e;
  e.variable = SeriesVariable::AtInfinity;
  e.exponentStep = Rational(1, q);
  e.leadingExponent = Rational(-W.lo, q);
  e.coeffs.assign(W.c.begin(), W.c.begin() + count);
  e.truncationOrder = count - 1;
  return e;
}

SeriesExpansion log_derivative_series(const EquationSpec& eq, SectorPair sectors, int N) {
  if (eq.kind == EquationKind::PIV) {
    if (std::abs(eq.beta) > 1e-14)
      throw WrongParameters("log_derivative_series: (IV) requires beta = 0");
    const int q = 1;
    TSeries y(-1, -1 + N);
    y.set(-1, sectors == SectorPair::Sigma02 ? Complex{-2.0} : Complex{2.0});
    // y = w'/w solves y' + y^2/2 - 2z^2 + 2alpha = 0 up to the vanishing tail of w
    auto residual = [&](const TSeries& s) {
      const int hiZ = s.hi + 2 * q + 8;
      const TSeries z2 = TSeries::monomial(2.0, -2 * q, hiZ);
      return ddz_at_infinity(s, q) + 0.5 * (s * s) - z2 +
             TSeries::constant(2.0 * eq.alpha, s.hi + 2);
    };
    const SlotSolveResult r = solve_slots(y, N, residual);
    return pack_infinity_series(y, q, N, r.nextResidualIndex);
  }
  if (eq.kind == EquationKind::PII) {
    if (std::abs(eq.alpha) > 1e-14)
      throw WrongParameters("log_derivative_series: (II) requires alpha = 0");
    const int q = 2;
    TSeries y(-1, -1 + N);
    y.set(-1, sectors == SectorPair::Sigma02 ? Complex{-1.0} : Complex{1.0});
    auto residual = [&](const TSeries& s) {
      const int hiZ = s.hi + 2 * q + 8;
      const TSeries z = TSeries::monomial(1.0, -q, hiZ);
      return ddz_at_infinity(s, q) + s * s - z;
    };
    const SlotSolveResult r = solve_slots(y, N, residual);
    return pack_infinity_series(y, q, N, r.nextResidualIndex);
  }
  throw WrongParameters("log_derivative_series: only (IV) beta=0 and (II) alpha=0");
}

// ---- SeriesExpansion evaluation ------------------------------------------

namespace {
int u_lo(const SeriesExpansion& e) {
  // integer exponent of the leading term in the internal variable
  // (x around a pole, u = z^(-1/q) at infinity)
  const long long q = e.exponentStep.den;
  if (e.variable == SeriesVariable::AroundPole) return static_cast<int>(e.leadingExponent.num);
  return static_cast<int>(-e.leadingExponent.num * (q / e.leadingExponent.den));
}
}  // namespace

Complex SeriesExpansion::eval(Complex at) const {
  if (variable == SeriesVariable::AroundPole) {
    Complex acc{0.0};
    for (size_t j = coeffs.size(); j-- > 0;) acc = acc * at + coeffs[j];
    return acc * std::pow(at, u_lo(*this));
  }
  const int q = static_cast<int>(exponentStep.den);
  const Complex u = (q == 1) ? 1.0 / at : 1.0 / std::sqrt(at);
  Complex acc{0.0};
  for (size_t j = coeffs.size(); j-- > 0;) acc = acc * u + coeffs[j];
  return acc * std::pow(u, u_lo(*this));
}

Complex SeriesExpansion::eval_derivative(Complex at) const {
  if (variable == SeriesVariable::AroundPole) {
    const int lo = u_lo(*this);
    Complex acc{0.0};
    for (size_t j = coeffs.size(); j-- > 0;)
      acc = acc * at + static_cast<double>(lo + static_cast<int>(j)) * coeffs[j];
    return acc * std::pow(at, lo - 1);
  }
  // sum c_j e_j z^(e_j - 1)
  SeriesExpansion scaled = *this;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    const double ej = leadingExponent.value() - static_cast<double>(j) * exponentStep.value();
    scaled.coeffs[j] = coeffs[j] * ej;
  }
  return scaled.eval(at) / at;
}

Complex SeriesExpansion::eval_second_derivative(Complex at) const {
  if (variable == SeriesVariable::AroundPole) {
    const int lo = u_lo(*this);
    Complex acc{0.0};
    for (size_t j = coeffs.size(); j-- > 0;) {
      const double e = static_cast<double>(lo + static_cast<int>(j));
      acc = acc * at + e * (e - 1.0) * coeffs[j];
    }
    return acc * std::pow(at, lo - 2);
  }
  SeriesExpansion scaled = *this;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    const double ej = leadingExponent.value() - static_cast<double>(j) * exponentStep.value();
    scaled.coeffs[j] = coeffs[j] * ej * (ej - 1.0);
  }
  return scaled.eval(at) / (at * at);
}

Complex SeriesExpansion::coeff_of_exponent(const Rational& e) const {
  const Rational diff = (variable == SeriesVariable::AroundPole) ? (e - leadingExponent)
                                                                 : (leadingExponent - e);
  // j = diff / step must be a non-negative integer inside the truncation
  const long long num = diff.num * exponentStep.den;
  const long long den = diff.den * exponentStep.num;
  if (den == 0 || num % den != 0) throw Error("coeff_of_exponent: exponent off the grid");
  const long long j = num / den;
  if (j < 0 || j >= static_cast<long long>(coeffs.size()))
    throw Error("coeff_of_exponent: exponent outside the truncation");
  return coeffs[static_cast<size_t>(j)];
}

}  // namespace pnlv
