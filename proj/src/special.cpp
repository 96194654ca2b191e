#include "pnlv/special.hpp"

#include "pnlv/integrate.hpp"

#include <cmath>
#include <numeric>

namespace pnlv {

// ---- linearized solutions --------------------------------------------------

LinearizedSolution::LinearizedSolution(Kind kind, Complex gamma, RootBranch branch, Complex u0,
                                       Complex u1)
    : kind_(kind), gamma_(gamma), branch_(branch), u0_(u0), u1_(u1) {
  if (std::abs(u0) == 0.0 && std::abs(u1) == 0.0)
    throw DegenerateU("linearized solution: u identically zero");
  if (kind_ == Kind::WeberHermite) {
    const Complex alpha = branch_ == RootBranch::Plus ? -(1.0 + gamma_) : (1.0 + gamma_);
    eq_ = EquationSpec::p4_gamma(alpha, gamma_);
  } else {
    eq_ = EquationSpec::p2(branch_ == RootBranch::Plus ? Complex{0.5} : Complex{-0.5});
  }
}

LinearizedSolution LinearizedSolution::weber_hermite(Complex gamma, RootBranch branch, Complex u0,
                                                     Complex u1) {
  return LinearizedSolution(Kind::WeberHermite, gamma, branch, u0, u1);
}

LinearizedSolution LinearizedSolution::airy(RootBranch branch, Complex u0, Complex u1) {
  return LinearizedSolution(Kind::Airy, 0.0, branch, u0, u1);
}

namespace {
constexpr int kTaylorTerms = 44;
}

std::pair<Complex, Complex> LinearizedSolution::u_pair(Complex z) const {
  Complex u = u0_, up = u1_;
  const double dist = std::abs(z);
  if (dist == 0.0) return {u, up};
  const Complex dir = z / dist;
  Complex center{0.0};
  double travelled = 0.0;
  const double sgn = branch_ == RootBranch::Plus ? 1.0 : -1.0;
  while (travelled < dist) {
    const double ac = std::abs(center);
    double step = kind_ == Kind::WeberHermite ? 2.0 / (1.0 + ac) : 1.5 / std::sqrt(1.0 + ac);
    step = std::min(step, dist - travelled);
    const Complex x = dir * step;

    // local Taylor coefficients from the linear ODE at this center
    Complex a[kTaylorTerms];
    a[0] = u;
    a[1] = up;
    for (int k = 0; k + 2 < kTaylorTerms; ++k) {
      const double f = 1.0 / ((k + 1.0) * (k + 2.0));
      if (kind_ == Kind::WeberHermite) {
        // u'' = +-(2zu' - 2 gamma u)
        a[k + 2] = sgn * f *
                   (2.0 * center * (k + 1.0) * a[k + 1] + (2.0 * k - 2.0 * gamma_) * a[k]);
      } else {
        // u'' = -(z/2)u
        a[k + 2] = -0.5 * f * (center * a[k] + (k >= 1 ? a[k - 1] : Complex{0.0}));
      }
    }
    Complex su{0.0}, sup{0.0};
    for (int k = kTaylorTerms - 1; k >= 1; --k) {
      su = su * x + a[k];
      sup = sup * x + static_cast<double>(k) * a[k];
    }
    su = su * x + a[0];
    u = su;
    up = sup;
    center += x;
    travelled += step;
    const double m = std::max(std::abs(u), std::abs(up));
    if (m > 1e100 || (m > 0.0 && m < 1e-100)) {
      u /= m;
      up /= m;
    }
  }
  return {u, up};
}

Jet LinearizedSolution::jet(Complex z, double uGuard) const {
  const auto [u, up] = u_pair(z);
  const double m = std::max(std::abs(u), std::abs(up));
  if (m == 0.0 || std::abs(u) < uGuard * m)
    throw EvaluationFailed("linearized solution: z too close to a pole of w");
  const Complex v = up / u;
  const double sgn = branch_ == RootBranch::Plus ? 1.0 : -1.0;
  Jet jet;
  jet.z = z;
  if (kind_ == Kind::WeberHermite) {
    jet.w = -sgn * v;
    // Riccati: w' = 2 gamma +- (2zw + w^2)
    jet.w1 = 2.0 * gamma_ + sgn * (2.0 * z * jet.w + jet.w * jet.w);
    jet.w2 = sgn * (2.0 * jet.w + 2.0 * z * jet.w1 + 2.0 * jet.w * jet.w1);
  } else {
    jet.w = -sgn * v;
    jet.w1 = sgn * (z / 2.0 + jet.w * jet.w);
    jet.w2 = eq_.alpha + z * jet.w + 2.0 * jet.w * jet.w * jet.w;
  }
  return jet;
}

// ---- exact fractions -------------------------------------------------------

Fraction::Fraction(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw Error("Fraction: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Fraction Fraction::operator+(const Fraction& o) const {
  return Fraction(num * o.den + o.num * den, den * o.den);
}
Fraction Fraction::operator-(const Fraction& o) const {
  return Fraction(num * o.den - o.num * den, den * o.den);
}
Fraction Fraction::operator*(const Fraction& o) const {
  return Fraction(num * o.num, den * o.den);
}

bool FPoly::is_zero() const {
  for (const auto& f : c)
    if (!f.is_zero()) return false;
  return true;
}

FPoly FPoly::operator+(const FPoly& o) const {
  FPoly r;
  r.c.resize(std::max(c.size(), o.c.size()));
  for (size_t i = 0; i < r.c.size(); ++i) {
    Fraction v;
    if (i < c.size()) v = v + c[i];
    if (i < o.c.size()) v = v + o.c[i];
    r.c[i] = v;
  }
  return r;
}

FPoly FPoly::operator-(const FPoly& o) const {
  FPoly neg = o;
  for (auto& f : neg.c) f = Fraction(-f.num, f.den);
  return *this + neg;
}

FPoly FPoly::operator*(const FPoly& o) const {
  FPoly r;
  if (c.empty() || o.c.empty()) return r;
  r.c.assign(c.size() + o.c.size() - 1, Fraction());
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
  return r;
}

FPoly FPoly::derivative() const {
  FPoly r;
  if (c.size() <= 1) return r;
  r.c.resize(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * Fraction(static_cast<long long>(i));
  return r;
}

Complex FPoly::eval(Complex z) const {
  Complex acc{0.0};
  for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i].value();
  return acc;
}

Complex RationalSolution::eval(Complex z) const { return P.eval(z) / Q.eval(z); }

Jet RationalSolution::jet(Complex z) const {
  const Complex p = P.eval(z), q = Q.eval(z);
  const FPoly P1 = P.derivative(), Q1 = Q.derivative();
  const FPoly P2 = P1.derivative(), Q2 = Q1.derivative();
  const Complex p1 = P1.eval(z), q1 = Q1.eval(z), p2 = P2.eval(z), q2 = Q2.eval(z);
  Jet jet;
  jet.z = z;
  jet.w = p / q;
  jet.w1 = (p1 * q - p * q1) / (q * q);
  jet.w2 = ((p2 * q - p * q2) * q - 2.0 * q1 * (p1 * q - p * q1)) / (q * q * q);
  return jet;
}

std::vector<RationalSolution> rational_solutions(const EquationSpec& eq) {
  if (eq.kind != EquationKind::PIV)
    throw WrongParameters("rational_solutions: catalogue covers (IV) only");
  auto near = [](Complex a, double b) { return std::abs(a - b) < 1e-12; };
  std::vector<RationalSolution> out;
  const FPoly one{{Fraction(1)}};
  if (near(eq.beta, 0.0)) {
    out.push_back(RationalSolution{FPoly{{Fraction(0)}}, one, Fraction(0), Fraction(0)});
  }
  if (near(eq.alpha, 0.0) && near(eq.beta, -2.0)) {
    out.push_back(
        RationalSolution{FPoly{{Fraction(0), Fraction(-2)}}, one, Fraction(0), Fraction(-2)});
  }
  if (near(eq.alpha, 0.0) && near(eq.beta, -2.0 / 9.0)) {
    out.push_back(RationalSolution{FPoly{{Fraction(0), Fraction(-2, 3)}}, one, Fraction(0),
                                   Fraction(-2, 9)});
  }
  if (near(eq.alpha, -2.0) && near(eq.beta, -2.0)) {
    out.push_back(RationalSolution{FPoly{{Fraction(-1)}}, FPoly{{Fraction(0), Fraction(1)}},
                                   Fraction(-2), Fraction(-2)});
  }
  if (out.empty()) throw NoKnownRationalSolution("rational_solutions: parameters not catalogued");
  return out;
}

bool rational_residual_is_zero(const RationalSolution& sol) {
  const FPoly& P = sol.P;
  const FPoly& Q = sol.Q;
  const FPoly P1 = P.derivative(), Q1 = Q.derivative();
  const FPoly P2 = P1.derivative(), Q2 = Q1.derivative();
  const FPoly z{{Fraction(0), Fraction(1)}};
  const FPoly z2mA = z * z - FPoly{{sol.alpha}};
  const FPoly wNum = P1 * Q - P * Q1;  // w' * Q^2
  const FPoly Q_2 = Q * Q;
  const FPoly Q_4 = Q_2 * Q_2;
  // residual of 2ww'' - (w'^2 + 3w^4 + 8zw^3 + 4(z^2-a)w^2 + 2b), times Q^4
  const FPoly lhs = FPoly{{Fraction(2)}} * P * ((P2 * Q - P * Q2) * Q - FPoly{{Fraction(2)}} * Q1 * wNum);
  const FPoly rhs = wNum * wNum + FPoly{{Fraction(3)}} * P * P * P * P +
                    FPoly{{Fraction(8)}} * z * P * P * P * Q +
                    FPoly{{Fraction(4)}} * z2mA * P * P * Q_2 +
                    FPoly{{Fraction(2) * sol.beta}} * Q_4;
  return (lhs - rhs).is_zero();
}

// ---- Airy function on the real axis ----------------------------------------

double airy_ai(double x) {
  if (x <= 5.0) {
    // Maclaurin pair f, g with Ai = Ai(0) f + Ai'(0) g
    const double ai0 = 0.35502805388781723926;
    const double aip0 = -0.25881940379280679840;
    double f = 1.0, g = x;
    double tf = 1.0, tg = x;
    for (int k = 0; k < 60; ++k) {
      const int n = 3 * k;
      tf *= x * x * x / ((n + 2.0) * (n + 3.0));
      tg *= x * x * x / ((n + 3.0) * (n + 4.0));
      f += tf;
      g += tg;
      if (std::abs(tf) + std::abs(tg) < 1e-18 * (std::abs(f) + std::abs(g))) break;
    }
    return ai0 * f + aip0 * g;
  }
  const double zeta = 2.0 * x * std::sqrt(x) / 3.0;
  double sum = 1.0, uk = 1.0;
  for (int k = 1; k <= 14; ++k) {
    uk *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / (216.0 * k * (2.0 * k - 1.0));
    const double term = ((k & 1) ? -1.0 : 1.0) * uk / std::pow(zeta, k);
    sum += term;
    if (std::abs(term) < 1e-17) break;
  }
  return std::exp(-zeta) * sum / (2.0 * std::sqrt(M_PI) * std::pow(x, 0.25));
}

double airy_ai_prime(double x) {
  const double aip0 = -0.25881940379280679840;
  if (std::abs(x) < 1e-12) return aip0;
  if (x <= 5.0) {
    const double ai0 = 0.35502805388781723926;
    // derivatives of the Maclaurin pair
    double fp = 0.0, gp = 1.0;
    double tf = 1.0, tg = x;
    for (int k = 0; k < 60; ++k) {
      const int n = 3 * k;
      tf *= x * x * x / ((n + 2.0) * (n + 3.0));
      tg *= x * x * x / ((n + 3.0) * (n + 4.0));
      fp += tf * (n + 3.0) / x;
      gp += tg * (n + 4.0) / x;
      if (std::abs(tf) + std::abs(tg) < 1e-18) break;
    }
    return ai0 * fp + aip0 * gp;
  }
  const double zeta = 2.0 * x * std::sqrt(x) / 3.0;
  double sum = 1.0, uk = 1.0;
  for (int k = 1; k <= 14; ++k) {
    uk *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / (216.0 * k * (2.0 * k - 1.0));
    const double vk = uk * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    const double term = ((k & 1) ? -1.0 : 1.0) * vk / std::pow(zeta, k);
    sum += term;
    if (std::abs(term) < 1e-17) break;
  }
  return -std::pow(x, 0.25) * std::exp(-zeta) * sum / (2.0 * std::sqrt(M_PI));
}

// ---- Hastings-McLeod --------------------------------------------------------

namespace {
enum class ShotOutcome { BlowUpPositive, WentNegative, Undecided };

ShotOutcome classify_shot(double k, double L) {
  const auto eq = EquationSpec::p2(0.0);
  const Jet start{L, k * airy_ai(L), k * airy_ai_prime(L)};
  IntegrateOptions opts;
  opts.tol = 1e-12;
  opts.hopPoles = false;
  ShotOutcome outcome = ShotOutcome::Undecided;
  double lastW = start.w.real();
  try {
    integrate(eq, start, PathSpec::segment(Complex{L}, Complex{-L}), opts,
              [&](const TrajectorySample& s) {
                const double w = s.jet.w.real();
                lastW = w;
                if (outcome != ShotOutcome::Undecided) return false;
                if (w > 3.0) outcome = ShotOutcome::BlowUpPositive;
                if (w < -0.05) outcome = ShotOutcome::WentNegative;
                return outcome == ShotOutcome::Undecided;
              });
  } catch (const StepSizeUnderflow&) {
    if (outcome == ShotOutcome::Undecided)
      outcome = lastW > 0.0 ? ShotOutcome::BlowUpPositive : ShotOutcome::WentNegative;
  }
  return outcome;
}
}  // namespace

HastingsMcLeodResult hastings_mcleod_shoot(double tolerance, double L) {
  double lo = 0.2, hi = 2.0;
  if (classify_shot(lo, L) != ShotOutcome::WentNegative ||
      classify_shot(hi, L) != ShotOutcome::BlowUpPositive)
    throw BracketLost("hastings_mcleod_shoot: initial bracket invalid");
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    switch (classify_shot(mid, L)) {
      case ShotOutcome::BlowUpPositive: hi = mid; break;
      case ShotOutcome::WentNegative: lo = mid; break;
      case ShotOutcome::Undecided:
        // neither blew up nor dipped: mid is inside the bracket resolution
        hi = mid;
        break;
    }
  }
  const double k = 0.5 * (lo + hi);
  const auto eq = EquationSpec::p2(0.0);
  const Jet start{L, k * airy_ai(L), k * airy_ai_prime(L)};
  IntegrateOptions opts;
  opts.tol = 1e-12;
  opts.hopPoles = false;
  const auto traj = integrate(eq, start, PathSpec::segment(Complex{L}, Complex{0.0}), opts);
  HastingsMcLeodResult out;
  out.jetAtZero = traj.samples.back().jet;
  out.kLow = lo;
  out.kHigh = hi;
  return out;
}

}  // namespace pnlv
