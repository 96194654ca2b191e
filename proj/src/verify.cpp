#include "pnlv/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>

#include "pnlv/backlund.hpp"
#include "pnlv/eqcore.hpp"
#include "pnlv/integrate.hpp"
#include "pnlv/localseries.hpp"
#include "pnlv/polefield.hpp"
#include "pnlv/rescale.hpp"
#include "pnlv/special.hpp"

namespace pnlv {

bool VerifyReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::vector<std::string> verify_suite_names() {
  return {"laurent",   "asymptotic", "exact",         "backlund",
          "polepass",  "string-synthetic", "string-harvest", "counting",
          "rescale-limit", "residue",  "first-order",   "deficiency"};
}

namespace {

std::mt19937_64 make_rng(unsigned long long seed) { return std::mt19937_64(seed); }

Complex rand_cplx(std::mt19937_64& rng, double lo = 0.5, double hi = 2.0) {
  std::uniform_real_distribution<double> mag(lo, hi), ang(0.0, 2.0 * M_PI);
  return std::polar(mag(rng), ang(rng));
}

int rand_eps(std::mt19937_64& rng) { return (rng() & 1u) ? 1 : -1; }

double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / std::max(1.0, std::max(std::abs(got), std::abs(want)));
}

void add(VerifyReport& rep, const std::string& name, double measured, double threshold,
         const std::string& note = "") {
  rep.checks.push_back({name, measured <= threshold, measured, threshold, note});
}

void add_flag(VerifyReport& rep, const std::string& name, bool ok, const std::string& note = "") {
  rep.checks.push_back({name, ok, ok ? 0.0 : 1.0, 0.5, note});
}

// ---- shared harvested fields -------------------------------------------------

const LinearizedSolution& wh_reference_solution() {
  static LinearizedSolution sol =
      LinearizedSolution::weber_hermite(2.0, RootBranch::Plus, 1.0, 1.0);
  return sol;
}

const PoleCatalog& wh_reference_field() {
  static PoleCatalog catalog = [] {
    const auto& wh = wh_reference_solution();
    RegionSpec region{3.0, 30.0, 0.0, 2.0 * M_PI};
    SweepStrategy strategy;
    strategy.tol = 1e-9;
    return sweep(wh.equation(), make_accessor(wh), region, strategy);
  }();
  return catalog;
}

// ---- criterion 1: Laurent print agreement -------------------------------------

VerifyReport verify_laurent(unsigned long long seed) {
  VerifyReport rep;
  rep.suite = "laurent";
  auto rng = make_rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Complex p = rand_cplx(rng), h = rand_cplx(rng);
    const Complex alpha = rand_cplx(rng), beta = rand_cplx(rng);
    const int eps = rand_eps(rng);
    {
      PoleSeed s{EquationSpec::p1(), p, 1, h};
      const auto w = laurent_w(s, 5), W = laurent_W(s, 4);
      worst = std::max({worst, rel_err(w.coeff_of_exponent(Rational(-2)), 1.0),
                        rel_err(w.coeff_of_exponent(Rational(2)), -p / 10.0),
                        rel_err(w.coeff_of_exponent(Rational(3)), Complex{-1.0 / 6.0}),
                        rel_err(w.coeff_of_exponent(Rational(4)), h),
                        rel_err(W.coeff_of_exponent(Rational(-1)), Complex{-1.0}),
                        rel_err(W.coeff_of_exponent(Rational(0)), 14.0 * h),
                        rel_err(W.coeff_of_exponent(Rational(3)), -p / 30.0),
                        rel_err(W.coeff_of_exponent(Rational(4)), Complex{-1.0 / 24.0})});
    }
    {
      const double e = eps;
      PoleSeed s{EquationSpec::p2(alpha), p, eps, h};
      const auto w = laurent_w(s, 4), W = laurent_W(s, 2);
      worst = std::max({worst, rel_err(w.coeff_of_exponent(Rational(-1)), Complex{e}),
                        rel_err(w.coeff_of_exponent(Rational(1)), -e * p / 6.0),
                        rel_err(w.coeff_of_exponent(Rational(2)), -(alpha + e) / 4.0),
                        rel_err(w.coeff_of_exponent(Rational(3)), h),
                        rel_err(W.coeff_of_exponent(Rational(-1)), Complex{-1.0}),
                        rel_err(W.coeff_of_exponent(Rational(0)),
                                10.0 * e * h - 7.0 / 36.0 * p * p),
                        rel_err(W.coeff_of_exponent(Rational(1)), -p / 3.0),
                        rel_err(W.coeff_of_exponent(Rational(2)), -(1.0 + e * alpha) / 4.0)});
    }
    {
      const double e = eps;
      PoleSeed s{EquationSpec::p4(alpha, beta), p, eps, h};
      const auto w = laurent_w(s, 3), W = laurent_W(s, 1);
      worst = std::max({worst, rel_err(w.coeff_of_exponent(Rational(-1)), Complex{e}),
                        rel_err(w.coeff_of_exponent(Rational(0)), -p),
                        rel_err(w.coeff_of_exponent(Rational(1)),
                                (e / 3.0) * (p * p + 2.0 * alpha - 4.0 * e)),
                        rel_err(w.coeff_of_exponent(Rational(2)), h),
                        rel_err(W.coeff_of_exponent(Rational(-1)), Complex{-1.0}),
                        rel_err(W.coeff_of_exponent(Rational(0)),
                                2.0 * h + 2.0 * (alpha - e) * p),
                        rel_err(W.coeff_of_exponent(Rational(1)),
                                (4.0 * alpha - p * p - 2.0 * e) / 3.0)});
    }
  }
  add(rep, "laurent print agreement (50 random seeds)", worst, 1e-12,
      "PI W constant checked as +14h (see decisions ledger)");
  return rep;
}

// ---- criterion 2: asymptotic print agreement -----------------------------------

VerifyReport verify_asymptotic(unsigned long long seed) {
  VerifyReport rep;
  rep.suite = "asymptotic";
  auto rng = make_rng(seed + 1);
  double worst = 0.0, worstW = 0.0, worstLog = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Complex alpha = rand_cplx(rng), gamma = rand_cplx(rng);
    const auto eq4 = EquationSpec::p4_gamma(alpha, gamma);
    const auto eq2 = EquationSpec::p2(alpha);
    {
      const auto s = asymptotic_series({FamilyTag::IVb}, eq4, 6);
      worst = std::max({worst, rel_err(s.coeff_of_exponent(Rational(1)), Complex{-2.0}),
                        rel_err(s.coeff_of_exponent(Rational(-1)), -alpha),
                        rel_err(s.coeff_of_exponent(Rational(-3)),
                                (3.0 * alpha * alpha - gamma * gamma + 1.0) / 4.0)});
      const auto W = asymptotic_series_W({FamilyTag::IVb}, eq4, 4);
      worstW = std::max({worstW, rel_err(W.coeff_of_exponent(Rational(1)), 2.0 * alpha),
                         rel_err(W.coeff_of_exponent(Rational(-1)),
                                 (alpha * alpha - gamma * gamma + 1.0) / 2.0)});
    }
    {
      const auto s = asymptotic_series({FamilyTag::IVa}, eq4, 6);
      worst = std::max({worst, rel_err(s.coeff_of_exponent(Rational(1)), Complex{-2.0 / 3.0}),
                        rel_err(s.coeff_of_exponent(Rational(-1)), alpha),
                        rel_err(s.coeff_of_exponent(Rational(-3)),
                                -(3.0 * alpha * alpha - 9.0 * gamma * gamma + 1.0) / 4.0)});
      const auto W = asymptotic_series_W({FamilyTag::IVa}, eq4, 4);
      worstW = std::max(
          {worstW, rel_err(W.coeff_of_exponent(Rational(3)), Complex{-8.0 / 27.0}),
           rel_err(W.coeff_of_exponent(Rational(1)), 2.0 * alpha / 3.0),
           rel_err(W.coeff_of_exponent(Rational(-1)),
                   -(3.0 * alpha * alpha + 9.0 * gamma * gamma - 1.0) / 6.0)});
    }
    {
      const auto sp = asymptotic_series({FamilyTag::IVcPlus}, eq4, 6);
      const auto sm = asymptotic_series({FamilyTag::IVcMinus}, eq4, 6);
      worst = std::max({worst, rel_err(sp.coeff_of_exponent(Rational(-1)), gamma),
                        rel_err(sp.coeff_of_exponent(Rational(-3)),
                                -(2.0 * gamma * gamma - alpha * gamma) / 2.0),
                        rel_err(sm.coeff_of_exponent(Rational(-1)), -gamma),
                        rel_err(sm.coeff_of_exponent(Rational(-3)),
                                -(2.0 * gamma * gamma + alpha * gamma) / 2.0)});
      const auto W = asymptotic_series_W({FamilyTag::IVcPlus}, eq4, 4);
      worstW = std::max({worstW, rel_err(W.coeff_of_exponent(Rational(1)), 2.0 * gamma),
                         rel_err(W.coeff_of_exponent(Rational(-1)),
                                 gamma * gamma - alpha * gamma)});
    }
    {
      const auto s = asymptotic_series({FamilyTag::IIa}, eq2, 12);
      worst = std::max({worst, rel_err(s.coeff_of_exponent(Rational(-1)), -alpha),
                        rel_err(s.coeff_of_exponent(Rational(-4)),
                                2.0 * alpha * (alpha * alpha - 1.0))});
      const auto W = asymptotic_series_W({FamilyTag::IIa}, eq2, 10);
      worstW = std::max({worstW, rel_err(W.coeff_of_exponent(Rational(-1)), -alpha * alpha),
                         rel_err(W.coeff_of_exponent(Rational(-4)),
                                 alpha * alpha * (alpha * alpha - 1.0))});
    }
    {
      const Complex a0 = std::sqrt(Complex{-0.5});
      const auto s = asymptotic_series({FamilyTag::IIb, RootBranch::Plus}, eq2, 6);
      worst = std::max({worst, rel_err(s.coeff_of_exponent(Rational(1, 2)), a0),
                        rel_err(s.coeff_of_exponent(Rational(-1)), alpha / 2.0)});
      const auto W = asymptotic_series_W({FamilyTag::IIb, RootBranch::Plus}, eq2, 6);
      worstW = std::max({worstW, rel_err(W.coeff_of_exponent(Rational(2)), Complex{-0.25}),
                         rel_err(W.coeff_of_exponent(Rational(1, 2)), 2.0 * alpha * a0),
                         rel_err(W.coeff_of_exponent(Rational(-1)),
                                 (1.0 + 4.0 * alpha * alpha) / 8.0)});
    }
    {
      const auto eq0 = EquationSpec::p4(alpha, 0.0);
      const auto ym = log_derivative_series(eq0, SectorPair::Sigma02, 8);
      const auto yp = log_derivative_series(eq0, SectorPair::Sigma13, 8);
      worstLog = std::max(
          {worstLog, rel_err(ym.coeff_of_exponent(Rational(1)), Complex{-2.0}),
           rel_err(ym.coeff_of_exponent(Rational(-1)), alpha - 1.0),
           rel_err(ym.coeff_of_exponent(Rational(-3)),
                   (alpha * alpha - 4.0 * alpha + 3.0) / 4.0),
           rel_err(yp.coeff_of_exponent(Rational(1)), Complex{2.0}),
           rel_err(yp.coeff_of_exponent(Rational(-1)), -(alpha + 1.0)),
           rel_err(yp.coeff_of_exponent(Rational(-3)),
                   -(alpha * alpha + 4.0 * alpha + 3.0) / 4.0)});
    }
  }
  {
    const Complex a0 = std::sqrt(Complex{-1.0 / 6.0});
    const auto s = asymptotic_series({FamilyTag::I, RootBranch::Plus}, EquationSpec::p1(), 10);
    worst = std::max({worst, rel_err(s.coeff_of_exponent(Rational(1, 2)), a0),
                      rel_err(s.coeff_of_exponent(Rational(-2)), Complex{-1.0 / 48.0})});
    const auto W = asymptotic_series_W({FamilyTag::I, RootBranch::Plus}, EquationSpec::p1(), 6);
    worstW = std::max({worstW, rel_err(W.coeff_of_exponent(Rational(3, 2)), 2.0 * a0 / 3.0),
                       rel_err(W.coeff_of_exponent(Rational(-1)), Complex{1.0 / 48.0})});
    const auto y2 = log_derivative_series(EquationSpec::p2(0.0), SectorPair::Sigma02, 8);
    worstLog = std::max({worstLog, rel_err(y2.coeff_of_exponent(Rational(1, 2)), Complex{-1.0}),
                         rel_err(y2.coeff_of_exponent(Rational(-1)), Complex{-0.25}),
                         rel_err(y2.coeff_of_exponent(Rational(-5, 2)), Complex{5.0 / 32.0})});
  }
  add(rep, "asymptotic w coefficients (50 random points)", worst, 1e-12);
  add(rep, "asymptotic W coefficients", worstW, 1e-12);
  add(rep, "log-derivative expansions", worstLog, 1e-12);
  return rep;
}

// ---- criterion 3: exact-solution residuals --------------------------------------

VerifyReport verify_exact(unsigned long long) {
  VerifyReport rep;
  rep.suite = "exact";
  bool exactZero = true;
  for (const auto& [alpha, beta] : std::vector<std::pair<Complex, Complex>>{
           {0.0, -2.0}, {0.0, Complex{-2.0 / 9.0}}, {-2.0, -2.0}}) {
    const auto sols = rational_solutions(EquationSpec::p4(alpha, beta));
    for (const auto& s : sols) exactZero = exactZero && rational_residual_is_zero(s);
  }
  add_flag(rep, "rational solutions: exactly zero residual in exact arithmetic", exactZero);

  double worst = 0.0;
  for (double g : {1.0, 2.0, 3.0}) {
    const auto sol = LinearizedSolution::weber_hermite(Complex{g}, RootBranch::Plus, 1.0, 1.0);
    const auto eq = sol.equation();
    for (double r = 0.5; r <= 10.0; r += 0.5) {
      for (int a = 0; a < 8; ++a) {
        const Complex z = std::polar(r, 0.11 + a * M_PI / 4.0);
        Jet j;
        try {
          j = sol.jet(z);
        } catch (const EvaluationFailed&) {
          continue;
        }
        if (std::abs(j.w) > 1e3 * local_scale(z)) continue;
        const Complex zz = j.z, w = j.w, w1 = j.w1, w2 = *j.w2;
        const Complex ww = w * w;
        const Complex res = 2.0 * w * w2 - (w1 * w1 + 3.0 * ww * ww + 8.0 * zz * w * ww +
                                            4.0 * (zz * zz - eq.alpha) * ww + 2.0 * eq.beta);
        const double scale = 1.0 + std::abs(w1 * w1) + 3.0 * std::norm(ww) +
                             8.0 * std::abs(zz * w * ww) +
                             4.0 * std::abs((zz * zz - eq.alpha) * ww) +
                             2.0 * std::abs(eq.beta) + 2.0 * std::abs(w * w2);
        worst = std::max(worst, std::abs(res) / scale);
      }
    }
  }
  add(rep, "Weber-Hermite gamma=1,2,3 residual on |z|<=10 grids", worst, 1e-10);
  return rep;
}

// ---- criterion 4: Backlund round trip --------------------------------------------

VerifyReport verify_backlund(unsigned long long seed) {
  VerifyReport rep;
  rep.suite = "backlund";
  auto rng = make_rng(seed + 4);
  double worstRt = 0.0, worstReflect = 0.0, worstShift = 0.0;
  int tested = 0;
  while (tested < 100) {
    ParameterState ps{rand_cplx(rng), rand_cplx(rng), {}};
    Jet jet{rand_cplx(rng, 1.0, 2.0), rand_cplx(rng, 1.0, 2.0), rand_cplx(rng)};
    auto [tj, tps] = biv_forward(jet, ps);
    worstReflect = std::max(worstReflect,
                            std::abs((tps.alpha - tps.gamma) + (ps.alpha - ps.gamma)));
    if (std::abs(tj.w) < 0.1) continue;
    auto [bj, bps] = biv_inverse(tj, tps);
    worstRt = std::max({worstRt, std::abs(bj.w - jet.w) / std::abs(jet.w),
                        std::abs(bj.w1 - jet.w1) / std::max(1.0, std::abs(jet.w1))});
    auto [ttj, ttps] = biv_forward(tj, tps);
    (void)ttj;
    worstShift = std::max({worstShift, std::abs(ttps.alpha - (ps.alpha + 1.0)),
                           std::abs(ttps.gamma - (ps.gamma + 1.0))});
    ++tested;
  }
  add(rep, "forward-inverse identity on 100 random jets", worstRt, 1e-12);
  add(rep, "alpha~ - gamma~ = -(alpha - gamma)", worstReflect, 1e-13);
  add(rep, "double application shifts (alpha, gamma) by (+1, +1)", worstShift, 1e-13);
  return rep;
}

// ---- criterion 5: pole passage ------------------------------------------------------

VerifyReport verify_polepass(unsigned long long) {
  VerifyReport rep;
  rep.suite = "polepass";
  PoleSeed seed{EquationSpec::p1(), Complex{1.0}, 1, Complex{0.0}};
  IntegrateOptions opts;
  opts.tol = 1e-12;
  const Jet start = seed_jet(seed, 0.1, 20);
  const auto loop = integrate(seed.eq, start, PathSpec::circle(Complex{1.0}, 0.1, 1.0), opts);
  const Complex res =
      (loop.samples.back().WInt - loop.samples.front().WInt) / (2.0 * M_PI * kI);
  add(rep, "residue of W around the pole = -1", std::abs(res - Complex{-1.0}), 1e-8);

  const auto half = integrate(seed.eq, start, PathSpec::circle(Complex{1.0}, 0.1, 0.5), opts);
  const Jet expect = seed_jet(seed, -0.1, 20);
  add(rep, "antipodal continuation matches the series",
      std::abs(half.samples.back().jet.w - expect.w), 1e-7);
  return rep;
}

// ---- criterion 6: synthetic string law -----------------------------------------------

VerifyReport verify_string_synthetic(unsigned long long) {
  VerifyReport rep;
  rep.suite = "string-synthetic";
  const auto sim =
      string_recursion_sim(Complex{0.0, M_PI}, Rational(1, 1), Complex{5.0}, 1000000);
  add(rep, "p_K against (2 pi i K)^(1/2)", std::abs(sim.ratio - 1.0), 1e-2);
  add(rep, "counting coefficient against 1/(2 pi)", std::abs(sim.countingRatio - 1.0), 0.02);
  return rep;
}

// ---- criterion 7: harvested string law -------------------------------------------------

VerifyReport verify_string_harvest(unsigned long long) {
  VerifyReport rep;
  rep.suite = "string-harvest";
  const auto& catalog = wh_reference_field();
  std::vector<size_t> unchained;
  const auto strings = cluster_strings(catalog, &unchained);
  int major = 0;
  double worstDir = 0.0, worstOmega = 0.0, worstCount = 0.0;
  for (const auto& s : strings) {
    if (s.memberIndices.size() < 20) continue;
    ++major;
    double dirErr = 2.0 * M_PI;
    for (int nu = 0; nu < 4; ++nu) {
      double d = std::abs(s.thetaStar - (2.0 * nu + 1.0) * M_PI / 4.0);
      d = std::min(d, 2.0 * M_PI - d);
      dirErr = std::min(dirErr, d);
    }
    worstDir = std::max(worstDir, dirErr);
    worstOmega = std::max(worstOmega, std::abs(std::abs(s.omega) - M_PI) / M_PI);
    worstCount =
        std::max(worstCount, std::abs(s.countingCoeff * 2.0 * M_PI * M_PI - M_PI) / M_PI);
  }
  add_flag(rep, "four major strings harvested", major >= 4,
           "found " + std::to_string(major));
  add(rep, "string directions at (2nu+1)pi/4", worstDir, 0.1);
  add(rep, "fitted |omega| against pi", worstOmega, 0.10);
  add(rep, "per-string counting coefficient against 1/(2 pi)", worstCount, 0.15);
  return rep;
}

// ---- criterion 8: counting exponents ----------------------------------------------------

VerifyReport verify_counting(unsigned long long) {
  VerifyReport rep;
  rep.suite = "counting";
  {
    // rMax well beyond the innermost poles, so the log-log fit window
    // [rMax/4, rMax] sits past the staircase transient
    const auto airy = LinearizedSolution::airy(RootBranch::Plus, 1.0, 0.4);
    RegionSpec region{3.0, 70.0, 0.0, 2.0 * M_PI};
    SweepStrategy strategy;
    strategy.tol = 1e-9;
    const auto catalog = sweep(airy.equation(), make_accessor(airy), region, strategy);
    std::vector<Complex> pts;
    for (const auto& p : catalog.poles) pts.push_back(p.seed.p);
    const auto fit = counting_function(pts, region.r1);
    add(rep, "Airy pole-count exponent against 3/2", std::abs(fit.exponent - 1.5), 0.15,
        "n(70) = " + std::to_string(pts.size()));
  }
  {
    const auto& catalog = wh_reference_field();
    std::vector<Complex> pts;
    for (const auto& p : catalog.poles) pts.push_back(p.seed.p);
    const auto fit = counting_function(pts, catalog.region.r1);
    add(rep, "Weber-Hermite pole-count exponent against 2", std::abs(fit.exponent - 2.0), 0.2);
    const double nu =
        static_cast<double>(pts.size()) * 2.0 * M_PI / (catalog.region.r1 * catalog.region.r1);
    const double d = std::min(std::abs(nu - 2.0), std::abs(nu - 4.0));
    add(rep, "n(r) 2 pi / r^2 lands on nu in {2, 4}", d, 0.25,
        "nu estimate " + std::to_string(nu));
  }
  return rep;
}

// ---- criterion 9: rescaling limit ---------------------------------------------------------

VerifyReport verify_rescale_limit(unsigned long long) {
  VerifyReport rep;
  rep.suite = "rescale-limit";
  const auto& catalog = wh_reference_field();
  const auto eq = catalog.eq;

  // residual of the rescaled window around a pole, against the limit ODE
  // with c = 2 h p^-3, evaluated from the pole's own Laurent model
  auto window_residual = [&](const CataloguedPole& cp) {
    std::vector<RescaledSample> samples;
    for (int k = 0; k < 16; ++k) {
      const Complex zeta = std::polar(k < 8 ? 0.35 : 0.65, 2.0 * M_PI * (k % 8) / 8.0);
      const Complex offset = zeta / cp.seed.p;
      const Jet j = seed_jet(cp.seed, offset, 20);
      RescaledSample s;
      s.zeta = zeta;
      s.w = j.w / cp.seed.p;                    // h^-a w, a = 1, h = p
      s.w1 = j.w1 / (cp.seed.p * cp.seed.p);    // chain rule h^-(a+b)
      samples.push_back(s);
    }
    const Complex c = 2.0 * cp.seed.h / (cp.seed.p * cp.seed.p * cp.seed.p);
    return limit_ode_residual(EquationKind::PIV, samples, c);
  };

  std::vector<const CataloguedPole*> byRadius;
  for (const auto& p : catalog.poles) byRadius.push_back(&p);
  std::sort(byRadius.begin(), byRadius.end(), [](const auto* a, const auto* b) {
    return std::abs(a->seed.p) > std::abs(b->seed.p);
  });
  double worstOuter = 0.0;
  for (int i = 0; i < 10 && i < static_cast<int>(byRadius.size()); ++i)
    worstOuter = std::max(worstOuter, window_residual(*byRadius[i]));
  add(rep, "limit-ODE residual of the 10 outermost poles", worstOuter, 0.1);

  // decreasing on average: log-log slope of the residual against |p|
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (double target : {16.0, 20.0, 24.0, 28.0}) {
    const CataloguedPole* best = nullptr;
    for (const auto& p : catalog.poles) {
      if (!best || std::abs(std::abs(p.seed.p) - target) <
                       std::abs(std::abs(best->seed.p) - target))
        best = &p;
    }
    if (!best) continue;
    const double x = std::log(std::abs(best->seed.p));
    const double y = std::log(std::max(1e-12, window_residual(*best)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  add_flag(rep, "residual decreases with |p| on average", slope < 0.0,
           "log-log slope " + std::to_string(slope));

  // cluster histogram concentrated at 0
  int admitted = 0, close = 0;
  for (const auto& p : catalog.poles) {
    if (std::abs(p.seed.p) < 15.0) continue;
    ++admitted;
    if (std::abs(pole_cluster_value(eq, p.seed.p, p.seed.eps, p.seed.h)) <= 0.05) ++close;
  }
  const double frac = admitted > 0 ? static_cast<double>(close) / admitted : 0.0;
  add_flag(rep, "cluster values within 0.05 of 0 for |p| >= 15", frac >= 0.9,
           std::to_string(close) + "/" + std::to_string(admitted));
  return rep;
}

// ---- criterion 10: residue bookkeeping ---------------------------------------------------

VerifyReport verify_residue(unsigned long long) {
  VerifyReport rep;
  rep.suite = "residue";
  const auto& catalog = wh_reference_field();
  const auto& wh = wh_reference_solution();
  const auto accessor = make_accessor(wh);

  const double r = 25.0;
  const auto ledger = residue_ledger(catalog, r, &accessor, 1e-10);
  const double deltaContour = ledger.contourDelta.real() * 2.0 * M_PI / (r * r);
  const double deltaCount = static_cast<double>(ledger.deltaCount) * 2.0 * M_PI / (r * r);
  add(rep, "count vs contour Delta at r=25",
      std::abs(deltaContour - deltaCount) / std::max(1.0, std::abs(deltaCount)), 0.10,
      "count " + std::to_string(ledger.deltaCount));
  const double nCount = ledger.nPlus + ledger.nMinus;
  add(rep, "-(1/2 pi i) oint W dz against n(r, w)",
      std::abs(ledger.contourCount.real() - nCount) / std::max(1.0, nCount), 0.10);

  // Table-1 sign pattern per harvested string
  const auto sig = infer_signature(accessor, catalog.eq, 28.0);
  std::array<int, 4> tau{};  // w/z limit per sector: -2 or 0
  for (int nu = 0; nu < 4; ++nu) tau[nu] = sig.a[nu].linearGrowth ? -2 : 0;
  const auto strings = cluster_strings(catalog);
  int violations = 0, checked = 0;
  for (const auto& s : strings) {
    if (s.memberIndices.size() < 20 || s.eps == 0) continue;
    int nu = 0;
    double bestD = 1e9;
    for (int k = 0; k < 4; ++k) {
      double d = std::abs(s.thetaStar - (2.0 * k + 1.0) * M_PI / 4.0);
      d = std::min(d, 2.0 * M_PI - d);
      if (d < bestD) {
        bestD = d;
        nu = k;
      }
    }
    const int before = tau[nu], after = tau[(nu + 1) % 4];
    const int sgn = (nu % 2 == 0) ? +1 : -1;
    const int predicted = sgn * (before - after) / 2;
    ++checked;
    if (predicted != s.eps) ++violations;
  }
  add_flag(rep, "Table-1 signs for every harvested string", checked >= 4 && violations == 0,
           std::to_string(checked) + " strings, " + std::to_string(violations) + " violations");
  return rep;
}

// ---- criterion 11: first-order equation ---------------------------------------------------

VerifyReport verify_first_order(unsigned long long) {
  VerifyReport rep;
  rep.suite = "first-order";
  const auto chain = chain_build(1, Complex{-2.0});
  const auto wh = LinearizedSolution::weber_hermite(chain[0].gamma, RootBranch::Plus, 1.0, 0.6);
  std::vector<Jet> jets;
  for (int i = 0; jets.size() < 50 && i < 200; ++i) {
    const Complex z = std::polar(0.6 + 0.025 * i, 0.37 * i);
    try {
      const Jet whJet = wh.jet(z);
      if (std::abs(whJet.w) < 5e-3 || std::abs(whJet.w) > 1e3) continue;
      jets.push_back(chain_jet(whJet, chain));
    } catch (const Error&) {
      continue;
    }
  }
  add_flag(rep, "collected 50 jets on the order-1 solution", jets.size() >= 50,
           std::to_string(jets.size()) + " jets");
  add(rep, "printed first-order equation residual", first_order_residual(jets, chain[1].alpha),
      1e-8);

  // negative control: a generic jet is far from the variety
  std::vector<Jet> outsider{{Complex{1.0}, Complex{0.7}, Complex{0.4}}};
  add_flag(rep, "generic jets violate the equation", first_order_residual(outsider, -2.0) > 1e-2);
  return rep;
}

// ---- criterion 12: deficiency -------------------------------------------------------------

VerifyReport verify_deficiency(unsigned long long) {
  VerifyReport rep;
  rep.suite = "deficiency";
  // order-2 chain with gamma_2 = 0 (beta = 0), rotated so alpha = +3
  const auto chain = chain_build(2, Complex{-3.0});
  const auto wh = LinearizedSolution::weber_hermite(chain[0].gamma, RootBranch::Plus, 1.0, 0.7);
  const auto base = make_chain_accessor(wh, chain);
  const auto accessor = make_rotated_accessor(base);
  const auto eq = EquationSpec::p4_gamma(-chain[2].alpha, chain[2].gamma);

  RegionSpec region{3.0, 30.0, 0.0, 2.0 * M_PI};
  SweepStrategy strategy;
  strategy.tol = 1e-9;
  const auto catalog = sweep(eq, accessor, region, strategy);

  const auto est = zero_deficiency(catalog, 30.0, 8);
  add(rep, "deficiency estimate against 1/3", std::abs(est.estimate - 1.0 / 3.0), 0.05,
      "poles " + std::to_string(catalog.poles.size()) + ", zeros " +
          std::to_string(catalog.zeros.size()));

  // documented trend toward 1/3 over rMax in {15, 20, 25, 30}
  std::vector<double> err;
  for (double rm : {15.0, 20.0, 25.0, 30.0}) {
    const auto e = zero_deficiency(catalog, rm, 4);
    err.push_back(std::abs(e.estimate - 1.0 / 3.0));
  }
  const bool trend = err[3] <= err[0];
  add_flag(rep, "trend toward 1/3 over rMax in {15,20,25,30}", trend,
           "errors " + std::to_string(err[0]) + " -> " + std::to_string(err[3]));
  return rep;
}

}  // namespace

VerifyReport run_verify_suite(const std::string& suite, unsigned long long randomSeed) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  if (suite == "laurent") rep = verify_laurent(randomSeed);
  else if (suite == "asymptotic") rep = verify_asymptotic(randomSeed);
  else if (suite == "exact") rep = verify_exact(randomSeed);
  else if (suite == "backlund") rep = verify_backlund(randomSeed);
  else if (suite == "polepass") rep = verify_polepass(randomSeed);
  else if (suite == "string-synthetic") rep = verify_string_synthetic(randomSeed);
  else if (suite == "string-harvest") rep = verify_string_harvest(randomSeed);
  else if (suite == "counting") rep = verify_counting(randomSeed);
  else if (suite == "rescale-limit") rep = verify_rescale_limit(randomSeed);
  else if (suite == "residue") rep = verify_residue(randomSeed);
  else if (suite == "first-order") rep = verify_first_order(randomSeed);
  else if (suite == "deficiency") rep = verify_deficiency(randomSeed);
  else throw WrongParameters("unknown verify suite: " + suite);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace pnlv
