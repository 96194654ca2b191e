#include <cmath>

#include "doctest.h"
#include "pnlv/integrate.hpp"
#include "pnlv/special.hpp"

using namespace pnlv;

namespace {
double relative_iv_residual(const EquationSpec& eq, const Jet& jet) {
  const Complex z = jet.z, w = jet.w, w1 = jet.w1, w2 = *jet.w2;
  const Complex ww = w * w;
  const Complex res = 2.0 * w * w2 - (w1 * w1 + 3.0 * ww * ww + 8.0 * z * w * ww +
                                      4.0 * (z * z - eq.alpha) * ww + 2.0 * eq.beta);
  const double scale = 1.0 + std::abs(w1 * w1) + 3.0 * std::norm(ww) +
                       8.0 * std::abs(z * w * ww) + 4.0 * std::abs((z * z - eq.alpha) * ww) +
                       2.0 * std::abs(eq.beta) + 2.0 * std::abs(w * w2);
  return std::abs(res) / scale;
}

double relative_ii_residual(const EquationSpec& eq, const Jet& jet) {
  const Complex res = *jet.w2 - (eq.alpha + jet.z * jet.w + 2.0 * jet.w * jet.w * jet.w);
  const double scale = 1.0 + std::abs(*jet.w2) + std::abs(jet.z * jet.w) +
                       2.0 * std::abs(jet.w * jet.w * jet.w);
  return std::abs(res) / scale;
}
}  // namespace

TEST_CASE("Weber-Hermite with u = H1 gives w = -1/z") {
  const auto sol = LinearizedSolution::weber_hermite(1.0, RootBranch::Plus, 0.0, 2.0);
  CHECK(std::abs(sol.equation().alpha - Complex{-2.0}) < 1e-14);
  CHECK(std::abs(sol.equation().beta - Complex{-2.0}) < 1e-14);
  for (double x : {0.3, 1.0, 1.7}) {
    const Jet j = sol.jet(Complex{x, 0.2});
    CHECK(std::abs(j.w - (-1.0 / j.z)) < 1e-12);
    CHECK(std::abs(j.w1 - 1.0 / (j.z * j.z)) < 1e-11);
  }
}

TEST_CASE("Weber-Hermite with u = H2: poles at +-1/sqrt(2), residue -1") {
  const auto sol = LinearizedSolution::weber_hermite(2.0, RootBranch::Plus, -2.0, 0.0);
  const Jet j = sol.jet(Complex{0.8});
  const Complex expect = -8.0 * 0.8 / (4.0 * 0.64 - 2.0);
  CHECK(std::abs(j.w - expect) < 1e-12);
  // residue at 1/sqrt(2) from small circles
  const Complex p = 1.0 / std::sqrt(2.0);
  for (double r : {1e-3, 1e-4}) {
    const Jet near = sol.jet(p + Complex{r, 0.0});
    CHECK(std::abs(near.w * Complex{r} - Complex{-1.0}) < 10.0 * r);
  }
  CHECK_THROWS_AS(sol.jet(p + Complex{1e-15}), EvaluationFailed);
}

TEST_CASE("gamma=0 with u=1 is w=0 solving (IV) with beta=0") {
  const auto sol = LinearizedSolution::weber_hermite(0.0, RootBranch::Plus, 1.0, 0.0);
  CHECK(std::abs(sol.equation().beta) < 1e-15);
  const Jet j = sol.jet(Complex{2.0, 1.0});
  CHECK(std::abs(j.w) < 1e-15);
  CHECK(std::abs(j.w1) < 1e-15);
}

TEST_CASE("Weber-Hermite residuals on |z| <= 10 grids") {
  for (double g : {1.0, 2.0, 3.0}) {
    // generic ray: both linear-ODE solutions present
    const auto sol = LinearizedSolution::weber_hermite(Complex{g}, RootBranch::Plus, 1.0, 1.0);
    const auto eq = sol.equation();
    double worst = 0.0;
    int used = 0;
    for (double r = 0.5; r <= 10.0; r += 0.5) {
      for (int a = 0; a < 8; ++a) {
        const Complex z = std::polar(r, 0.1 + a * M_PI / 4.0);
        Jet j;
        try {
          j = sol.jet(z);
        } catch (const EvaluationFailed&) {
          continue;  // grid point on a pole
        }
        if (std::abs(j.w) > 1e3 * local_scale(z)) continue;
        worst = std::max(worst, relative_iv_residual(eq, j));
        ++used;
      }
    }
    CHECK(used > 100);
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("minus-branch Weber-Hermite satisfies its own equation") {
  const auto sol =
      LinearizedSolution::weber_hermite(Complex{1.3, 0.4}, RootBranch::Minus, 1.0, 0.7);
  CHECK(std::abs(sol.equation().alpha - (1.0 + Complex{1.3, 0.4})) < 1e-14);
  const Jet j = sol.jet(Complex{1.2, -0.7});
  CHECK(relative_iv_residual(sol.equation(), j) < 1e-12);
}

TEST_CASE("Airy solutions solve (II) with alpha = +-1/2") {
  const auto plus = LinearizedSolution::airy(RootBranch::Plus, 1.0, 0.0);
  CHECK(std::abs(plus.equation().alpha - Complex{0.5}) < 1e-15);
  const Jet j0 = plus.jet(Complex{0.0});
  CHECK(std::abs(j0.w) < 1e-15);
  CHECK(std::abs(j0.w1) < 1e-15);  // w' = z/2 + w^2 vanishes at 0

  const auto minus = LinearizedSolution::airy(RootBranch::Minus, 0.3, 1.0);
  CHECK(std::abs(minus.equation().alpha - Complex{-0.5}) < 1e-15);
  for (int i = 0; i < 20; ++i) {
    const Complex z = std::polar(0.3 + 0.23 * i, 0.7 * i);
    for (const auto* sol : {&plus, &minus}) {
      Jet j;
      try {
        j = sol->jet(z);
      } catch (const EvaluationFailed&) {
        continue;
      }
      if (std::abs(j.w) > 1e3) continue;
      CHECK(relative_ii_residual(sol->equation(), j) < 1e-10);
    }
  }
}

TEST_CASE("degenerate u is rejected") {
  CHECK_THROWS_AS(LinearizedSolution::weber_hermite(1.0, RootBranch::Plus, 0.0, 0.0),
                  DegenerateU);
}

TEST_CASE("rational solutions: catalogue and exact residuals") {
  {
    const auto sols = rational_solutions(EquationSpec::p4(0.0, -2.0));
    REQUIRE(sols.size() == 1);
    CHECK(std::abs(sols[0].eval(Complex{1.5}) - Complex{-3.0}) < 1e-15);
    CHECK(rational_residual_is_zero(sols[0]));
  }
  {
    const auto sols = rational_solutions(EquationSpec::p4(0.0, -2.0 / 9.0));
    REQUIRE(sols.size() == 1);
    CHECK(std::abs(sols[0].eval(Complex{3.0}) - Complex{-2.0}) < 1e-15);
    CHECK(rational_residual_is_zero(sols[0]));
  }
  {
    const auto sols = rational_solutions(EquationSpec::p4(-2.0, -2.0));
    REQUIRE(sols.size() == 1);
    CHECK(std::abs(sols[0].eval(Complex{2.0}) - Complex{-0.5}) < 1e-15);
    CHECK(rational_residual_is_zero(sols[0]));
  }
  {
    const auto sols = rational_solutions(EquationSpec::p4(0.7, 0.0));
    REQUIRE(sols.size() == 1);
    CHECK(rational_residual_is_zero(sols[0]));
  }
  CHECK_THROWS_AS(rational_solutions(EquationSpec::p4(0.123, -1.456)),
                  NoKnownRationalSolution);
}

TEST_CASE("a deliberately wrong rational candidate fails the exact check") {
  RationalSolution bad{FPoly{{Fraction(0), Fraction(-2)}}, FPoly{{Fraction(1)}}, Fraction(1),
                       Fraction(-2)};  // w=-2z but alpha=1
  CHECK(!rational_residual_is_zero(bad));
}

TEST_CASE("Airy function values") {
  // reference values: Ai(0), Ai(1), Ai(6), Ai(8)
  CHECK(airy_ai(0.0) == doctest::Approx(0.3550280538878172).epsilon(1e-12));
  CHECK(airy_ai(1.0) == doctest::Approx(0.1352924163128814).epsilon(1e-10));
  CHECK(airy_ai(6.0) == doctest::Approx(9.947694360252697e-06).epsilon(1e-6));
  CHECK(airy_ai(8.0) == doctest::Approx(4.692207616099237e-08).epsilon(1e-8));
  CHECK(airy_ai_prime(1.0) == doctest::Approx(-0.1591474412967932).epsilon(1e-9));
  CHECK(airy_ai_prime(8.0) == doctest::Approx(-1.336458736515463e-07).epsilon(1e-8));
}

TEST_CASE("Hastings-McLeod bracket" * doctest::timeout(120)) {
  const auto hm = hastings_mcleod_shoot(1e-8);
  CHECK(hm.kHigh - hm.kLow <= 1e-8);
  // the connection constant is 1 (loose: the tail match at L=8 carries
  // the Airy asymptotics' own bias)
  CHECK(hm.kLow > 1.0 - 1e-4);
  CHECK(hm.kHigh < 1.0 + 1e-4);
  CHECK(hm.jetAtZero.w.real() > 0.0);

  // solution from the returned jet stays positive and decreasing on [-6, 6]
  const auto eq = EquationSpec::p2(0.0);
  IntegrateOptions opts;
  opts.tol = 1e-12;
  opts.hopPoles = false;
  bool positive = true, decreasing = true;
  auto watch = [&](const TrajectorySample& s) {
    if (s.jet.z.real() >= -6.0 && s.jet.z.real() <= 6.0) {
      if (s.jet.w.real() <= 0.0) positive = false;
      if (s.jet.w1.real() >= 0.0) decreasing = false;
    }
    return true;
  };
  const auto right =
      integrate(eq, hm.jetAtZero, PathSpec::segment(Complex{0.0}, Complex{6.0}), opts, watch);
  const auto left =
      integrate(eq, hm.jetAtZero, PathSpec::segment(Complex{0.0}, Complex{-6.0}), opts, watch);
  CHECK(positive);
  CHECK(decreasing);
  const double w6 = right.samples.back().jet.w.real();
  CHECK(w6 / airy_ai(6.0) > 0.9);
  CHECK(w6 / airy_ai(6.0) < 1.1);

  // shooting instability: +1e-3 on w(0) blows up before x = -8
  Jet bumped = hm.jetAtZero;
  bumped.w += 1e-3;
  bool blown = false;
  try {
    const auto t =
        integrate(eq, bumped, PathSpec::segment(Complex{0.0}, Complex{-8.0}), opts,
                  [&](const TrajectorySample& s) {
                    if (std::abs(s.jet.w) > 1e3) blown = true;
                    return true;
                  });
    for (const auto& s : t.samples)
      if (std::abs(s.jet.w) > 10.0) blown = true;
  } catch (const StepSizeUnderflow&) {
    blown = true;
  }
  CHECK(blown);
}
