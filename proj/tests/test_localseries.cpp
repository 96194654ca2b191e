#include <random>

#include "doctest.h"
#include "pnlv/localseries.hpp"

using namespace pnlv;

namespace {
std::mt19937_64 rng(77120531);
Complex rand_cplx(double lo = 0.5, double hi = 2.0) {
  std::uniform_real_distribution<double> mag(lo, hi), ang(0.0, 6.283185307179586);
  return std::polar(mag(rng), ang(rng));
}
int rand_eps() { return (rng() & 1u) ? 1 : -1; }

bool close(Complex a, Complex b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}
}  // namespace

TEST_CASE("Laurent of w matches the printed low-order coefficients") {
  for (int rep = 0; rep < 20; ++rep) {
    const Complex p = rand_cplx(), h = rand_cplx(), alpha = rand_cplx(), beta = rand_cplx();
    const int eps = rand_eps();

    SUBCASE("") {}
    // (I): (z-p)^-2 - (p/10)x^2 - (1/6)x^3 + h x^4
    {
      PoleSeed seed{EquationSpec::p1(), p, +1, h};
      const auto s = laurent_w(seed, 6);
      CHECK(close(s.coeff_of_exponent(Rational(-2)), 1.0));
      CHECK(close(s.coeff_of_exponent(Rational(-1)), 0.0));
      CHECK(close(s.coeff_of_exponent(Rational(0)), 0.0));
      CHECK(close(s.coeff_of_exponent(Rational(1)), 0.0));
      CHECK(close(s.coeff_of_exponent(Rational(2)), -p / 10.0));
      CHECK(close(s.coeff_of_exponent(Rational(3)), Complex{-1.0 / 6.0}));
      CHECK(close(s.coeff_of_exponent(Rational(4)), h));
    }
    // (II): eps x^-1 - eps p/6 x - (alpha+eps)/4 x^2 + h x^3
    {
      PoleSeed seed{EquationSpec::p2(alpha), p, eps, h};
      const auto s = laurent_w(seed, 5);
      const double e = eps;
      CHECK(close(s.coeff_of_exponent(Rational(-1)), Complex{e}));
      CHECK(close(s.coeff_of_exponent(Rational(0)), 0.0));
      CHECK(close(s.coeff_of_exponent(Rational(1)), -e * p / 6.0));
      CHECK(close(s.coeff_of_exponent(Rational(2)), -(alpha + e) / 4.0));
      CHECK(close(s.coeff_of_exponent(Rational(3)), h));
    }
    // (IV): eps x^-1 - p + (eps/3)(p^2 + 2 alpha - 4 eps) x + h x^2
    {
      PoleSeed seed{EquationSpec::p4(alpha, beta), p, eps, h};
      const auto s = laurent_w(seed, 5);
      const double e = eps;
      CHECK(close(s.coeff_of_exponent(Rational(-1)), Complex{e}));
      CHECK(close(s.coeff_of_exponent(Rational(0)), -p));
      CHECK(close(s.coeff_of_exponent(Rational(1)), (e / 3.0) * (p * p + 2.0 * alpha - 4.0 * e)));
      CHECK(close(s.coeff_of_exponent(Rational(2)), h));
    }
  }
}

TEST_CASE("printed (II) special point p=0, eps=1, h=0, alpha=0") {
  PoleSeed seed{EquationSpec::p2(0.0), 0.0, 1, 0.0};
  const auto s = laurent_w(seed, 4);
  CHECK(close(s.coeff_of_exponent(Rational(1)), 0.0));
  CHECK(close(s.coeff_of_exponent(Rational(2)), Complex{-0.25}));
  CHECK(close(s.coeff_of_exponent(Rational(3)), 0.0));
}

TEST_CASE("Laurent of W: residue -1 and printed constants") {
  for (int rep = 0; rep < 20; ++rep) {
    const Complex p = rand_cplx(), h = rand_cplx(), alpha = rand_cplx(), beta = rand_cplx();
    const int eps = rand_eps();
    {
      PoleSeed seed{EquationSpec::p1(), p, +1, h};
      const auto W = laurent_W(seed, 4);
      CHECK(close(W.coeff_of_exponent(Rational(-1)), Complex{-1.0}));
      // constant term 14h follows from 2W = 4w^3 + 2zw - w'^2 by substitution
      CHECK(close(W.coeff_of_exponent(Rational(0)), 14.0 * h));
      CHECK(close(W.coeff_of_exponent(Rational(1)), 0.0));
      CHECK(close(W.coeff_of_exponent(Rational(2)), 0.0));
      CHECK(close(W.coeff_of_exponent(Rational(3)), -p / 30.0));
      CHECK(close(W.coeff_of_exponent(Rational(4)), Complex{-1.0 / 24.0}));
    }
    {
      PoleSeed seed{EquationSpec::p2(alpha), p, eps, h};
      const auto W = laurent_W(seed, 2);
      const double e = eps;
      CHECK(close(W.coeff_of_exponent(Rational(-1)), Complex{-1.0}));
      CHECK(close(W.coeff_of_exponent(Rational(0)), 10.0 * e * h - 7.0 / 36.0 * p * p));
      CHECK(close(W.coeff_of_exponent(Rational(1)), -p / 3.0));
      CHECK(close(W.coeff_of_exponent(Rational(2)), -(1.0 + e * alpha) / 4.0));
    }
    {
      PoleSeed seed{EquationSpec::p4(alpha, beta), p, eps, h};
      const auto W = laurent_W(seed, 1);
      const double e = eps;
      CHECK(close(W.coeff_of_exponent(Rational(-1)), Complex{-1.0}));
      CHECK(close(W.coeff_of_exponent(Rational(0)), 2.0 * h + 2.0 * (alpha - e) * p));
      CHECK(close(W.coeff_of_exponent(Rational(1)), (4.0 * alpha - p * p - 2.0 * e) / 3.0));
    }
  }
}

TEST_CASE("seed_jet agrees with the printed partial sums") {
  {
    PoleSeed seed{EquationSpec::p1(), 1.0, +1, 0.0};
    const Jet jet = seed_jet(seed, 0.1, 12);
    const Complex printed = 100.0 - 0.001 - (1.0 / 6.0) * 1e-3;
    CHECK(std::abs(jet.w - printed) < 1e-4);  // higher orders are ~1e-5
    CHECK(std::abs(jet.z - Complex{1.1}) < 1e-15);
  }
  {
    PoleSeed seed{EquationSpec::p4(0.0, -2.0), 3.0, +1, 0.0};
    const Jet jet = seed_jet(seed, 0.05, 12);
    const Complex c1 = (1.0 / 3.0) * (9.0 + 0.0 - 4.0);
    const Complex printed = 1.0 / 0.05 - 3.0 + c1 * 0.05;
    CHECK(std::abs(jet.w - printed) < 1e-2);
    CHECK(jet.w2.has_value());
  }
}

TEST_CASE("seed_jet commutes with conjugation for all-real data") {
  PoleSeed seed{EquationSpec::p4(0.5, -2.0), Complex{2.0, 0.0}, -1, Complex{0.25, 0.0}};
  const Complex off{0.02, 0.013};
  const Jet a = seed_jet(seed, off, 14);
  const Jet b = seed_jet(seed, std::conj(off), 14);
  CHECK(close(std::conj(a.w), b.w));
  CHECK(close(std::conj(a.w1), b.w1));
}

TEST_CASE("seed_jet rejects offsets outside the validated radius") {
  PoleSeed seed{EquationSpec::p4(0.0, -2.0), 30.0, +1, 0.0};
  CHECK_THROWS_AS(seed_jet(seed, 5.0, 12), OffsetOutsideValidity);
}

TEST_CASE("detect_pole inverts the Laurent generator") {
  {
    PoleSeed truth{EquationSpec::p4(0.3, -1.7), 10.0, +1, 0.0};
    std::vector<Jet> samples;
    for (int i = 0; i < 10; ++i) {
      const Complex off = std::polar(2e-4 + 8e-4 * i, 0.7 * i);
      samples.push_back(seed_jet(truth, off, 14));
    }
    double res = 0.0;
    const PoleSeed fit = detect_pole(truth.eq, samples, 1e-6, &res);
    CHECK(std::abs(fit.p - truth.p) < 1e-8);
    CHECK(fit.eps == truth.eps);
    CHECK(std::abs(fit.h - truth.h) < 1e-6);
    CHECK(res < 1e-8);
  }
  {
    // the h-slot of a double pole is x^4, six orders above the leading x^-2;
    // samples must sit far enough out for h to be identifiable at all
    PoleSeed truth{EquationSpec::p1(), Complex{1.0, 2.0}, +1, Complex{0.4, -0.3}};
    std::vector<Jet> samples;
    for (int i = 0; i < 10; ++i) {
      const Complex off = std::polar(0.05 + 0.025 * i, 0.5 * i);
      samples.push_back(seed_jet(truth, off, 20));
    }
    const PoleSeed fit = detect_pole(truth.eq, samples, 1e-6);
    CHECK(std::abs(fit.p - truth.p) < 1e-8);
    CHECK(std::abs(fit.h - truth.h) < 1e-5);
  }
}

TEST_CASE("detect_pole on the exact solution w=-1/z") {
  const auto eq = EquationSpec::p4(-2.0, -2.0);
  std::vector<Jet> samples;
  for (int i = 0; i < 9; ++i) {
    const Complex z = std::polar(1e-3 + 5e-4 * i, 0.9 * i);
    samples.push_back(Jet{z, -1.0 / z, 1.0 / (z * z)});
  }
  const PoleSeed fit = detect_pole(eq, samples, 1e-6);
  CHECK(std::abs(fit.p) < 1e-9);
  CHECK(fit.eps == -1);
  CHECK(std::abs(fit.h) < 1e-7);
}

TEST_CASE("asymptotic expansions reproduce the printed coefficients") {
  for (int rep = 0; rep < 6; ++rep) {
    const Complex alpha = rand_cplx(), gamma = rand_cplx();
    const auto eq4 = EquationSpec::p4_gamma(alpha, gamma);
    {
      const auto s = asymptotic_series({FamilyTag::IVb}, eq4, 8);
      CHECK(close(s.coeff_of_exponent(Rational(1)), Complex{-2.0}));
      CHECK(close(s.coeff_of_exponent(Rational(-1)), -alpha));
      CHECK(close(s.coeff_of_exponent(Rational(-3)),
                  (3.0 * alpha * alpha - gamma * gamma + 1.0) / 4.0));
    }
    {
      const auto s = asymptotic_series({FamilyTag::IVa}, eq4, 8);
      CHECK(close(s.coeff_of_exponent(Rational(1)), Complex{-2.0 / 3.0}));
      CHECK(close(s.coeff_of_exponent(Rational(-1)), alpha));
      CHECK(close(s.coeff_of_exponent(Rational(-3)),
                  -(3.0 * alpha * alpha - 9.0 * gamma * gamma + 1.0) / 4.0));
    }
    {
      const auto sp = asymptotic_series({FamilyTag::IVcPlus}, eq4, 8);
      CHECK(close(sp.coeff_of_exponent(Rational(-1)), gamma));
      CHECK(close(sp.coeff_of_exponent(Rational(-3)),
                  -(2.0 * gamma * gamma - alpha * gamma) / 2.0));
      const auto sm = asymptotic_series({FamilyTag::IVcMinus}, eq4, 8);
      CHECK(close(sm.coeff_of_exponent(Rational(-1)), -gamma));
      CHECK(close(sm.coeff_of_exponent(Rational(-3)),
                  -(2.0 * gamma * gamma + alpha * gamma) / 2.0));
    }
    {
      const auto eq2 = EquationSpec::p2(alpha);
      const auto s = asymptotic_series({FamilyTag::IIa}, eq2, 14);
      CHECK(close(s.coeff_of_exponent(Rational(-1)), -alpha));
      CHECK(close(s.coeff_of_exponent(Rational(-4)), 2.0 * alpha * (alpha * alpha - 1.0)));
      CHECK(close(s.coeff_of_exponent(Rational(-2)), 0.0));
      CHECK(close(s.coeff_of_exponent(Rational(-5, 2)), 0.0));

      const auto sb = asymptotic_series({FamilyTag::IIb, RootBranch::Plus}, eq2, 8);
      const Complex a0 = std::sqrt(Complex(-0.5));
      CHECK(close(sb.coeff_of_exponent(Rational(1, 2)), a0));
      CHECK(close(sb.coeff_of_exponent(Rational(-1)), alpha / 2.0));
    }
    {
      const auto s = asymptotic_series({FamilyTag::I, RootBranch::Plus}, EquationSpec::p1(), 12);
      const Complex a0 = std::sqrt(Complex(-1.0 / 6.0));
      CHECK(close(s.coeff_of_exponent(Rational(1, 2)), a0));
      CHECK(close(s.coeff_of_exponent(Rational(-2)), Complex{-1.0 / 48.0}));
      CHECK(close(s.coeff_of_exponent(Rational(0)), 0.0));
      CHECK(close(s.coeff_of_exponent(Rational(-1)), 0.0));
    }
  }

  // alpha = 1 kills the printed z^-4 coefficient of (ii)_a
  const auto s = asymptotic_series({FamilyTag::IIa}, EquationSpec::p2(1.0), 14);
  CHECK(std::abs(s.coeff_of_exponent(Rational(-4))) < 1e-12);
}

TEST_CASE("asymptotic expansions of W reproduce the printed coefficients") {
  for (int rep = 0; rep < 6; ++rep) {
    const Complex alpha = rand_cplx(), gamma = rand_cplx();
    const auto eq4 = EquationSpec::p4_gamma(alpha, gamma);
    {
      const auto W = asymptotic_series_W({FamilyTag::IVa}, eq4, 6);
      CHECK(close(W.coeff_of_exponent(Rational(3)), Complex{-8.0 / 27.0}));
      CHECK(close(W.coeff_of_exponent(Rational(1)), 2.0 * alpha / 3.0));
      CHECK(close(W.coeff_of_exponent(Rational(-1)),
                  -(3.0 * alpha * alpha + 9.0 * gamma * gamma - 1.0) / 6.0));
    }
    {
      const auto W = asymptotic_series_W({FamilyTag::IVb}, eq4, 6);
      CHECK(close(W.coeff_of_exponent(Rational(1)), 2.0 * alpha));
      CHECK(close(W.coeff_of_exponent(Rational(-1)),
                  (alpha * alpha - gamma * gamma + 1.0) / 2.0));
    }
    {
      const auto W = asymptotic_series_W({FamilyTag::IVcPlus}, eq4, 6);
      CHECK(close(W.coeff_of_exponent(Rational(1)), 2.0 * gamma));
      CHECK(close(W.coeff_of_exponent(Rational(-1)), gamma * gamma - alpha * gamma));
    }
    {
      const auto eq2 = EquationSpec::p2(alpha);
      const auto W = asymptotic_series_W({FamilyTag::IIb}, eq2, 6);
      CHECK(close(W.coeff_of_exponent(Rational(2)), Complex{-0.25}));
      const Complex a0 = std::sqrt(Complex(-0.5));
      CHECK(close(W.coeff_of_exponent(Rational(1, 2)), 2.0 * alpha * a0));
      CHECK(close(W.coeff_of_exponent(Rational(-1)), (1.0 + 4.0 * alpha * alpha) / 8.0));

      const auto Wa = asymptotic_series_W({FamilyTag::IIa}, eq2, 6);
      CHECK(close(Wa.coeff_of_exponent(Rational(-1)), -alpha * alpha));
      CHECK(close(Wa.coeff_of_exponent(Rational(-4)),
                  alpha * alpha * (alpha * alpha - 1.0)));
    }
    {
      const auto W = asymptotic_series_W({FamilyTag::I, RootBranch::Plus}, EquationSpec::p1(), 6);
      const Complex a0 = std::sqrt(Complex(-1.0 / 6.0));
      CHECK(close(W.coeff_of_exponent(Rational(3, 2)), 2.0 * a0 / 3.0));
      CHECK(close(W.coeff_of_exponent(Rational(-1)), Complex{1.0 / 48.0}));
    }
  }
}

TEST_CASE("IVc demands gamma != 0") {
  const auto eq = EquationSpec::p4(1.0, 0.0);
  CHECK_THROWS_AS(asymptotic_series({FamilyTag::IVcPlus}, eq, 6), UnsupportedFamily);
}

TEST_CASE("log-derivative expansions in the degenerate cases") {
  {
    const auto eq = EquationSpec::p4(1.0, 0.0);
    const auto s = log_derivative_series(eq, SectorPair::Sigma02, 8);
    CHECK(close(s.coeff_of_exponent(Rational(1)), Complex{-2.0}));
    CHECK(std::abs(s.coeff_of_exponent(Rational(-1))) < 1e-13);
    CHECK(std::abs(s.coeff_of_exponent(Rational(-3))) < 1e-13);
  }
  {
    const auto eq = EquationSpec::p4(-1.0, 0.0);
    const auto s = log_derivative_series(eq, SectorPair::Sigma13, 8);
    CHECK(close(s.coeff_of_exponent(Rational(1)), Complex{2.0}));
    CHECK(std::abs(s.coeff_of_exponent(Rational(-1))) < 1e-13);
    CHECK(std::abs(s.coeff_of_exponent(Rational(-3))) < 1e-13);
  }
  {
    const auto eq = EquationSpec::p4(0.0, 0.0);
    const auto s = log_derivative_series(eq, SectorPair::Sigma02, 8);
    CHECK(close(s.coeff_of_exponent(Rational(1)), Complex{-2.0}));
    CHECK(close(s.coeff_of_exponent(Rational(-1)), Complex{-1.0}));
    CHECK(close(s.coeff_of_exponent(Rational(-3)), Complex{0.75}));
  }
  {
    const auto eq = EquationSpec::p2(0.0);
    const auto sm = log_derivative_series(eq, SectorPair::Sigma02, 10);
    CHECK(close(sm.coeff_of_exponent(Rational(1, 2)), Complex{-1.0}));
    CHECK(close(sm.coeff_of_exponent(Rational(-1)), Complex{-0.25}));
    CHECK(close(sm.coeff_of_exponent(Rational(-5, 2)), Complex{5.0 / 32.0}));
    const auto sp = log_derivative_series(eq, SectorPair::Sigma13, 10);
    CHECK(close(sp.coeff_of_exponent(Rational(-5, 2)), Complex{-5.0 / 32.0}));
  }
  CHECK_THROWS_AS(log_derivative_series(EquationSpec::p4(1.0, -2.0), SectorPair::Sigma02, 6),
                  WrongParameters);
  CHECK_THROWS_AS(log_derivative_series(EquationSpec::p2(1.0), SectorPair::Sigma02, 6),
                  WrongParameters);
}

TEST_CASE("truncation residual scales with the recorded residual order") {
  const auto eq4 = EquationSpec::p4_gamma(Complex{0.7, 0.2}, Complex{1.1, -0.4});
  const auto s = asymptotic_series({FamilyTag::IVb}, eq4, 6);
  auto ode_residual = [&](Complex z) {
    const Complex w = s.eval(z), w1 = s.eval_derivative(z), w2 = s.eval_second_derivative(z);
    const Complex ww = w * w;
    return std::abs(2.0 * w * w2 - (w1 * w1 + 3.0 * ww * ww + 8.0 * z * w * ww +
                                    4.0 * (z * z - eq4.alpha) * ww + 2.0 * eq4.beta));
  };
  const Complex dir = std::polar(1.0, 0.2);
  const double r40 = ode_residual(40.0 * dir), r80 = ode_residual(80.0 * dir);
  const double expected = std::pow(2.0, s.residualOrder.value());
  CHECK(r80 / r40 == doctest::Approx(expected).epsilon(0.2));
}

TEST_CASE("Laurent truncation satisfies the ODE near the pole") {
  PoleSeed seed{EquationSpec::p4(Complex{0.4, 0.1}, Complex{-1.0, 0.3}), Complex{2.0, 1.0}, -1,
                Complex{0.2, -0.5}};
  const auto s = laurent_w(seed, 14);
  const Complex x{0.02, 0.01};
  const Complex z = seed.p + x;
  const Complex w = s.eval(x), w1 = s.eval_derivative(x), w2 = s.eval_second_derivative(x);
  const Complex ww = w * w;
  const Complex res = 2.0 * w * w2 - (w1 * w1 + 3.0 * ww * ww + 8.0 * z * w * ww +
                                      4.0 * (z * z - seed.eq.alpha) * ww + 2.0 * seed.eq.beta);
  CHECK(std::abs(res) < 1e-8);  // |x|^12 * pole powers
}
