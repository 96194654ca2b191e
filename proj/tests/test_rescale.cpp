#include <cmath>

#include "doctest.h"
#include "pnlv/rescale.hpp"

using namespace pnlv;

TEST_CASE("rescale window on exact solutions") {
  const auto eq = EquationSpec::p4(0.0, -2.0);
  SolutionFn minus2z = [](Complex z) { return Jet{z, -2.0 * z, -2.0}; };
  std::vector<Complex> grid;
  for (int i = -3; i <= 3; ++i) grid.push_back(Complex{0.4 * i, 0.1});

  const Complex h{12.0, 5.0};
  const auto frame = RescaleFrame::for_equation(eq, h, grid);
  CHECK(frame.a == Rational(1, 1));
  const auto samples = rescale_window(minus2z, frame);
  for (const auto& s : samples) {
    // w_h(zeta) = -2 - 2 zeta / h^2
    const Complex expect = -2.0 - 2.0 * s.zeta / (h * h);
    CHECK(std::abs(s.w - expect) < 1e-13);
    CHECK(std::abs(s.w1 - (-2.0 / (h * h))) < 1e-13);
  }

  SolutionFn inv = [](Complex z) { return Jet{z, -1.0 / z, 1.0 / (z * z)}; };
  const auto s2 = rescale_window(inv, frame);
  for (const auto& s : s2) CHECK(std::abs(s.w) < 1e-2);
}

TEST_CASE("limit ODE residual: constants and trigonometric identities") {
  {
    std::vector<RescaledSample> samples{{Complex{0.0}, Complex{-2.0}, Complex{0.0}}};
    CHECK(limit_ode_residual(EquationKind::PIV, samples, 0.0) < 1e-15);
  }
  {
    // (iv) c=0: w = 2e^{2z}/(1 - e^{2z})
    std::vector<RescaledSample> samples;
    for (int i = 0; i < 24; ++i) {
      const Complex zeta{-1.5 + 0.1 * i, 0.3};
      const Complex E = std::exp(2.0 * zeta);
      const Complex w = 2.0 * E / (1.0 - E);
      const Complex w1 = 4.0 * E / ((1.0 - E) * (1.0 - E));
      samples.push_back({zeta, w, w1});
    }
    CHECK(limit_ode_residual(EquationKind::PIV, samples, 0.0) < 1e-12);
  }
  {
    // (ii) c=0: w = 1/sinh(zeta)
    std::vector<RescaledSample> samples;
    for (int i = 0; i < 24; ++i) {
      const Complex zeta{0.2 + 0.1 * i, 0.4};
      const Complex w = 1.0 / std::sinh(zeta);
      const Complex w1 = -std::cosh(zeta) / (std::sinh(zeta) * std::sinh(zeta));
      samples.push_back({zeta, w, w1});
    }
    CHECK(limit_ode_residual(EquationKind::PII, samples, 0.0) < 1e-12);
  }
  {
    // (iv) c=-8/27: w = 8/(9 tan^2(zeta/sqrt 3) - 3)
    std::vector<RescaledSample> samples;
    for (int i = 0; i < 24; ++i) {
      const Complex zeta{0.2 + 0.08 * i, 0.35};
      const Complex t = std::tan(zeta / std::sqrt(3.0));
      const Complex den = 9.0 * t * t - 3.0;
      const Complex w = 8.0 / den;
      const Complex dt = (1.0 + t * t) / std::sqrt(3.0);
      const Complex w1 = -8.0 * 18.0 * t * dt / (den * den);
      samples.push_back({zeta, w, w1});
    }
    CHECK(limit_ode_residual(EquationKind::PIV, samples, Complex{-8.0 / 27.0}) < 1e-12);
  }
}

TEST_CASE("constant limits satisfy the double-root condition") {
  for (auto kind : {EquationKind::PI, EquationKind::PII, EquationKind::PIV}) {
    const auto catalog = constant_limit_catalog(kind);
    CHECK(!catalog.empty());
    for (const auto& entry : catalog) {
      CHECK(std::abs(limit_ode_polynomial(kind, entry.w, entry.c)) < 1e-14);
      // tangency: dP/dw = 0
      const Complex d = 1e-7;
      const Complex slope = (limit_ode_polynomial(kind, entry.w + d, entry.c) -
                             limit_ode_polynomial(kind, entry.w - d, entry.c)) /
                            (2.0 * d);
      CHECK(std::abs(slope) < 1e-6);
    }
  }
  // printed values
  const auto p1 = constant_limit_catalog(EquationKind::PI);
  CHECK(std::abs(p1[0].w - kI / std::sqrt(6.0)) < 1e-15);
  CHECK(std::abs(p1[0].c - kI * std::sqrt(2.0 / 27.0)) < 1e-15);
  const auto p4 = constant_limit_catalog(EquationKind::PIV);
  CHECK(std::abs(p4[2].w - Complex{-2.0 / 3.0}) < 1e-15);
  CHECK(std::abs(p4[2].c - Complex{-8.0 / 27.0}) < 1e-15);
}

TEST_CASE("period catalogue") {
  const auto p4 = period_catalog(EquationKind::PIV);
  REQUIRE(p4.size() == 2);
  CHECK(std::abs(p4[0].omega - Complex{0.0, M_PI}) < 1e-15);
  CHECK(std::abs(p4[1].omega - Complex{M_PI * std::sqrt(3.0)}) < 1e-15);
  const auto p2 = period_catalog(EquationKind::PII);
  CHECK(std::abs(p2[0].omega - Complex{0.0, M_PI}) < 1e-15);
  CHECK(std::abs(p2[1].omega - Complex{M_PI * std::sqrt(2.0)}) < 1e-15);
}

TEST_CASE("cluster estimate plumbing on w=-2z (W identically 0)") {
  const auto eq = EquationSpec::p4(0.0, -2.0);
  SolutionFn minus2z = [](Complex z) { return Jet{z, -2.0 * z, -2.0}; };
  const auto est = cluster_estimate(minus2z, eq, 0.3, 10.0, 40.0, 50, {});
  CHECK(est.samples.size() == 50);
  for (const auto& s : est.samples) CHECK(std::abs(s.value) < 1e-12);

  // admission rule: poles at the sample points block everything
  std::vector<Complex> poles;
  for (int i = 0; i < 50; ++i) poles.push_back(std::polar(10.0 + 30.0 * i / 49.0, 0.3));
  CHECK_THROWS_AS(cluster_estimate(minus2z, eq, 0.3, 10.0, 40.0, 50, poles),
                  NoAdmissibleSamples);
}

TEST_CASE("pole cluster contributions") {
  const auto eq4 = EquationSpec::p4(0.0, -2.0);
  CHECK(std::abs(pole_cluster_value(eq4, Complex{10.0}, 1, Complex{0.0})) < 1e-15);
  const Complex h{0.5, 0.25};
  CHECK(std::abs(pole_cluster_value(eq4, Complex{10.0}, 1, h) - 2.0 * h / 1000.0) < 1e-15);
  const auto eq2 = EquationSpec::p2(0.0);
  CHECK(std::abs(pole_cluster_value(eq2, Complex{10.0}, -1,
                                    Complex{0.0}) - Complex{-7.0 / 36.0}) < 1e-15);
}
