#pragma once

#include <functional>
#include <vector>

#include "pnlv/eqcore.hpp"

namespace pnlv {

using SolutionFn = std::function<Jet(Complex)>;

/// Window for the re-scaling map w_h(zeta) = h^-a w(h + h^-b zeta).
struct RescaleFrame {
  Complex h{0.0};
  Rational a{1, 1};
  Rational b{1, 1};
  std::vector<Complex> grid;

  static RescaleFrame for_equation(const EquationSpec& eq, Complex h, std::vector<Complex> grid);
};

struct RescaledSample {
  Complex zeta{0.0};
  Complex w{0.0};
  Complex w1{0.0};
};

/// Evaluate the rescaled window, with the chain-rule derivative.
std::vector<RescaledSample> rescale_window(const SolutionFn& solution, const RescaleFrame& frame);

/// Max residual of w'^2 = P(w; c) over the samples, with the limit-ODE
/// polynomial of the given kind.
double limit_ode_residual(EquationKind kind, const std::vector<RescaledSample>& samples,
                          Complex c);

Complex limit_ode_polynomial(EquationKind kind, Complex w, Complex c);

struct ConstantLimit {
  Complex w{0.0};
  Complex c{0.0};
};
/// Constant limit functions and their exceptional parameters.
std::vector<ConstantLimit> constant_limit_catalog(EquationKind kind);

struct PeriodEntry {
  Complex c{0.0};
  Complex omega{0.0};
};
/// Periods of the degenerate trigonometric limits.
std::vector<PeriodEntry> period_catalog(EquationKind kind);

struct ClusterSample {
  Complex h{0.0};
  Complex value{0.0};       // h^-d W(h)
  double scaledPoleDist = 0.0;
};

struct ClusterEstimate {
  std::vector<ClusterSample> samples;
  Rational d{3, 1};
  std::vector<double> histogramEdges;   // on |value|
  std::vector<int> histogramCounts;
};

/// Admitted samples of h^-d W(h) along a ray, with the scaled-distance
/// admission rule; poles provides the catalogue for distance checks.
ClusterEstimate cluster_estimate(const SolutionFn& solution, const EquationSpec& eq, double theta,
                                 double rMin, double rMax, int nSamples,
                                 const std::vector<Complex>& poles, double deltaFloor = 0.5);

/// The per-pole cluster contribution: 14 h p^{-3/2} (I),
/// 10 eps h p^{-2} - 7/36 (II), 2 h p^{-3} (IV).
Complex pole_cluster_value(const EquationSpec& eq, Complex p, int eps, Complex h);

}  // namespace pnlv
