#include "pnlv/rescale.hpp"

#include <algorithm>
#include <cmath>

namespace pnlv {

RescaleFrame RescaleFrame::for_equation(const EquationSpec& eq, Complex h,
                                        std::vector<Complex> grid) {
  RescaleFrame f;
  f.h = h;
  yosida_exponents(eq.kind, &f.a, &f.b);
  f.grid = std::move(grid);
  return f;
}

namespace {
Complex cpow(Complex base, double e) { return std::pow(base, Complex{e, 0.0}); }
}  // namespace

std::vector<RescaledSample> rescale_window(const SolutionFn& solution,
                                           const RescaleFrame& frame) {
  const Complex ha = cpow(frame.h, -frame.a.value());
  const Complex hb = cpow(frame.h, -frame.b.value());
  std::vector<RescaledSample> out;
  out.reserve(frame.grid.size());
  for (const Complex& zeta : frame.grid) {
    Jet jet;
    try {
      jet = solution(frame.h + hb * zeta);
    } catch (const Error& e) {
      throw EvaluationFailed(std::string("rescale_window: ") + e.what());
    }
    RescaledSample s;
    s.zeta = zeta;
    s.w = ha * jet.w;
    s.w1 = ha * hb * jet.w1;
    out.push_back(s);
  }
  return out;
}

Complex limit_ode_polynomial(EquationKind kind, Complex w, Complex c) {
  switch (kind) {
    case EquationKind::PI:
      return 4.0 * w * w * w + 2.0 * w - 2.0 * c;
    case EquationKind::PII:
      return w * w * w * w + w * w - c;
    case EquationKind::PIV:
      return w * w * w * w + 4.0 * w * w * w + 4.0 * w * w - 4.0 * c * w;
  }
  return {};
}

double limit_ode_residual(EquationKind kind, const std::vector<RescaledSample>& samples,
                          Complex c) {
  double worst = 0.0;
  for (const auto& s : samples)
    worst = std::max(worst,
                     std::abs(s.w1 * s.w1 - limit_ode_polynomial(kind, s.w, c)));
  return worst;
}

std::vector<ConstantLimit> constant_limit_catalog(EquationKind kind) {
  switch (kind) {
    case EquationKind::PI: {
      const Complex w = kI / std::sqrt(6.0);
      const Complex c = kI * std::sqrt(2.0 / 27.0);
      return {{w, c}, {-w, -c}};
    }
    case EquationKind::PII: {
      const Complex w = kI / std::sqrt(2.0);
      return {{Complex{0.0}, Complex{0.0}}, {w, Complex{-0.25}}, {-w, Complex{-0.25}}};
    }
    case EquationKind::PIV:
      return {{Complex{0.0}, Complex{0.0}},
              {Complex{-2.0}, Complex{0.0}},
              {Complex{-2.0 / 3.0}, Complex{-8.0 / 27.0}}};
  }
  return {};
}

std::vector<PeriodEntry> period_catalog(EquationKind kind) {
  switch (kind) {
    case EquationKind::PI:
      return {};
    case EquationKind::PII:
      return {{Complex{0.0}, Complex{0.0, M_PI}}, {Complex{-0.25}, Complex{M_PI * std::sqrt(2.0)}}};
    case EquationKind::PIV:
      return {{Complex{0.0}, Complex{0.0, M_PI}},
              {Complex{-8.0 / 27.0}, Complex{M_PI * std::sqrt(3.0)}}};
  }
  return {};
}

ClusterEstimate cluster_estimate(const SolutionFn& solution, const EquationSpec& eq, double theta,
                                 double rMin, double rMax, int nSamples,
                                 const std::vector<Complex>& poles, double deltaFloor) {
  if (nSamples < 2) throw WrongParameters("cluster_estimate: need at least 2 samples");
  Rational a, b;
  yosida_exponents(eq.kind, &a, &b);
  // the admission rule scales distance by |h|^b; W is compared at h^-d with
  // d = 3/2, 2, 3 respectively
  double d = 0.0;
  switch (eq.kind) {
    case EquationKind::PI: d = 1.5; break;
    case EquationKind::PII: d = 2.0; break;
    case EquationKind::PIV: d = 3.0; break;
  }
  ClusterEstimate out;
  out.d = eq.kind == EquationKind::PI ? Rational{3, 2}
                                      : (eq.kind == EquationKind::PII ? Rational{2, 1}
                                                                      : Rational{3, 1});
  for (int i = 0; i < nSamples; ++i) {
    const double r = rMin + (rMax - rMin) * i / (nSamples - 1.0);
    const Complex h = std::polar(r, theta);
    double dist = 1e300;
    for (const Complex& p : poles) dist = std::min(dist, std::abs(h - p));
    const double scaled = std::pow(r, b.value()) * dist;
    if (scaled < deltaFloor) continue;
    Jet jet;
    try {
      jet = solution(h);
    } catch (const Error&) {
      continue;
    }
    if (std::abs(jet.w) < kZeroGuard * local_scale(h)) continue;
    ClusterSample s;
    s.h = h;
    s.value = first_integral(eq, jet).W * cpow(h, -d);
    s.scaledPoleDist = scaled;
    out.samples.push_back(s);
  }
  if (out.samples.empty()) throw NoAdmissibleSamples("cluster_estimate: no admitted samples");

  // histogram over |value|
  double vmax = 0.0;
  for (const auto& s : out.samples) vmax = std::max(vmax, std::abs(s.value));
  const int bins = 16;
  const double top = std::max(vmax, 1e-12);
  out.histogramEdges.resize(bins + 1);
  out.histogramCounts.assign(bins, 0);
  for (int i = 0; i <= bins; ++i) out.histogramEdges[i] = top * i / bins;
  for (const auto& s : out.samples) {
    int bin = static_cast<int>(std::abs(s.value) / top * bins);
    bin = std::clamp(bin, 0, bins - 1);
    ++out.histogramCounts[bin];
  }
  return out;
}

Complex pole_cluster_value(const EquationSpec& eq, Complex p, int eps, Complex h) {
  switch (eq.kind) {
    case EquationKind::PI:
      // the constant term of W at the pole is +14h; see the Laurent tests
      return 14.0 * h * cpow(p, -1.5);
    case EquationKind::PII:
      return 10.0 * static_cast<double>(eps) * h / (p * p) - 7.0 / 36.0;
    case EquationKind::PIV:
      return 2.0 * h / (p * p * p);
  }
  return {};
}

}  // namespace pnlv
