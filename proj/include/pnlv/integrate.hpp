#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pnlv/eqcore.hpp"
#include "pnlv/localseries.hpp"

namespace pnlv {

/// Integration path in the complex plane.
struct PathSpec {
  enum class Kind { Segment, Ray, Polyline, Circle };
  Kind kind = Kind::Segment;
  std::vector<Complex> points;  // Segment (2) / Polyline (>= 2)
  Complex origin{0.0};          // Ray
  double theta = 0.0;
  double rMax = 0.0;
  Complex center{0.0};  // Circle; starts at center + radius
  double radius = 0.0;
  double turns = 1.0;  // sign = orientation

  static PathSpec segment(Complex z0, Complex z1);
  static PathSpec ray(Complex origin, double theta, double rMax);
  static PathSpec polyline(std::vector<Complex> pts);
  static PathSpec circle(Complex center, double radius, double turns = 1.0);

  double length() const;
  Complex at(double s) const;
  Complex direction(double s) const;  // unit tangent dz/ds
  Complex start() const { return at(0.0); }
  /// Parameters of non-smooth points (polyline corners), ascending.
  std::vector<double> breakpoints() const;
};

struct IntegrateOptions {
  double tol = 1e-10;  // local error tolerance, in [1e-13, 1e-6]
  bool hopPoles = true;
  double poleTrigger = 1e3;  // in local units of w
  double hopDelta = 0.5;     // disc scale factor
  int laurentOrder = 14;
  double poleFitTol = 1e-6;
  double maxStep = 0.0;  // 0 = unlimited
  size_t maxSteps = 20000000;
  bool recordSamples = true;
};

struct PoleEvent {
  PoleSeed seed;
  double pathParam = 0.0;
  double fitResidual = 0.0;
};

struct TrajectorySample {
  double s = 0.0;
  Jet jet;
  Complex Wq{0.0};    // int W' dz from the path start (continuous across hops)
  Complex WInt{0.0};  // int Wq dz; over a closed loop this is the contour integral of W
  Complex wInt{0.0};  // int w dz
};

struct TrajectoryDiagnostics {
  size_t steps = 0;
  size_t rejected = 0;
  double minStep = 0.0;
  int poleHops = 0;
  bool stoppedByObserver = false;
  // (IV) only: |C| relative to the size of the polynomial terms
  double maxConstraintResidual = 0.0;
  double maxWDrift = 0.0;  // |W by quadrature - algebraic W|, where defined
};

struct Trajectory {
  EquationSpec eq;
  PathSpec path;
  std::vector<TrajectorySample> samples;
  std::vector<PoleEvent> poleEvents;
  TrajectoryDiagnostics diag;
  std::vector<std::string> warnings;
};

/// Called at every accepted step; returning false stops the integration
/// cleanly (partial trajectory, diag.stoppedByObserver set).
using StepObserver = std::function<bool(const TrajectorySample&)>;

/// Adaptive integration along the path, hopping over poles by Laurent
/// matching.  The start jet must sit at the path origin.
Trajectory integrate(const EquationSpec& eq, const Jet& start, const PathSpec& path,
                     const IntegrateOptions& opts = {}, const StepObserver& observer = nullptr);

/// First integral along the trajectory, pinned to the calibration value.
/// Throws CalibrationInvalid if the calibration point is not on the
/// trajectory or sits where the algebraic form is unusable.
std::vector<Complex> continue_W(const Trajectory& traj, const FirstIntegralValue& calibration);

struct GrowthDiagnostics {
  double supKey = 0.0;        // |w| / |z|^a
  double supDerivative = 0.0; // |w'| / (|z|^(2a) + |w|^2) with the kind's scaling
  double supSpherical = 0.0;  // spherical derivative of the normalized function / |z|^b
  double rMaxReached = 0.0;
  size_t samplesUsed = 0;
};

/// Empirical growth constants over a trajectory, skipping pole discs.
GrowthDiagnostics growth_probe(const Trajectory& traj);

/// Single adaptive step of the underlying scheme along a straight direction;
/// used by pole-homing sweeps.  Returns the advanced jet.
class LineStepper {
 public:
  LineStepper(const EquationSpec& eq, double tol);
  /// One accepted step from `jet` along unit direction `dir` with trial step
  /// `h` (shrunk as needed).  Returns the step actually taken.
  double step(Jet* jet, Complex dir, double h);

 private:
  EquationSpec eq_;
  double tol_;
};

}  // namespace pnlv
