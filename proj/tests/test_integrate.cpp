#include <cmath>

#include "doctest.h"
#include "pnlv/integrate.hpp"

using namespace pnlv;

TEST_CASE("path geometry") {
  const auto seg = PathSpec::segment(Complex{1.0}, Complex{5.0});
  CHECK(seg.length() == doctest::Approx(4.0));
  CHECK(std::abs(seg.at(2.0) - Complex{3.0}) < 1e-15);

  const auto ray = PathSpec::ray(Complex{1.0}, 0.0, 3.0);
  CHECK(ray.length() == doctest::Approx(2.0));

  const auto cir = PathSpec::circle(Complex{1.0}, 0.1, 1.0);
  CHECK(cir.length() == doctest::Approx(2.0 * M_PI * 0.1));
  CHECK(std::abs(cir.at(0.0) - Complex{1.1}) < 1e-15);

  const auto pl = PathSpec::polyline({Complex{0.0}, Complex{1.0}, Complex{1.0, 1.0}});
  CHECK(pl.length() == doctest::Approx(2.0));
  CHECK(pl.breakpoints().size() == 1);
}

TEST_CASE("(IV) rational solution is followed") {
  const auto eq = EquationSpec::p4(0.0, -2.0);
  const Jet start{1.0, -2.0, -2.0, 0.0};
  IntegrateOptions opts;
  opts.tol = 1e-11;
  const auto traj = integrate(eq, start, PathSpec::segment(Complex{1.0}, Complex{5.0}), opts);
  REQUIRE(!traj.samples.empty());
  // perturbations around w = -2z grow like e^(z^2); machine rounding alone
  // seeds ~1e-18, so pointwise 1e-9 accuracy is attainable up to |z| ~ 4.2
  for (const auto& s : traj.samples) {
    const double bound = s.jet.z.real() <= 4.2 ? 1e-9 : 5e-6;
    CHECK(std::abs(s.jet.w - (-2.0 * s.jet.z)) < bound);
    CHECK(std::abs(s.jet.w1 - Complex{-2.0}) < bound);
  }
  CHECK(traj.diag.maxConstraintResidual < 1e-8);
  CHECK(traj.poleEvents.empty());
}

TEST_CASE("(II) rotation symmetry v(z) = c w(cz), c = exp(2 pi i/3)") {
  // the exact point symmetry of (II): substituting v(z) = c w(cz) with
  // c^3 = 1 reproduces the equation with the same alpha
  const auto eq = EquationSpec::p2(0.0);
  IntegrateOptions opts;
  opts.tol = 1e-11;
  const Complex c = std::polar(1.0, 2.0 * M_PI / 3.0);

  // w runs through its real pole at z ~ 1.7376; v = rotated data runs the
  // conjugate-rotated segment and must hop the image of the same pole
  const Jet start{0.0, 0.0, 1.0};
  const auto run1 = integrate(eq, start, PathSpec::segment(Complex{0.0}, Complex{3.0}), opts);

  const Jet rotated{0.0, 0.0, c * c};
  const auto run2 =
      integrate(eq, rotated, PathSpec::segment(Complex{0.0}, 3.0 * std::conj(c)), opts);

  CHECK(run1.diag.poleHops == run2.diag.poleHops);
  CHECK(run1.diag.poleHops >= 1);
  const Jet& a = run1.samples.back().jet;
  const Jet& b = run2.samples.back().jet;
  CHECK(std::abs(b.w - c * a.w) < 1e-6);
  CHECK(std::abs(b.w1 - c * c * a.w1) < 1e-6);
}

TEST_CASE("(I) pole passage: residue of W and antipodal continuation") {
  PoleSeed seed{EquationSpec::p1(), Complex{1.0}, +1, Complex{0.0}};
  const Jet start = seed_jet(seed, 0.1, 20);
  IntegrateOptions opts;
  opts.tol = 1e-12;

  // full turn: (1/2 pi i) contour integral of W equals Res W = -1
  const auto loop =
      integrate(seed.eq, start, PathSpec::circle(Complex{1.0}, 0.1, 1.0), opts);
  const Complex resW =
      (loop.samples.back().WInt - loop.samples.front().WInt) / (2.0 * M_PI * kI);
  CHECK(std::abs(resW - Complex{-1.0}) < 1e-8);

  // half turn lands at the antipodal point of the series
  const auto half =
      integrate(seed.eq, start, PathSpec::circle(Complex{1.0}, 0.1, 0.5), opts);
  const Jet expect = seed_jet(seed, -0.1, 20);
  CHECK(std::abs(half.samples.back().jet.w - expect.w) < 1e-7);
  CHECK(std::abs(half.samples.back().jet.w1 - expect.w1) < 1e-6);
}

TEST_CASE("(I) pole-hop consistency with h != 0") {
  PoleSeed seed{EquationSpec::p1(), Complex{1.0}, +1, Complex{0.3, -0.2}};
  const Jet start = seed_jet(seed, 0.12, 20);
  IntegrateOptions opts;
  opts.tol = 1e-12;
  const auto half =
      integrate(seed.eq, start, PathSpec::circle(Complex{1.0}, 0.12, 0.5), opts);
  const Jet expect = seed_jet(seed, -0.12, 20);
  CHECK(std::abs(half.samples.back().jet.w - expect.w) < 1e-7);
}

TEST_CASE("(IV) head-on pole crossing hops and recovers the exact solution") {
  // w = -1/z solves (IV) with alpha=-2, beta=-2; the segment passes z=0
  const auto eq = EquationSpec::p4(-2.0, -2.0);
  const Complex z0{-2.0};
  const Jet start{z0, -1.0 / z0, 1.0 / (z0 * z0), -2.0 / (z0 * z0 * z0)};
  IntegrateOptions opts;
  opts.tol = 1e-11;
  const auto traj = integrate(eq, start, PathSpec::segment(z0, Complex{2.0}), opts);
  REQUIRE(traj.poleEvents.size() == 1);
  CHECK(std::abs(traj.poleEvents[0].seed.p) < 1e-7);
  CHECK(traj.poleEvents[0].seed.eps == -1);
  CHECK(std::abs(traj.poleEvents[0].seed.h) < 1e-5);
  const Jet& end = traj.samples.back().jet;
  CHECK(std::abs(end.w - (-0.5)) < 1e-7);
  CHECK(std::abs(end.w1 - 0.25) < 1e-7);
}

TEST_CASE("path reversal returns to the start") {
  const auto eq = EquationSpec::p2(0.5);
  const Jet start{0.0, 0.3, -0.1};
  IntegrateOptions opts;
  opts.tol = 1e-10;
  const auto fwd = integrate(eq, start, PathSpec::segment(Complex{0.0}, Complex{2.0}), opts);
  const Jet mid = fwd.samples.back().jet;
  const auto bwd = integrate(eq, mid, PathSpec::segment(Complex{2.0}, Complex{0.0}), opts);
  const Jet back = bwd.samples.back().jet;
  CHECK(std::abs(back.w - start.w) < 10.0 * opts.tol * 100);
  CHECK(std::abs(back.w1 - start.w1) < 10.0 * opts.tol * 100);
}

TEST_CASE("halving the tolerance improves the endpoint error") {
  const auto eq = EquationSpec::p2(0.0);
  const Jet start{0.0, 0.1, 0.0};
  const auto path = PathSpec::segment(Complex{0.0}, Complex{2.0});
  IntegrateOptions ref;
  ref.tol = 1e-12;
  const Complex truth = integrate(eq, start, path, ref).samples.back().jet.w;

  int improvements = 0;
  for (double tol : {1e-7, 1e-8, 1e-9}) {
    IntegrateOptions a, b;
    a.tol = tol;
    b.tol = tol / 2.0;
    const double ea = std::abs(integrate(eq, start, path, a).samples.back().jet.w - truth);
    const double eb = std::abs(integrate(eq, start, path, b).samples.back().jet.w - truth);
    if (ea / eb >= 1.5) ++improvements;
    CHECK(eb <= ea * 1.2);
  }
  CHECK(improvements >= 2);
}

TEST_CASE("(IV) constraint stays conserved over a long path") {
  const auto eq = EquationSpec::p4(-2.0, -2.0);
  const Complex z0{2.0};
  Jet start{z0, -1.0 / z0, 1.0 / (z0 * z0)};
  start.w2 = rhs(eq, start);  // C = 0 at the seed
  IntegrateOptions opts;
  opts.tol = 1e-10;
  const auto traj = integrate(eq, start, PathSpec::segment(z0, Complex{22.0}), opts);
  CHECK(traj.diag.maxConstraintResidual < 1e-8);
  CHECK(traj.samples.back().jet.z.real() == doctest::Approx(22.0));
}

TEST_CASE("continue_W on w=-2z is identically zero and drift stays small") {
  const auto eq = EquationSpec::p4(0.0, -2.0);
  const Jet start{1.0, -2.0, -2.0, 0.0};
  IntegrateOptions opts;
  opts.tol = 1e-11;
  const auto traj = integrate(eq, start, PathSpec::segment(Complex{1.0}, Complex{4.0}), opts);
  const auto W = continue_W(traj, first_integral(eq, traj.samples.front().jet));
  for (const auto& v : W) CHECK(std::abs(v) < 1e-9);
  CHECK(traj.diag.maxWDrift < 1e-8);

  FirstIntegralValue bad;
  bad.calibrationPoint = Complex{100.0, 100.0};
  CHECK_THROWS_AS(continue_W(traj, bad), CalibrationInvalid);
}

TEST_CASE("(I) first integral drift: dW/dz = w by quadrature") {
  PoleSeed seed{EquationSpec::p1(), Complex{-3.0}, +1, Complex{0.1}};
  const Jet start = seed_jet(seed, 0.3, 20);
  IntegrateOptions opts;
  opts.tol = 1e-11;
  const auto traj =
      integrate(seed.eq, start, PathSpec::segment(start.z, start.z + Complex{0.0, 1.5}), opts);
  CHECK(traj.diag.maxWDrift < 1e-7);
}

namespace {
// exact-function trajectories: the probe logic is what is under test here,
// and marching along an unstable exact solution would decohere long before
// |z| = 12 no matter the tolerance
Trajectory synthetic_trajectory(const EquationSpec& eq,
                                const std::function<Jet(Complex)>& fn, double r0, double r1) {
  Trajectory traj;
  traj.eq = eq;
  for (double r = r0; r <= r1; r += 0.05) traj.samples.push_back({r, fn(Complex{r}), 0.0});
  return traj;
}
}  // namespace

TEST_CASE("growth probe on exact solutions") {
  {
    const auto eq = EquationSpec::p4(0.0, -2.0);
    const auto traj = synthetic_trajectory(
        eq, [](Complex z) { return Jet{z, -2.0 * z, -2.0}; }, 1.0, 12.0);
    const auto g = growth_probe(traj);
    CHECK(g.supKey == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(g.rMaxReached >= 10.0);
  }
  {
    // (1/|z|^2)/(|z|^2 + 1/|z|^2) = 1/(|z|^4+1) <= 1/2 for |z| >= 1
    const auto eq = EquationSpec::p4(-2.0, -2.0);
    const auto traj = synthetic_trajectory(
        eq, [](Complex z) { return Jet{z, -1.0 / z, 1.0 / (z * z)}; }, 1.0, 11.0);
    const auto g = growth_probe(traj);
    CHECK(g.supDerivative <= 0.5 + 1e-12);
    CHECK(g.supDerivative > 0.45);
  }
}
