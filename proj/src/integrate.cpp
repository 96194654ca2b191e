#include "pnlv/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <cstdio>
#include <cstdlib>

namespace pnlv {

// ---- paths ---------------------------------------------------------------

PathSpec PathSpec::segment(Complex z0, Complex z1) {
  PathSpec p;
  p.kind = Kind::Segment;
  p.points = {z0, z1};
  return p;
}

PathSpec PathSpec::ray(Complex origin, double theta, double rMax) {
  PathSpec p;
  p.kind = Kind::Ray;
  p.origin = origin;
  p.theta = theta;
  p.rMax = rMax;
  if (std::abs(origin) >= rMax) throw WrongParameters("ray: origin outside rMax");
  return p;
}

PathSpec PathSpec::polyline(std::vector<Complex> pts) {
  if (pts.size() < 2) throw WrongParameters("polyline: need at least two points");
  for (size_t i = 1; i < pts.size(); ++i)
    if (std::abs(pts[i] - pts[i - 1]) == 0.0) throw WrongParameters("polyline: repeated point");
  PathSpec p;
  p.kind = Kind::Polyline;
  p.points = std::move(pts);
  return p;
}

PathSpec PathSpec::circle(Complex center, double radius, double turns) {
  if (radius <= 0.0 || turns == 0.0) throw WrongParameters("circle: bad radius or turns");
  PathSpec p;
  p.kind = Kind::Circle;
  p.center = center;
  p.radius = radius;
  p.turns = turns;
  return p;
}

double PathSpec::length() const {
  switch (kind) {
    case Kind::Segment:
      return std::abs(points[1] - points[0]);
    case Kind::Ray: {
      const Complex e = std::polar(1.0, theta);
      const double b = (std::conj(origin) * e).real();
      return -b + std::sqrt(std::max(0.0, b * b + rMax * rMax - std::norm(origin)));
    }
    case Kind::Polyline: {
      double L = 0.0;
      for (size_t i = 1; i < points.size(); ++i) L += std::abs(points[i] - points[i - 1]);
      return L;
    }
    case Kind::Circle:
      return 2.0 * M_PI * radius * std::abs(turns);
  }
  return 0.0;
}

Complex PathSpec::at(double s) const {
  switch (kind) {
    case Kind::Segment: {
      const Complex d = points[1] - points[0];
      return points[0] + d * (s / std::abs(d));
    }
    case Kind::Ray:
      return origin + std::polar(1.0, theta) * s;
    case Kind::Polyline: {
      double acc = 0.0;
      for (size_t i = 1; i < points.size(); ++i) {
        const double seg = std::abs(points[i] - points[i - 1]);
        if (s <= acc + seg || i + 1 == points.size()) {
          const Complex d = (points[i] - points[i - 1]) / seg;
          return points[i - 1] + d * (s - acc);
        }
        acc += seg;
      }
      return points.back();
    }
    case Kind::Circle: {
      const double sgn = turns >= 0.0 ? 1.0 : -1.0;
      return center + radius * std::exp(Complex{0.0, sgn * s / radius});
    }
  }
  return {};
}

Complex PathSpec::direction(double s) const {
  switch (kind) {
    case Kind::Segment: {
      const Complex d = points[1] - points[0];
      return d / std::abs(d);
    }
    case Kind::Ray:
      return std::polar(1.0, theta);
    case Kind::Polyline: {
      double acc = 0.0;
      for (size_t i = 1; i < points.size(); ++i) {
        const double seg = std::abs(points[i] - points[i - 1]);
        if (s < acc + seg || i + 1 == points.size())
          return (points[i] - points[i - 1]) / seg;
        acc += seg;
      }
      return {};
    }
    case Kind::Circle: {
      const double sgn = turns >= 0.0 ? 1.0 : -1.0;
      return Complex{0.0, sgn} * std::exp(Complex{0.0, sgn * s / radius});
    }
  }
  return {};
}

std::vector<double> PathSpec::breakpoints() const {
  std::vector<double> b;
  if (kind == Kind::Polyline) {
    double acc = 0.0;
    for (size_t i = 1; i + 1 < points.size(); ++i) {
      acc += std::abs(points[i] - points[i - 1]);
      b.push_back(acc);
    }
  }
  return b;
}

// ---- Dormand-Prince 5(4) ---------------------------------------------------

namespace {

constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384, 0.0,       500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

// state layout: w, w', [w''], Wq = int W' dz, WInt = int Wq dz, wInt = int w dz
using State = std::array<Complex, 6>;

int state_size(const EquationSpec& eq) { return eq.kind == EquationKind::PIV ? 6 : 5; }
int aux_base(const EquationSpec& eq) { return eq.kind == EquationKind::PIV ? 3 : 2; }

Jet state_jet(const EquationSpec& eq, Complex z, const State& y) {
  Jet jet{z, y[0], y[1]};
  if (eq.kind == EquationKind::PIV) jet.w2 = y[2];
  return jet;
}

struct Aux {
  Complex Wq{0.0};
  Complex WInt{0.0};
  Complex wInt{0.0};
};

State jet_state(const EquationSpec& eq, const Jet& jet, const Aux& aux) {
  State y{};
  y[0] = jet.w;
  y[1] = jet.w1;
  const int b = aux_base(eq);
  if (eq.kind == EquationKind::PIV) y[2] = jet.w2 ? *jet.w2 : rhs(eq, jet);
  y[b] = aux.Wq;
  y[b + 1] = aux.WInt;
  y[b + 2] = aux.wInt;
  return y;
}

Aux state_aux(const EquationSpec& eq, const State& y) {
  const int b = aux_base(eq);
  return Aux{y[b], y[b + 1], y[b + 2]};
}

template <typename Frame>
State rhs_state(const EquationSpec& eq, const Frame& frame, double s, const State& y) {
  const Complex z = frame.at(s);
  const Complex t = frame.direction(s);
  const Jet jet = state_jet(eq, z, y);
  State dy{};
  dy[0] = y[1] * t;
  const int b = aux_base(eq);
  if (eq.kind == EquationKind::PIV) {
    dy[1] = y[2] * t;
    dy[2] = rhs3(eq, jet) * t;
  } else {
    dy[1] = rhs(eq, jet) * t;
  }
  dy[b] = first_integral_derivative(eq, jet) * t;
  dy[b + 1] = y[b] * t;  // d/ds int Wq dz
  dy[b + 2] = jet.w * t;
  return dy;
}

struct StepResult {
  double err = 0.0;
  State y{};
};

template <typename Frame>
StepResult try_step(const EquationSpec& eq, const Frame& frame, double s, double h,
                    const State& y, int n, double tol) {
  State k[7];
  k[0] = rhs_state(eq, frame, s, y);
  for (int stage = 1; stage < 7; ++stage) {
    State ys = y;
    for (int i = 0; i < n; ++i) {
      Complex acc{0.0};
      for (int j = 0; j < stage; ++j) acc += kA[stage][j] * k[j][i];
      ys[i] += h * acc;
    }
    k[stage] = rhs_state(eq, frame, s + kC[stage] * h, ys);
  }
  StepResult out;
  double errAcc = 0.0;
  for (int i = 0; i < n; ++i) {
    Complex y5 = y[i], e{0.0};
    for (int j = 0; j < 7; ++j) {
      y5 += h * kB5[j] * k[j][i];
      e += h * (kB5[j] - kB4[j]) * k[j][i];
    }
    out.y[i] = y5;
    const double sc = tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5)));
    errAcc += std::norm(e) / (sc * sc);
  }
  out.err = std::sqrt(errAcc / n);
  return out;
}

struct LineFrame {
  Complex z0;
  Complex dir;
  Complex at(double s) const { return z0 + dir * s; }
  Complex direction(double) const { return dir; }
};

struct RingEntry {
  double s;
  Jet jet;
};

double initial_step(double L, double tol) {
  return std::min(L / 50.0, std::max(1e-6, 0.05 * std::pow(tol, 0.2)));
}

// Continuous log of (z(s) - p) along the path from s1 to s2.  A path that
// runs exactly through p has a genuine +-pi ambiguity there; the + side is
// taken.
Complex path_log_ratio(const PathSpec& path, Complex p, double s1, double s2) {
  const Complex x1 = path.at(s1) - p;
  double arg = 0.0;
  Complex xPrev = x1;
  double sc = s1;
  double ds = (s2 - s1) / 32.0;
  int guard = 0;
  while (sc < s2 && ++guard < 100000) {
    const double sn = std::min(sc + ds, s2);
    Complex xNext = path.at(sn) - p;
    if (!(std::abs(xNext) > 0.0)) xNext = Complex{1e-300, 0.0};
    double dphi = std::arg(xNext / xPrev);
    if (std::abs(dphi) > 0.5 && ds > 1e-12 * (s2 - s1)) {
      ds *= 0.5;
      continue;
    }
    if (dphi != dphi) dphi = M_PI;
    arg += dphi;
    xPrev = xNext;
    sc = sn;
    ds = std::min(ds * 1.5, (s2 - s1) / 32.0);
  }
  const Complex x2 = path.at(s2) - p;
  return Complex{std::log(std::abs(x2) / std::abs(x1)), arg};
}

// Antiderivative of a Laurent expansion with the x^-1 term removed.
SeriesExpansion drop_residue_and_integrate(const SeriesExpansion& s) {
  SeriesExpansion out = s;
  const int lo = static_cast<int>(s.leadingExponent.num);
  out.leadingExponent = Rational(lo + 1);
  out.coeffs.assign(s.coeffs.size(), Complex{0.0});
  for (size_t j = 0; j < s.coeffs.size(); ++j) {
    const int k = lo + static_cast<int>(j);
    if (k == -1) continue;  // handled by the explicit log term
    out.coeffs[j] = s.coeffs[j] / static_cast<double>(k + 1);
  }
  return out;
}

}  // namespace

// ---- main integration loop -------------------------------------------------

Trajectory integrate(const EquationSpec& eq, const Jet& start, const PathSpec& path,
                     const IntegrateOptions& opts, const StepObserver& observer) {
  if (!(opts.tol >= 1e-13 && opts.tol <= 1e-6))
    throw WrongParameters("integrate: tol outside [1e-13, 1e-6]");
  const double L = path.length();
  if (std::abs(start.z - path.start()) > 1e-9 * local_scale(start.z))
    throw WrongParameters("integrate: start jet not at the path origin");

  Trajectory traj;
  traj.eq = eq;
  traj.path = path;
  const int n = state_size(eq);

  std::vector<double> stops = path.breakpoints();
  stops.push_back(L);

  State y = jet_state(eq, start, Aux{});
  double s = 0.0;
  double h = initial_step(L, opts.tol);
  if (opts.maxStep > 0.0) h = std::min(h, opts.maxStep);
  traj.diag.minStep = h;

  std::deque<RingEntry> ring;
  size_t stopIdx = 0;

  // constraint drift is measured against the largest term scale traversed
  // since the last hop; a hop re-seeds C = 0 from the local series
  double runningTermScale = 1.0;
  bool keepGoing = true;
  auto record = [&](double sv, const State& yv) {
    TrajectorySample sample;
    sample.s = sv;
    sample.jet = state_jet(eq, path.at(sv), yv);
    const Aux aux = state_aux(eq, yv);
    sample.Wq = aux.Wq;
    sample.WInt = aux.WInt;
    sample.wInt = aux.wInt;
    if (eq.kind == EquationKind::PIV) {
      const Jet& jet = sample.jet;
      const Complex z = jet.z, w = jet.w, w1 = jet.w1;
      const double ww = std::norm(w);
      const double scale = 1.0 + std::norm(w1) + 3.0 * ww * ww +
                           8.0 * std::abs(z) * std::abs(w) * ww +
                           4.0 * std::abs(z * z - eq.alpha) * ww + 2.0 * std::abs(eq.beta);
      runningTermScale = std::max(runningTermScale, scale);
      traj.diag.maxConstraintResidual = std::max(
          traj.diag.maxConstraintResidual, constraint_residual(eq, jet) / runningTermScale);
    }
    if (opts.recordSamples) traj.samples.push_back(sample);
    if (observer && !observer(sample)) {
      keepGoing = false;
      traj.diag.stoppedByObserver = true;
    }
  };

  auto handle_pole = [&]() {
    // approach samples: deep ones pin the location, shallow ones are the only
    // place the free coefficient h is visible.  Use the monotone approach
    // since the last |w| minimum so the previous pole's wake stays out.
    size_t firstIdx = 0;
    double wMin = 1e300;
    for (size_t i = 0; i < ring.size(); ++i) {
      const double m = std::abs(ring[i].jet.w) / w_scale(eq, ring[i].jet.z);
      if (m < wMin) {
        wMin = m;
        firstIdx = i;
      }
    }
    std::vector<Jet> window;
    for (size_t i = firstIdx; i < ring.size(); ++i) {
      const auto& e = ring[i];
      const double wsc = w_scale(eq, e.jet.z);
      const double m = std::abs(e.jet.w);
      if (m >= 4.0 * wsc && m <= 1.2 * opts.poleTrigger * wsc) window.push_back(e.jet);
    }
    if (window.size() > 48) {
      std::vector<Jet> thin;
      const size_t stride = (window.size() + 47) / 48;
      for (size_t i = 0; i < window.size(); i += stride) thin.push_back(window[i]);
      thin.push_back(window.back());
      window.swap(thin);
    }
    if (window.size() < 4) throw PoleFitFailed("pole hop: too few approach samples");
    double fitRes = 0.0;
    PoleSeed seed;
    try {
      seed = detect_pole(eq, window, opts.poleFitTol, &fitRes);
    } catch (const FitFailed& e) {
      throw PoleFitFailed(std::string("pole hop: ") + e.what());
    }

    const double hopR = pole_disc_radius(eq, seed.p, opts.hopDelta);
    const double sEntry = s;
    const Complex zEntry = path.at(sEntry);
    double sExit = s;
    bool seeded = false;
    Jet exitJet;
    for (int attempt = 0; attempt < 4 && !seeded; ++attempt) {
      const double radius = hopR * std::pow(0.75, attempt);
      const double ds = radius / 8.0;
      double sc = sEntry;
      double prev = std::abs(path.at(sc) - seed.p);
      int guard = 0;
      bool out = false;
      while (sc < L && ++guard < 4000) {
        const double next = std::abs(path.at(std::min(sc + ds, L)) - seed.p);
        if (next >= radius && next > prev) {
          out = true;
          break;
        }
        prev = next;
        sc += ds;
      }
      if (!out && sc < L) throw PoleFitFailed("pole hop: path trapped inside the pole disc");
      sExit = std::min(sc + ds, L);
      try {
        exitJet = seed_jet(seed, path.at(sExit) - seed.p, opts.laurentOrder);
        seeded = true;
      } catch (const OffsetOutsideValidity&) {
      }
    }
    if (!seeded) throw PoleFitFailed("pole hop: no valid exit offset");

    // continue the running integrals through the disc via the local model,
    // with the winding of log(z - p) taken along the actual path
    const Complex x1 = zEntry - seed.p;
    const Complex x2 = path.at(sExit) - seed.p;
    const Complex dLog = path_log_ratio(path, seed.p, sEntry, sExit);
    const SeriesExpansion wl = laurent_w(seed, opts.laurentOrder);
    const SeriesExpansion Wl = laurent_W(seed, opts.laurentOrder);
    const SeriesExpansion Pw = drop_residue_and_integrate(wl);
    const SeriesExpansion PW = drop_residue_and_integrate(Wl);
    const double epsRes = eq.kind == EquationKind::PI ? 0.0 : static_cast<double>(seed.eps);

    Aux aux = state_aux(eq, y);
    const Complex WEntry = Wl.eval(x1);
    const Complex dWq = Wl.eval(x2) - WEntry;
    const Complex dWPath = -dLog + PW.eval(x2) - PW.eval(x1);
    aux.WInt += (aux.Wq - WEntry) * (x2 - x1) + dWPath;
    aux.wInt += epsRes * dLog + Pw.eval(x2) - Pw.eval(x1);
    aux.Wq += dWq;

    PoleEvent ev;
    ev.seed = seed;
    ev.fitResidual = fitRes;
    ev.pathParam =
        sEntry + std::max(0.0, ((seed.p - zEntry) * std::conj(path.direction(sEntry))).real());
    traj.poleEvents.push_back(ev);
    ++traj.diag.poleHops;

    if (std::getenv("PNLV_HOP_DEBUG")) {
      std::fprintf(stderr, "[hop] p=(%g,%g) eps=%d h=(%g,%g) res=%g dLog=(%g,%g) Wq=(%g,%g) WInt=(%g,%g) wInt=(%g,%g) x1=(%g,%g) x2=(%g,%g)\n",
        seed.p.real(), seed.p.imag(), seed.eps, seed.h.real(), seed.h.imag(), fitRes,
        dLog.real(), dLog.imag(), aux.Wq.real(), aux.Wq.imag(), aux.WInt.real(), aux.WInt.imag(),
        aux.wInt.real(), aux.wInt.imag(), x1.real(), x1.imag(), x2.real(), x2.imag());
    }
    y = jet_state(eq, exitJet, aux);
    s = sExit;
    ring.clear();
    runningTermScale = 1.0;
    h = std::max(hopR / 8.0, 1e-8);
    record(s, y);
  };

  record(0.0, y);
  ring.push_back({0.0, start});

  while (keepGoing && s < L - 1e-14 * (1.0 + L)) {
    if (++traj.diag.steps > opts.maxSteps) throw Error("integrate: step budget exceeded");
    while (stopIdx < stops.size() && s >= stops[stopIdx] - 1e-14 * (1.0 + L)) ++stopIdx;
    const double sStop = stopIdx < stops.size() ? stops[stopIdx] : L;
    h = std::min(h, sStop - s);
    if (opts.maxStep > 0.0) h = std::min(h, opts.maxStep);

    const StepResult r = try_step(eq, path, s, h, y, n, opts.tol);
    const bool ok = r.err == r.err && r.err <= 1.0;  // NaN-safe
    if (!ok) {
      ++traj.diag.rejected;
      const double fac =
          (r.err == r.err && r.err > 0.0) ? std::max(0.2, 0.9 * std::pow(r.err, -0.2)) : 0.2;
      h *= fac;
      if (h < 1e-13 * (1.0 + s)) {
        std::string msg = "integrate: step size underflow at s=" + std::to_string(s);
        for (int i = 0; i < n; ++i)
          msg += " y" + std::to_string(i) + "=" + std::to_string(std::abs(y[i]));
        throw StepSizeUnderflow(msg);
      }
      continue;
    }
    s += h;
    y = r.y;
    traj.diag.minStep = std::min(traj.diag.minStep, h);
    const double fac = r.err > 0.0 ? std::min(5.0, 0.9 * std::pow(r.err, -0.2)) : 5.0;
    h = std::max(h * fac, 1e-13 * (1.0 + s));

    record(s, y);
    const Jet cur = state_jet(eq, path.at(s), y);
    ring.push_back({s, cur});
    if (ring.size() > 1200) {
      // compact the older half instead of dropping it: pole fits need the
      // shallow part of the approach as much as the deep part
      std::deque<RingEntry> kept;
      for (size_t i = 0; i < ring.size() / 2; i += 2) kept.push_back(ring[i]);
      for (size_t i = ring.size() / 2; i < ring.size(); ++i) kept.push_back(ring[i]);
      ring.swap(kept);
    }

    if (opts.hopPoles && std::abs(cur.w) >= opts.poleTrigger * w_scale(eq, cur.z) &&
        s < L - 1e-14 * (1.0 + L))
      handle_pole();
  }

  // first-integral drift against the algebraic value, where it is defined
  bool anchored = false;
  Complex anchor{0.0};
  for (const auto& sample : traj.samples) {
    const Jet& jet = sample.jet;
    const double guard = kZeroGuard * local_scale(jet.z);
    if (std::abs(jet.w) < guard || std::abs(jet.w) > 50.0 * w_scale(eq, jet.z)) continue;
    const Complex Walg = first_integral(eq, jet).W;
    if (!anchored) {
      anchor = Walg - sample.Wq;
      anchored = true;
      continue;
    }
    traj.diag.maxWDrift = std::max(traj.diag.maxWDrift, std::abs(sample.Wq + anchor - Walg));
  }
  return traj;
}

std::vector<Complex> continue_W(const Trajectory& traj, const FirstIntegralValue& calibration) {
  const auto& samples = traj.samples;
  if (samples.empty()) throw CalibrationInvalid("continue_W: empty trajectory");
  size_t idx = samples.size();
  for (size_t i = 0; i < samples.size(); ++i) {
    if (std::abs(samples[i].jet.z - calibration.calibrationPoint) <
        1e-7 * local_scale(calibration.calibrationPoint)) {
      idx = i;
      break;
    }
  }
  if (idx == samples.size())
    throw CalibrationInvalid("continue_W: calibration point not on the trajectory");
  if (std::abs(samples[idx].jet.w) < kZeroGuard * local_scale(samples[idx].jet.z))
    throw CalibrationInvalid("continue_W: calibration too close to a zero of w");
  std::vector<Complex> W(samples.size());
  const Complex base = calibration.W - samples[idx].Wq;
  for (size_t i = 0; i < samples.size(); ++i) W[i] = samples[i].Wq + base;
  return W;
}

GrowthDiagnostics growth_probe(const Trajectory& traj) {
  GrowthDiagnostics g;
  Rational ya, yb;
  yosida_exponents(traj.eq.kind, &ya, &yb);
  const double a = ya.value();
  for (const auto& sample : traj.samples) {
    const Jet& jet = sample.jet;
    const double az = std::abs(jet.z);
    g.rMaxReached = std::max(g.rMaxReached, az);
    if (az < 1e-9) continue;
    bool inDisc = std::abs(jet.w) > 500.0 * w_scale(traj.eq, jet.z);
    for (const auto& ev : traj.poleEvents) {
      if (std::abs(jet.z - ev.seed.p) < pole_disc_radius(traj.eq, ev.seed.p)) {
        inDisc = true;
        break;
      }
    }
    if (inDisc) continue;
    ++g.samplesUsed;
    const double aw = std::abs(jet.w), aw1 = std::abs(jet.w1);
    g.supKey = std::max(g.supKey, aw / std::pow(az, a));
    double denom = 0.0;
    switch (traj.eq.kind) {
      case EquationKind::PI: denom = std::pow(az, 0.75) + std::pow(aw, 1.5); break;
      case EquationKind::PII: denom = az + aw * aw; break;
      case EquationKind::PIV: denom = az * az + aw * aw; break;
    }
    g.supDerivative = std::max(g.supDerivative, aw1 / denom);
    Complex f, fp;
    if (traj.eq.kind == EquationKind::PIV) {
      f = jet.w / jet.z;
      fp = (jet.w1 * jet.z - jet.w) / (jet.z * jet.z);
    } else {
      f = jet.w * jet.w / jet.z;
      fp = (2.0 * jet.w * jet.w1 * jet.z - jet.w * jet.w) / (jet.z * jet.z);
    }
    const double fsharp = std::abs(fp) / (1.0 + std::norm(f));
    const double norm = traj.eq.kind == EquationKind::PI
                            ? std::pow(az, 0.25)
                            : (traj.eq.kind == EquationKind::PII ? std::sqrt(az) : az);
    g.supSpherical = std::max(g.supSpherical, fsharp / norm);
  }
  return g;
}

LineStepper::LineStepper(const EquationSpec& eq, double tol) : eq_(eq), tol_(tol) {}

double LineStepper::step(Jet* jet, Complex dir, double h) {
  const int n = state_size(eq_);
  State y = jet_state(eq_, *jet, Aux{});
  const LineFrame frame{jet->z, dir / std::abs(dir)};
  for (int attempt = 0; attempt < 60; ++attempt) {
    const StepResult r = try_step(eq_, frame, 0.0, h, y, n, tol_);
    if (r.err == r.err && r.err <= 1.0) {
      *jet = state_jet(eq_, frame.at(h), r.y);
      return h;
    }
    h *= (r.err == r.err && r.err > 0.0) ? std::max(0.2, 0.9 * std::pow(r.err, -0.2)) : 0.2;
    if (h < 1e-14 * local_scale(jet->z)) throw StepSizeUnderflow("LineStepper underflow");
  }
  throw StepSizeUnderflow("LineStepper: no acceptable step");
}

}  // namespace pnlv
