#include "pnlv/polefield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pnlv {

namespace {

Complex pole_offset_estimate(const EquationSpec& eq, const Jet& jet) {
  // x = z - p from the leading Laurent behaviour
  if (eq.kind == EquationKind::PI) return -2.0 * jet.w / jet.w1;
  return -jet.w / jet.w1;
}

// Confirm a pole candidate against the exact accessor: Newton on the
// location, then a Laurent fit on a ring of accessor samples so the free
// coefficient h comes out too.
std::optional<CataloguedPole> confirm_pole(const EquationSpec& eq, const SolutionFn& solution,
                                           Complex pGuess) {
  Complex p = pGuess;
  const double disc = pole_disc_radius(eq, pGuess);
  bool converged = false;
  Complex probe = p + 0.05 * disc;  // evaluation point walking into the pole
  for (int it = 0; it < 20; ++it) {
    Jet j;
    try {
      j = solution(probe);
    } catch (const Error&) {
      return std::nullopt;
    }
    const Complex x = pole_offset_estimate(eq, j);
    const Complex pNew = probe - x;
    if (std::abs(pNew - p) > 2.0 * disc) return std::nullopt;  // not converging here
    const double step = std::abs(pNew - p);
    p = pNew;
    if (step < 1e-12 * local_scale(p)) {
      converged = true;
      break;
    }
    // re-evaluate at a point whose distance to the current estimate shrinks,
    // but never below the accessor's own guard
    const double dist = std::max(0.05 * std::abs(x), 1e-7 * local_scale(p));
    probe = p + std::polar(dist, std::arg(probe - p));
  }
  if (!converged) return std::nullopt;

  std::vector<Jet> samples;
  for (int k = 0; k < 12; ++k) {
    const double radius = (k < 6 ? 0.18 : 0.38) * disc;
    const Complex z = p + std::polar(radius, 2.0 * M_PI * (k % 6) / 6.0 + 0.3);
    try {
      samples.push_back(solution(z));
    } catch (const Error&) {
    }
  }
  if (samples.size() < 8) return std::nullopt;
  try {
    CataloguedPole out;
    out.seed = detect_pole(eq, samples, 1e-6, &out.fitResidual);
    if (std::abs(out.seed.p - p) > 0.5 * disc) return std::nullopt;
    return out;
  } catch (const FitFailed&) {
    return std::nullopt;
  }
}

std::optional<CataloguedZero> confirm_zero(const EquationSpec& eq, const SolutionFn& solution,
                                           Complex zGuess) {
  const Complex gamma = eq.gamma;
  const bool doubleZero = std::abs(gamma) < 1e-8;
  const double disc = pole_disc_radius(eq, zGuess);
  Complex z = zGuess;
  Jet j;
  bool converged = false;
  for (int it = 0; it < 24; ++it) {
    try {
      j = solution(z);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (std::abs(j.w) > w_scale(eq, z)) return std::nullopt;  // drifted to background
    Complex corr;
    if (doubleZero) {
      // the residue-1 pole of w'/2w + z + w/2 sits at the (double) zero
      const Complex v = j.w1 / (2.0 * j.w) + j.z + j.w / 2.0;
      corr = 1.0 / v;
    } else {
      corr = j.w / j.w1;
    }
    if (std::abs(corr) > 3.5 * disc && it > 0) return std::nullopt;
    if (std::abs(corr) > 6.0 * disc) return std::nullopt;
    z -= corr;
    if (std::abs(corr) < 1e-11 * local_scale(z)) {
      converged = true;
      break;
    }
  }
  if (!converged || std::abs(j.w) > 1e-6 * local_scale(z)) return std::nullopt;
  CataloguedZero out;
  out.z = z;
  const double classTol = 1e-3 * local_scale(z);
  if (doubleZero) {
    if (std::abs(j.w1) > classTol) return std::nullopt;
    out.sign = 0;
    out.multiplicity = 2;
  } else {
    const double dPlus = std::abs(j.w1 - 2.0 * gamma);
    const double dMinus = std::abs(j.w1 + 2.0 * gamma);
    if (std::min(dPlus, dMinus) > classTol) return std::nullopt;
    out.sign = dPlus <= dMinus ? +1 : -1;
    out.multiplicity = doubleZero ? 2 : 1;
  }
  return out;
}

struct RayResult {
  std::vector<CataloguedPole> poles;
  std::vector<CataloguedZero> zeros;
  std::vector<std::string> warnings;
};

struct Candidate {
  Complex target;
  Jet jet;
  double quality;  // |x-hat|, smaller is better
};

void push_candidate(std::vector<Candidate>& list, Complex target, const Jet& jet, double quality,
                    double mergeRadius) {
  for (auto& c : list) {
    if (std::abs(c.target - target) < mergeRadius) {
      if (quality < c.quality) {
        c.target = target;
        c.jet = jet;
        c.quality = quality;
      }
      return;
    }
  }
  list.push_back({target, jet, quality});
}

RayResult run_ray(const EquationSpec& eq, const SolutionFn& solution, double theta, double rA,
                  double rB, const SweepStrategy& strategy) {
  RayResult out;
  const Complex dir = std::polar(1.0, theta);
  std::vector<Candidate> poleCands, zeroCands;
  const bool wantZeros = strategy.detectZeros && eq.kind == EquationKind::PIV;
  const Complex gamma = eq.gamma;

  IntegrateOptions opts;
  opts.tol = strategy.tol;
  opts.recordSamples = false;
  opts.hopPoles = false;  // rays stop at pole discs and re-seed beyond them
  // zeros do not slow the stepper the way poles do, so cap the step to keep
  // sample spacing inside the zero trackers' detection radius
  if (wantZeros) opts.maxStep = 2.0 * pole_disc_radius(eq, rB * dir);

  double sPos = rA;
  int stops = 0;
  while (sPos < rB && stops < 4000) {
    // seed on the exact solution, nudging off pole halos
    Jet start;
    bool seeded = false;
    const double nudge = 0.15 * pole_disc_radius(eq, sPos * dir);
    for (int k = 0; k < 10 && !seeded; ++k) {
      const Complex z0 = (sPos + k * nudge) * dir;
      try {
        start = solution(z0);
        if (std::abs(start.w) <= 50.0 * w_scale(eq, z0)) seeded = true;
      } catch (const Error&) {
      }
    }
    if (!seeded) {
      out.warnings.push_back("ray segment not seeded");
      sPos += std::max(10.0 * nudge, 0.05);
      ++stops;
      continue;
    }

    bool stoppedAtPole = false;
    Complex stopPole{0.0};
    auto observer = [&](const TrajectorySample& smp) {
      const Jet& j = smp.jet;
      const double wsc = w_scale(eq, j.z);
      const double disc = pole_disc_radius(eq, j.z);
      if (std::abs(j.w) >= 3.0 * wsc && std::abs(j.w1) > 0.0) {
        const Complex x = pole_offset_estimate(eq, j);
        if (std::abs(x) <= 0.7 * disc) {
          push_candidate(poleCands, j.z - x, j, std::abs(x), 0.5 * disc);
          if (std::abs(x) <= 0.35 * disc) {
            // heading into the disc: stop and restart beyond it
            stoppedAtPole = true;
            stopPole = j.z - x;
            return false;
          }
        }
      }
      if (wantZeros && std::abs(j.w) <= 0.5 * wsc && std::abs(j.w) > 0.0) {
        const Complex vp = (j.w1 + 2.0 * gamma) / (2.0 * j.w) + j.z + j.w / 2.0;
        const Complex vm = (j.w1 - 2.0 * gamma) / (2.0 * j.w) + j.z + j.w / 2.0;
        const Complex v = std::abs(vp) >= std::abs(vm) ? vp : vm;
        if (std::abs(v) > 0.0) {
          // the tracker's pole at the zero dominates its O(1/z) regular
          // part far out, so the radius can exceed the disc scale
          const Complex x = 1.0 / v;
          if (std::abs(x) <= 2.5 * disc)
            push_candidate(zeroCands, j.z - x, j, std::abs(x), 0.5 * disc);
        }
      }
      return true;
    };

    double sReached = sPos;
    try {
      integrate(eq, start, PathSpec::segment(start.z, rB * dir), opts,
                [&](const TrajectorySample& smp) {
                  sReached = std::max(sReached, std::abs(smp.jet.z));
                  return observer(smp);
                });
      if (!stoppedAtPole) break;  // reached the end of the ray
    } catch (const StepSizeUnderflow&) {
      // ran into a pole the candidate logic did not flag; skip past it
    } catch (const Error& e) {
      out.warnings.push_back(std::string("ray aborted: ") + e.what());
      break;
    }
    double sNext;
    if (stoppedAtPole) {
      const double sPole = (stopPole * std::conj(dir)).real();
      sNext = sPole + 1.1 * pole_disc_radius(eq, stopPole);
    } else {
      sNext = sReached + 1.2 * pole_disc_radius(eq, sReached * dir);
    }
    sPos = std::max(sNext, sPos + 0.3 * pole_disc_radius(eq, sPos * dir));
    ++stops;
  }

  for (const auto& c : poleCands) {
    if (auto hit = confirm_pole(eq, solution, c.target)) out.poles.push_back(*hit);
  }
  for (const auto& c : zeroCands) {
    if (auto hit = confirm_zero(eq, solution, c.target)) out.zeros.push_back(*hit);
  }
  return out;
}

int sweep_thread_count(const SweepStrategy& strategy) {
  int n = strategy.threads;
  if (n <= 0) {
    if (const char* env = std::getenv("PNLV_THREADS")) n = std::atoi(env);
  }
#ifdef _OPENMP
  if (n <= 0) n = omp_get_max_threads();
#else
  n = 1;
#endif
  return std::max(1, n);
}

PoleCatalog sweep_impl(const EquationSpec& eq, const SolutionFn& solution,
                       const RegionSpec& region, const SweepStrategy& strategy, bool parallel) {
  if (region.r1 <= region.r0 || region.r0 <= 0.0)
    throw WrongParameters("sweep: region must satisfy 0 < r0 < r1");
  PoleCatalog catalog;
  catalog.eq = eq;
  catalog.region = region;

  Rational ya, yb;
  yosida_exponents(eq.kind, &ya, &yb);

  // shells: the exact accessor re-seeds each ray before shadowing error
  // outgrows the budget; the unstable mode grows like exp(theta) with
  // theta' ~ 2 r^b
  std::vector<std::pair<double, double>> shells;
  double r = region.r0;
  while (r < region.r1) {
    const double rate = 2.5 * std::pow(std::max(1.0, r), yb.value());
    const double dr = std::max(std::log(strategy.shellGain) / rate, 0.05);
    const double rNext = std::min(r + dr, region.r1);
    shells.push_back({r, rNext});
    r = rNext;
  }

  const int nthreads = sweep_thread_count(strategy);
  (void)nthreads;

  for (const auto& [rA, rB] : shells) {
    const double overlap = 2.0 * pole_disc_radius(eq, Complex{rB});
    const double rEnd = rB + overlap;
    const double spacing = strategy.raySpacingFactor * pole_disc_radius(eq, Complex{rEnd});
    const double span = region.theta1 - region.theta0;
    const int rayCount = std::max(4, static_cast<int>(std::ceil(span * rEnd / spacing)));
    std::vector<RayResult> results(static_cast<size_t>(rayCount));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(nthreads) if (parallel)
#endif
    for (int j = 0; j < rayCount; ++j) {
      const double theta = region.theta0 + span * (j + 0.5) / rayCount;
      results[static_cast<size_t>(j)] = run_ray(eq, solution, theta, rA, rEnd, strategy);
    }
    for (auto& rr : results) {
      for (auto& p : rr.poles) catalog.poles.push_back(p);
      for (auto& z : rr.zeros) catalog.zeros.push_back(z);
      for (auto& w : rr.warnings) catalog.warnings.push_back(w);
    }
  }

  // deduplicate within half a disc; deterministic order by (|p|, arg p)
  auto poleLess = [](const CataloguedPole& a, const CataloguedPole& b) {
    const double ma = std::abs(a.seed.p), mb = std::abs(b.seed.p);
    if (ma != mb) return ma < mb;
    return std::arg(a.seed.p) < std::arg(b.seed.p);
  };
  std::sort(catalog.poles.begin(), catalog.poles.end(), poleLess);
  std::vector<CataloguedPole> poles;
  for (const auto& cand : catalog.poles) {
    const double m = std::abs(cand.seed.p);
    if (m < region.r0 || m > region.r1) continue;
    bool dup = false;
    const double tolDist = 0.45 * pole_disc_radius(eq, cand.seed.p);
    for (auto it = poles.rbegin(); it != poles.rend(); ++it) {
      if (m - std::abs(it->seed.p) > tolDist) break;
      if (std::abs(it->seed.p - cand.seed.p) < tolDist) {
        dup = true;
        if (cand.fitResidual < it->fitResidual) *it = cand;
        break;
      }
    }
    if (!dup) poles.push_back(cand);
  }
  catalog.poles.swap(poles);

  auto zeroLess = [](const CataloguedZero& a, const CataloguedZero& b) {
    const double ma = std::abs(a.z), mb = std::abs(b.z);
    if (ma != mb) return ma < mb;
    return std::arg(a.z) < std::arg(b.z);
  };
  std::sort(catalog.zeros.begin(), catalog.zeros.end(), zeroLess);
  std::vector<CataloguedZero> zeros;
  for (const auto& cand : catalog.zeros) {
    const double m = std::abs(cand.z);
    if (m < region.r0 || m > region.r1) continue;
    bool dup = false;
    const double tolDist = 0.45 * pole_disc_radius(eq, cand.z);
    for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
      if (m - std::abs(it->z) > tolDist) break;
      if (std::abs(it->z - cand.z) < tolDist) {
        dup = true;
        break;
      }
    }
    if (!dup) zeros.push_back(cand);
  }
  catalog.zeros.swap(zeros);
  return catalog;
}

}  // namespace

PoleCatalog sweep(const EquationSpec& eq, const SolutionFn& solution, const RegionSpec& region,
                  const SweepStrategy& strategy) {
  return sweep_impl(eq, solution, region, strategy, true);
}

PoleCatalog sweep_serial(const EquationSpec& eq, const SolutionFn& solution,
                         const RegionSpec& region, const SweepStrategy& strategy) {
  return sweep_impl(eq, solution, region, strategy, false);
}

// ---- strings -----------------------------------------------------------------

namespace {
Rational string_tau(EquationKind kind) {
  Rational a, b;
  yosida_exponents(kind, &a, &b);
  return b;  // 1/4, 1/2, 1
}

Complex rotated_pow(Complex p, double thetaStar, double e) {
  // p^e computed on the branch continuous around arg p = thetaStar
  const Complex rotated = p * std::polar(1.0, -thetaStar);
  return std::pow(rotated, Complex{e, 0.0}) * std::polar(1.0, e * thetaStar);
}
}  // namespace

std::vector<StringModel> cluster_strings(const PoleCatalog& catalog,
                                         std::vector<size_t>* unchained) {
  const Rational tau = string_tau(catalog.eq.kind);
  const double tv = tau.value();
  std::vector<size_t> order(catalog.poles.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::abs(catalog.poles[a].seed.p) > std::abs(catalog.poles[b].seed.p);
  });
  std::vector<bool> used(catalog.poles.size(), false);

  // plausible step magnitudes from the period catalogue
  double stepLo = 1e300, stepHi = 0.0;
  for (const auto& entry : period_catalog(catalog.eq.kind)) {
    stepLo = std::min(stepLo, std::abs(entry.omega));
    stepHi = std::max(stepHi, std::abs(entry.omega));
  }
  if (stepHi == 0.0) {
    stepLo = 1.0;
    stepHi = 8.0;
  }

  std::vector<StringModel> strings;
  for (size_t oi : order) {
    if (used[oi]) continue;
    const Complex pOuter = catalog.poles[oi].seed.p;
    const double gate0 = 1.6 * stepHi * std::pow(std::abs(pOuter), -tv);
    // first link: nearest unassigned pole within the gate
    size_t bestJ = catalog.poles.size();
    double bestD = gate0;
    for (size_t j = 0; j < catalog.poles.size(); ++j) {
      if (used[j] || j == oi) continue;
      const double d = std::abs(catalog.poles[j].seed.p - pOuter);
      if (d < bestD && d > 0.3 * stepLo * std::pow(std::abs(pOuter), -tv)) {
        bestD = d;
        bestJ = j;
      }
    }
    if (bestJ == catalog.poles.size()) continue;

    std::vector<size_t> chain = {oi, bestJ};
    used[oi] = used[bestJ] = true;
    // extend inward with two-point prediction
    while (true) {
      const Complex pPrev = catalog.poles[chain[chain.size() - 2]].seed.p;
      const Complex pCur = catalog.poles[chain.back()].seed.p;
      const Complex step = (pCur - pPrev) * std::pow(pPrev / pCur, Complex{tv, 0.0});
      const Complex predicted = pCur + step;
      size_t nextJ = catalog.poles.size();
      double nextD = 0.35 * std::abs(step);
      for (size_t j = 0; j < catalog.poles.size(); ++j) {
        if (used[j]) continue;
        const double d = std::abs(catalog.poles[j].seed.p - predicted);
        if (d < nextD) {
          nextD = d;
          nextJ = j;
        }
      }
      if (nextJ == catalog.poles.size()) break;
      chain.push_back(nextJ);
      used[nextJ] = true;
    }

    if (chain.size() < 6) {
      for (size_t idx : chain) used[idx] = false;  // too short; release
      continue;
    }
    std::reverse(chain.begin(), chain.end());  // ascending |p|

    StringModel s;
    s.memberIndices = chain;
    s.tau = tau;
    s.thetaStar = std::arg(catalog.poles[chain.back()].seed.p);

    // residue pattern
    bool allSame = true, alternating = true;
    for (size_t k = 0; k + 1 < chain.size(); ++k) {
      const int e0 = catalog.poles[chain[k]].seed.eps;
      const int e1 = catalog.poles[chain[k + 1]].seed.eps;
      if (e0 != e1) allSame = false;
      if (e0 == e1) alternating = false;
    }
    if (allSame) {
      s.eps = catalog.poles[chain[0]].seed.eps;
    } else if (alternating) {
      s.alternating = true;
    }

    // omega from the outer half of the consecutive steps
    Complex omegaAcc{0.0};
    int omegaCnt = 0;
    for (size_t k = chain.size() / 2; k + 1 < chain.size(); ++k) {
      const Complex a = catalog.poles[chain[k]].seed.p;
      const Complex b = catalog.poles[chain[k + 1]].seed.p;
      omegaAcc += (b - a) * rotated_pow(a, s.thetaStar, tv);
      ++omegaCnt;
    }
    if (omegaCnt > 0) s.omega = omegaAcc / static_cast<double>(omegaCnt);

    // per-string counting slope: n(r) = coeff r^(1+tau) + const over the
    // outer half (the intercept absorbs the inner cutoff)
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int m = 0;
    for (size_t k = chain.size() / 2; k < chain.size(); ++k) {
      const double x = std::pow(std::abs(catalog.poles[chain[k]].seed.p), 1.0 + tv);
      const double y = static_cast<double>(k + 1);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
    const double var = m * sxx - sx * sx;
    s.countingCoeff = var > 0.0 ? (m * sxy - sx * sy) / var : 0.0;
    strings.push_back(std::move(s));
  }

  if (unchained) {
    unchained->clear();
    for (size_t i = 0; i < used.size(); ++i)
      if (!used[i]) unchained->push_back(i);
  }
  int id = 0;
  (void)id;
  return strings;
}

StringLawCheck check_string_law(const StringModel& s, const PoleCatalog& catalog) {
  StringLawCheck out;
  const double tv = s.tau.value();
  const double e = 1.0 + tv;
  std::vector<Complex> q;
  for (size_t idx : s.memberIndices) {
    const Complex p = catalog.poles[idx].seed.p;
    q.push_back(rotated_pow(p, s.thetaStar, e) / (e * s.omega));
  }
  for (size_t k = q.size() / 2; k + 1 < q.size(); ++k)
    out.maxIndexGapError = std::max(out.maxIndexGapError, std::abs(q[k + 1] - q[k] - 1.0));

  const double st = static_cast<double>(s.tau.num + s.tau.den);  // s + t with tau = s/t
  const double t = static_cast<double>(s.tau.den);
  double a = st * s.thetaStar - t * std::arg(s.omega);
  a = std::fmod(std::fmod(a, 2.0 * M_PI) + 3.0 * M_PI, 2.0 * M_PI) - M_PI;
  out.angleError = std::abs(a);

  out.countingError = std::abs(s.countingCoeff * e * std::abs(s.omega) - 1.0);
  return out;
}

StringSimResult string_recursion_sim(Complex omega, Rational tau, Complex p0, long long K) {
  if (K > 10000000LL) throw WrongParameters("string_recursion_sim: K capped at 1e7");
  const double tv = tau.value();
  auto iterate = [&](long long upto, double countBelow, long long* count) -> Complex {
    Complex p = p0;
    if (count) *count = 0;
    for (long long k = 0; k < upto; ++k) {
      if (count && std::abs(p) <= countBelow) ++(*count);
      if (tau == Rational(1, 1)) {
        p += omega / p;
      } else {
        p += omega * std::pow(p, Complex{-tv, 0.0});
      }
    }
    return p;
  };
  StringSimResult out;
  out.pK = iterate(K, 0.0, nullptr);

  const double eInv = 1.0 + tv;               // 1 + tau = (s+t)/t
  const double e = 1.0 / eInv;                // t/(s+t)
  const Complex base = static_cast<double>(K) * eInv * omega;
  const Complex principal = std::pow(base, Complex{e, 0.0});
  const int roots = static_cast<int>(tau.num + tau.den);
  Complex best = principal;
  for (int k = 0; k < roots; ++k) {
    const Complex cand = principal * std::polar(1.0, 2.0 * M_PI * e * k);
    if (std::abs(out.pK / cand - 1.0) < std::abs(out.pK / best - 1.0)) best = cand;
  }
  out.ratio = out.pK / best;

  long long count = 0;
  iterate(K, std::abs(out.pK), &count);
  const double expected = std::pow(std::abs(out.pK), eInv) / (eInv * std::abs(omega));
  out.countingRatio = static_cast<double>(count) / expected;

  const double st = static_cast<double>(tau.num + tau.den);
  const double t = static_cast<double>(tau.den);
  double a = st * std::arg(out.pK) - t * std::arg(omega);
  a = std::fmod(std::fmod(a, 2.0 * M_PI) + 3.0 * M_PI, 2.0 * M_PI) - M_PI;
  out.argError = std::abs(a);
  return out;
}

CountingFit counting_function(const std::vector<Complex>& points, double rMax, int gridSize) {
  CountingFit out;
  std::vector<double> mags;
  mags.reserve(points.size());
  for (const auto& p : points) mags.push_back(std::abs(p));
  std::sort(mags.begin(), mags.end());
  for (int i = 1; i <= gridSize; ++i) {
    const double r = rMax * i / gridSize;
    out.r.push_back(r);
    out.n.push_back(static_cast<int>(std::upper_bound(mags.begin(), mags.end(), r) -
                                     mags.begin()));
  }
  // log-log fit on [rMax/4, rMax], discarding the inner transient
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t i = 0; i < out.r.size(); ++i) {
    if (out.r[i] < rMax / 4.0 || out.n[i] <= 0) continue;
    const double x = std::log(out.r[i]), y = std::log(static_cast<double>(out.n[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2 && sxx * m - sx * sx > 0.0) {
    out.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    out.amplitude = std::exp((sy - out.exponent * sx) / m);
  }
  return out;
}

PathSpec gamma_contour(const PoleCatalog& catalog, double r, int arcPoints) {
  struct Disc {
    Complex p;
    double rad;
  };
  std::vector<Disc> discs;
  for (const auto& cp : catalog.poles) {
    const double d = pole_disc_radius(catalog.eq, cp.seed.p);
    if (std::abs(std::abs(cp.seed.p) - r) < 1.3 * d) discs.push_back({cp.seed.p, 1.05 * d});
  }
  const int N = std::max(1440, static_cast<int>(std::ceil(2.0 * M_PI * r / 0.02)));
  std::vector<int> blocking(static_cast<size_t>(N), -1);
  bool anyFree = false;
  for (int j = 0; j < N; ++j) {
    const Complex z = std::polar(r, 2.0 * M_PI * j / N);
    for (size_t d = 0; d < discs.size(); ++d) {
      if (std::abs(z - discs[d].p) < discs[d].rad) {
        blocking[static_cast<size_t>(j)] = static_cast<int>(d);
        break;
      }
    }
    if (blocking[static_cast<size_t>(j)] < 0) anyFree = true;
  }
  if (!anyFree) throw ContourHitsPole("gamma_contour: circle fully covered by pole discs");

  // rotate the grid so it starts on a free point
  int j0 = 0;
  while (blocking[static_cast<size_t>(j0)] >= 0) ++j0;

  std::vector<Complex> pts;
  auto at = [&](int j) { return std::polar(r, 2.0 * M_PI * ((j0 + j) % N) / N); };
  auto blk = [&](int j) { return blocking[static_cast<size_t>((j0 + j) % N)]; };
  for (int j = 0; j < N; ++j) {
    if (blk(j) < 0) {
      pts.push_back(at(j));
      continue;
    }
    // blocked run [j, jb)
    const int d = blk(j);
    int jb = j;
    while (jb < N && blk(jb) >= 0) ++jb;
    const Complex A = pts.empty() ? at(j - 1) : pts.back();
    const Complex B = at(jb % N);
    const Disc& disc = discs[static_cast<size_t>(d)];
    // walk the disc boundary from A to B on the side prescribed by |p| vs r
    const double phiA = std::arg(A - disc.p);
    double phiB = std::arg(B - disc.p);
    const bool outside = std::abs(disc.p) <= r;
    // candidate arcs: increasing or decreasing phi
    auto arcOk = [&](double dphi) {
      const Complex mid = disc.p + std::polar(disc.rad, phiA + 0.5 * dphi);
      return outside ? std::abs(mid) >= r : std::abs(mid) <= r;
    };
    double dphi = phiB - phiA;
    while (dphi <= -M_PI) dphi += 2.0 * M_PI;
    while (dphi > M_PI) dphi -= 2.0 * M_PI;
    if (!arcOk(dphi)) dphi += dphi >= 0.0 ? -2.0 * M_PI : 2.0 * M_PI;
    for (int k = 1; k < arcPoints; ++k)
      pts.push_back(disc.p + std::polar(disc.rad, phiA + dphi * k / arcPoints));
    j = jb - 1;
  }
  pts.push_back(pts.front());  // close the loop
  // drop consecutive duplicates
  std::vector<Complex> clean;
  for (const auto& p : pts)
    if (clean.empty() || std::abs(p - clean.back()) > 1e-12 * r) clean.push_back(p);
  if (std::abs(clean.front() - clean.back()) > 1e-12 * r) clean.push_back(clean.front());
  return PathSpec::polyline(clean);
}

ResidueLedgerResult residue_ledger(const PoleCatalog& catalog, double r,
                                   const SolutionFn* solution, double tol) {
  ResidueLedgerResult out;
  out.r = r;
  for (const auto& p : catalog.poles) {
    if (std::abs(p.seed.p) > r) continue;
    if (p.seed.eps > 0) ++out.nPlus;
    else ++out.nMinus;
  }
  out.deltaCount = out.nPlus - out.nMinus;
  if (!solution) return out;

  const PathSpec contour = gamma_contour(catalog, r);
  const double L = contour.length();
  // integrate the contour in arcs short enough that shadowing error stays
  // inside the budget, re-seeding each arc from the exact accessor; the
  // W term per arc is anchored by the algebraic first integral at the seed
  Rational ya, yb;
  yosida_exponents(catalog.eq.kind, &ya, &yb);
  const double rate = 2.0 * std::pow(std::max(1.0, r), 2.0 * yb.value());
  const double maxArc = std::max(0.05, std::log(1e10) / rate);
  const int pieces = std::max(1, static_cast<int>(std::ceil(L / maxArc)));

  IntegrateOptions opts;
  opts.tol = tol;
  opts.recordSamples = false;
  opts.hopPoles = false;

  Complex ointW{0.0}, ointw{0.0};
  for (int k = 0; k < pieces; ++k) {
    const double sA = L * k / pieces;
    const double sB = L * (k + 1) / pieces;
    // sub-polyline of the contour between the two parameters
    std::vector<Complex> pts;
    pts.push_back(contour.at(sA));
    const auto breaks = contour.breakpoints();
    for (double b : breaks)
      if (b > sA && b < sB) pts.push_back(contour.at(b));
    pts.push_back(contour.at(sB));
    std::vector<Complex> clean;
    for (const auto& p : pts)
      if (clean.empty() || std::abs(p - clean.back()) > 1e-13 * (1.0 + r))
        clean.push_back(p);
    if (clean.size() < 2) continue;
    const PathSpec piece = PathSpec::polyline(clean);

    Jet start;
    try {
      start = (*solution)(piece.start());
    } catch (const Error& e) {
      throw ContourHitsPole(std::string("residue_ledger: cannot seed the contour: ") + e.what());
    }
    TrajectorySample first, last;
    bool any = false;
    try {
      integrate(catalog.eq, start, piece, opts, [&](const TrajectorySample& s) {
        if (!any) {
          first = s;
          any = true;
        }
        last = s;
        return true;
      });
    } catch (const StepSizeUnderflow&) {
      throw ContourHitsPole("residue_ledger: contour ran into a pole");
    }
    Complex Wanchor;
    try {
      Wanchor = first_integral(catalog.eq, start).W;
    } catch (const DivisionNearZero&) {
      throw ContourHitsPole(
          "residue_ledger: W anchor undefined (w too small at an arc seed); "
          "use the count-based ledger for this field");
    }
    ointw += last.wInt - first.wInt;
    ointW += (last.WInt - first.WInt) + Wanchor * (last.jet.z - first.jet.z);
  }
  const Complex twoPiI = 2.0 * M_PI * kI;
  out.contourDelta = ointw / twoPiI;
  out.contourCount = -ointW / twoPiI;
  out.hasContour = true;
  return out;
}

SignatureIV infer_signature(const SolutionFn& solution, const EquationSpec& eq, double rProbe,
                            const PoleCatalog* catalog) {
  if (eq.kind != EquationKind::PIV)
    throw WrongParameters("infer_signature: (IV) only");
  SignatureIV sig;
  for (int nu = 0; nu < 4; ++nu) {
    const double theta = nu * M_PI / 2.0;
    std::vector<Complex> zs, Ws;
    std::vector<double> wOverZ;
    for (int i = 0; i < 14; ++i) {
      const Complex z = std::polar(rProbe * (0.5 + 0.5 * i / 13.0), theta);
      if (catalog) {
        for (const auto& p : catalog->poles) {
          if (std::abs(z - p.seed.p) < pole_disc_radius(eq, p.seed.p))
            throw SectorNotPoleFree("infer_signature: midline sample inside a pole disc");
        }
      }
      Jet jet;
      try {
        jet = solution(z);
      } catch (const Error&) {
        continue;
      }
      if (std::abs(jet.w) < 1e-8 * local_scale(z)) continue;
      const Complex w = jet.w, w1 = jet.w1, zz = z;
      const Complex ww = w * w;
      const Complex W = (ww * ww + 4.0 * zz * w * ww + 4.0 * (zz * zz - eq.alpha) * ww -
                         2.0 * eq.beta - w1 * w1) /
                        (4.0 * w);
      zs.push_back(z);
      Ws.push_back(W);
      wOverZ.push_back(std::abs(w) / std::abs(z));
    }
    if (zs.size() < 6) throw SectorNotPoleFree("infer_signature: too few usable midline samples");

    // least squares W/(2z) = a + b / z^2
    Complex s11{static_cast<double>(zs.size())}, s12{0.0}, s22{0.0}, b1{0.0}, b2{0.0};
    for (size_t i = 0; i < zs.size(); ++i) {
      const Complex x = 1.0 / (zs[i] * zs[i]);
      const Complex y = Ws[i] / (2.0 * zs[i]);
      s12 += x;
      s22 += x * x;
      b1 += y;
      b2 += x * y;
    }
    const Complex det = s11 * s22 - s12 * s12;
    const Complex a = (b1 * s22 - s12 * b2) / det;

    std::sort(wOverZ.begin(), wOverZ.end());
    const bool linear = wOverZ[wOverZ.size() / 2] > 1.0;

    SignatureEntry entry;
    entry.linearGrowth = linear;
    const double scale = 1.0 + std::abs(eq.alpha) + std::abs(eq.gamma);
    if (linear) {
      if (std::abs(a - eq.alpha) > 0.2 * scale)
        throw AmbiguousAssignment("infer_signature: linear sector but W/2z far from alpha");
      entry.symbol = SignatureSymbol::Alpha;
      entry.value = a;
    } else if (std::abs(eq.gamma) < 1e-9) {
      entry.symbol = SignatureSymbol::GammaPlus;
      entry.value = a;
    } else {
      const double dp = std::abs(a - eq.gamma), dm = std::abs(a + eq.gamma);
      if (std::min(dp, dm) > 0.2 * scale)
        throw AmbiguousAssignment("infer_signature: W/2z near neither +gamma nor -gamma");
      if (std::abs(dp - dm) < 0.05 * scale)
        throw AmbiguousAssignment("infer_signature: +gamma and -gamma indistinguishable");
      entry.symbol = dp < dm ? SignatureSymbol::GammaPlus : SignatureSymbol::GammaMinus;
      entry.value = a;
    }
    sig.a[static_cast<size_t>(nu)] = entry;
  }
  return sig;
}

DeficiencyEstimate zero_deficiency(const PoleCatalog& catalog, double rMax, int gridSize) {
  DeficiencyEstimate out;
  for (int i = 1; i <= gridSize; ++i) {
    const double r = rMax * i / gridSize;
    int npole = 0, nzero = 0;
    for (const auto& p : catalog.poles)
      if (std::abs(p.seed.p) <= r) ++npole;
    for (const auto& z : catalog.zeros)
      if (std::abs(z.z) <= r) nzero += z.multiplicity;
    out.r.push_back(r);
    out.ratio.push_back(npole > 0 ? static_cast<double>(nzero) / npole : 0.0);
  }
  out.estimate = out.ratio.empty() ? 0.0 : 1.0 - out.ratio.back();
  return out;
}

double first_order_residual(const std::vector<Jet>& jets, Complex alpha) {
  double worst = 0.0;
  for (const auto& j : jets) {
    const Complex w = j.w, w1 = j.w1, z = j.z;
    const Complex res = w1 * w1 + 4.0 * w1 - w * w * w * w - 4.0 * z * w * w * w -
                        4.0 * (z * z - alpha) * w * w + 4.0;
    const double scale = 1.0 + std::norm(w1) + std::abs(w * w * w * w) +
                         4.0 * std::abs(z * w * w * w) + 4.0 * std::abs((z * z - alpha) * w * w);
    worst = std::max(worst, std::abs(res) / scale);
  }
  return worst;
}

SolutionFn make_accessor(const LinearizedSolution& sol) {
  auto shared = std::make_shared<LinearizedSolution>(sol);
  return [shared](Complex z) { return shared->jet(z); };
}

SolutionFn make_chain_accessor(const LinearizedSolution& wh,
                               const std::vector<ParameterState>& chain) {
  auto shared = std::make_shared<LinearizedSolution>(wh);
  auto sharedChain = std::make_shared<std::vector<ParameterState>>(chain);
  return [shared, sharedChain](Complex z) {
    try {
      return chain_jet(shared->jet(z), *sharedChain);
    } catch (const Error& e) {
      throw EvaluationFailed(std::string("chain accessor: ") + e.what());
    }
  };
}

SolutionFn make_rotated_accessor(const SolutionFn& inner) {
  return [inner](Complex z) {
    const Jet j = inner(kI * z);
    Jet out;
    out.z = z;
    out.w = -kI * j.w;
    out.w1 = j.w1;
    if (j.w2) out.w2 = kI * (*j.w2);
    return out;
  };
}

}  // namespace pnlv
