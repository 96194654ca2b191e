#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pnlv/backlund.hpp"
#include "pnlv/eqcore.hpp"
#include "pnlv/integrate.hpp"
#include "pnlv/rescale.hpp"
#include "pnlv/special.hpp"

namespace pnlv {

struct RegionSpec {
  double r0 = 5.0;
  double r1 = 30.0;
  double theta0 = 0.0;
  double theta1 = 2.0 * 3.14159265358979323846;
};

struct SweepStrategy {
  double tol = 1e-9;
  /// Arc spacing of adjacent rays as a fraction of the outer disc scale.
  double raySpacingFactor = 0.9;
  /// Shadowing budget before a ray is re-seeded from the exact accessor;
  /// shells have thickness log(gain) / (2 r^(2b)).
  double shellGain = 1e12;
  bool detectZeros = true;  // (IV) only
  int threads = 0;          // 0: all available (capped by PNLV_THREADS)
};

struct CataloguedPole {
  PoleSeed seed;
  double fitResidual = 0.0;
  int stringId = -1;
};

struct CataloguedZero {
  Complex z{0.0};
  int sign = 0;          // w' ~ +2 gamma (+1) or -2 gamma (-1); 0 for gamma=0
  int multiplicity = 1;  // 2 at the collapsed double zeros (gamma = 0)
};

struct PoleCatalog {
  EquationSpec eq;
  RegionSpec region;
  std::vector<CataloguedPole> poles;
  std::vector<CataloguedZero> zeros;
  std::vector<std::string> warnings;
};

/// Region sweep along a fan of rays, re-seeded from the solution accessor in
/// radial shells; pole events are Laurent-confirmed and deduplicated.
/// OpenMP-parallel over rays when built with OpenMP.
PoleCatalog sweep(const EquationSpec& eq, const SolutionFn& solution, const RegionSpec& region,
                  const SweepStrategy& strategy = {});

/// Serial reference implementation; byte-identical output to sweep().
PoleCatalog sweep_serial(const EquationSpec& eq, const SolutionFn& solution,
                         const RegionSpec& region, const SweepStrategy& strategy = {});

// ---- strings ----------------------------------------------------------------

struct StringModel {
  std::vector<size_t> memberIndices;  // into catalog.poles, ordered by |p|
  Complex omega{0.0};
  Rational tau{1, 1};
  int eps = 0;              // common residue sign; 0 if alternating
  bool alternating = false;
  double thetaStar = 0.0;   // limit direction
  double countingCoeff = 0.0;  // n(r) / r^(1+tau) at the outer edge
};

/// Greedy nearest-successor chaining with steps predicted from the period
/// catalogue; unchained poles are reported in catalog-order warnings.
std::vector<StringModel> cluster_strings(const PoleCatalog& catalog,
                                         std::vector<size_t>* unchained = nullptr);

struct StringLawCheck {
  double maxIndexGapError = 0.0;  // |q_{k+1} - q_k - 1| with q = p^(1+tau)/((1+tau) omega)
  double angleError = 0.0;        // |(s+t) theta* - t arg omega| mod 2 pi
  double countingError = 0.0;     // |coeff (1+tau) |omega| - 1|
};
StringLawCheck check_string_law(const StringModel& s, const PoleCatalog& catalog);

struct StringSimResult {
  Complex pK{0.0};
  Complex ratio{0.0};         // p_K / (K (1+tau) omega)^(t/(s+t)), best root
  double countingRatio = 0.0; // n(|p_K|) vs r^(1+tau)/((1+tau)|omega|)
  double argError = 0.0;
};
/// Exact iteration of p -> p + omega p^(-tau).
StringSimResult string_recursion_sim(Complex omega, Rational tau, Complex p0, long long K);

// ---- counting / residues ------------------------------------------------------

struct CountingFit {
  std::vector<double> r;
  std::vector<int> n;
  double exponent = 0.0;  // log-log fit over [rMax/4, rMax]
  double amplitude = 0.0; // n(r)/r^exponent from the fit
};
CountingFit counting_function(const std::vector<Complex>& points, double rMax, int gridSize = 40);

struct ResidueLedgerResult {
  double r = 0.0;
  int nPlus = 0;
  int nMinus = 0;
  int deltaCount = 0;          // n+ - n-
  Complex contourDelta{0.0};   // (1/2 pi i) oint w dz, ~ Delta r^2/(2 pi)
  Complex contourCount{0.0};   // -(1/2 pi i) oint W dz, ~ n(r, w)
  bool hasContour = false;
};
/// Count-based ledger, plus the contour integrals along Gamma_r when an
/// accessor is supplied.  Throws ContourHitsPole if the detoured contour
/// still runs into a pole.
ResidueLedgerResult residue_ledger(const PoleCatalog& catalog, double r,
                                   const SolutionFn* solution = nullptr, double tol = 1e-9);

/// The detoured circle |z| = r avoiding catalogued pole discs.
PathSpec gamma_contour(const PoleCatalog& catalog, double r, int arcPoints = 32);

// ---- signature / zeros ---------------------------------------------------------

/// Fit of W/(2z) on the four Stokes sector midlines at radii in
/// [rProbe/2, rProbe]; symbols assigned to the nearest of {alpha, +-gamma}.
SignatureIV infer_signature(const SolutionFn& solution, const EquationSpec& eq, double rProbe,
                            const PoleCatalog* catalog = nullptr);

struct DeficiencyEstimate {
  std::vector<double> r;
  std::vector<double> ratio;  // n(r, 1/w) / n(r, w), zeros with multiplicity
  double estimate = 0.0;      // 1 - ratio at rMax
};
DeficiencyEstimate zero_deficiency(const PoleCatalog& catalog, double rMax, int gridSize = 8);

/// Max relative residual of the printed order-1 first-order equation
/// w'^2 + 4w' - w^4 - 4zw^3 - 4(z^2 - alpha)w^2 + 4 = 0 over the jets.
double first_order_residual(const std::vector<Jet>& jets, Complex alpha);

// ---- accessors ------------------------------------------------------------------

SolutionFn make_accessor(const LinearizedSolution& sol);
SolutionFn make_chain_accessor(const LinearizedSolution& wh,
                               const std::vector<ParameterState>& chain);
/// v(z) = -i w(iz): same field rotated, parameters (-alpha, beta).
SolutionFn make_rotated_accessor(const SolutionFn& inner);

}  // namespace pnlv
