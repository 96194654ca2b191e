#pragma once

#include <utility>
#include <vector>

#include "pnlv/eqcore.hpp"
#include "pnlv/localseries.hpp"

namespace pnlv {

/// Solution of a Riccati-linearizable Painleve equation, represented by the
/// entire function u of the associated linear ODE.  Evaluation walks from 0
/// to z by Taylor re-centering with (u, u') renormalized against overflow;
/// w = -u'/u on the plus branch, +u'/u on the minus branch.
class LinearizedSolution {
 public:
  enum class Kind { WeberHermite, Airy };

  /// w' = 2 gamma +- (2zw + w^2); solves (IV) with alpha = -+(1+gamma),
  /// beta = -2 gamma^2.
  static LinearizedSolution weber_hermite(Complex gamma, RootBranch branch, Complex u0,
                                          Complex u1);
  /// w' = +-(z/2 + w^2); solves (II) with alpha = +-1/2.
  static LinearizedSolution airy(RootBranch branch, Complex u0, Complex u1);

  const EquationSpec& equation() const { return eq_; }
  Kind kind() const { return kind_; }
  RootBranch branch() const { return branch_; }

  /// (u, u') at z, both scaled by a common (unspecified) normalization.
  std::pair<Complex, Complex> u_pair(Complex z) const;

  /// Full jet of w at z; throws EvaluationFailed within relTol of a zero
  /// of u (a pole of w).
  Jet jet(Complex z, double uGuard = 1e-13) const;

 private:
  LinearizedSolution(Kind kind, Complex gamma, RootBranch branch, Complex u0, Complex u1);

  Kind kind_;
  Complex gamma_{0.0};
  RootBranch branch_;
  Complex u0_, u1_;
  EquationSpec eq_;
};

// ---- exact rational solutions ---------------------------------------------

/// Reduced fraction over long long, for exact residual checks.
struct Fraction {
  long long num = 0;
  long long den = 1;
  Fraction() = default;
  Fraction(long long n, long long d = 1);
  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  Fraction operator*(const Fraction& o) const;
  bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
  bool is_zero() const { return num == 0; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Polynomial with exact fraction coefficients, ascending powers.
struct FPoly {
  std::vector<Fraction> c;
  static FPoly from(std::initializer_list<Fraction> coeffs) { return FPoly{coeffs}; }
  bool is_zero() const;
  FPoly operator+(const FPoly& o) const;
  FPoly operator-(const FPoly& o) const;
  FPoly operator*(const FPoly& o) const;
  FPoly derivative() const;
  Complex eval(Complex z) const;
};

/// w = P/Q with exact coefficients, a solution of (IV) with the stored
/// exact parameters.
struct RationalSolution {
  FPoly P, Q;
  Fraction alpha, beta;
  Complex eval(Complex z) const;
  Jet jet(Complex z) const;
};

/// The catalogued rational solutions of (IV) at these parameters.
/// Throws NoKnownRationalSolution if (alpha, beta) is not in the catalogue.
std::vector<RationalSolution> rational_solutions(const EquationSpec& eq);

/// Exact residual check: substituting P/Q into (IV) with the solution's own
/// exact parameters leaves the zero polynomial.
bool rational_residual_is_zero(const RationalSolution& sol);

// ---- Hastings-McLeod -------------------------------------------------------

struct HastingsMcLeodResult {
  Jet jetAtZero;
  double kLow = 0.0;   // bracketing interval for the Airy multiplier
  double kHigh = 0.0;
};

/// Shooting bracket for the solution of (II) alpha=0 that decreases on the
/// real line; matched to k Ai(x) at x = +L.
HastingsMcLeodResult hastings_mcleod_shoot(double tolerance, double L = 8.0);

/// Airy function Ai and Ai' on the real axis (series for small x, the
/// exponential asymptotic expansion beyond).
double airy_ai(double x);
double airy_ai_prime(double x);

}  // namespace pnlv
