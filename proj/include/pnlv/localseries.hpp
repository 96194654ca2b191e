#pragma once

#include <vector>

#include "pnlv/eqcore.hpp"
#include "pnlv/types.hpp"

namespace pnlv {

/// Alternative initial data at a pole: location, residue sign and the free
/// Laurent coefficient h.  (p, eps, h) determines the solution uniquely.
struct PoleSeed {
  EquationSpec eq;
  Complex p{0.0};
  int eps = +1;  // residue sign; ignored for (I), whose pole is double
  Complex h{0.0};
};

enum class SeriesVariable { AroundPole, AtInfinity };

/// Truncated Laurent (around a pole) or asymptotic (at infinity) expansion.
/// Around a pole the coefficients run upward from the leading exponent in
/// steps of one (in x = z - p); at infinity they run downward in steps of
/// exponentStep (in z).
struct SeriesExpansion {
  SeriesVariable variable = SeriesVariable::AroundPole;
  Complex polePoint{0.0};
  Rational exponentStep{1, 1};
  Rational leadingExponent{0, 1};
  std::vector<Complex> coeffs;
  int truncationOrder = 0;
  /// z-exponent of the leading ODE residual left by the truncation.
  Rational residualOrder{0, 1};

  /// Around a pole the argument is the offset x = z - p, at infinity it is z.
  Complex eval(Complex at) const;
  Complex eval_derivative(Complex at) const;
  Complex eval_second_derivative(Complex at) const;
  Complex coeff_of_exponent(const Rational& e) const;
};

enum class FamilyTag { I, IIa, IIb, IVa, IVb, IVcPlus, IVcMinus };
enum class RootBranch { Plus, Minus };

const char* family_name(FamilyTag t);

/// One of the seven expansion families at infinity; the square-root branch
/// matters for (I) and (II)_b only.
struct AsymptoticFamily {
  FamilyTag tag = FamilyTag::IVb;
  RootBranch squareRootBranch = RootBranch::Plus;
};

enum class SectorPair { Sigma02, Sigma13 };

// ---- operations ----------------------------------------------------------

/// Laurent series of w at the pole, through exponent N (N >= free slot).
SeriesExpansion laurent_w(const PoleSeed& seed, int N);

/// Laurent series of the first integral W at the pole (residue exactly -1).
SeriesExpansion laurent_W(const PoleSeed& seed, int N);

/// Evaluate the local solution at z = p + offset as integrator initial data.
Jet seed_jet(const PoleSeed& seed, Complex offset, int N = 14);

/// Least-squares fit of the Laurent model to jets sampled near one pole.
/// Throws FitFailed when the window is not a clean single pole.
PoleSeed detect_pole(const EquationSpec& eq, const std::vector<Jet>& samples,
                     double fitTol = 1e-6, double* residualOut = nullptr);

/// Asymptotic expansion of w on the family's pole-free sector, N grid steps
/// past the leading term.  IVc with gamma = 0 is rejected (use
/// log_derivative_series).
SeriesExpansion asymptotic_series(const AsymptoticFamily& family, const EquationSpec& eq, int N);

/// Matching expansion of the first integral W.
SeriesExpansion asymptotic_series_W(const AsymptoticFamily& family, const EquationSpec& eq, int N);

/// Expansion of w'/w in the degenerate cases (IV) beta=0 and (II) alpha=0.
/// Sigma02 selects the branch with leading term -2z (IV) / -sqrt(z) (II).
SeriesExpansion log_derivative_series(const EquationSpec& eq, SectorPair sectors, int N = 10);

/// Index of the free Laurent coefficient (4, 3, 2 for (I), (II), (IV)).
int laurent_free_slot(EquationKind kind);

}  // namespace pnlv
