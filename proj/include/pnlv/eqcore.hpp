#pragma once

#include <optional>

#include "pnlv/types.hpp"

namespace pnlv {

enum class EquationKind { PI, PII, PIV };
enum class GammaBranch { Plus, Minus };

const char* kind_name(EquationKind k);

/// Which Painleve equation plus its parameters.  For (IV) the branch of
/// gamma = sqrt(-beta/2) is fixed explicitly and never recomputed.
struct EquationSpec {
  EquationKind kind = EquationKind::PI;
  Complex alpha{0.0};
  Complex beta{0.0};
  Complex gamma{0.0};
  GammaBranch gammaBranch = GammaBranch::Plus;

  static EquationSpec p1();
  static EquationSpec p2(Complex alpha);
  static EquationSpec p4(Complex alpha, Complex beta, GammaBranch branch = GammaBranch::Plus);
  /// (IV) with beta = -2 gamma^2 for a given gamma value.
  static EquationSpec p4_gamma(Complex alpha, Complex gamma);

  bool is(EquationKind k) const { return kind == k; }
};

/// Point data (z, w, w') along a solution; w'' is carried for the
/// desingularized third-order (IV) flow.
struct Jet {
  Complex z{0.0};
  Complex w{0.0};
  Complex w1{0.0};
  std::optional<Complex> w2;

  Jet() = default;
  Jet(Complex z_, Complex w_, Complex w1_) : z(z_), w(w_), w1(w1_) {}
  Jet(Complex z_, Complex w_, Complex w1_, Complex w2_) : z(z_), w(w_), w1(w1_), w2(w2_) {}
};

struct FirstIntegralValue {
  Complex W{0.0};
  Complex calibrationPoint{0.0};
};

// ---- local scales -------------------------------------------------------

inline constexpr double kZeroGuard = 1e-3;  // relative to max(1,|z|)

inline double local_scale(Complex z) { return std::max(1.0, std::abs(z)); }

/// Yosida exponents (a, b) of the re-scaling f_h(zeta) = h^-a f(h + h^-b zeta).
void yosida_exponents(EquationKind k, Rational* a, Rational* b);

/// Natural size of |w| at z away from poles: |z|^a with the Yosida a.
double w_scale(const EquationSpec& eq, Complex z);

/// Radius of the pole-separating disc at p: delta * |p|^-b.
double pole_disc_radius(const EquationSpec& eq, Complex p, double delta = 0.5);

bool piv_w_near_zero(const Jet& jet);

// ---- operations ---------------------------------------------------------

/// w'' given (z, w, w').  Throws DivisionNearZero for (IV) with |w| below
/// the zero guard; use rhs3 on the third-order system there.
Complex rhs(const EquationSpec& eq, const Jet& jet);

/// (IV) only: w''' in polynomial form, valid through zeros of w.
Complex rhs3(const EquationSpec& eq, const Jet& jet);

/// Algebraic first integral W at a jet.
FirstIntegralValue first_integral(const EquationSpec& eq, const Jet& jet);

/// The integrand of W' (w, w^2, or w^2 + 2zw).
Complex first_integral_derivative(const EquationSpec& eq, const Jet& jet);

/// (IV) only: |C| with C = w'^2 + 3w^4 + 8zw^3 + 4(z^2-alpha)w^2 + 2beta - 2ww''.
double constraint_residual(const EquationSpec& eq, const Jet& jet);

/// Residual of the defining second-order equation at a jet carrying w''.
/// For (IV) this is the polynomial-form residual (no division by w).
Complex equation_residual(const EquationSpec& eq, const Jet& jet);

}  // namespace pnlv
