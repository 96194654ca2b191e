#include "pnlv/eqcore.hpp"

#include <cmath>

namespace pnlv {

const char* kind_name(EquationKind k) {
  switch (k) {
    case EquationKind::PI: return "i";
    case EquationKind::PII: return "ii";
    case EquationKind::PIV: return "iv";
  }
  return "?";
}

EquationSpec EquationSpec::p1() { return EquationSpec{EquationKind::PI, 0.0, 0.0, 0.0, GammaBranch::Plus}; }

EquationSpec EquationSpec::p2(Complex alpha) {
  return EquationSpec{EquationKind::PII, alpha, 0.0, 0.0, GammaBranch::Plus};
}

EquationSpec EquationSpec::p4(Complex alpha, Complex beta, GammaBranch branch) {
  EquationSpec eq;
  eq.kind = EquationKind::PIV;
  eq.alpha = alpha;
  eq.beta = beta;
  eq.gammaBranch = branch;
  const Complex g = std::sqrt(-beta / 2.0);
  eq.gamma = (branch == GammaBranch::Plus) ? g : -g;
  return eq;
}

EquationSpec EquationSpec::p4_gamma(Complex alpha, Complex gamma) {
  EquationSpec eq;
  eq.kind = EquationKind::PIV;
  eq.alpha = alpha;
  eq.gamma = gamma;
  eq.beta = -2.0 * gamma * gamma;
  // record which square root of -beta/2 the caller picked
  const Complex g = std::sqrt(-eq.beta / 2.0);
  eq.gammaBranch = (std::abs(g - gamma) <= std::abs(g + gamma)) ? GammaBranch::Plus : GammaBranch::Minus;
  return eq;
}

void yosida_exponents(EquationKind k, Rational* a, Rational* b) {
  switch (k) {
    case EquationKind::PI: *a = Rational(1, 2); *b = Rational(1, 4); return;
    case EquationKind::PII: *a = Rational(1, 2); *b = Rational(1, 2); return;
    case EquationKind::PIV: *a = Rational(1, 1); *b = Rational(1, 1); return;
  }
}

double w_scale(const EquationSpec& eq, Complex z) {
  Rational a, b;
  yosida_exponents(eq.kind, &a, &b);
  return std::pow(local_scale(z), a.value());
}

double pole_disc_radius(const EquationSpec& eq, Complex p, double delta) {
  Rational a, b;
  yosida_exponents(eq.kind, &a, &b);
  return delta * std::pow(local_scale(p), -b.value());
}

bool piv_w_near_zero(const Jet& jet) {
  return std::abs(jet.w) < kZeroGuard * local_scale(jet.z);
}

Complex rhs(const EquationSpec& eq, const Jet& jet) {
  const Complex z = jet.z, w = jet.w, w1 = jet.w1;
  switch (eq.kind) {
    case EquationKind::PI:
      return z + 6.0 * w * w;
    case EquationKind::PII:
      return eq.alpha + z * w + 2.0 * w * w * w;
    case EquationKind::PIV: {
      if (piv_w_near_zero(jet)) throw DivisionNearZero("rhs: (IV) jet too close to w=0");
      const Complex w2 = w * w;
      return (w1 * w1 + 3.0 * w2 * w2 + 8.0 * z * w * w2 + 4.0 * (z * z - eq.alpha) * w2 +
              2.0 * eq.beta) /
             (2.0 * w);
    }
  }
  return {};
}

Complex rhs3(const EquationSpec& eq, const Jet& jet) {
  if (eq.kind != EquationKind::PIV) throw WrongParameters("rhs3 is (IV)-only");
  const Complex z = jet.z, w = jet.w, w1 = jet.w1;
  return 6.0 * w * w * w1 + 4.0 * w * w + 12.0 * z * w * w1 + 4.0 * z * w +
         4.0 * (z * z - eq.alpha) * w1;
}

FirstIntegralValue first_integral(const EquationSpec& eq, const Jet& jet) {
  const Complex z = jet.z, w = jet.w, w1 = jet.w1;
  FirstIntegralValue out;
  out.calibrationPoint = z;
  switch (eq.kind) {
    case EquationKind::PI:
      out.W = (4.0 * w * w * w + 2.0 * z * w - w1 * w1) / 2.0;
      break;
    case EquationKind::PII:
      out.W = w * w * w * w + z * w * w + 2.0 * eq.alpha * w - w1 * w1;
      break;
    case EquationKind::PIV: {
      if (piv_w_near_zero(jet))
        throw DivisionNearZero("first_integral: (IV) jet too close to w=0");
      const Complex w2 = w * w;
      out.W = (w2 * w2 + 4.0 * z * w * w2 + 4.0 * (z * z - eq.alpha) * w2 - 2.0 * eq.beta -
               w1 * w1) /
              (4.0 * w);
      break;
    }
  }
  return out;
}

Complex first_integral_derivative(const EquationSpec& eq, const Jet& jet) {
  switch (eq.kind) {
    case EquationKind::PI: return jet.w;
    case EquationKind::PII: return jet.w * jet.w;
    case EquationKind::PIV: return jet.w * jet.w + 2.0 * jet.z * jet.w;
  }
  return {};
}

double constraint_residual(const EquationSpec& eq, const Jet& jet) {
  if (eq.kind != EquationKind::PIV) throw WrongParameters("constraint_residual is (IV)-only");
  if (!jet.w2) throw WrongParameters("constraint_residual: jet carries no w''");
  return std::abs(equation_residual(eq, jet));
}

Complex equation_residual(const EquationSpec& eq, const Jet& jet) {
  if (!jet.w2) throw WrongParameters("equation_residual: jet carries no w''");
  const Complex z = jet.z, w = jet.w, w1 = jet.w1, w2v = *jet.w2;
  switch (eq.kind) {
    case EquationKind::PI:
      return w2v - (z + 6.0 * w * w);
    case EquationKind::PII:
      return w2v - (eq.alpha + z * w + 2.0 * w * w * w);
    case EquationKind::PIV: {
      const Complex ww = w * w;
      return 2.0 * w * w2v -
             (w1 * w1 + 3.0 * ww * ww + 8.0 * z * w * ww + 4.0 * (z * z - eq.alpha) * ww +
              2.0 * eq.beta);
    }
  }
  return {};
}

}  // namespace pnlv
