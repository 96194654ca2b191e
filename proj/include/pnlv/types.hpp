#pragma once

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pnlv {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Reduced fraction with a positive denominator; used for exponent grids
/// and string exponents where half-integers matter.
struct Rational {
  long long num = 0;
  long long den = 1;

  constexpr Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }
  Rational(long long n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
  Rational operator-(const Rational& o) const { return {num * o.den - o.num * den, den * o.den}; }
  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define PNLV_ERROR_TYPE(Name)                         \
  struct Name : Error {                               \
    using Error::Error;                               \
    Name() : Error(#Name) {}                          \
  }

PNLV_ERROR_TYPE(DivisionNearZero);
PNLV_ERROR_TYPE(OffsetOutsideValidity);
PNLV_ERROR_TYPE(FitFailed);
PNLV_ERROR_TYPE(UnsupportedFamily);
PNLV_ERROR_TYPE(WrongParameters);
PNLV_ERROR_TYPE(StepSizeUnderflow);
PNLV_ERROR_TYPE(PoleFitFailed);
PNLV_ERROR_TYPE(CalibrationInvalid);
PNLV_ERROR_TYPE(EvaluationFailed);
PNLV_ERROR_TYPE(NoAdmissibleSamples);
PNLV_ERROR_TYPE(DegenerateU);
PNLV_ERROR_TYPE(NoKnownRationalSolution);
PNLV_ERROR_TYPE(BracketLost);
PNLV_ERROR_TYPE(AtZeroOfW);
PNLV_ERROR_TYPE(AtZeroOfWTilde);
PNLV_ERROR_TYPE(DenominatorVanishes);
PNLV_ERROR_TYPE(ParameterExcluded);
PNLV_ERROR_TYPE(SectorNotPoleFree);
PNLV_ERROR_TYPE(AmbiguousAssignment);
PNLV_ERROR_TYPE(ZeroPolishFailed);
PNLV_ERROR_TYPE(ContourHitsPole);

#undef PNLV_ERROR_TYPE

}  // namespace pnlv
