#pragma once

#include <array>
#include <string>
#include <vector>

#include "pnlv/eqcore.hpp"

namespace pnlv {

/// (alpha, gamma) with the record of applied transforms; beta = -2 gamma^2
/// throughout.
struct ParameterState {
  Complex alpha{0.0};
  Complex gamma{0.0};
  std::vector<std::string> history;

  EquationSpec equation() const { return EquationSpec::p4_gamma(alpha, gamma); }
};

/// The master transform w~ = (w' - 2 gamma - 2zw - w^2)/(2w) with
/// alpha~ = (1 - alpha + 3 gamma)/2, gamma~ = (1 + alpha + gamma)/2.
/// The image jet's derivative is closed-form (w'' eliminated via (IV)).
std::pair<Jet, ParameterState> biv_forward(const Jet& jet, const ParameterState& ps);

/// Pointwise inverse: w = -(w~' + 2 gamma~ + 2z w~ + w~^2)/(2 w~).
std::pair<Jet, ParameterState> biv_inverse(const Jet& jet, const ParameterState& ps);

enum class ShiftDirection { Plus, Minus };

/// (II) ladder B+-: alpha shifts by +-1; the denominator w' +- (w^2 + z/2)
/// must stay away from zero and alpha != -+1/2.
std::pair<Jet, Complex> bii_transform(const Jet& jet, Complex alpha, ShiftDirection dir);

enum class TrivialSymmetry { Rotate, Conjugate };

/// v(z) = -i w(iz) (parameters (-alpha, beta)) or v(z) = conj w(conj z)
/// (parameters conjugated).
std::pair<Jet, EquationSpec> trivial_symmetry(const Jet& jet, const EquationSpec& eq,
                                              TrivialSymmetry which);

// ---- signatures -------------------------------------------------------------

enum class SignatureSymbol { Alpha, GammaPlus, GammaMinus };

/// One Stokes-sector entry: which symbol the W-slope matches, its numeric
/// value, and whether the sector carries the linear expansion w ~ -2z
/// (only that expansion contributes to Delta).
struct SignatureEntry {
  SignatureSymbol symbol = SignatureSymbol::Alpha;
  Complex value{0.0};
  bool linearGrowth = false;  // w ~ -2z on this sector
};

struct SignatureIV {
  std::array<SignatureEntry, 4> a;

  static SignatureIV from_symbols(const std::array<SignatureSymbol, 4>& symbols, Complex alpha,
                                  Complex gamma);
  std::array<SignatureSymbol, 4> symbols() const;
};

/// Dihedral action on signatures: Conjugate swaps a1 and a3 (values
/// conjugated), Rotate sends (a0 a1 a2 a3) to (-a1 -a2 -a3 -a0).
SignatureIV signature_transform(const SignatureIV& sig, TrivialSymmetry which);

/// Canonical combinatorial form, one of the five abstract patterns.
struct CanonicalSignature {
  int form = 0;  // 1..5
  SignatureIV signature;
  int moves = 0;
};
CanonicalSignature signature_canonical_form(const SignatureIV& sig);

/// Delta(w) = sum over sectors of 0 (w ~ +-gamma/z) or -2(-1)^nu (w ~ -2z).
struct DeltaBookkeeping {
  int delta = 0;
  std::array<int, 4> perSector{};
};
DeltaBookkeeping delta_of_signature(const SignatureIV& sig);

// ---- chains ------------------------------------------------------------------

/// Parameter chain w_m -> ... -> w_1 -> w_0 where w_0 solves the +branch
/// Riccati (alpha_0 + gamma_0 = -1) and each step is the inverse transform.
/// Even order 2k reaches alpha + gamma = -2k - 1, odd order 2k-1 reaches
/// gamma = -k.
std::vector<ParameterState> chain_build(int order, Complex requestedAlpha);

/// Pointwise evaluator of the chain solution w_order built from a
/// Weber-Hermite seed: applies `order` inverse transforms to the seed jet.
Jet chain_jet(const Jet& whJet, const std::vector<ParameterState>& chain);

}  // namespace pnlv
