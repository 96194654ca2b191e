#include "pnlv/backlund.hpp"

#include <cmath>

namespace pnlv {

namespace {
Complex symbol_value(SignatureSymbol s, Complex alpha, Complex gamma) {
  switch (s) {
    case SignatureSymbol::Alpha: return alpha;
    case SignatureSymbol::GammaPlus: return gamma;
    case SignatureSymbol::GammaMinus: return -gamma;
  }
  return {};
}

// Pointwise transforms are exact algebra; they only truly degenerate AT a
// zero of w.  The floor is far below the integrator's zero guard so chained
// transforms stay usable near zeros of intermediate solutions.
constexpr double kTransformFloor = 1e-10;

// w'' from the (IV) polynomial relation without the integrator's zero guard.
Complex piv_w2_unguarded(const EquationSpec& eq, const Jet& jet) {
  if (jet.w2) return *jet.w2;
  const Complex z = jet.z, w = jet.w, w1 = jet.w1;
  const Complex ww = w * w;
  return (w1 * w1 + 3.0 * ww * ww + 8.0 * z * w * ww + 4.0 * (z * z - eq.alpha) * ww +
          2.0 * eq.beta) /
         (2.0 * w);
}
}  // namespace

std::pair<Jet, ParameterState> biv_forward(const Jet& jet, const ParameterState& ps) {
  if (std::abs(jet.w) < kTransformFloor * local_scale(jet.z))
    throw AtZeroOfW("biv_forward: jet too close to a zero of w");
  const EquationSpec eq = ps.equation();
  const Complex z = jet.z, w = jet.w, w1 = jet.w1;
  const Complex w2 = piv_w2_unguarded(eq, jet);

  Jet out;
  out.z = z;
  out.w = (w1 - 2.0 * ps.gamma - 2.0 * z * w - w * w) / (2.0 * w);
  out.w1 = (w2 - 2.0 * w - 2.0 * z * w1 - 2.0 * w * w1 - 2.0 * out.w * w1) / (2.0 * w);

  ParameterState nps;
  nps.alpha = (1.0 - ps.alpha + 3.0 * ps.gamma) / 2.0;
  nps.gamma = (1.0 + ps.alpha + ps.gamma) / 2.0;
  nps.history = ps.history;
  nps.history.push_back("biv+");
  if (std::abs(out.w) >= kTransformFloor * local_scale(z))
    out.w2 = piv_w2_unguarded(nps.equation(), out);
  return {out, nps};
}

std::pair<Jet, ParameterState> biv_inverse(const Jet& jet, const ParameterState& ps) {
  if (std::abs(jet.w) < kTransformFloor * local_scale(jet.z))
    throw AtZeroOfWTilde("biv_inverse: jet too close to a zero of w~");
  const EquationSpec eq = ps.equation();
  const Complex z = jet.z, wt = jet.w, wt1 = jet.w1;
  const Complex wt2 = piv_w2_unguarded(eq, jet);

  const Complex N = wt1 + 2.0 * ps.gamma + 2.0 * z * wt + wt * wt;
  const Complex N1 = wt2 + 2.0 * wt + 2.0 * z * wt1 + 2.0 * wt * wt1;

  Jet out;
  out.z = z;
  out.w = -N / (2.0 * wt);
  out.w1 = -N1 / (2.0 * wt) - out.w * wt1 / wt;

  ParameterState nps;
  nps.alpha = (-1.0 - ps.alpha + 3.0 * ps.gamma) / 2.0;
  nps.gamma = (-1.0 + ps.alpha + ps.gamma) / 2.0;
  nps.history = ps.history;
  nps.history.push_back("biv-");
  if (std::abs(out.w) >= kTransformFloor * local_scale(z))
    out.w2 = piv_w2_unguarded(nps.equation(), out);
  return {out, nps};
}

std::pair<Jet, Complex> bii_transform(const Jet& jet, Complex alpha, ShiftDirection dir) {
  const Complex z = jet.z, w = jet.w, w1 = jet.w1;
  if (dir == ShiftDirection::Plus) {
    if (std::abs(alpha + 0.5) < 1e-12)
      throw ParameterExcluded("bii B+: alpha = -1/2 excluded");
    const Complex D = w1 + w * w + z / 2.0;
    if (std::abs(D) < 1e-8 * local_scale(z))
      throw DenominatorVanishes("bii B+: w' + w^2 + z/2 vanishes");
    const Complex w2 = alpha + z * w + 2.0 * w * w * w;
    const Complex D1 = w2 + 2.0 * w * w1 + 0.5;
    Jet out;
    out.z = z;
    out.w = -w - (alpha + 0.5) / D;
    out.w1 = -w1 + (alpha + 0.5) * D1 / (D * D);
    return {out, alpha + 1.0};
  }
  if (std::abs(alpha - 0.5) < 1e-12) throw ParameterExcluded("bii B-: alpha = 1/2 excluded");
  const Complex E = w1 - w * w - z / 2.0;
  if (std::abs(E) < 1e-8 * local_scale(z))
    throw DenominatorVanishes("bii B-: w' - w^2 - z/2 vanishes");
  const Complex w2 = alpha + z * w + 2.0 * w * w * w;
  const Complex E1 = w2 - 2.0 * w * w1 - 0.5;
  Jet out;
  out.z = z;
  out.w = -w + (alpha - 0.5) / E;
  out.w1 = -w1 - (alpha - 0.5) * E1 / (E * E);
  return {out, alpha - 1.0};
}

std::pair<Jet, EquationSpec> trivial_symmetry(const Jet& jet, const EquationSpec& eq,
                                              TrivialSymmetry which) {
  if (eq.kind != EquationKind::PIV)
    throw WrongParameters("trivial_symmetry: defined for (IV)");
  Jet out;
  if (which == TrivialSymmetry::Rotate) {
    // v(z) = -i w(iz): the jet of v lives at -i times the original point
    out.z = -kI * jet.z;
    out.w = -kI * jet.w;
    out.w1 = jet.w1;
    if (jet.w2) out.w2 = kI * (*jet.w2);
    return {out, EquationSpec::p4_gamma(-eq.alpha, eq.gamma)};
  }
  out.z = std::conj(jet.z);
  out.w = std::conj(jet.w);
  out.w1 = std::conj(jet.w1);
  if (jet.w2) out.w2 = std::conj(*jet.w2);
  return {out, EquationSpec::p4_gamma(std::conj(eq.alpha), std::conj(eq.gamma))};
}

SignatureIV SignatureIV::from_symbols(const std::array<SignatureSymbol, 4>& symbols,
                                      Complex alpha, Complex gamma) {
  SignatureIV sig;
  for (int i = 0; i < 4; ++i) {
    sig.a[i].symbol = symbols[i];
    sig.a[i].value = symbol_value(symbols[i], alpha, gamma);
    sig.a[i].linearGrowth = symbols[i] == SignatureSymbol::Alpha;
  }
  return sig;
}

std::array<SignatureSymbol, 4> SignatureIV::symbols() const {
  return {a[0].symbol, a[1].symbol, a[2].symbol, a[3].symbol};
}

SignatureIV signature_transform(const SignatureIV& sig, TrivialSymmetry which) {
  SignatureIV out;
  if (which == TrivialSymmetry::Conjugate) {
    // (a0 a1 a2 a3) -> (conj a0, conj a3, conj a2, conj a1)
    const int perm[4] = {0, 3, 2, 1};
    for (int i = 0; i < 4; ++i) {
      out.a[i] = sig.a[perm[i]];
      out.a[i].value = std::conj(out.a[i].value);
    }
    return out;
  }
  // (a0 a1 a2 a3) -> (-a1, -a2, -a3, -a0); negation swaps the gamma symbols
  for (int i = 0; i < 4; ++i) {
    const SignatureEntry& src = sig.a[(i + 1) % 4];
    out.a[i] = src;
    out.a[i].value = -src.value;
    if (src.symbol == SignatureSymbol::GammaPlus) out.a[i].symbol = SignatureSymbol::GammaMinus;
    else if (src.symbol == SignatureSymbol::GammaMinus)
      out.a[i].symbol = SignatureSymbol::GammaPlus;
  }
  return out;
}

namespace {
SignatureIV flip_gamma_branch(const SignatureIV& sig) {
  SignatureIV out = sig;
  for (auto& e : out.a) {
    if (e.symbol == SignatureSymbol::GammaPlus) e.symbol = SignatureSymbol::GammaMinus;
    else if (e.symbol == SignatureSymbol::GammaMinus) e.symbol = SignatureSymbol::GammaPlus;
  }
  return out;
}

int match_canonical(const std::array<SignatureSymbol, 4>& s) {
  using S = SignatureSymbol;
  const std::array<std::array<S, 4>, 5> forms = {{
      {S::Alpha, S::Alpha, S::GammaMinus, S::GammaMinus},   // 1
      {S::Alpha, S::GammaMinus, S::Alpha, S::GammaMinus},   // 2
      {S::Alpha, S::Alpha, S::Alpha, S::GammaMinus},        // 3
      {S::Alpha, S::GammaMinus, S::Alpha, S::GammaPlus},    // 4
      {S::Alpha, S::Alpha, S::GammaPlus, S::GammaMinus},    // 5
  }};
  for (size_t f = 0; f < forms.size(); ++f)
    if (forms[f] == s) return static_cast<int>(f) + 1;
  return 0;
}
}  // namespace

CanonicalSignature signature_canonical_form(const SignatureIV& sig) {
  // walk the dihedral orbit (rotations, optional conjugation) with the free
  // gamma-branch relabeling, and take the first of the five printed forms
  for (int conj = 0; conj < 2; ++conj) {
    SignatureIV base = conj ? signature_transform(sig, TrivialSymmetry::Conjugate) : sig;
    for (int rot = 0; rot < 4; ++rot) {
      for (int flip = 0; flip < 2; ++flip) {
        const SignatureIV cand = flip ? flip_gamma_branch(base) : base;
        const int form = match_canonical(cand.symbols());
        if (form != 0) {
          CanonicalSignature out;
          out.form = form;
          out.signature = cand;
          out.moves = rot + conj;
          return out;
        }
      }
      base = signature_transform(base, TrivialSymmetry::Rotate);
    }
  }
  throw Error("signature_canonical_form: no canonical form reachable");
}

DeltaBookkeeping delta_of_signature(const SignatureIV& sig) {
  DeltaBookkeeping out;
  for (int nu = 0; nu < 4; ++nu) {
    out.perSector[nu] = sig.a[nu].linearGrowth ? ((nu % 2 == 0) ? -2 : 2) : 0;
    out.delta += out.perSector[nu];
  }
  return out;
}

std::vector<ParameterState> chain_build(int order, Complex requestedAlpha) {
  if (order < 0) throw WrongParameters("chain_build: order must be >= 0");
  // gamma_0 chosen so the final parameters hit the requested alpha
  Complex gamma0;
  if (order == 0) {
    gamma0 = -1.0 - requestedAlpha;
  } else if (order % 2 == 0) {
    const int k = order / 2;
    gamma0 = -1.0 - static_cast<double>(k) - requestedAlpha;
  } else {
    const int k = (order + 1) / 2;
    gamma0 = (requestedAlpha + static_cast<double>(k) - 1.0) / 2.0;
  }
  std::vector<ParameterState> chain;
  ParameterState ps;
  ps.alpha = -1.0 - gamma0;
  ps.gamma = gamma0;
  ps.history = {"weber-hermite"};
  chain.push_back(ps);
  for (int j = 0; j < order; ++j) {
    ParameterState next;
    next.alpha = (-1.0 - ps.alpha + 3.0 * ps.gamma) / 2.0;
    next.gamma = (-1.0 + ps.alpha + ps.gamma) / 2.0;
    next.history = ps.history;
    next.history.push_back("biv-");
    chain.push_back(next);
    ps = next;
  }
  return chain;
}

Jet chain_jet(const Jet& whJet, const std::vector<ParameterState>& chain) {
  Jet jet = whJet;
  for (size_t j = 0; j + 1 < chain.size(); ++j) {
    auto [next, nps] = biv_inverse(jet, chain[j]);
    (void)nps;
    jet = next;
  }
  return jet;
}

}  // namespace pnlv
