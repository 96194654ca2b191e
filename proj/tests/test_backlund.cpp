#include <random>

#include "doctest.h"
#include "pnlv/backlund.hpp"
#include "pnlv/localseries.hpp"
#include "pnlv/special.hpp"

using namespace pnlv;

namespace {
std::mt19937_64 rng(5150217);
Complex rand_cplx(double lo = 0.5, double hi = 2.0) {
  std::uniform_real_distribution<double> mag(lo, hi), ang(0.0, 6.283185307179586);
  return std::polar(mag(rng), ang(rng));
}
}  // namespace

TEST_CASE("parameter map examples and the alpha-gamma reflection") {
  {
    ParameterState ps{0.0, -1.0, {}};
    const auto [jet, nps] = biv_forward(Jet{1.0, 1.0, 0.5}, ps);
    CHECK(std::abs(nps.alpha - Complex{-1.0}) < 1e-15);
    CHECK(std::abs(nps.gamma) < 1e-15);
    CHECK(std::abs((nps.alpha - nps.gamma) + (ps.alpha - ps.gamma)) < 1e-15);
  }
  {
    ParameterState ps{0.5, 0.5, {}};
    const auto [jet, nps] = biv_forward(Jet{1.0, 1.0, 0.5}, ps);
    CHECK(std::abs(nps.alpha - Complex{1.0}) < 1e-15);
    CHECK(std::abs(nps.gamma - Complex{1.0}) < 1e-15);
  }
}

TEST_CASE("double application shifts (alpha, gamma) by (+1, +1)") {
  for (int i = 0; i < 10; ++i) {
    ParameterState ps{rand_cplx(), rand_cplx(), {}};
    Jet jet{rand_cplx(1.0, 2.0), rand_cplx(1.0, 2.0), rand_cplx()};
    auto [j1, p1] = biv_forward(jet, ps);
    if (std::abs(j1.w) < 0.1) continue;
    auto [j2, p2] = biv_forward(j1, p1);
    CHECK(std::abs(p2.alpha - (ps.alpha + 1.0)) < 1e-13);
    CHECK(std::abs(p2.gamma - (ps.gamma + 1.0)) < 1e-13);
  }
}

TEST_CASE("forward-inverse round trip on random jets") {
  int tested = 0;
  double worst = 0.0;
  while (tested < 100) {
    ParameterState ps{rand_cplx(), rand_cplx(), {}};
    Jet jet{rand_cplx(1.0, 2.0), rand_cplx(1.0, 2.0), rand_cplx()};
    auto [tj, tps] = biv_forward(jet, ps);
    if (std::abs(tj.w) < 0.1) continue;
    auto [bj, bps] = biv_inverse(tj, tps);
    worst = std::max(worst, std::abs(bj.w - jet.w) / std::abs(jet.w));
    worst = std::max(worst, std::abs(bj.w1 - jet.w1) / std::max(1.0, std::abs(jet.w1)));
    CHECK(std::abs(bps.alpha - ps.alpha) < 1e-13);
    CHECK(std::abs(bps.gamma - ps.gamma) < 1e-13);
    ++tested;
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("the w=-1/z solution maps to the degenerate w~=0 endpoint") {
  // alpha=-2, beta=-2, gamma=+1
  ParameterState ps{-2.0, 1.0, {}};
  for (double x : {0.7, 1.3, 2.4}) {
    const Complex z{x, 0.1};
    const Jet jet{z, -1.0 / z, 1.0 / (z * z)};
    const auto [tj, tps] = biv_forward(jet, ps);
    CHECK(std::abs(tj.w) < 1e-13);
  }
}

TEST_CASE("(II) ladder: parameter shift and inverse pair") {
  const Jet jet{0.7, 0.4, -0.2};
  const auto [up, a1] = bii_transform(jet, 0.0, ShiftDirection::Plus);
  CHECK(std::abs(a1 - Complex{1.0}) < 1e-15);
  const auto [back, a0] = bii_transform(up, a1, ShiftDirection::Minus);
  CHECK(std::abs(a0) < 1e-15);
  CHECK(std::abs(back.w - jet.w) < 1e-12);
  CHECK(std::abs(back.w1 - jet.w1) < 1e-12);
  CHECK_THROWS_AS(bii_transform(jet, -0.5, ShiftDirection::Plus), ParameterExcluded);
}

TEST_CASE("trivial symmetries: orders and parameter records") {
  const auto eq = EquationSpec::p4_gamma(Complex{0.4, 0.2}, Complex{1.1, -0.3});
  Jet jet{rand_cplx(), rand_cplx(), rand_cplx()};
  jet.w2 = rhs(eq, jet);

  auto j = jet;
  auto e = eq;
  for (int i = 0; i < 4; ++i) {
    auto [nj, ne] = trivial_symmetry(j, e, TrivialSymmetry::Rotate);
    j = nj;
    e = ne;
  }
  CHECK(std::abs(j.z - jet.z) < 1e-14);
  CHECK(std::abs(j.w - jet.w) < 1e-14);
  CHECK(std::abs(e.alpha - eq.alpha) < 1e-14);

  auto [cj, ce] = trivial_symmetry(jet, eq, TrivialSymmetry::Conjugate);
  auto [ccj, cce] = trivial_symmetry(cj, ce, TrivialSymmetry::Conjugate);
  CHECK(std::abs(ccj.w - jet.w) < 1e-15);
  CHECK(std::abs(cce.alpha - eq.alpha) < 1e-15);

  // the rotated jet solves the rotated equation
  auto [rj, re] = trivial_symmetry(jet, eq, TrivialSymmetry::Rotate);
  REQUIRE(rj.w2.has_value());
  CHECK(std::abs(equation_residual(re, rj)) < 1e-10);
}

TEST_CASE("signature transforms and canonical forms") {
  using S = SignatureSymbol;
  const Complex alpha{0.3, 0.1}, gamma{1.2, -0.4};

  const auto sig = SignatureIV::from_symbols({S::Alpha, S::GammaMinus, S::Alpha, S::GammaMinus},
                                             alpha, gamma);
  // rotation sends (a0 a1 a2 a3) to (-a1 -a2 -a3 -a0)
  const auto rot = signature_transform(sig, TrivialSymmetry::Rotate);
  CHECK(rot.a[0].value == -sig.a[1].value);
  CHECK(rot.a[3].value == -sig.a[0].value);
  // double conjugation is the identity
  const auto c2 = signature_transform(signature_transform(sig, TrivialSymmetry::Conjugate),
                                      TrivialSymmetry::Conjugate);
  CHECK(c2.symbols() == sig.symbols());

  // canonical forms
  CHECK(signature_canonical_form(
            SignatureIV::from_symbols({S::Alpha, S::Alpha, S::GammaMinus, S::GammaMinus}, alpha,
                                      gamma))
            .form == 1);
  CHECK(signature_canonical_form(sig).form == 2);
  const auto shifted = SignatureIV::from_symbols({S::GammaMinus, S::Alpha, S::GammaMinus, S::Alpha},
                                                 alpha, gamma);
  const auto canon = signature_canonical_form(shifted);
  CHECK(canon.form == 2);
  CHECK(canon.moves <= 8);
  CHECK(signature_canonical_form(
            SignatureIV::from_symbols({S::Alpha, S::Alpha, S::Alpha, S::GammaMinus}, alpha, gamma))
            .form == 3);
}

TEST_CASE("Delta bookkeeping per sector") {
  using S = SignatureSymbol;
  const Complex alpha{1.0}, gamma{0.5};
  // form 2: alpha-slots on Sigma_0, Sigma_2 mean w ~ -2z there
  const auto sig2 =
      SignatureIV::from_symbols({S::Alpha, S::GammaMinus, S::Alpha, S::GammaMinus}, alpha, gamma);
  CHECK(delta_of_signature(sig2).delta == -4);
  // all (iv)_c: no contribution
  const auto sigc = SignatureIV::from_symbols(
      {S::GammaPlus, S::GammaMinus, S::GammaPlus, S::GammaMinus}, alpha, gamma);
  CHECK(delta_of_signature(sigc).delta == 0);
  // form 3 ledger: -2
  const auto sig3 =
      SignatureIV::from_symbols({S::Alpha, S::Alpha, S::Alpha, S::GammaMinus}, alpha, gamma);
  CHECK(delta_of_signature(sig3).delta == -2);
}

TEST_CASE("pole/zero exchange at poles of w") {
  // at a pole with residue +1 the transform has a pole with residue -1;
  // at residue -1 poles it is regular
  const auto eq = EquationSpec::p4_gamma(Complex{0.4}, Complex{0.9});
  ParameterState ps{eq.alpha, eq.gamma, {}};
  for (int eps : {+1, -1}) {
    PoleSeed seed{eq, Complex{2.0, 1.0}, eps, Complex{0.3, -0.1}};
    const Complex x1{1e-3, 4e-4}, x2 = x1 / 10.0;
    const auto j1 = biv_forward(seed_jet(seed, x1, 14), ps).first;
    const auto j2 = biv_forward(seed_jet(seed, x2, 14), ps).first;
    if (eps == +1) {
      CHECK(std::abs(j1.w * x1 - Complex{-1.0}) < 5e-3);
      CHECK(std::abs(j2.w * x2 - Complex{-1.0}) < 5e-4);
    } else {
      CHECK(std::abs(j1.w) < 10.0);
      CHECK(std::abs(j2.w) < 10.0);
      CHECK(std::abs(j2.w - j1.w) < 0.1);  // regular limit
    }
  }
}

TEST_CASE("chains reach the Weber-Hermite equation with the right parameters") {
  {
    const auto chain = chain_build(0, Complex{0.7, 0.3});
    REQUIRE(chain.size() == 1);
    CHECK(std::abs(chain[0].alpha + chain[0].gamma + 1.0) < 1e-14);
    CHECK(std::abs(chain[0].alpha - Complex{0.7, 0.3}) < 1e-14);
  }
  for (int k : {1, 2, 3}) {
    const Complex alphaReq = rand_cplx();
    const auto even = chain_build(2 * k, alphaReq);
    REQUIRE(even.size() == static_cast<size_t>(2 * k + 1));
    CHECK(std::abs(even[0].alpha + even[0].gamma + 1.0) < 1e-13);
    CHECK(std::abs(even.back().alpha - alphaReq) < 1e-13);
    CHECK(std::abs(even.back().alpha + even.back().gamma + (2.0 * k + 1.0)) < 1e-13);

    const auto odd = chain_build(2 * k - 1, alphaReq);
    CHECK(std::abs(odd.back().alpha - alphaReq) < 1e-13);
    CHECK(std::abs(odd.back().gamma + static_cast<double>(k)) < 1e-13);
  }
}

TEST_CASE("order-1 chain solutions satisfy the first-order equation") {
  // gamma_1 = -1 always; alpha_1 = 2 gamma_0 is free
  const auto chain = chain_build(1, Complex{-2.0});
  REQUIRE(chain.size() == 2);
  CHECK(std::abs(chain[1].gamma + 1.0) < 1e-14);
  const Complex alpha = chain[1].alpha;
  const auto wh = LinearizedSolution::weber_hermite(chain[0].gamma, RootBranch::Plus, 1.0, 0.6);

  double worst = 0.0;
  int used = 0;
  for (int i = 0; i < 40; ++i) {
    const Complex z = std::polar(0.6 + 0.08 * i, 0.37 * i);
    Jet whJet;
    try {
      whJet = wh.jet(z);
    } catch (const EvaluationFailed&) {
      continue;
    }
    if (std::abs(whJet.w) < 5e-3 || std::abs(whJet.w) > 1e3) continue;
    Jet j;
    try {
      j = chain_jet(whJet, chain);
    } catch (const AtZeroOfWTilde&) {
      continue;
    }
    const Complex w = j.w, w1 = j.w1, z2 = j.z * j.z;
    const Complex res = w1 * w1 + 4.0 * w1 - w * w * w * w - 4.0 * j.z * w * w * w -
                        4.0 * (z2 - alpha) * w * w + 4.0;
    const double scale = 1.0 + std::norm(w1) + std::abs(w * w * w * w) +
                         4.0 * std::abs(j.z * w * w * w) + 4.0 * std::abs((z2 - alpha) * w * w);
    worst = std::max(worst, std::abs(res) / scale);
    ++used;
  }
  CHECK(used >= 25);
  CHECK(worst < 1e-8);
}

TEST_CASE("w=-2z satisfies the printed first-order equation at alpha=0") {
  for (double x : {0.5, 1.0, 2.0}) {
    const Complex z{x, 0.3};
    const Complex w = -2.0 * z, w1{-2.0};
    const Complex res = w1 * w1 + 4.0 * w1 - w * w * w * w - 4.0 * z * w * w * w -
                        4.0 * z * z * w * w + 4.0;
    CHECK(std::abs(res) < 1e-12 * (1.0 + std::abs(w * w * w * w)));
  }
}

TEST_CASE("transported jets satisfy the transformed equation (finite differences)") {
  const auto wh = LinearizedSolution::weber_hermite(Complex{1.5, 0.2}, RootBranch::Plus, 1.0, 0.4);
  ParameterState ps{wh.equation().alpha, wh.equation().gamma, {}};
  const Complex z0{1.2, 0.8};
  const double d = 1e-5;

  auto transformed_w = [&](Complex z) { return biv_forward(wh.jet(z), ps).first.w; };
  const auto [tj, tps] = biv_forward(wh.jet(z0), ps);
  const Complex wm = transformed_w(z0 - d), wp = transformed_w(z0 + d);
  // finite-difference first and second derivatives of the transformed solution
  const Complex fd1 = (wp - wm) / (2.0 * d);
  const Complex fd2 = (wp - 2.0 * tj.w + wm) / (d * d);
  CHECK(std::abs(fd1 - tj.w1) < 1e-6 * (1.0 + std::abs(tj.w1)));

  const auto eqNew = tps.equation();
  Jet probe = tj;
  probe.w2 = fd2;
  const Complex res = equation_residual(eqNew, probe);
  CHECK(std::abs(res) < 1e-4 * (1.0 + std::abs(fd2)));
}
