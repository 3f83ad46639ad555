// Copyright 2026 The nvgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include <doctest.h>

#include "nvgate/emitter.hpp"

using namespace nvgate;

namespace {

constexpr auto R = PolLabel::kR;
constexpr auto L = PolLabel::kL;
constexpr auto kPlus = SpinLabel::kPlus;
constexpr auto kMinus = SpinLabel::kMinus;

struct Arms {
  PathLabel a = PathLabel::internal(Photon::kTwo, "em.a");
  PathLabel b = PathLabel::internal(Photon::kTwo, "em.b");
  PathLabel c = PathLabel::internal(Photon::kTwo, "em.c");
  PathLabel d = PathLabel::internal(Photon::kTwo, "em.d");
  PathLabel lost = PathLabel::loss(Photon::kTwo, "em.loss");

  // Every (pol, output) pair has a continuation.
  BlockBinding full() const {
    BlockBinding bb;
    bb.inputs = {{a, BlockPort::kA}, {c, BlockPort::kC}};
    bb.outputs = {{{R, BlockPort::kB}, b}, {{L, BlockPort::kB}, b},
                  {{R, BlockPort::kD}, d}, {{L, BlockPort::kD}, d}};
    return bb;
  }
  // Only (R, b) and (L, d) continue.
  BlockBinding partial() const {
    BlockBinding bb = full();
    bb.outputs.erase({L, BlockPort::kB});
    bb.outputs.erase({R, BlockPort::kD});
    return bb;
  }
  LossPolicy loss() const { return {{{L, BlockPort::kB}, lost}, {{R, BlockPort::kD}, lost}}; }
};

BasisConfig cfg(PolLabel pol, PathLabel path, SpinLabel spin) {
  return {R, PathLabel::a1(), pol, path, spin};
}

QuantumState one(PolLabel pol, PathLabel path, SpinLabel spin) {
  QuantumState s;
  s.set(cfg(pol, path, spin), 1.0);
  return s;
}

}  // namespace

TEST_CASE("resonant coefficients at the first quoted point") {
  const ScatteringCoefficients c = coefficients(EmitterParams::from_ratios(2.4, 0.1));
  CHECK(c.r.real() == doctest::Approx(0.829060).epsilon(1e-6));
  CHECK(c.t.real() == doctest::Approx(-0.170940).epsilon(1e-6));
  CHECK(c.r0.real() == doctest::Approx(0.047619).epsilon(1e-6));
  CHECK(c.t0.real() == doctest::Approx(-0.952381).epsilon(1e-6));
  for (Complex v : {c.r, c.t, c.r0, c.t0}) CHECK(v.imag() == 0.0);
  // Exact rationals at resonance: t0 = -1/(1 + ks/2), r0 = (ks/2)/(1 + ks/2).
  CHECK(std::abs(c.t0 + 1.0 / 1.05) < 1e-15);
  CHECK(std::abs(c.r0 - 0.05 / 1.05) < 1e-15);
}

TEST_CASE("limits of the coefficients") {
  EmitterParams cold = EmitterParams::from_ratios(1.0, 0.0);
  const ScatteringCoefficients c0 = coefficients(cold);
  CHECK(std::abs(c0.t0 + 1.0) < 1e-15);
  CHECK(std::abs(c0.r0) < 1e-15);
  const ScatteringCoefficients big = coefficients(EmitterParams::from_ratios(1e8, 0.0));
  CHECK(std::abs(big.r - 1.0) < 1e-7);
  CHECK(std::abs(big.t) < 1e-7);
  CHECK(std::abs(big.r - big.t0 - 2.0) < 1e-7);
}

TEST_CASE("cold coefficients are the hot ones at g = 0") {
  EmitterParams p = EmitterParams::from_ratios(3.0, 0.4, 0.3, -0.2);
  const ScatteringCoefficients c = coefficients(p);
  // Evaluate the hot branch at a vanishing coupling.
  p.g = 1e-9;
  const ScatteringCoefficients tiny = coefficients(p);
  CHECK(std::abs(tiny.r - c.r0) < 1e-12);
  CHECK(std::abs(tiny.t - c.t0) < 1e-12);
}

TEST_CASE("coefficients are bounded and complex off resonance") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> gsq(0.01, 50.0), ks(0.0, 5.0), det(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const ScatteringCoefficients c =
        coefficients(EmitterParams::from_ratios(gsq(rng), ks(rng), det(rng), det(rng)));
    for (Complex v : {c.r, c.t, c.r0, c.t0}) CHECK(std::abs(v) <= 1.0 + 1e-12);
    // Loss-free energy balance per input channel is |r|^2 + |t|^2 <= 1.
    CHECK(std::norm(c.r) + std::norm(c.t) <= 1.0 + 1e-12);
    CHECK(std::norm(c.r0) + std::norm(c.t0) <= 1.0 + 1e-12);
  }
  const ScatteringCoefficients off = coefficients(EmitterParams::from_ratios(2.0, 0.1, 0.5, 0.0));
  CHECK(std::abs(off.r.imag()) > 1e-3);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(EmitterParams::from_ratios(0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(EmitterParams::from_ratios(1.0, -0.1), std::invalid_argument);
  EmitterParams p = EmitterParams::from_ratios(1.0, 0.1);
  p.gamma = 0.0;
  CHECK_THROWS_AS(coefficients(p), std::invalid_argument);
  p = EmitterParams::from_ratios(1.0, 0.1);
  p.omega_c = std::nan("");
  CHECK_THROWS_AS(coefficients(p), std::invalid_argument);
}

TEST_CASE("ideal transition rules") {
  const Arms arms;
  const BlockBinding bb = arms.full();
  // |R,a>|+> -> |L,d>|+>
  CHECK(ideal_scatter(one(R, arms.a, kPlus), Photon::kTwo, bb).amplitude(cfg(L, arms.d, kPlus)) ==
        Complex{1.0});
  // |L,a>|+> -> -|L,b>|+>
  CHECK(ideal_scatter(one(L, arms.a, kPlus), Photon::kTwo, bb).amplitude(cfg(L, arms.b, kPlus)) ==
        Complex{-1.0});
  // (|R,a> + |L,a>)|-> / sqrt2 -> (-|R,b> + |R,d>)|-> / sqrt2
  const double h = 1.0 / std::sqrt(2.0);
  QuantumState sup = one(R, arms.a, kMinus).scaled(h) + one(L, arms.a, kMinus).scaled(h);
  const QuantumState out = ideal_scatter(sup, Photon::kTwo, bb);
  CHECK(out.size() == 2);
  CHECK(std::abs(out.amplitude(cfg(R, arms.b, kMinus)) + h) < 1e-15);
  CHECK(std::abs(out.amplitude(cfg(R, arms.d, kMinus)) - h) < 1e-15);
}

TEST_CASE("realistic rules: full table") {
  const Arms arms;
  const ScatteringCoefficients c{0.7, 0.2, 0.1, -0.6};
  const BlockBinding bb = arms.full();
  auto amp = [&](PolLabel pin, PathLabel in, SpinLabel s, PolLabel pout, PathLabel outp) {
    return realistic_scatter(one(pin, in, s), Photon::kTwo, bb, c, arms.loss())
        .amplitude(cfg(pout, outp, s));
  };
  // spin +
  CHECK(amp(R, arms.a, kPlus, L, arms.d) == c.r);
  CHECK(amp(R, arms.a, kPlus, R, arms.b) == c.t);
  CHECK(amp(L, arms.c, kPlus, R, arms.b) == c.r);
  CHECK(amp(L, arms.c, kPlus, L, arms.d) == c.t);
  CHECK(amp(R, arms.c, kPlus, R, arms.d) == c.t0);
  CHECK(amp(R, arms.c, kPlus, L, arms.b) == c.r0);
  CHECK(amp(L, arms.a, kPlus, L, arms.b) == c.t0);
  CHECK(amp(L, arms.a, kPlus, R, arms.d) == c.r0);
  // spin -
  CHECK(amp(R, arms.a, kMinus, R, arms.b) == c.t0);
  CHECK(amp(R, arms.a, kMinus, L, arms.d) == c.r0);
  CHECK(amp(L, arms.c, kMinus, L, arms.d) == c.t0);
  CHECK(amp(L, arms.c, kMinus, R, arms.b) == c.r0);
  CHECK(amp(R, arms.c, kMinus, L, arms.b) == c.r);
  CHECK(amp(R, arms.c, kMinus, R, arms.d) == c.t);
  CHECK(amp(L, arms.a, kMinus, R, arms.d) == c.r);
  // Transmission keeps a -> b.
  CHECK(amp(L, arms.a, kMinus, L, arms.b) == c.t);
}

TEST_CASE("realistic rules with ideal coefficients equal the ideal map") {
  const Arms arms;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  QuantumState s;
  for (PolLabel p : {R, L}) {
    for (PathLabel arm : {arms.a, arms.c}) {
      for (SpinLabel sp : {kPlus, kMinus}) s.set(cfg(p, arm, sp), {n(rng), n(rng)});
    }
  }
  const QuantumState ideal = ideal_scatter(s, Photon::kTwo, arms.full());
  const QuantumState real = realistic_scatter(s, Photon::kTwo, arms.full(),
                                              ScatteringCoefficients::ideal(), arms.loss());
  CHECK(ideal.entries() == real.entries());
}

TEST_CASE("wrong-port components go to the loss label") {
  const Arms arms;
  const ScatteringCoefficients c = coefficients(EmitterParams::from_ratios(2.4, 0.1));
  // |R,a>|+> -> r|L,d> + t|R,b>: both nominal, no loss.
  QuantumState out =
      realistic_scatter(one(R, arms.a, kPlus), Photon::kTwo, arms.partial(), c, arms.loss());
  CHECK(out.loss_weight() == 0.0);
  // |L,a>|+> -> t0|L,b> + r0|R,d>: both off the partial binding.
  out = realistic_scatter(one(L, arms.a, kPlus), Photon::kTwo, arms.partial(), c, arms.loss());
  CHECK(out.loss_weight() == doctest::Approx(std::norm(c.t0) + std::norm(c.r0)));
  CHECK(norm_sq(out.nominal_part()) == 0.0);
  // Missing loss entry is an error; the ideal map demands continuations.
  CHECK_THROWS_AS(realistic_scatter(one(L, arms.a, kPlus), Photon::kTwo, arms.partial(), c, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ideal_scatter(one(L, arms.a, kPlus), Photon::kTwo, arms.partial()),
                  std::invalid_argument);
}

TEST_CASE("scatter rejects unbound paths unless they bypass") {
  const Arms arms;
  const QuantumState s = one(R, PathLabel::b1(), kPlus);
  CHECK_THROWS_AS(ideal_scatter(s, Photon::kTwo, arms.full()), std::invalid_argument);
  BlockBinding bb = arms.full();
  bb.bypass.insert(PathLabel::b1());
  CHECK(ideal_scatter(s, Photon::kTwo, bb).entries() == s.entries());
  BlockBinding bad = arms.full();
  bad.inputs[arms.b] = BlockPort::kB;
  CHECK_THROWS(ideal_scatter(one(R, arms.a, kPlus), Photon::kTwo, bad));
  QuantumState no_spin;
  no_spin.set({R, PathLabel::a1(), R, arms.a, std::nullopt}, 1.0);
  CHECK_THROWS(ideal_scatter(no_spin, Photon::kTwo, arms.full()));
}

TEST_CASE("realistic scattering never increases the norm") {
  const Arms arms;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> gsq(0.05, 20.0), ks(0.0, 3.0), det(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const ScatteringCoefficients c =
        coefficients(EmitterParams::from_ratios(gsq(rng), ks(rng), det(rng), det(rng)));
    QuantumState s;
    for (PolLabel p : {R, L}) {
      for (PathLabel arm : {arms.a, arms.c}) {
        for (SpinLabel sp : {kPlus, kMinus}) s.set(cfg(p, arm, sp), {n(rng), n(rng)});
      }
    }
    s = renormalize(s);
    CHECK(norm_sq(realistic_scatter(s, Photon::kTwo, arms.full(), c, arms.loss())) <=
          1.0 + 1e-12);
    CHECK(norm_sq(realistic_scatter(s, Photon::kTwo, arms.partial(), c, arms.loss())) <=
          1.0 + 1e-12);
  }
}

TEST_CASE("ideal scattering matrix is unitary; realistic is a contraction") {
  const ScatteringMatrix u = scattering_matrix(ScatteringCoefficients::ideal());
  CHECK((u.adjoint() * u - ScatteringMatrix::Identity()).cwiseAbs().maxCoeff() == 0.0);
  const ScatteringMatrix m = scattering_matrix(coefficients(EmitterParams::from_ratios(2.4, 1.0)));
  Eigen::SelfAdjointEigenSolver<ScatteringMatrix> es(m.adjoint() * m);
  CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-12);
}

TEST_CASE("rules form two closed two-port blocks per spin") {
  // Each input feeds exactly the two outputs of the opposite side pair
  // {b, d}, and no two inputs share a primary output.
  for (SpinLabel s : {kPlus, kMinus}) {
    std::set<std::pair<PolLabel, BlockPort>> primaries;
    for (PolLabel p : {R, L}) {
      for (BlockPort in : {BlockPort::kA, BlockPort::kC}) {
        const ScatterRule rule = scatter_rule(p, in, s);
        CHECK_FALSE(is_input(rule.primary.port));
        CHECK_FALSE(is_input(rule.secondary.port));
        CHECK(rule.primary.port != rule.secondary.port);
        primaries.insert({rule.primary.pol, rule.primary.port});
      }
    }
    CHECK(primaries.size() == 4);
  }
  CHECK_THROWS(scatter_rule(R, BlockPort::kB, kPlus));
}
