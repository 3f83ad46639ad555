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

#include "nvgate/statevec.hpp"

using namespace nvgate;

namespace {

constexpr auto R = PolLabel::kR;
constexpr auto L = PolLabel::kL;
constexpr auto kPlus = SpinLabel::kPlus;
constexpr auto kMinus = SpinLabel::kMinus;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

QuantumState random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  QuantumState s;
  for (int k = 0; k < kNominalDim; ++k) {
    for (SpinLabel sp : {kPlus, kMinus}) s.set(nominal_config(k, sp), {n(rng), n(rng)});
  }
  return renormalize(s);
}

}  // namespace

TEST_CASE("path labels are interned") {
  CHECK(PathLabel::a1() == PathLabel::named("a1"));
  CHECK(PathLabel::a2().photon() == Photon::kOne);
  CHECK(PathLabel::b1().photon() == Photon::kTwo);
  CHECK(PathLabel::b2().is_nominal());
  const PathLabel x = PathLabel::internal(Photon::kOne, "sv.test.arm");
  CHECK(x == PathLabel::internal(Photon::kOne, "sv.test.arm"));
  CHECK(x.role() == PathRole::kInternal);
  CHECK(PathLabel::loss(Photon::kTwo, "sv.test.loss").is_loss());
  CHECK_THROWS_AS(PathLabel::named("sv.never.registered"), std::invalid_argument);
  // Same name, different role or owner is a conflict.
  CHECK_THROWS(PathLabel::loss(Photon::kOne, "sv.test.arm"));
  CHECK_THROWS(PathLabel::internal(Photon::kTwo, "sv.test.arm"));
}

TEST_CASE("make_input_state builds the normalized product") {
  const InputCoefficients c = coefficients_from_angles(0.3, 1.1, -0.7, 2.0);
  const QuantumState s = make_input_state(c, kMinus);
  CHECK(s.size() == 16);
  CHECK(norm_sq(s) == doctest::Approx(1.0).epsilon(1e-14));
  const BasisConfig cfg{L, PathLabel::a2(), R, PathLabel::b1(), kMinus};
  const Complex expected = std::sin(0.3) * std::sin(1.1) * std::cos(-0.7) * std::cos(2.0);
  CHECK(std::abs(s.amplitude(cfg) - expected) < 1e-15);
  CHECK(s.amplitude({L, PathLabel::a2(), R, PathLabel::b1(), kPlus}) == Complex{});
}

TEST_CASE("make_input_state rejects an unnormalized pair by name") {
  InputCoefficients c;
  c.p2path = {1.0, 1.0};
  try {
    make_input_state(c, kMinus);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("delta") != std::string::npos);
  }
}

TEST_CASE("single-qubit gate matrices") {
  const SingleQubitMatrix yp = gates::ry_plus_half_pi();
  const SingleQubitMatrix ym = gates::ry_minus_half_pi();
  CHECK(std::abs(yp(0, 0) - kInvSqrt2) < 1e-15);
  CHECK(std::abs(yp(0, 1) + kInvSqrt2) < 1e-15);
  CHECK(std::abs(yp(1, 0) - kInvSqrt2) < 1e-15);
  CHECK(std::abs(ym(1, 0) + kInvSqrt2) < 1e-15);
  CHECK((yp * ym - SingleQubitMatrix::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  const SingleQubitMatrix h = gates::hadamard();
  CHECK((h * h - SingleQubitMatrix::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  for (const auto& m : {yp, ym, h, gates::sigma_z(), gates::identity()}) CHECK(is_unitary(m));
  SingleQubitMatrix bad = SingleQubitMatrix::Identity();
  bad(0, 0) = 2.0;
  CHECK_FALSE(is_unitary(bad));
}

TEST_CASE("apply_pol_gate acts only on the selected paths") {
  const QuantumState s = basis_state(R, PathLabel::a2(), R, PathLabel::b1(), kMinus) +
                         basis_state(R, PathLabel::a1(), R, PathLabel::b1(), kMinus);
  const QuantumState out =
      apply_pol_gate(s, Photon::kOne, {PathLabel::a2()}, gates::ry_plus_half_pi());
  CHECK(std::abs(out.amplitude({R, PathLabel::a2(), R, PathLabel::b1(), kMinus}) - kInvSqrt2) <
        1e-15);
  CHECK(std::abs(out.amplitude({L, PathLabel::a2(), R, PathLabel::b1(), kMinus}) - kInvSqrt2) <
        1e-15);
  CHECK(out.amplitude({R, PathLabel::a1(), R, PathLabel::b1(), kMinus}) == Complex{1.0});
}

TEST_CASE("apply_pol_gate with no paths warns and leaves the state") {
  const QuantumState s = basis_state(R, PathLabel::a2(), R, PathLabel::b1(), kMinus);
  std::vector<std::string> warnings;
  const QuantumState out = apply_pol_gate(s, Photon::kOne, {}, gates::hadamard(), &warnings);
  CHECK(warnings.size() == 1);
  CHECK(out.entries() == s.entries());
}

TEST_CASE("apply_pol_gate refuses loss paths") {
  const PathLabel lost = PathLabel::loss(Photon::kOne, "sv.gate.loss");
  const QuantumState s = basis_state(R, PathLabel::a1(), R, PathLabel::b1(), kMinus);
  CHECK_THROWS(apply_pol_gate(s, Photon::kOne, {lost}, gates::hadamard()));
}

TEST_CASE("spin Hadamard") {
  const QuantumState plus = basis_state(R, PathLabel::a1(), R, PathLabel::b1(), kPlus);
  const QuantumState minus = basis_state(R, PathLabel::a1(), R, PathLabel::b1(), kMinus);
  const QuantumState hm = apply_spin_hadamard(minus);
  CHECK(std::abs(hm.amplitude({R, PathLabel::a1(), R, PathLabel::b1(), kPlus}) - kInvSqrt2) <
        1e-15);
  CHECK(std::abs(hm.amplitude({R, PathLabel::a1(), R, PathLabel::b1(), kMinus}) + kInvSqrt2) <
        1e-15);
  const QuantumState back = apply_spin_hadamard(apply_spin_hadamard(plus));
  CHECK(overlap(back, plus) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(back.amplitude({R, PathLabel::a1(), R, PathLabel::b1(), kMinus})) < 1e-15);
}

TEST_CASE("CPBS routing is a permutation and detects collisions") {
  std::mt19937_64 rng(7);
  const QuantumState s = random_state(rng);
  const PathLabel r_arm = PathLabel::internal(Photon::kOne, "sv.cpbs.r");
  const PathLabel l_arm = PathLabel::internal(Photon::kOne, "sv.cpbs.l");
  const CpbsRoute split{{{R, PathLabel::a2()}, r_arm}, {{L, PathLabel::a2()}, l_arm}};
  const QuantumState out = apply_cpbs(s, Photon::kOne, split);
  CHECK(norm_sq(out) == doctest::Approx(1.0).epsilon(1e-14));
  const CpbsRoute merge{{{R, r_arm}, PathLabel::a2()}, {{L, l_arm}, PathLabel::a2()}};
  const QuantumState back = apply_cpbs(out, Photon::kOne, merge);
  CHECK(std::sqrt(norm_sq(back + s.scaled(-1.0))) < 1e-15);

  const CpbsRoute collide{{{R, PathLabel::a1()}, PathLabel::a2()}};
  CHECK_THROWS_AS(apply_cpbs(s, Photon::kOne, collide), std::invalid_argument);
  const CpbsRoute wrong_owner{{{R, PathLabel::a2()}, PathLabel::b1()}};
  CHECK_THROWS_AS(apply_cpbs(s, Photon::kOne, wrong_owner), std::invalid_argument);
}

TEST_CASE("loss labels are terminal") {
  const PathLabel lost = PathLabel::loss(Photon::kTwo, "sv.terminal");
  QuantumState s;
  s.set({R, PathLabel::a1(), L, lost, kMinus}, 0.5);
  s.set({R, PathLabel::a1(), L, PathLabel::b1(), kMinus}, std::sqrt(0.75));
  CHECK(s.loss_weight() == doctest::Approx(0.25));
  CHECK(norm_sq(s.nominal_part()) == doctest::Approx(0.75));
  CHECK_THROWS(apply_cpbs(s, Photon::kTwo, {{{L, lost}, PathLabel::b2()}}));
}

TEST_CASE("path phase needs unit modulus") {
  const QuantumState s = basis_state(R, PathLabel::a1(), R, PathLabel::b2(), kMinus);
  const QuantumState out = apply_path_phase(s, Photon::kTwo, PathLabel::b2(), -1.0);
  CHECK(out.amplitude({R, PathLabel::a1(), R, PathLabel::b2(), kMinus}) == Complex{-1.0});
  CHECK_THROWS(apply_path_phase(s, Photon::kTwo, PathLabel::b2(), 0.5));
}

TEST_CASE("spin measurement enumerates both branches") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const QuantumState s = random_state(rng).scaled(0.8);
    const auto m = measure_spin_x(s);
    CHECK(m[0].probability + m[1].probability == doctest::Approx(1.0).epsilon(1e-12));
    for (const SpinMeasurement& b : m) {
      CHECK_FALSE(b.branch.has_spin());
      CHECK(norm_sq(b.branch) == doctest::Approx(norm_sq(s)).epsilon(1e-12));
    }
    // Projections are linear and their weights add up to the input norm.
    const double w = norm_sq(project_spin_x(s, SpinXOutcome::kPlusX)) +
                     norm_sq(project_spin_x(s, SpinXOutcome::kMinusX));
    CHECK(w == doctest::Approx(norm_sq(s)).epsilon(1e-12));
  }
}

TEST_CASE("spin measurement of an eigenstate") {
  const QuantumState s = apply_spin_hadamard(
      basis_state(L, PathLabel::a2(), R, PathLabel::b1(), kPlus));  // |+x>
  const auto m = measure_spin_x(s);
  CHECK(m[0].probability == doctest::Approx(1.0));
  CHECK(m[1].probability == doctest::Approx(0.0));
  CHECK(m[1].branch.empty());
}

TEST_CASE("spin measurement errors") {
  CHECK_THROWS(measure_spin_x(QuantumState{}));
  const QuantumState no_spin = basis_state(R, PathLabel::a1(), R, PathLabel::b1(), std::nullopt);
  CHECK_THROWS(measure_spin_x(no_spin));
}

TEST_CASE("inner product, overlap and renormalize") {
  const QuantumState a = basis_state(R, PathLabel::a1(), R, PathLabel::b1(), std::nullopt);
  const QuantumState b = a.scaled(Complex{0.0, 2.0});
  CHECK(inner_product(a, b) == Complex{0.0, 2.0});
  CHECK(overlap(a, b) == doctest::Approx(1.0));
  CHECK(norm_sq(renormalize(b)) == doctest::Approx(1.0));
  CHECK_THROWS(renormalize(QuantumState{}));
  CHECK_THROWS(overlap(a, QuantumState{}));
}

TEST_CASE("nominal index order and dense round trip") {
  CHECK(nominal_index({R, PathLabel::a1(), R, PathLabel::b1(), std::nullopt}) == 0);
  CHECK(nominal_index({L, PathLabel::a2(), L, PathLabel::b2(), std::nullopt}) == 15);
  CHECK(nominal_index({L, PathLabel::a1(), R, PathLabel::b2(), std::nullopt}) == 9);
  const PathLabel arm = PathLabel::internal(Photon::kOne, "sv.index.arm");
  CHECK_FALSE(nominal_index({R, arm, R, PathLabel::b1(), std::nullopt}).has_value());
  NominalVector v = NominalVector::Zero();
  for (int k = 0; k < kNominalDim; ++k) v(k) = Complex(k, -k);
  const QuantumState s = from_nominal_vector(v, std::nullopt);
  CHECK((to_nominal_vector(s) - v).cwiseAbs().maxCoeff() == 0.0);
  const NominalSpinVector sv = to_nominal_spin_vector(from_nominal_vector(v, kMinus));
  CHECK(sv(2 * 15 + 1) == Complex(15, -15));
  CHECK(sv(2 * 15) == Complex{});
  CHECK_THROWS(to_nominal_vector(from_nominal_vector(v, kMinus)));
}
