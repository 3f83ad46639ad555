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

#include <doctest.h>

#include "nvgate/io.hpp"

using namespace nvgate;

TEST_CASE("complex literals") {
  CHECK(parse_complex("1,0") == Complex{1.0, 0.0});
  CHECK(parse_complex("-0.5,0.25") == Complex{-0.5, 0.25});
  CHECK(parse_complex(" 0.7 , -1e-3 ") == Complex{0.7, -1e-3});
  CHECK(parse_complex("0.6") == Complex{0.6, 0.0});
  CHECK(parse_complex("+1,+2") == Complex{1.0, 2.0});
  for (const char* bad : {"", ",", "1,", "a,b", "1,2,3", "1;2", "nan,0", "1 2"}) {
    CHECK_THROWS_AS(parse_complex(bad), std::invalid_argument);
  }
}

TEST_CASE("state and trace json") {
  const QuantumState s = basis_state(PolLabel::kL, PathLabel::a2(), PolLabel::kR, PathLabel::b1(),
                                     SpinLabel::kMinus)
                             .scaled(Complex{0.0, 1.0});
  const nlohmann::json j = to_json(s);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["config"] == "L1,a2,R2,b1,-");
  CHECK(j[0]["re"] == 0.0);
  CHECK(j[0]["im"] == 1.0);

  const RunResult r = run(GateKind::kToffoli, s.scaled(Complex{0.0, -1.0}), IdealCoupling{});
  const nlohmann::json t = to_json(r.trace);
  CHECK(t.front()["tag"] == "psi0");
  CHECK(t.back()["tag"] == "psi3/minus_x");
  for (const auto& e : t) {
    CHECK(e.contains("state"));
    CHECK(e["norm_sq"].get<double>() == doctest::Approx(1.0));
  }
}

TEST_CASE("coefficient and metrics json") {
  const nlohmann::json c = to_json(ScatteringCoefficients::ideal());
  CHECK(c["t0"]["re"] == -1.0);
  const nlohmann::json p = to_json(MetricsPoint{2.4, 0.1, 0.9, 0.8, 0.7, 0.7, 0.7});
  CHECK(p["gsq_over_kgamma"] == 2.4);
  CHECK(p["eta_sim"] == 0.7);
  CHECK_FALSE(p.contains("eta_sim_fredkin"));
}

TEST_CASE("cancelled components are omitted") {
  const QuantumState a = basis_state(PolLabel::kL, PathLabel::a2(), PolLabel::kR,
                                     PathLabel::b1(), SpinLabel::kMinus);
  CHECK(to_json(a + a.scaled(Complex{-1.0, 0.0})).empty());
}
