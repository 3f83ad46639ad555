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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nvgate/circuits.hpp"
#include "nvgate/statevec.hpp"

namespace nvgate::acceptance {

// Pinned tolerances and budgets.
inline constexpr double kOracleOverlapTol = 1e-10;
inline constexpr double kCheckpointTol = 1e-10;
inline constexpr double kClosedFormEtaTol = 1e-5;
inline constexpr double kFidelityTol = 5e-3;
inline constexpr double kEtaAgreementTol = 5e-3;
inline constexpr double kQuadratureTol = 1e-10;
inline constexpr double kMonotoneSlack = 1e-12;
inline constexpr double kLimitFloor = 0.999;
inline constexpr double kStructuralTol = 1e-12;

inline constexpr double kOracleBudgetSeconds = 1.0;
inline constexpr double kCheckpointBudgetSeconds = 1.0;
inline constexpr double kFidelityBudgetSeconds = 10.0;
inline constexpr double kGridBudgetSeconds = 120.0;

inline constexpr int kNumCriteria = 9;

struct Options {
  std::uint64_t seed = 20260417;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// One or more lines of measured values.
  std::string detail;
  double seconds = 0.0;
};

/// Runs criterion `id` (1..kNumCriteria). Throws std::out_of_range otherwise.
CriterionResult run_criterion(int id, const Options& options = {});

/// Runs all criteria in order.
std::vector<CriterionResult> run_all(const Options& options = {});

/// Closed-form ideal state at a checkpoint tag of the given gate, written
/// out term by term from the product input `c`. Tags: psi1, psi2, psi3 for
/// Toffoli; phi1, phi3, phi4, phi5, phi6 for Fredkin. The post-measurement
/// tags carry no spin.
QuantumState checkpoint_oracle(GateKind kind, std::string_view tag, const InputCoefficients& c);

/// Checkpoint tags with closed forms, in circuit order.
std::vector<std::string> checkpoint_tags(GateKind kind);

/// min over theta of || a - e^{i theta} b ||.
double phase_aligned_distance(const QuantumState& a, const QuantumState& b);

}  // namespace nvgate::acceptance
