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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "nvgate/emitter.hpp"
#include "nvgate/statevec.hpp"

namespace nvgate {

enum class GateKind : std::uint8_t { kToffoli, kFredkin };

std::string to_string(GateKind k);
/// Accepts "toffoli" / "fredkin" (case-insensitive); throws otherwise.
GateKind parse_gate_kind(std::string_view name);

enum class StepKind : std::uint8_t {
  kCpbs,
  kPolGate,
  kSpinHadamard,
  kPathPhase,
  kEmitterBlock,
  kMeasureFeedForward,
};

std::string to_string(StepKind k);

struct CpbsStep {
  Photon photon;
  CpbsRoute route;
};

struct PolGateStep {
  Photon photon;
  PathSet paths;
  SingleQubitMatrix matrix;
  std::string gate;  // display name, e.g. "Ry(-pi/2)"
};

struct SpinHadamardStep {};

struct PathPhaseStep {
  Photon photon;
  PathLabel path;
  Complex phase;
};

/// A pi phase shifter on one cavity port. Input-port shifters act before
/// the NV interaction, output-port shifters after it.
struct InnerPhaseShifter {
  BlockPort port;
  Complex phase{-1.0, 0.0};
};

/// One traversal of the CPBS -> NV cavity -> CPBS block. The input CPBS
/// sends R to port a and L to port c; the output CPBS merges R from port b
/// and L from port d onto `output`. Other (pol, port) outputs are lost.
struct EmitterBlockStep {
  Photon photon;
  PathLabel input;
  PathLabel output;
  PathLabel arm_a;
  PathLabel arm_b;
  PathLabel arm_c;
  PathLabel arm_d;
  PathLabel loss;
  std::vector<InnerPhaseShifter> shifters;
};

using Correction = std::variant<PathPhaseStep, PolGateStep>;

/// Spin measurement in the X basis followed by outcome-conditioned
/// corrections, indexed by SpinXOutcome.
struct MeasureFeedForwardStep {
  std::array<std::vector<Correction>, 2> corrections;
};

using StepPayload = std::variant<CpbsStep, PolGateStep, SpinHadamardStep, PathPhaseStep,
                                 EmitterBlockStep, MeasureFeedForwardStep>;

struct CircuitStep {
  StepKind kind;
  std::string element;  // optical element name, e.g. "CPBS1"
  StepPayload payload;
  /// Trace tag recorded after the step, if any.
  std::optional<std::string> checkpoint;
  /// Marks the last step of photon 1's pass; see RunOptions::herald_control_spin.
  bool ends_control_stage = false;
};

/// Element sequence of the two-photon gate. The Toffoli circuit realizes the
/// controlled-controlled-controlled phase flip; Hadamards on the target turn
/// it into a Toffoli.
std::vector<CircuitStep> build_circuit(GateKind kind);

/// Tag of the input state in the trace ("psi0" or "phi0").
std::string input_tag(GateKind kind);

struct IdealCoupling {};
using Coupling = std::variant<IdealCoupling, ScatteringCoefficients>;

struct RunOptions {
  /// Drops, after photon 1's pass, the components whose spin is not the one
  /// the ideal gate correlates with photon 1 (|+> on (L1, a2), |-> elsewhere).
  /// Off by default: the run is then a plain linear evolution.
  bool herald_control_spin = false;
};

/// Spin the ideal control stage leaves with a nominal photon-1 configuration.
SpinLabel ideal_control_spin(PolLabel p1pol, PathLabel p1path);

class CircuitTrace {
 public:
  void record(std::string tag, QuantumState state);
  const std::vector<std::pair<std::string, QuantumState>>& entries() const { return entries_; }
  bool contains(std::string_view tag) const;
  /// Throws std::out_of_range for an unknown tag.
  const QuantumState& at(std::string_view tag) const;

 private:
  std::vector<std::pair<std::string, QuantumState>> entries_;
};

struct HeraldedBranch {
  SpinXOutcome outcome;
  /// Weight of this outcome relative to the pre-measurement squared norm.
  double probability = 0.0;
  /// Post-feed-forward photon state, unnormalized (linear in the input).
  QuantumState projected;
  /// `projected` rescaled to the pre-measurement squared norm; empty when
  /// the outcome has probability zero.
  QuantumState state;
};

struct RunResult {
  QuantumState pre_measurement;
  std::array<HeraldedBranch, 2> branches;
  CircuitTrace trace;

  /// Squared norm of the pre-measurement state on nominal modes.
  double survival() const;
};

/// Runs a step list. The input must carry the spin in |-> on every entry.
RunResult run_steps(const std::vector<CircuitStep>& steps, const QuantumState& input,
                    const Coupling& coupling, std::string_view input_tag = "input",
                    const RunOptions& options = {});

RunResult run(GateKind kind, const QuantumState& input, const Coupling& coupling,
              const RunOptions& options = {});

using NominalMatrix = Eigen::Matrix<Complex, kNominalDim, kNominalDim>;
using PreMeasurementMatrix = Eigen::Matrix<Complex, 2 * kNominalDim, kNominalDim>;

/// Target gate on the nominal 16-dimensional space: the phase flip on
/// (L1, a2, L2, b2) for Toffoli, the controlled polarization/path swap of
/// photon 2 for Fredkin.
NominalMatrix oracle_matrix(GateKind kind);

enum class ToffoliTarget : std::uint8_t { kPhoton2Path, kPhoton2Polarization };

/// Hadamard on the target qubit, then the phase flip, then Hadamard again.
NominalMatrix toffoli_matrix(ToffoliTarget target = ToffoliTarget::kPhoton2Path);

bool is_unitary(const NominalMatrix& m, double tol = 1e-12);

/// Linear maps of one gate for fixed coupling, restricted to nominal modes.
/// Column j is the response to nominal basis input j with spin |->.
struct EffectiveGate {
  GateKind kind;
  /// Rows 2k + s: nominal config k, spin s (plus = 0).
  PreMeasurementMatrix pre_measurement;
  /// Unnormalized post-feed-forward photon maps, indexed by SpinXOutcome.
  std::array<NominalMatrix, 2> branches;

  /// Branch weights for input `psi`, relative to the pre-measurement
  /// squared norm. Zero for a fully lost input.
  std::array<double, 2> branch_probabilities(const NominalVector& psi) const;
  double survival(const NominalVector& psi) const;
};

EffectiveGate effective_gate_matrix(GateKind kind, const Coupling& coupling,
                                    const RunOptions& options = {});

}  // namespace nvgate
