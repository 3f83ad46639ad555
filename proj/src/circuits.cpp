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

#include "nvgate/circuits.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace nvgate {

std::string to_string(GateKind k) { return k == GateKind::kToffoli ? "toffoli" : "fredkin"; }

GateKind parse_gate_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "toffoli" || lower == "cccpf") return GateKind::kToffoli;
  if (lower == "fredkin") return GateKind::kFredkin;
  throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::kCpbs: return "CPBS";
    case StepKind::kPolGate: return "PolGate";
    case StepKind::kSpinHadamard: return "SpinHadamard";
    case StepKind::kPathPhase: return "PathPhase";
    case StepKind::kEmitterBlock: return "EmitterBlock";
    case StepKind::kMeasureFeedForward: return "MeasureFeedForward";
  }
  return "?";
}

namespace {

constexpr auto R = PolLabel::kR;
constexpr auto L = PolLabel::kL;
constexpr auto kP1 = Photon::kOne;
constexpr auto kP2 = Photon::kTwo;

CircuitStep make_step(std::string element, StepPayload payload,
                      std::optional<std::string> checkpoint = std::nullopt) {
  const auto kind = static_cast<StepKind>(payload.index());
  return CircuitStep{kind, std::move(element), std::move(payload), std::move(checkpoint), false};
}

EmitterBlockStep make_block(Photon photon, PathLabel input, PathLabel output,
                            std::string_view prefix, bool pi_shifters) {
  auto arm = [&](std::string_view port) {
    return PathLabel::internal(photon, std::string(prefix) + "." + std::string(port));
  };
  EmitterBlockStep block{photon,
                         input,
                         output,
                         arm("a"),
                         arm("b"),
                         arm("c"),
                         arm("d"),
                         PathLabel::loss(photon, photon == kP1 ? "loss_block_p1" : "loss_block_p2"),
                         {}};
  if (pi_shifters) {
    block.shifters = {InnerPhaseShifter{BlockPort::kA}, InnerPhaseShifter{BlockPort::kD}};
  }
  return block;
}

// Photon 1 leaves a2 through CPBS1: R goes straight to CPBS2, L visits the
// cavity between two local gates that are paired with spin Hadamards.
void append_control_stage(std::vector<CircuitStep>& steps, const SingleQubitMatrix& before,
                          std::string before_name, const SingleQubitMatrix& after,
                          std::string after_name, bool pi_shifters, std::string checkpoint) {
  const PathLabel r_arm = PathLabel::internal(kP1, "a2.r");
  const PathLabel l_arm = PathLabel::internal(kP1, "a2.l");
  const PathLabel lost = PathLabel::loss(kP1, "loss_cpbs2_p1");

  steps.push_back(make_step("CPBS1", CpbsStep{kP1, {{{R, PathLabel::a2()}, r_arm},
                                                    {{L, PathLabel::a2()}, l_arm}}}));
  steps.push_back(make_step(before_name, PolGateStep{kP1, {l_arm}, before, before_name}));
  steps.push_back(make_step("He", SpinHadamardStep{}));
  steps.push_back(make_step("NV", make_block(kP1, l_arm, l_arm, "blk1", pi_shifters)));
  steps.push_back(make_step(after_name, PolGateStep{kP1, {l_arm}, after, after_name}));
  steps.push_back(make_step("He", SpinHadamardStep{}));
  steps.push_back(make_step("CPBS2",
                            CpbsStep{kP1,
                                     {{{R, r_arm}, PathLabel::a2()},
                                      {{L, l_arm}, PathLabel::a2()},
                                      {{L, r_arm}, lost},
                                      {{R, l_arm}, lost}}},
                            std::move(checkpoint)));
  steps.back().ends_control_stage = true;
}

std::vector<CircuitStep> toffoli_circuit() {
  std::vector<CircuitStep> steps;
  append_control_stage(steps, gates::ry_minus_half_pi(), "Ry(-pi/2)", gates::ry_plus_half_pi(),
                       "Ry(+pi/2)", false, "psi1");
  const PathLabel b2 = PathLabel::b2();
  steps.push_back(make_step("Ry(-pi/2)",
                            PolGateStep{kP2, {b2}, gates::ry_minus_half_pi(), "Ry(-pi/2)"}));
  steps.push_back(make_step("NV", make_block(kP2, b2, b2, "blk2", false)));
  steps.push_back(make_step("Ry(+pi/2)",
                            PolGateStep{kP2, {b2}, gates::ry_plus_half_pi(), "Ry(+pi/2)"},
                            "psi2"));

  MeasureFeedForwardStep mff;
  const PathPhaseStep flip_b2{kP2, b2, Complex{-1.0, 0.0}};
  mff.corrections[static_cast<int>(SpinXOutcome::kPlusX)] = {flip_b2};
  mff.corrections[static_cast<int>(SpinXOutcome::kMinusX)] = {
      flip_b2, PolGateStep{kP1, {PathLabel::a2()}, gates::sigma_z(), "sigma_z"}};
  steps.push_back(make_step("Measure", std::move(mff), "psi3"));
  return steps;
}

std::vector<CircuitStep> fredkin_circuit() {
  std::vector<CircuitStep> steps;
  append_control_stage(steps, gates::hadamard(), "Hp1", gates::hadamard(), "Hp2", true, "phi1");
  const PathLabel b1 = PathLabel::b1();
  const PathLabel b2 = PathLabel::b2();
  // R components of photon 2 exchange b1 and b2; L components keep their mode.
  const CpbsRoute swap_r{{{R, b1}, b2}, {{R, b2}, b1}};
  steps.push_back(make_step("CPBS5", CpbsStep{kP2, swap_r}, "phi3"));
  steps.push_back(make_step("NV", make_block(kP2, b1, b1, "blk2", true), "phi4"));
  steps.push_back(make_step("CPBS6", CpbsStep{kP2, swap_r}, "phi5"));

  MeasureFeedForwardStep mff;
  mff.corrections[static_cast<int>(SpinXOutcome::kPlusX)] = {
      PolGateStep{kP1, {PathLabel::a2()}, gates::sigma_z(), "sigma_z"}};
  steps.push_back(make_step("Measure", std::move(mff), "phi6"));
  return steps;
}

QuantumState apply_block(const QuantumState& state, const EmitterBlockStep& block,
                         const Coupling& coupling) {
  const Photon ph = block.photon;
  QuantumState s = apply_cpbs(state, ph, {{{R, block.input}, block.arm_a},
                                          {{L, block.input}, block.arm_c}});

  auto arm_of = [&](BlockPort port) {
    switch (port) {
      case BlockPort::kA: return block.arm_a;
      case BlockPort::kB: return block.arm_b;
      case BlockPort::kC: return block.arm_c;
      case BlockPort::kD: return block.arm_d;
    }
    throw std::logic_error("bad port");
  };
  for (const InnerPhaseShifter& ps : block.shifters) {
    if (is_input(ps.port)) s = apply_path_phase(s, ph, arm_of(ps.port), ps.phase);
  }

  BlockBinding binding;
  binding.inputs = {{block.arm_a, BlockPort::kA}, {block.arm_c, BlockPort::kC}};
  binding.outputs = {{{R, BlockPort::kB}, block.arm_b}, {{L, BlockPort::kD}, block.arm_d}};
  for (const auto& [cfg, amp] : s.entries()) {
    const PathLabel p = cfg.path(ph);
    if (p != block.arm_a && p != block.arm_c) binding.bypass.insert(p);
  }
  if (std::holds_alternative<IdealCoupling>(coupling)) {
    s = ideal_scatter(s, ph, binding);
  } else {
    const LossPolicy loss{{{L, BlockPort::kB}, block.loss}, {{R, BlockPort::kD}, block.loss}};
    s = realistic_scatter(s, ph, binding, std::get<ScatteringCoefficients>(coupling), loss);
  }

  for (const InnerPhaseShifter& ps : block.shifters) {
    if (!is_input(ps.port)) s = apply_path_phase(s, ph, arm_of(ps.port), ps.phase);
  }
  return apply_cpbs(s, ph, {{{R, block.arm_b}, block.output}, {{L, block.arm_d}, block.output}});
}

QuantumState apply_correction(const QuantumState& state, const Correction& c) {
  return std::visit(
      [&](const auto& step) -> QuantumState {
        using T = std::decay_t<decltype(step)>;
        if constexpr (std::is_same_v<T, PathPhaseStep>) {
          return apply_path_phase(state, step.photon, step.path, step.phase);
        } else {
          return apply_pol_gate(state, step.photon, step.paths, step.matrix);
        }
      },
      c);
}

}  // namespace

std::vector<CircuitStep> build_circuit(GateKind kind) {
  switch (kind) {
    case GateKind::kToffoli: return toffoli_circuit();
    case GateKind::kFredkin: return fredkin_circuit();
  }
  throw std::invalid_argument("build_circuit: unknown gate kind");
}

std::string input_tag(GateKind kind) { return kind == GateKind::kToffoli ? "psi0" : "phi0"; }

// Trace -----------------------------------------------------------------------

void CircuitTrace::record(std::string tag, QuantumState state) {
  if (contains(tag)) throw std::invalid_argument("CircuitTrace: duplicate tag '" + tag + "'");
  entries_.emplace_back(std::move(tag), std::move(state));
}

bool CircuitTrace::contains(std::string_view tag) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == tag; });
}

const QuantumState& CircuitTrace::at(std::string_view tag) const {
  for (const auto& [t, s] : entries_) {
    if (t == tag) return s;
  }
  throw std::out_of_range("CircuitTrace: no checkpoint '" + std::string(tag) + "'");
}

double RunResult::survival() const { return norm_sq(pre_measurement.nominal_part()); }

// Execution -------------------------------------------------------------------

SpinLabel ideal_control_spin(PolLabel p1pol, PathLabel p1path) {
  return p1pol == L && p1path == PathLabel::a2() ? SpinLabel::kPlus : SpinLabel::kMinus;
}

namespace {

QuantumState herald_control_spin(const QuantumState& state) {
  QuantumState out;
  for (const auto& [cfg, amp] : state.entries()) {
    if (cfg.spin && *cfg.spin == ideal_control_spin(cfg.p1pol, cfg.p1path)) out.set(cfg, amp);
  }
  return out;
}

}  // namespace

RunResult run_steps(const std::vector<CircuitStep>& steps, const QuantumState& input,
                    const Coupling& coupling, std::string_view tag, const RunOptions& options) {
  for (const auto& [cfg, amp] : input.entries()) {
    if (cfg.spin != SpinLabel::kMinus) {
      throw std::invalid_argument("run: the NV spin must be initialized to |->");
    }
  }
  RunResult result;
  result.trace.record(std::string(tag), input);
  QuantumState s = input;
  bool measured = false;
  for (const CircuitStep& step : steps) {
    if (measured) throw std::invalid_argument("run: steps after the spin measurement");
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, CpbsStep>) {
            s = apply_cpbs(s, p.photon, p.route);
          } else if constexpr (std::is_same_v<T, PolGateStep>) {
            s = apply_pol_gate(s, p.photon, p.paths, p.matrix);
          } else if constexpr (std::is_same_v<T, SpinHadamardStep>) {
            s = apply_spin_hadamard(s);
          } else if constexpr (std::is_same_v<T, PathPhaseStep>) {
            s = apply_path_phase(s, p.photon, p.path, p.phase);
          } else if constexpr (std::is_same_v<T, EmitterBlockStep>) {
            s = apply_block(s, p, coupling);
          } else {
            measured = true;
            result.pre_measurement = s;
            const double total = norm_sq(s);
            for (int k = 0; k < 2; ++k) {
              HeraldedBranch& br = result.branches[k];
              br.outcome = static_cast<SpinXOutcome>(k);
              QuantumState projected = project_spin_x(s, br.outcome);
              for (const Correction& c : p.corrections[k]) {
                projected = apply_correction(projected, c);
              }
              const double w = norm_sq(projected);
              br.probability = total > 0.0 ? w / total : 0.0;
              br.state = br.probability > 0.0 ? projected.scaled(1.0 / std::sqrt(br.probability))
                                              : QuantumState{};
              br.projected = std::move(projected);
            }
          }
        },
        step.payload);
    if (step.ends_control_stage && options.herald_control_spin) s = herald_control_spin(s);
    if (step.checkpoint) {
      if (measured) {
        for (const HeraldedBranch& br : result.branches) {
          result.trace.record(*step.checkpoint + "/" + to_string(br.outcome), br.state);
        }
      } else {
        result.trace.record(*step.checkpoint, s);
      }
    }
  }
  if (!measured) result.pre_measurement = s;
  return result;
}

RunResult run(GateKind kind, const QuantumState& input, const Coupling& coupling,
              const RunOptions& options) {
  return run_steps(build_circuit(kind), input, coupling, input_tag(kind), options);
}

// Oracles ---------------------------------------------------------------------

NominalMatrix oracle_matrix(GateKind kind) {
  NominalMatrix u = NominalMatrix::Zero();
  for (int j = 0; j < kNominalDim; ++j) {
    const int p1pol = (j >> 3) & 1;
    const int p1path = (j >> 2) & 1;
    const int p2pol = (j >> 1) & 1;
    const int p2path = j & 1;
    const bool control = p1pol == 1 && p1path == 1;
    if (kind == GateKind::kToffoli) {
      u(j, j) = control && p2pol == 1 && p2path == 1 ? -1.0 : 1.0;
    } else {
      // Controlled swap of photon 2's polarization and path qubits.
      const int i = control ? (p1pol << 3) | (p1path << 2) | (p2path << 1) | p2pol : j;
      u(i, j) = 1.0;
    }
  }
  return u;
}

NominalMatrix toffoli_matrix(ToffoliTarget target) {
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd had;
  had << h, h, h, -h;
  // Qubit order (p1pol, p1path, p2pol, p2path); the target is bit 1 or bit 0.
  const int bit = target == ToffoliTarget::kPhoton2Path ? 0 : 1;
  NominalMatrix hm = NominalMatrix::Zero();
  for (int i = 0; i < kNominalDim; ++i) {
    for (int j = 0; j < kNominalDim; ++j) {
      if ((i & ~(1 << bit)) != (j & ~(1 << bit))) continue;
      hm(i, j) = had((i >> bit) & 1, (j >> bit) & 1);
    }
  }
  return hm * oracle_matrix(GateKind::kToffoli) * hm;
}

bool is_unitary(const NominalMatrix& m, double tol) {
  return (m.adjoint() * m - NominalMatrix::Identity()).cwiseAbs().maxCoeff() <= tol;
}

// Effective maps --------------------------------------------------------------

std::array<double, 2> EffectiveGate::branch_probabilities(const NominalVector& psi) const {
  const double total = (pre_measurement * psi).squaredNorm();
  if (!(total > 0.0)) return {0.0, 0.0};
  return {(branches[0] * psi).squaredNorm() / total, (branches[1] * psi).squaredNorm() / total};
}

double EffectiveGate::survival(const NominalVector& psi) const {
  return (pre_measurement * psi).squaredNorm();
}

EffectiveGate effective_gate_matrix(GateKind kind, const Coupling& coupling,
                                    const RunOptions& options) {
  const std::vector<CircuitStep> steps = build_circuit(kind);
  EffectiveGate gate{kind, PreMeasurementMatrix::Zero(), {NominalMatrix::Zero(), NominalMatrix::Zero()}};
  for (int j = 0; j < kNominalDim; ++j) {
    QuantumState basis;
    basis.set(nominal_config(j, SpinLabel::kMinus), 1.0);
    const RunResult r = run_steps(steps, basis, coupling, input_tag(kind), options);
    gate.pre_measurement.col(j) = to_nominal_spin_vector(r.pre_measurement);
    for (int k = 0; k < 2; ++k) {
      gate.branches[k].col(j) = to_nominal_vector(r.branches[k].projected);
    }
  }
  return gate;
}

}  // namespace nvgate
