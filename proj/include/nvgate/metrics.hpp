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

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nvgate/circuits.hpp"
#include "nvgate/emitter.hpp"

namespace nvgate {

enum class QuadratureRule : std::uint8_t { kPeriodicTrapezoid };

/// Product rule over the four input angles, each on [0, 2pi).
struct QuadratureSpec {
  int nodes_per_axis = 16;
  QuadratureRule rule = QuadratureRule::kPeriodicTrapezoid;

  /// Nodes 2 pi j / N, j = 0..N-1.
  std::vector<double> nodes() const;
  /// Normalized weight of one axis node (1/N).
  double weight() const;
};

/// Smallest node count accepted by the averaging functions.
inline constexpr int kMinQuadratureNodes = 9;

struct AngleTuple {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  InputCoefficients coefficients() const {
    return coefficients_from_angles(alpha, beta, gamma, delta);
  }
};

/// How the realistic output is compared with the ideal one.
enum class FidelityModel : std::uint8_t {
  /// Overlap of photon+spin states just before the spin measurement.
  kPreMeasurement,
  /// Post-feed-forward overlap of each branch, weighted by its probability.
  kBranchWeighted,
  /// Unweighted mean of the branch overlaps.
  kBranchAverage,
  /// Overlap with the sum of both post-feed-forward branches, each aligned
  /// to the global phase of its ideal counterpart.
  kCoherentBranchSum,
};

/// Which surviving amplitude counts towards the yield.
enum class EfficiencyModel : std::uint8_t {
  /// Survival after dropping the wrong spin correlate of photon 1.
  kHeralded,
  /// Squared norm of the full output, both branches summed.
  kTotalSurvival,
};

std::string to_string(FidelityModel m);
std::string to_string(EfficiencyModel m);
FidelityModel parse_fidelity_model(std::string_view name);
EfficiencyModel parse_efficiency_model(std::string_view name);

struct MetricsDiagnostics {
  std::size_t nodes = 0;
  /// Nodes whose realistic output vanished; they contribute zero.
  std::size_t zero_norm_nodes = 0;
  /// max over nodes of |sum of branch weights - pre-measurement survival|.
  double max_branch_sum_error = 0.0;
};

/// Averages |<psi_i|psi_r>|^2 over real product inputs. Throws
/// std::invalid_argument for fewer than kMinQuadratureNodes nodes.
double average_fidelity(GateKind kind, const ScatteringCoefficients& coeffs,
                        const QuadratureSpec& quad = {},
                        FidelityModel model = FidelityModel::kPreMeasurement,
                        MetricsDiagnostics* diag = nullptr);

/// Same, on precomputed effective maps.
double average_fidelity(const EffectiveGate& realistic, const QuadratureSpec& quad = {},
                        FidelityModel model = FidelityModel::kPreMeasurement,
                        MetricsDiagnostics* diag = nullptr);

double average_efficiency_sim(GateKind kind, const ScatteringCoefficients& coeffs,
                              const QuadratureSpec& quad = {},
                              EfficiencyModel model = EfficiencyModel::kHeralded,
                              MetricsDiagnostics* diag = nullptr);

/// Quadrature average of the squared norm of gate.pre_measurement * psi.
double average_survival(const EffectiveGate& gate, const QuadratureSpec& quad = {},
                        MetricsDiagnostics* diag = nullptr);

/// [9 + 3(|r0|-|t0|)^2 + (3 + (|r|-|t|)^2)(1-|t|-|r0|)^2] / 16.
double closed_form_efficiency(const ScatteringCoefficients& c);

/// Effective maps of the ideal gate, computed once per kind.
const EffectiveGate& ideal_effective_gate(GateKind kind);

struct MetricsPoint {
  double gsq_over_kgamma = 0.0;
  double ks_over_k = 0.0;
  double f_toffoli = 0.0;
  double f_fredkin = 0.0;
  double eta_closed = 0.0;
  double eta_sim = 0.0;          // Toffoli circuit
  double eta_sim_fredkin = 0.0;  // equals eta_sim; kept to check it
};

struct MetricsOptions {
  QuadratureSpec quad;
  FidelityModel fidelity = FidelityModel::kPreMeasurement;
  EfficiencyModel efficiency = EfficiencyModel::kHeralded;
};

/// All metrics at resonance for one (g^2/kappa gamma, kappa_s/kappa).
MetricsPoint evaluate_point(double gsq_over_kgamma, double ks_over_k,
                            const MetricsOptions& options = {});

struct SweepGrid {
  std::vector<double> gsq_over_kgamma;
  std::vector<double> ks_over_k;

  /// `steps` evenly spaced values from lo to hi inclusive (lo alone if
  /// steps == 1). Throws on steps < 1 or hi < lo.
  static std::vector<double> linspace(double lo, double hi, int steps);
};

/// Evaluates the grid row-major (gsq outer, ks inner). Points are computed
/// on `threads` workers (0: hardware concurrency); results are stored by
/// grid index, so the output does not depend on scheduling.
std::vector<MetricsPoint> sweep(const SweepGrid& grid, const MetricsOptions& options = {},
                                unsigned threads = 0);

inline constexpr std::string_view kCsvHeader =
    "gsq_over_kgamma,ks_over_k,f_toffoli,f_fredkin,eta_closed,eta_sim";

/// Header plus one row per point, fixed 6-decimal format.
void write_csv(std::ostream& os, const std::vector<MetricsPoint>& points);

}  // namespace nvgate
