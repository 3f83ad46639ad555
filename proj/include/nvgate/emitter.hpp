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
#include <map>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "nvgate/statevec.hpp"

namespace nvgate {

/// Cavity and NV rates. Only ratios matter; all values share one unit.
struct EmitterParams {
  double g = 0.0;        // NV-cavity coupling
  double kappa = 1.0;    // cavity field decay into the fibers
  double kappa_s = 0.0;  // side leakage
  double gamma = 1.0;    // dipole decay
  double omega_c = 0.0;
  double omega_0 = 0.0;
  double omega_p = 0.0;

  /// Builds parameters with kappa = gamma = 1 from the Purcell-like ratio
  /// g^2/(kappa gamma) and the leakage ratio kappa_s/kappa. Detunings are
  /// (omega_c - omega_p) and (omega_0 - omega_p) in units of kappa.
  static EmitterParams from_ratios(double g2_over_kappa_gamma, double ks_over_kappa,
                                   double cavity_detuning = 0.0, double dipole_detuning = 0.0);

  /// Throws std::invalid_argument unless g, kappa, gamma > 0 and kappa_s >= 0.
  void validate() const;
};

/// Hot (r, t) and cold (r0, t0) cavity responses.
struct ScatteringCoefficients {
  Complex r;
  Complex t;
  Complex r0;
  Complex t0;

  /// Strong-coupling, leak-free limit: r = 1, t = 0, r0 = 0, t0 = -1.
  static ScatteringCoefficients ideal();
};

/// Evaluates the input-output solution of the NV-cavity system. The
/// transmission carries a single minus sign, so that the cold cavity gives
/// t0 -> -1 without leakage. Cold values are the hot expressions at g = 0.
ScatteringCoefficients coefficients(const EmitterParams& params);

/// Ports of the double-sided cavity: a and c are inputs, b and d outputs.
enum class BlockPort : std::uint8_t { kA = 0, kB = 1, kC = 2, kD = 3 };

std::string to_string(BlockPort p);
bool is_input(BlockPort p);

enum class CoefficientKind : std::uint8_t { kR, kT, kR0, kT0 };

Complex select(const ScatteringCoefficients& c, CoefficientKind k);

struct ScatterTerm {
  CoefficientKind coefficient;
  PolLabel pol;
  BlockPort port;
};

/// Transition rule for one (pol, input port, spin). `primary` is the
/// ideal output (coefficient r or t0), `secondary` the imperfection
/// (t or r0). Transmission always connects a->b and c->d.
struct ScatterRule {
  ScatterTerm primary;
  ScatterTerm secondary;
};

ScatterRule scatter_rule(PolLabel pol, BlockPort input, SpinLabel spin);

/// How a photon's paths connect to the cavity for one traversal.
struct BlockBinding {
  /// Occupied path -> input port (a or c).
  std::map<PathLabel, BlockPort> inputs;
  /// Nominal continuations: (pol, output port) -> path.
  std::map<std::pair<PolLabel, BlockPort>, PathLabel> outputs;
  /// Paths of this photon that do not enter the cavity on this traversal.
  PathSet bypass;
};

/// Non-nominal (pol, output port) -> absorbing loss label.
using LossPolicy = std::map<std::pair<PolLabel, BlockPort>, PathLabel>;

/// Applies the perfect transition rules (coefficients +/-1). Throws if an
/// occupied path of `photon` is neither bound nor in `bypass`, if the state has no spin, or if
/// an ideal output has no nominal continuation.
QuantumState ideal_scatter(const QuantumState& state, Photon photon,
                           const BlockBinding& binding);

/// Applies the imperfect transition rules. Components on a (pol, port) with
/// no nominal continuation go to the loss label given by `loss`; a missing
/// entry throws. Zero coefficients are skipped, so ideal coefficients give
/// exactly the ideal_scatter result.
QuantumState realistic_scatter(const QuantumState& state, Photon photon,
                               const BlockBinding& binding,
                               const ScatteringCoefficients& coeffs,
                               const LossPolicy& loss);

/// 8x8 map from inputs (pol, port in {a, c}, spin) to outputs
/// (pol, port in {b, d}, spin). Row/column index is pol*4 + port*2 + spin
/// with port 0 = a/b and 1 = c/d.
using ScatteringMatrix = Eigen::Matrix<Complex, 8, 8>;

ScatteringMatrix scattering_matrix(const ScatteringCoefficients& coeffs);

}  // namespace nvgate
