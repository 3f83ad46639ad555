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
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace nvgate {

using Complex = std::complex<double>;

/// Tolerance on the squared norm of a physical state.
inline constexpr double kNormSlack = 1e-12;

enum class Photon : std::uint8_t { kOne = 1, kTwo = 2 };

enum class PolLabel : std::uint8_t { kR = 0, kL = 1 };

/// NV ground states |+1> and |-1>. The |0> level never enters a gate.
enum class SpinLabel : std::uint8_t { kPlus = 0, kMinus = 1 };

enum class SpinXOutcome : std::uint8_t { kPlusX = 0, kMinusX = 1 };

enum class PathRole : std::uint8_t { kNominal, kInternal, kLoss };

/// Spatial mode of one photon.
///
/// Labels are interned: two labels with the same name compare equal and
/// share an id. The four nominal modes a1, a2 (photon 1) and b1, b2
/// (photon 2) always exist; circuits register internal arms and absorbing
/// loss modes as they need them. A loss label is terminal: no operation in
/// this library moves amplitude out of it.
class PathLabel {
 public:
  static PathLabel a1();
  static PathLabel a2();
  static PathLabel b1();
  static PathLabel b2();

  /// Returns (registering on first use) an internal arm of `owner`.
  static PathLabel internal(Photon owner, std::string_view name);
  /// Returns (registering on first use) an absorbing loss mode of `owner`.
  static PathLabel loss(Photon owner, std::string_view name);
  /// Looks up an already registered label by name; throws if unknown.
  static PathLabel named(std::string_view name);

  std::string_view name() const;
  Photon photon() const { return photon_; }
  PathRole role() const { return role_; }
  bool is_loss() const { return role_ == PathRole::kLoss; }
  bool is_nominal() const { return role_ == PathRole::kNominal; }
  std::uint16_t id() const { return id_; }

  // The id determines owner and role, so this orders by id.
  friend auto operator<=>(const PathLabel&, const PathLabel&) = default;

 private:
  PathLabel(std::uint16_t id, Photon owner, PathRole role)
      : id_(id), photon_(owner), role_(role) {}
  static PathLabel intern(Photon owner, PathRole role, std::string_view name);

  std::uint16_t id_;
  Photon photon_;
  PathRole role_;
};

using PathSet = std::set<PathLabel>;

/// One labeled configuration, ordered (p1pol, p1path, p2pol, p2path, spin).
/// `spin` is empty once the NV has been measured out.
struct BasisConfig {
  PolLabel p1pol;
  PathLabel p1path;
  PolLabel p2pol;
  PathLabel p2path;
  std::optional<SpinLabel> spin;

  PolLabel pol(Photon p) const { return p == Photon::kOne ? p1pol : p2pol; }
  PathLabel path(Photon p) const { return p == Photon::kOne ? p1path : p2path; }
  void set_pol(Photon p, PolLabel v) { (p == Photon::kOne ? p1pol : p2pol) = v; }
  void set_path(Photon p, PathLabel v) { (p == Photon::kOne ? p1path : p2path) = v; }
  bool has_loss() const { return p1path.is_loss() || p2path.is_loss(); }

  friend auto operator<=>(const BasisConfig&, const BasisConfig&) = default;
};

std::string to_string(PolLabel p);
std::string to_string(SpinLabel s);
std::string to_string(SpinXOutcome o);
std::string to_string(const BasisConfig& c);

/// Sparse, possibly sub-normalized amplitude map over basis configurations.
/// Missing configurations carry amplitude zero.
class QuantumState {
 public:
  using Map = std::map<BasisConfig, Complex>;

  QuantumState() = default;

  Complex amplitude(const BasisConfig& c) const;
  void add(const BasisConfig& c, Complex amp);
  void set(const BasisConfig& c, Complex amp);

  const Map& entries() const { return amps_; }
  std::size_t size() const { return amps_.size(); }
  bool empty() const { return amps_.empty(); }

  /// Drops entries with |amp| <= tol.
  QuantumState pruned(double tol = 0.0) const;

  QuantumState scaled(Complex factor) const;
  /// Sum of |amp|^2 over entries on loss labels.
  double loss_weight() const;
  /// Entries with no loss label.
  QuantumState nominal_part() const;
  bool has_spin() const;

 private:
  Map amps_;
};

QuantumState operator+(const QuantumState& a, const QuantumState& b);

using SingleQubitMatrix = Eigen::Matrix2cd;

namespace gates {
/// Ry(+pi/2) = exp(-i pi/4 sigma_y) in the {R, L} basis.
SingleQubitMatrix ry_plus_half_pi();
SingleQubitMatrix ry_minus_half_pi();
/// Polarization Hadamard (half-wave plate at 22.5 deg).
SingleQubitMatrix hadamard();
SingleQubitMatrix sigma_z();
SingleQubitMatrix identity();
}  // namespace gates

bool is_unitary(const SingleQubitMatrix& m, double tol = 1e-12);

/// Amplitudes of the four single-qubit factors of a product input.
struct InputCoefficients {
  std::array<Complex, 2> p1pol{1.0, 0.0};   // (R1, L1)
  std::array<Complex, 2> p1path{1.0, 0.0};  // (a1, a2)
  std::array<Complex, 2> p2pol{1.0, 0.0};   // (R2, L2)
  std::array<Complex, 2> p2path{1.0, 0.0};  // (b1, b2)
};

/// Real parameterization (cos x, sin x) of each factor.
InputCoefficients coefficients_from_angles(double alpha, double beta,
                                           double gamma, double delta);

/// Product state of the two photons and the NV spin. Throws
/// std::invalid_argument naming the first pair that is not normalized to
/// `tol`.
QuantumState make_input_state(const InputCoefficients& c, SpinLabel spin,
                              double tol = 1e-10);

/// Nominal basis product state with unit amplitude.
QuantumState basis_state(PolLabel p1pol, PathLabel p1path, PolLabel p2pol,
                         PathLabel p2path, std::optional<SpinLabel> spin);

/// Applies `m` to the polarization of `photon` on configurations whose path
/// lies in `paths`. An empty `paths` is a no-op that appends a warning.
QuantumState apply_pol_gate(const QuantumState& state, Photon photon,
                            const PathSet& paths, const SingleQubitMatrix& m,
                            std::vector<std::string>* warnings = nullptr);

/// Spin Hadamard: |+> -> (|+>+|->)/sqrt2, |-> -> (|+>-|->)/sqrt2.
QuantumState apply_spin_hadamard(const QuantumState& state);

/// (pol, input path) -> output path. Pairs not in the map stay put.
using CpbsRoute = std::map<std::pair<PolLabel, PathLabel>, PathLabel>;

/// Lossless polarization-dependent routing. Throws if two occupied inputs
/// land on the same (pol, path), if a source is a loss label, or if a
/// target belongs to the other photon.
QuantumState apply_cpbs(const QuantumState& state, Photon photon,
                        const CpbsRoute& route);

/// Multiplies amplitudes with `photon` on `path` by `phase` (|phase| = 1).
QuantumState apply_path_phase(const QuantumState& state, Photon photon,
                              PathLabel path, Complex phase);

/// <(|+> +/- |->)/sqrt2| applied to the spin register; the result has no
/// spin and is not renormalized.
QuantumState project_spin_x(const QuantumState& state, SpinXOutcome outcome);

struct SpinMeasurement {
  SpinXOutcome outcome;
  /// Photon state of this branch, rescaled so that its squared norm equals
  /// the squared norm of the measured input (loss is kept visible).
  QuantumState branch;
  /// Branch weight relative to the input's squared norm.
  double probability;
};

/// Enumerates both X-basis outcomes. Throws on a zero-norm input or a
/// state without spin. A branch of probability zero has an empty state.
std::array<SpinMeasurement, 2> measure_spin_x(const QuantumState& state);

/// <a|b>, conjugate-linear in `a`.
Complex inner_product(const QuantumState& a, const QuantumState& b);
double norm_sq(const QuantumState& s);
/// Throws on zero norm.
QuantumState renormalize(const QuantumState& s);
/// |<a|b>| / (|a||b|), insensitive to global phase. Throws on zero norm.
double overlap(const QuantumState& a, const QuantumState& b);

// Dense views over the nominal space. Index of a nominal config is
// p1pol*8 + p1path*4 + p2pol*2 + p2path with R=0, L=1, a1/b1=0, a2/b2=1.
inline constexpr int kNominalDim = 16;
using NominalVector = Eigen::Matrix<Complex, kNominalDim, 1>;
using NominalSpinVector = Eigen::Matrix<Complex, 2 * kNominalDim, 1>;

std::optional<int> nominal_index(const BasisConfig& c);
BasisConfig nominal_config(int index, std::optional<SpinLabel> spin);

/// Photon-only view; spin must be absent. Loss entries are dropped.
NominalVector to_nominal_vector(const QuantumState& s);
/// Row 2*k + spin (plus = 0) for nominal config k; spin must be present.
NominalSpinVector to_nominal_spin_vector(const QuantumState& s);
QuantumState from_nominal_vector(const NominalVector& v,
                                 std::optional<SpinLabel> spin);

}  // namespace nvgate
