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

#include "nvgate/statevec.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace nvgate {

namespace {

struct PathEntry {
  std::string name;
  Photon photon;
  PathRole role;
};

class PathRegistry {
 public:
  static PathRegistry& instance() {
    static PathRegistry registry;
    return registry;
  }

  std::uint16_t intern(Photon owner, PathRole role, std::string_view name) {
    std::lock_guard lock(mu_);
    if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
      const PathEntry& e = entries_[it->second];
      if (e.photon != owner || e.role != role) {
        throw std::invalid_argument("path label '" + std::string(name) +
                                    "' already registered with a different "
                                    "owner or role");
      }
      return it->second;
    }
    if (entries_.size() >= std::numeric_limits<std::uint16_t>::max()) {
      throw std::length_error("path label registry is full");
    }
    auto id = static_cast<std::uint16_t>(entries_.size());
    entries_.push_back({std::string(name), owner, role});
    by_name_.emplace(std::string(name), id);
    return id;
  }

  std::optional<std::uint16_t> find(std::string_view name) const {
    std::lock_guard lock(mu_);
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  // Entries live in a deque and are never erased, so references stay valid.
  const PathEntry& at(std::uint16_t id) const {
    std::lock_guard lock(mu_);
    return entries_.at(id);
  }

 private:
  PathRegistry() {
    intern(Photon::kOne, PathRole::kNominal, "a1");
    intern(Photon::kOne, PathRole::kNominal, "a2");
    intern(Photon::kTwo, PathRole::kNominal, "b1");
    intern(Photon::kTwo, PathRole::kNominal, "b2");
  }

  mutable std::mutex mu_;
  std::deque<PathEntry> entries_;
  std::map<std::string, std::uint16_t, std::less<>> by_name_;
};

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_owner(PathLabel path, Photon photon, const char* what) {
  if (path.photon() != photon) {
    throw std::invalid_argument(std::string(what) + ": path '" +
                                std::string(path.name()) +
                                "' does not belong to photon " +
                                std::to_string(static_cast<int>(photon)));
  }
}

}  // namespace

PathLabel PathLabel::intern(Photon owner, PathRole role, std::string_view name) {
  return PathLabel(PathRegistry::instance().intern(owner, role, name), owner, role);
}

PathLabel PathLabel::a1() { return PathLabel(0, Photon::kOne, PathRole::kNominal); }
PathLabel PathLabel::a2() { return PathLabel(1, Photon::kOne, PathRole::kNominal); }
PathLabel PathLabel::b1() { return PathLabel(2, Photon::kTwo, PathRole::kNominal); }
PathLabel PathLabel::b2() { return PathLabel(3, Photon::kTwo, PathRole::kNominal); }

PathLabel PathLabel::internal(Photon owner, std::string_view name) {
  return intern(owner, PathRole::kInternal, name);
}

PathLabel PathLabel::loss(Photon owner, std::string_view name) {
  return intern(owner, PathRole::kLoss, name);
}

PathLabel PathLabel::named(std::string_view name) {
  auto& registry = PathRegistry::instance();
  auto id = registry.find(name);
  if (!id) throw std::invalid_argument("unknown path label '" + std::string(name) + "'");
  const PathEntry& e = registry.at(*id);
  return PathLabel(*id, e.photon, e.role);
}

std::string_view PathLabel::name() const { return PathRegistry::instance().at(id_).name; }

std::string to_string(PolLabel p) { return p == PolLabel::kR ? "R" : "L"; }
std::string to_string(SpinLabel s) { return s == SpinLabel::kPlus ? "+" : "-"; }
std::string to_string(SpinXOutcome o) {
  return o == SpinXOutcome::kPlusX ? "plus_x" : "minus_x";
}

std::string to_string(const BasisConfig& c) {
  std::string out = to_string(c.p1pol) + "1," + std::string(c.p1path.name()) + "," +
                    to_string(c.p2pol) + "2," + std::string(c.p2path.name());
  if (c.spin) out += "," + to_string(*c.spin);
  return out;
}

// QuantumState --------------------------------------------------------------

Complex QuantumState::amplitude(const BasisConfig& c) const {
  auto it = amps_.find(c);
  return it == amps_.end() ? Complex{} : it->second;
}

void QuantumState::add(const BasisConfig& c, Complex amp) {
  auto [it, inserted] = amps_.try_emplace(c, amp);
  if (!inserted) it->second += amp;
}

void QuantumState::set(const BasisConfig& c, Complex amp) { amps_[c] = amp; }

QuantumState QuantumState::pruned(double tol) const {
  QuantumState out;
  for (const auto& [c, a] : amps_) {
    if (std::abs(a) > tol) out.amps_.emplace_hint(out.amps_.end(), c, a);
  }
  return out;
}

QuantumState QuantumState::scaled(Complex factor) const {
  QuantumState out = *this;
  for (auto& [c, a] : out.amps_) a *= factor;
  return out;
}

double QuantumState::loss_weight() const {
  double w = 0.0;
  for (const auto& [c, a] : amps_) {
    if (c.has_loss()) w += std::norm(a);
  }
  return w;
}

QuantumState QuantumState::nominal_part() const {
  QuantumState out;
  for (const auto& [c, a] : amps_) {
    if (!c.has_loss()) out.amps_.emplace_hint(out.amps_.end(), c, a);
  }
  return out;
}

bool QuantumState::has_spin() const {
  for (const auto& [c, a] : amps_) {
    if (!c.spin) return false;
  }
  return !amps_.empty();
}

QuantumState operator+(const QuantumState& a, const QuantumState& b) {
  QuantumState out = a;
  for (const auto& [c, amp] : b.entries()) out.add(c, amp);
  return out;
}

// Gates ---------------------------------------------------------------------

namespace gates {

SingleQubitMatrix ry_plus_half_pi() {
  SingleQubitMatrix m;
  m << 1.0, -1.0, 1.0, 1.0;
  return m * kInvSqrt2;
}

SingleQubitMatrix ry_minus_half_pi() {
  SingleQubitMatrix m;
  m << 1.0, 1.0, -1.0, 1.0;
  return m * kInvSqrt2;
}

SingleQubitMatrix hadamard() {
  SingleQubitMatrix m;
  m << 1.0, 1.0, 1.0, -1.0;
  return m * kInvSqrt2;
}

SingleQubitMatrix sigma_z() {
  SingleQubitMatrix m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

SingleQubitMatrix identity() { return SingleQubitMatrix::Identity(); }

}  // namespace gates

bool is_unitary(const SingleQubitMatrix& m, double tol) {
  return (m.adjoint() * m - SingleQubitMatrix::Identity()).cwiseAbs().maxCoeff() <= tol;
}

// Construction --------------------------------------------------------------

InputCoefficients coefficients_from_angles(double alpha, double beta,
                                           double gamma, double delta) {
  InputCoefficients c;
  c.p1pol = {std::cos(alpha), std::sin(alpha)};
  c.p1path = {std::cos(beta), std::sin(beta)};
  c.p2pol = {std::cos(gamma), std::sin(gamma)};
  c.p2path = {std::cos(delta), std::sin(delta)};
  return c;
}

QuantumState make_input_state(const InputCoefficients& c, SpinLabel spin, double tol) {
  const std::array<std::pair<const char*, const std::array<Complex, 2>*>, 4> pairs{{
      {"photon-1 polarization (alpha)", &c.p1pol},
      {"photon-1 path (beta)", &c.p1path},
      {"photon-2 polarization (gamma)", &c.p2pol},
      {"photon-2 path (delta)", &c.p2path},
  }};
  for (const auto& [name, pair] : pairs) {
    double n = std::norm((*pair)[0]) + std::norm((*pair)[1]);
    if (!(std::abs(n - 1.0) <= tol)) {
      throw std::invalid_argument(std::string("input coefficients not normalized: ") +
                                  name + " has squared norm " + std::to_string(n));
    }
  }
  const std::array<PathLabel, 2> p1paths{PathLabel::a1(), PathLabel::a2()};
  const std::array<PathLabel, 2> p2paths{PathLabel::b1(), PathLabel::b2()};
  QuantumState s;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          Complex amp = c.p1pol[i] * c.p1path[j] * c.p2pol[k] * c.p2path[l];
          if (amp == Complex{}) continue;
          s.set({static_cast<PolLabel>(i), p1paths[j], static_cast<PolLabel>(k), p2paths[l], spin},
                amp);
        }
      }
    }
  }
  return s;
}

QuantumState basis_state(PolLabel p1pol, PathLabel p1path, PolLabel p2pol,
                         PathLabel p2path, std::optional<SpinLabel> spin) {
  require_owner(p1path, Photon::kOne, "basis_state");
  require_owner(p2path, Photon::kTwo, "basis_state");
  QuantumState s;
  s.set({p1pol, p1path, p2pol, p2path, spin}, 1.0);
  return s;
}

// Operations ----------------------------------------------------------------

QuantumState apply_pol_gate(const QuantumState& state, Photon photon,
                            const PathSet& paths, const SingleQubitMatrix& m,
                            std::vector<std::string>* warnings) {
  if (paths.empty()) {
    if (warnings) warnings->push_back("apply_pol_gate: empty path set, gate skipped");
    return state;
  }
  for (PathLabel p : paths) {
    require_owner(p, photon, "apply_pol_gate");
    if (p.is_loss()) {
      throw std::invalid_argument("apply_pol_gate: loss label '" + std::string(p.name()) +
                                  "' cannot be acted on");
    }
  }
  QuantumState out;
  for (const auto& [c, amp] : state.entries()) {
    if (!paths.contains(c.path(photon))) {
      out.add(c, amp);
      continue;
    }
    const int col = static_cast<int>(c.pol(photon));
    for (int row = 0; row < 2; ++row) {
      Complex coef = m(row, col);
      if (coef == Complex{}) continue;
      BasisConfig next = c;
      next.set_pol(photon, static_cast<PolLabel>(row));
      out.add(next, coef * amp);
    }
  }
  return out;
}

QuantumState apply_spin_hadamard(const QuantumState& state) {
  QuantumState out;
  for (const auto& [c, amp] : state.entries()) {
    if (!c.spin) throw std::invalid_argument("apply_spin_hadamard: state has no spin register");
    const double sign = *c.spin == SpinLabel::kPlus ? 1.0 : -1.0;
    BasisConfig plus = c;
    plus.spin = SpinLabel::kPlus;
    BasisConfig minus = c;
    minus.spin = SpinLabel::kMinus;
    out.add(plus, kInvSqrt2 * amp);
    out.add(minus, sign * kInvSqrt2 * amp);
  }
  return out;
}

QuantumState apply_cpbs(const QuantumState& state, Photon photon, const CpbsRoute& route) {
  for (const auto& [in, target] : route) {
    require_owner(in.second, photon, "apply_cpbs");
    require_owner(target, photon, "apply_cpbs");
    if (in.second.is_loss()) {
      throw std::invalid_argument("apply_cpbs: loss label '" + std::string(in.second.name()) +
                                  "' cannot be routed");
    }
  }
  // Injectivity over occupied (pol, path) pairs, including unrouted ones.
  std::map<std::pair<PolLabel, PathLabel>, std::pair<PolLabel, PathLabel>> image;
  QuantumState out;
  for (const auto& [c, amp] : state.entries()) {
    std::pair<PolLabel, PathLabel> src{c.pol(photon), c.path(photon)};
    auto it = route.find(src);
    PathLabel dst = it == route.end() ? src.second : it->second;
    std::pair<PolLabel, PathLabel> dst_key{src.first, dst};
    auto [seen, fresh] = image.try_emplace(dst_key, src);
    if (!fresh && seen->second != src) {
      throw std::invalid_argument("apply_cpbs: route collision at (" + to_string(src.first) +
                                  ", " + std::string(dst.name()) + ")");
    }
    BasisConfig next = c;
    next.set_path(photon, dst);
    out.add(next, amp);
  }
  return out;
}

QuantumState apply_path_phase(const QuantumState& state, Photon photon, PathLabel path,
                              Complex phase) {
  require_owner(path, photon, "apply_path_phase");
  if (std::abs(std::abs(phase) - 1.0) > 1e-12) {
    throw std::invalid_argument("apply_path_phase: phase must have unit modulus");
  }
  if (path.is_loss()) return state;
  QuantumState result;
  for (const auto& [c, amp] : state.entries()) {
    result.add(c, c.path(photon) == path ? amp * phase : amp);
  }
  return result;
}

QuantumState project_spin_x(const QuantumState& state, SpinXOutcome outcome) {
  const double minus_sign = outcome == SpinXOutcome::kPlusX ? 1.0 : -1.0;
  QuantumState out;
  for (const auto& [c, amp] : state.entries()) {
    if (!c.spin) throw std::invalid_argument("project_spin_x: state has no spin register");
    const double f = *c.spin == SpinLabel::kPlus ? kInvSqrt2 : minus_sign * kInvSqrt2;
    BasisConfig photons = c;
    photons.spin.reset();
    out.add(photons, f * amp);
  }
  return out;
}

std::array<SpinMeasurement, 2> measure_spin_x(const QuantumState& state) {
  const double total = norm_sq(state);
  if (!(total > 0.0)) throw std::invalid_argument("measure_spin_x: zero-norm state");
  std::array<SpinMeasurement, 2> result;
  for (int k = 0; k < 2; ++k) {
    auto outcome = static_cast<SpinXOutcome>(k);
    QuantumState projected = project_spin_x(state, outcome);
    const double w = norm_sq(projected);
    const double p = w / total;
    QuantumState branch = p > 0.0 ? projected.scaled(1.0 / std::sqrt(p)) : QuantumState{};
    result[k] = SpinMeasurement{outcome, std::move(branch), p};
  }
  return result;
}

Complex inner_product(const QuantumState& a, const QuantumState& b) {
  Complex acc{};
  const auto& small = a.size() <= b.size() ? a.entries() : b.entries();
  const bool a_small = a.size() <= b.size();
  for (const auto& [c, amp] : small) {
    Complex other = a_small ? b.amplitude(c) : a.amplitude(c);
    acc += a_small ? std::conj(amp) * other : std::conj(other) * amp;
  }
  return acc;
}

double norm_sq(const QuantumState& s) {
  double acc = 0.0;
  for (const auto& [c, amp] : s.entries()) acc += std::norm(amp);
  return acc;
}

QuantumState renormalize(const QuantumState& s) {
  const double n = norm_sq(s);
  if (!(n > 0.0)) throw std::invalid_argument("renormalize: zero-norm state");
  return s.scaled(1.0 / std::sqrt(n));
}

double overlap(const QuantumState& a, const QuantumState& b) {
  const double na = norm_sq(a);
  const double nb = norm_sq(b);
  if (!(na > 0.0) || !(nb > 0.0)) throw std::invalid_argument("overlap: zero-norm state");
  return std::abs(inner_product(a, b)) / std::sqrt(na * nb);
}

// Dense views ---------------------------------------------------------------

std::optional<int> nominal_index(const BasisConfig& c) {
  if (!c.p1path.is_nominal() || !c.p2path.is_nominal()) return std::nullopt;
  const int p1path = c.p1path == PathLabel::a2() ? 1 : 0;
  const int p2path = c.p2path == PathLabel::b2() ? 1 : 0;
  return static_cast<int>(c.p1pol) * 8 + p1path * 4 + static_cast<int>(c.p2pol) * 2 + p2path;
}

BasisConfig nominal_config(int index, std::optional<SpinLabel> spin) {
  if (index < 0 || index >= kNominalDim) throw std::out_of_range("nominal_config: index");
  return BasisConfig{static_cast<PolLabel>((index >> 3) & 1),
                     (index >> 2) & 1 ? PathLabel::a2() : PathLabel::a1(),
                     static_cast<PolLabel>((index >> 1) & 1),
                     index & 1 ? PathLabel::b2() : PathLabel::b1(), spin};
}

NominalVector to_nominal_vector(const QuantumState& s) {
  NominalVector v = NominalVector::Zero();
  for (const auto& [c, amp] : s.entries()) {
    if (c.spin) throw std::invalid_argument("to_nominal_vector: state still carries a spin");
    if (auto k = nominal_index(c)) v(*k) += amp;
  }
  return v;
}

NominalSpinVector to_nominal_spin_vector(const QuantumState& s) {
  NominalSpinVector v = NominalSpinVector::Zero();
  for (const auto& [c, amp] : s.entries()) {
    if (!c.spin) throw std::invalid_argument("to_nominal_spin_vector: state has no spin");
    if (auto k = nominal_index(c)) v(2 * *k + static_cast<int>(*c.spin)) += amp;
  }
  return v;
}

QuantumState from_nominal_vector(const NominalVector& v, std::optional<SpinLabel> spin) {
  QuantumState s;
  for (int k = 0; k < kNominalDim; ++k) {
    if (v(k) != Complex{}) s.set(nominal_config(k, spin), v(k));
  }
  return s;
}

}  // namespace nvgate
