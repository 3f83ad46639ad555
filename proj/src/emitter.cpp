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

#include "nvgate/emitter.hpp"

#include <cmath>
#include <stdexcept>

namespace nvgate {

EmitterParams EmitterParams::from_ratios(double g2_over_kappa_gamma, double ks_over_kappa,
                                         double cavity_detuning, double dipole_detuning) {
  if (!(g2_over_kappa_gamma > 0.0)) {
    throw std::invalid_argument("g^2/(kappa gamma) must be positive");
  }
  EmitterParams p;
  p.kappa = 1.0;
  p.gamma = 1.0;
  p.g = std::sqrt(g2_over_kappa_gamma);
  p.kappa_s = ks_over_kappa;
  p.omega_p = 0.0;
  p.omega_c = cavity_detuning;
  p.omega_0 = dipole_detuning;
  p.validate();
  return p;
}

void EmitterParams::validate() const {
  if (!(g > 0.0)) throw std::invalid_argument("EmitterParams: g must be positive");
  if (!(kappa > 0.0)) throw std::invalid_argument("EmitterParams: kappa must be positive");
  if (!(gamma > 0.0)) throw std::invalid_argument("EmitterParams: gamma must be positive");
  if (!(kappa_s >= 0.0)) throw std::invalid_argument("EmitterParams: kappa_s must be >= 0");
  for (double w : {omega_c, omega_0, omega_p}) {
    if (!std::isfinite(w)) throw std::invalid_argument("EmitterParams: non-finite frequency");
  }
}

ScatteringCoefficients ScatteringCoefficients::ideal() {
  return {Complex{1.0, 0.0}, Complex{}, Complex{}, Complex{-1.0, 0.0}};
}

namespace {

struct Response {
  Complex r;
  Complex t;
};

Response cavity_response(const EmitterParams& p, double g) {
  const Complex i{0.0, 1.0};
  const Complex dipole = i * (p.omega_0 - p.omega_p) + p.gamma / 2.0;
  const Complex cavity = i * (p.omega_c - p.omega_p);
  const Complex denom = dipole * (cavity + p.kappa + p.kappa_s / 2.0) + g * g;
  if (std::abs(denom) == 0.0) throw std::domain_error("cavity response: vanishing denominator");
  return {(dipole * (cavity + p.kappa_s / 2.0) + g * g) / denom, -p.kappa * dipole / denom};
}

}  // namespace

ScatteringCoefficients coefficients(const EmitterParams& params) {
  params.validate();
  const Response hot = cavity_response(params, params.g);
  const Response cold = cavity_response(params, 0.0);
  return {hot.r, hot.t, cold.r, cold.t};
}

std::string to_string(BlockPort p) {
  switch (p) {
    case BlockPort::kA: return "a";
    case BlockPort::kB: return "b";
    case BlockPort::kC: return "c";
    case BlockPort::kD: return "d";
  }
  return "?";
}

bool is_input(BlockPort p) { return p == BlockPort::kA || p == BlockPort::kC; }

Complex select(const ScatteringCoefficients& c, CoefficientKind k) {
  switch (k) {
    case CoefficientKind::kR: return c.r;
    case CoefficientKind::kT: return c.t;
    case CoefficientKind::kR0: return c.r0;
    case CoefficientKind::kT0: return c.t0;
  }
  return {};
}

ScatterRule scatter_rule(PolLabel pol, BlockPort input, SpinLabel spin) {
  using enum CoefficientKind;
  constexpr auto R = PolLabel::kR;
  constexpr auto L = PolLabel::kL;
  constexpr auto a = BlockPort::kA;
  constexpr auto b = BlockPort::kB;
  constexpr auto c = BlockPort::kC;
  constexpr auto d = BlockPort::kD;
  const bool plus = spin == SpinLabel::kPlus;
  // A photon coupled to the populated transition sees the hot cavity and is
  // reflected with a polarization flip; otherwise it is transmitted.
  if (input == a && pol == R) {
    return plus ? ScatterRule{{kR, L, d}, {kT, R, b}} : ScatterRule{{kT0, R, b}, {kR0, L, d}};
  }
  if (input == c && pol == L) {
    return plus ? ScatterRule{{kR, R, b}, {kT, L, d}} : ScatterRule{{kT0, L, d}, {kR0, R, b}};
  }
  if (input == c && pol == R) {
    return plus ? ScatterRule{{kT0, R, d}, {kR0, L, b}} : ScatterRule{{kR, L, b}, {kT, R, d}};
  }
  if (input == a && pol == L) {
    return plus ? ScatterRule{{kT0, L, b}, {kR0, R, d}} : ScatterRule{{kR, R, d}, {kT, L, b}};
  }
  throw std::invalid_argument("scatter_rule: port " + to_string(input) + " is not an input");
}

namespace {

QuantumState scatter(const QuantumState& state, Photon photon, const BlockBinding& binding,
                     const ScatteringCoefficients& coeffs, const LossPolicy* loss) {
  for (const auto& [path, port] : binding.inputs) {
    if (path.photon() != photon || path.is_loss() || binding.bypass.contains(path)) {
      throw std::invalid_argument("scatter: bad input path '" + std::string(path.name()) + "'");
    }
    if (!is_input(port)) {
      throw std::invalid_argument("scatter: path '" + std::string(path.name()) +
                                  "' bound to output port " + to_string(port));
    }
  }
  for (const auto& [key, path] : binding.outputs) {
    if (path.photon() != photon) {
      throw std::invalid_argument("scatter: output path of the wrong photon");
    }
  }

  QuantumState out;
  for (const auto& [cfg, amp] : state.entries()) {
    const PathLabel path = cfg.path(photon);
    auto in = binding.inputs.find(path);
    if (in == binding.inputs.end()) {
      if (path.is_loss() || binding.bypass.contains(path)) {
        out.add(cfg, amp);
        continue;
      }
      throw std::invalid_argument("scatter: occupied path '" + std::string(path.name()) +
                                  "' is not bound to a port");
    }
    if (!cfg.spin) throw std::invalid_argument("scatter: state has no spin register");
    const ScatterRule rule = scatter_rule(cfg.pol(photon), in->second, *cfg.spin);
    for (const ScatterTerm& term : {rule.primary, rule.secondary}) {
      const Complex coef = select(coeffs, term.coefficient);
      if (coef == Complex{}) continue;
      const std::pair<PolLabel, BlockPort> key{term.pol, term.port};
      PathLabel target = path;
      if (auto o = binding.outputs.find(key); o != binding.outputs.end()) {
        target = o->second;
      } else if (loss == nullptr) {
        throw std::invalid_argument("ideal_scatter: output (" + to_string(term.pol) + ", " +
                                    to_string(term.port) + ") has no continuation");
      } else if (auto l = loss->find(key); l != loss->end()) {
        if (!l->second.is_loss() || l->second.photon() != photon) {
          throw std::invalid_argument("realistic_scatter: loss policy target '" +
                                      std::string(l->second.name()) + "' is not a loss label");
        }
        target = l->second;
      } else {
        throw std::invalid_argument("realistic_scatter: no loss policy entry for (" +
                                    to_string(term.pol) + ", " + to_string(term.port) + ")");
      }
      BasisConfig next = cfg;
      next.set_pol(photon, term.pol);
      next.set_path(photon, target);
      out.add(next, coef * amp);
    }
  }
  return out;
}

}  // namespace

QuantumState ideal_scatter(const QuantumState& state, Photon photon,
                           const BlockBinding& binding) {
  return scatter(state, photon, binding, ScatteringCoefficients::ideal(), nullptr);
}

QuantumState realistic_scatter(const QuantumState& state, Photon photon,
                               const BlockBinding& binding,
                               const ScatteringCoefficients& coeffs, const LossPolicy& loss) {
  for (Complex v : {coeffs.r, coeffs.t, coeffs.r0, coeffs.t0}) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("realistic_scatter: non-finite coefficient");
    }
  }
  return scatter(state, photon, binding, coeffs, &loss);
}

ScatteringMatrix scattering_matrix(const ScatteringCoefficients& coeffs) {
  ScatteringMatrix m = ScatteringMatrix::Zero();
  auto index = [](PolLabel pol, BlockPort port, SpinLabel spin) {
    const int side = (port == BlockPort::kA || port == BlockPort::kB) ? 0 : 1;
    return static_cast<int>(pol) * 4 + side * 2 + static_cast<int>(spin);
  };
  for (PolLabel pol : {PolLabel::kR, PolLabel::kL}) {
    for (BlockPort port : {BlockPort::kA, BlockPort::kC}) {
      for (SpinLabel spin : {SpinLabel::kPlus, SpinLabel::kMinus}) {
        const ScatterRule rule = scatter_rule(pol, port, spin);
        const int col = index(pol, port, spin);
        for (const ScatterTerm& term : {rule.primary, rule.secondary}) {
          m(index(term.pol, term.port, spin), col) += select(coeffs, term.coefficient);
        }
      }
    }
  }
  return m;
}

}  // namespace nvgate
