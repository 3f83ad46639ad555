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

#include "nvgate/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace nvgate {

std::vector<double> QuadratureSpec::nodes() const {
  if (nodes_per_axis < 2) throw std::invalid_argument("quadrature: need at least 2 nodes");
  std::vector<double> out(static_cast<std::size_t>(nodes_per_axis));
  for (int j = 0; j < nodes_per_axis; ++j) {
    out[static_cast<std::size_t>(j)] = 2.0 * std::numbers::pi * j / nodes_per_axis;
  }
  return out;
}

double QuadratureSpec::weight() const { return 1.0 / nodes_per_axis; }

std::string to_string(FidelityModel m) {
  switch (m) {
    case FidelityModel::kPreMeasurement: return "pre-measurement";
    case FidelityModel::kBranchWeighted: return "branch-weighted";
    case FidelityModel::kBranchAverage: return "branch-average";
    case FidelityModel::kCoherentBranchSum: return "coherent-branch-sum";
  }
  return "?";
}

std::string to_string(EfficiencyModel m) {
  return m == EfficiencyModel::kHeralded ? "heralded" : "total-survival";
}

FidelityModel parse_fidelity_model(std::string_view name) {
  for (auto m : {FidelityModel::kPreMeasurement, FidelityModel::kBranchWeighted,
                 FidelityModel::kBranchAverage, FidelityModel::kCoherentBranchSum}) {
    if (name == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown fidelity model '" + std::string(name) + "'");
}

EfficiencyModel parse_efficiency_model(std::string_view name) {
  for (auto m : {EfficiencyModel::kHeralded, EfficiencyModel::kTotalSurvival}) {
    if (name == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown efficiency model '" + std::string(name) + "'");
}

namespace {

constexpr double kZeroNorm = 1e-300;

void require_nodes(const QuadratureSpec& quad) {
  if (quad.rule != QuadratureRule::kPeriodicTrapezoid) {
    throw std::invalid_argument("quadrature: unsupported rule");
  }
  if (quad.nodes_per_axis < kMinQuadratureNodes) {
    throw std::invalid_argument("quadrature: nodes_per_axis must be >= " +
                                std::to_string(kMinQuadratureNodes));
  }
}

// psi^T M psi for real psi.
Complex form(const NominalMatrix& m, const NominalVector& psi) {
  return psi.transpose() * m * psi;
}

// Calls f(psi) for every node of the product rule; returns the mean of f.
template <typename F>
double integrate(const QuadratureSpec& quad, F&& f) {
  const std::vector<double> x = quad.nodes();
  std::vector<std::array<double, 2>> cs;
  cs.reserve(x.size());
  for (double v : x) cs.push_back({std::cos(v), std::sin(v)});
  double sum = 0.0;
  NominalVector psi;
  for (const auto& a : cs) {
    for (const auto& b : cs) {
      for (const auto& g : cs) {
        for (const auto& d : cs) {
          for (int k = 0; k < kNominalDim; ++k) {
            psi(k) = a[(k >> 3) & 1] * b[(k >> 2) & 1] * g[(k >> 1) & 1] * d[k & 1];
          }
          sum += f(psi);
        }
      }
    }
  }
  const double w = quad.weight();
  return sum * w * w * w * w;
}

// Global phase of an ideal branch relative to the oracle.
Complex branch_phase(const NominalMatrix& ideal_branch, const NominalMatrix& oracle) {
  const Complex tr = (oracle.adjoint() * ideal_branch).trace();
  if (std::abs(tr) == 0.0) return 1.0;
  return tr / std::abs(tr);
}

}  // namespace

const EffectiveGate& ideal_effective_gate(GateKind kind) {
  static const EffectiveGate toffoli = effective_gate_matrix(GateKind::kToffoli, IdealCoupling{});
  static const EffectiveGate fredkin = effective_gate_matrix(GateKind::kFredkin, IdealCoupling{});
  return kind == GateKind::kToffoli ? toffoli : fredkin;
}

double average_fidelity(const EffectiveGate& realistic, const QuadratureSpec& quad,
                        FidelityModel model, MetricsDiagnostics* diag) {
  require_nodes(quad);
  const EffectiveGate& ideal = ideal_effective_gate(realistic.kind);
  const NominalMatrix oracle = oracle_matrix(realistic.kind);

  const NominalMatrix pre_overlap = ideal.pre_measurement.adjoint() * realistic.pre_measurement;
  const NominalMatrix pre_norm = realistic.pre_measurement.adjoint() * realistic.pre_measurement;
  const NominalMatrix ideal_norm = ideal.pre_measurement.adjoint() * ideal.pre_measurement;
  std::array<NominalMatrix, 2> br_overlap;
  std::array<NominalMatrix, 2> br_norm;
  NominalMatrix coherent = NominalMatrix::Zero();
  for (int k = 0; k < 2; ++k) {
    br_overlap[k] = oracle.adjoint() * realistic.branches[k];
    br_norm[k] = realistic.branches[k].adjoint() * realistic.branches[k];
    coherent += std::conj(branch_phase(ideal.branches[k], oracle)) * realistic.branches[k];
  }
  const NominalMatrix coh_overlap = oracle.adjoint() * coherent;
  const NominalMatrix coh_norm = coherent.adjoint() * coherent;

  MetricsDiagnostics local;
  const double avg = integrate(quad, [&](const NominalVector& psi) {
    ++local.nodes;
    const double total = form(pre_norm, psi).real();
    const std::array<double, 2> w{form(br_norm[0], psi).real(), form(br_norm[1], psi).real()};
    local.max_branch_sum_error =
        std::max(local.max_branch_sum_error, std::abs(w[0] + w[1] - total));
    if (total <= kZeroNorm) {
      ++local.zero_norm_nodes;
      return 0.0;
    }
    switch (model) {
      case FidelityModel::kPreMeasurement:
        return std::norm(form(pre_overlap, psi)) / (total * form(ideal_norm, psi).real());
      case FidelityModel::kBranchWeighted:
        return (std::norm(form(br_overlap[0], psi)) + std::norm(form(br_overlap[1], psi))) /
               total;
      case FidelityModel::kBranchAverage: {
        double f = 0.0;
        int n = 0;
        for (int k = 0; k < 2; ++k) {
          if (w[k] <= kZeroNorm) continue;
          f += std::norm(form(br_overlap[k], psi)) / w[k];
          ++n;
        }
        return f / n;
      }
      case FidelityModel::kCoherentBranchSum: {
        const double nc = form(coh_norm, psi).real();
        return nc <= kZeroNorm ? 0.0 : std::norm(form(coh_overlap, psi)) / nc;
      }
    }
    return 0.0;
  });
  if (diag != nullptr) *diag = local;
  return avg;
}

double average_fidelity(GateKind kind, const ScatteringCoefficients& coeffs,
                        const QuadratureSpec& quad, FidelityModel model,
                        MetricsDiagnostics* diag) {
  require_nodes(quad);
  return average_fidelity(effective_gate_matrix(kind, coeffs), quad, model, diag);
}

double average_survival(const EffectiveGate& gate, const QuadratureSpec& quad,
                        MetricsDiagnostics* diag) {
  require_nodes(quad);
  const NominalMatrix pre_norm = gate.pre_measurement.adjoint() * gate.pre_measurement;
  std::array<NominalMatrix, 2> br_norm;
  for (int k = 0; k < 2; ++k) br_norm[k] = gate.branches[k].adjoint() * gate.branches[k];
  MetricsDiagnostics local;
  const double avg = integrate(quad, [&](const NominalVector& psi) {
    ++local.nodes;
    const double total = form(pre_norm, psi).real();
    const double sum = form(br_norm[0], psi).real() + form(br_norm[1], psi).real();
    local.max_branch_sum_error = std::max(local.max_branch_sum_error, std::abs(sum - total));
    if (total <= kZeroNorm) ++local.zero_norm_nodes;
    return total;
  });
  if (diag != nullptr) *diag = local;
  return avg;
}

double average_efficiency_sim(GateKind kind, const ScatteringCoefficients& coeffs,
                              const QuadratureSpec& quad, EfficiencyModel model,
                              MetricsDiagnostics* diag) {
  require_nodes(quad);
  RunOptions options;
  options.herald_control_spin = model == EfficiencyModel::kHeralded;
  return average_survival(effective_gate_matrix(kind, coeffs, options), quad, diag);
}

double closed_form_efficiency(const ScatteringCoefficients& c) {
  const double r = std::abs(c.r);
  const double t = std::abs(c.t);
  const double r0 = std::abs(c.r0);
  const double t0 = std::abs(c.t0);
  const double a = r0 - t0;
  const double b = r - t;
  const double e = 1.0 - t - r0;
  return (9.0 + 3.0 * a * a + (3.0 + b * b) * e * e) / 16.0;
}

MetricsPoint evaluate_point(double gsq_over_kgamma, double ks_over_k,
                            const MetricsOptions& options) {
  require_nodes(options.quad);
  const ScatteringCoefficients c =
      coefficients(EmitterParams::from_ratios(gsq_over_kgamma, ks_over_k));
  MetricsPoint p;
  p.gsq_over_kgamma = gsq_over_kgamma;
  p.ks_over_k = ks_over_k;
  p.eta_closed = closed_form_efficiency(c);

  RunOptions herald;
  herald.herald_control_spin = true;
  const bool heralded = options.efficiency == EfficiencyModel::kHeralded;
  for (GateKind kind : {GateKind::kToffoli, GateKind::kFredkin}) {
    const EffectiveGate gate = effective_gate_matrix(kind, c);
    const double f = average_fidelity(gate, options.quad, options.fidelity);
    const double eta = heralded
                           ? average_survival(effective_gate_matrix(kind, c, herald), options.quad)
                           : average_survival(gate, options.quad);
    if (kind == GateKind::kToffoli) {
      p.f_toffoli = f;
      p.eta_sim = eta;
    } else {
      p.f_fredkin = f;
      p.eta_sim_fredkin = eta;
    }
  }
  return p;
}

std::vector<double> SweepGrid::linspace(double lo, double hi, int steps) {
  if (steps < 1) throw std::invalid_argument("grid: steps must be >= 1");
  if (!(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("grid: need finite bounds with max >= min");
  }
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    v[static_cast<std::size_t>(i)] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
  }
  return v;
}

std::vector<MetricsPoint> sweep(const SweepGrid& grid, const MetricsOptions& options,
                                unsigned threads) {
  require_nodes(options.quad);
  for (double g : grid.gsq_over_kgamma) {
    if (!(g > 0.0)) throw std::invalid_argument("sweep: g^2/(kappa gamma) values must be > 0");
  }
  for (double k : grid.ks_over_k) {
    if (!(k >= 0.0)) throw std::invalid_argument("sweep: kappa_s/kappa values must be >= 0");
  }
  const std::size_t nk = grid.ks_over_k.size();
  const std::size_t n = grid.gsq_over_kgamma.size() * nk;
  std::vector<MetricsPoint> out(n);
  if (n == 0) return out;
  // Warm the shared ideal maps before workers read them.
  ideal_effective_gate(GateKind::kToffoli);
  ideal_effective_gate(GateKind::kFredkin);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = evaluate_point(grid.gsq_over_kgamma[i / nk], grid.ks_over_k[i % nk], options);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

void write_csv(std::ostream& os, const std::vector<MetricsPoint>& points) {
  os << kCsvHeader << '\n';
  char buf[160];
  for (const MetricsPoint& p : points) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", p.gsq_over_kgamma,
                  p.ks_over_k, p.f_toffoli, p.f_fredkin, p.eta_closed, p.eta_sim);
    os << buf;
  }
}

}  // namespace nvgate
