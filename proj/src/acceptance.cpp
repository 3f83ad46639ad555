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

#include "nvgate/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nvgate/emitter.hpp"
#include "nvgate/metrics.hpp"

namespace nvgate::acceptance {

namespace {

constexpr auto R = PolLabel::kR;
constexpr auto L = PolLabel::kL;
constexpr auto kPlus = SpinLabel::kPlus;
constexpr auto kMinus = SpinLabel::kMinus;

using Spin = std::optional<SpinLabel>;

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Photon-2 two-mode amplitudes, indexed [pol][path].
using Photon2 = std::array<std::array<Complex, 2>, 2>;

Photon2 product2(const InputCoefficients& c) {
  Photon2 p;
  for (int s = 0; s < 2; ++s) {
    for (int b = 0; b < 2; ++b) p[s][b] = c.p2pol[s] * c.p2path[b];
  }
  return p;
}

PathLabel p1_path(int i) { return i == 0 ? PathLabel::a1() : PathLabel::a2(); }
PathLabel p2_path(int i) { return i == 0 ? PathLabel::b1() : PathLabel::b2(); }

void add_terms(QuantumState& s, Complex amp1, PolLabel pol1, int path1, const Photon2& p2,
               Spin spin) {
  for (int q = 0; q < 2; ++q) {
    for (int b = 0; b < 2; ++b) {
      const Complex a = amp1 * p2[q][b];
      if (a == Complex{}) continue;
      s.add(BasisConfig{pol1, p1_path(path1), static_cast<PolLabel>(q), p2_path(b), spin}, a);
    }
  }
}

// Calls f(pol1, path1, amp1, is_control) over the four photon-1 configurations.
template <typename F>
void for_photon1(const InputCoefficients& c, F&& f) {
  for (int p = 0; p < 2; ++p) {
    for (int a = 0; a < 2; ++a) {
      f(static_cast<PolLabel>(p), a, c.p1pol[p] * c.p1path[a], p == 1 && a == 1);
    }
  }
}

QuantumState toffoli_oracle(std::string_view tag, const InputCoefficients& c) {
  const Photon2 prod = product2(c);
  const Complex g1 = c.p2pol[0], g2 = c.p2pol[1], d1 = c.p2path[0], d2 = c.p2path[1];
  // gamma1 R2 (d1 b1 + s1 d2 b2) + gamma2 L2 (d1 b1 + s2 d2 b2)
  auto signed_b2 = [&](double s1, double s2) {
    return Photon2{{{g1 * d1, s1 * g1 * d2}, {g2 * d1, s2 * g2 * d2}}};
  };
  QuantumState s;
  if (tag == "psi1") {
    for_photon1(c, [&](PolLabel p, int a, Complex amp, bool ctl) {
      add_terms(s, amp, p, a, prod, ctl ? kPlus : kMinus);
    });
  } else if (tag == "psi2") {
    for_photon1(c, [&](PolLabel p, int a, Complex amp, bool ctl) {
      add_terms(s, amp, p, a, ctl ? signed_b2(-1, 1) : signed_b2(-1, -1), ctl ? kPlus : kMinus);
    });
  } else if (tag == "psi3") {
    for_photon1(c, [&](PolLabel p, int a, Complex amp, bool ctl) {
      add_terms(s, amp, p, a, ctl ? signed_b2(1, -1) : prod, std::nullopt);
    });
  } else {
    throw std::invalid_argument("no Toffoli checkpoint '" + std::string(tag) + "'");
  }
  return s;
}

QuantumState fredkin_oracle(std::string_view tag, const InputCoefficients& c) {
  const Photon2 prod = product2(c);
  const Complex g1 = c.p2pol[0], g2 = c.p2pol[1], d1 = c.p2path[0], d2 = c.p2path[1];
  // After CPBS5: R2 swaps b1 and b2.
  const Photon2 routed{{{g1 * d2, g1 * d1}, {g2 * d1, g2 * d2}}};
  // Control branch after the block: R2 b2, L2 b1, R2 b1, L2 b2 weights.
  const Photon2 control_block{{{g2 * d1, g1 * d1}, {g1 * d2, g2 * d2}}};
  // Swapped output (d1 R2 + d2 L2)(g1 b1 + g2 b2).
  const Photon2 swapped{{{d1 * g1, d1 * g2}, {d2 * g1, d2 * g2}}};
  QuantumState s;
  if (tag == "phi1") {
    for_photon1(c, [&](PolLabel p, int a, Complex amp, bool ctl) {
      add_terms(s, ctl ? -amp : amp, p, a, prod, ctl ? kPlus : kMinus);
    });
  } else if (tag == "phi3") {
    for_photon1(c, [&](PolLabel p, int a, Complex amp, bool ctl) {
      add_terms(s, ctl ? -amp : amp, p, a, routed, ctl ? kPlus : kMinus);
    });
  } else if (tag == "phi4") {
    for_photon1(c, [&](PolLabel p, int a, Complex amp, bool ctl) {
      add_terms(s, ctl ? -amp : amp, p, a, ctl ? control_block : routed, ctl ? kPlus : kMinus);
    });
  } else if (tag == "phi5") {
    for_photon1(c, [&](PolLabel p, int a, Complex amp, bool ctl) {
      add_terms(s, ctl ? -amp : amp, p, a, ctl ? swapped : prod, ctl ? kPlus : kMinus);
    });
  } else if (tag == "phi6") {
    for_photon1(c, [&](PolLabel p, int a, Complex amp, bool ctl) {
      add_terms(s, amp, p, a, ctl ? swapped : prod, std::nullopt);
    });
  } else {
    throw std::invalid_argument("no Fredkin checkpoint '" + std::string(tag) + "'");
  }
  return s;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::array<Complex, 2> random_pair(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::array<Complex, 2> v{Complex{n(rng), n(rng)}, Complex{n(rng), n(rng)}};
  const double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  return {v[0] / norm, v[1] / norm};
}

InputCoefficients random_product(std::mt19937_64& rng) {
  return {random_pair(rng), random_pair(rng), random_pair(rng), random_pair(rng)};
}

NominalVector product_vector(const InputCoefficients& c) {
  NominalVector v;
  for (int k = 0; k < kNominalDim; ++k) {
    v(k) = c.p1pol[(k >> 3) & 1] * c.p1path[(k >> 2) & 1] * c.p2pol[(k >> 1) & 1] * c.p2path[k & 1];
  }
  return v;
}

ScatteringCoefficients at(double gsq, double ks) {
  return coefficients(EmitterParams::from_ratios(gsq, ks));
}

struct QuotedPoint {
  double gsq;
  double ks;
  double eta;
  double f_toffoli;
  double f_fredkin;
};

constexpr std::array<QuotedPoint, 2> kQuoted{{{2.4, 0.1, 0.847014, 0.980436, 0.979516},
                                               {2.4, 1.0, 0.63922, 0.884273, 0.868208}}};

// 1. Ideal circuits against the oracle matrices.
CriterionResult oracle_equivalence(const Options& opt) {
  CriterionResult res{1, "ideal-gate oracle equivalence", true, "", 0.0};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(opt.seed);
  double worst = 1.0;
  int runs = 0;
  for (GateKind kind : {GateKind::kToffoli, GateKind::kFredkin}) {
    const NominalMatrix u = oracle_matrix(kind);
    auto check = [&](const NominalVector& in) {
      const QuantumState input = from_nominal_vector(in, kMinus);
      const QuantumState expected = from_nominal_vector(u * in, std::nullopt);
      const RunResult r = run(kind, input, IdealCoupling{});
      for (const HeraldedBranch& br : r.branches) {
        if (br.probability <= 0.0) continue;
        worst = std::min(worst, overlap(br.state, expected));
      }
      ++runs;
    };
    for (int j = 0; j < kNominalDim; ++j) check(NominalVector::Unit(j));
    for (int i = 0; i < 100; ++i) check(product_vector(random_product(rng)));
  }
  res.seconds = seconds_since(t0);
  res.pass = worst >= 1.0 - kOracleOverlapTol && res.seconds < kOracleBudgetSeconds;
  res.detail = fmt("%d runs, min overlap 1 - %.3e (tol %.0e), %.3f s (budget %.0f s)", runs,
                   1.0 - worst, kOracleOverlapTol, res.seconds, kOracleBudgetSeconds);
  return res;
}

// 2. Traced states against the closed forms.
CriterionResult checkpoint_fidelity(const Options& opt) {
  CriterionResult res{2, "checkpoint closed forms", true, "", 0.0};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(opt.seed + 1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0;
  std::string worst_tag;
  for (int i = 0; i < 50; ++i) {
    const InputCoefficients c = coefficients_from_angles(angle(rng), angle(rng), angle(rng),
                                                         angle(rng));
    const QuantumState input = make_input_state(c, kMinus);
    for (GateKind kind : {GateKind::kToffoli, GateKind::kFredkin}) {
      const RunResult r = run(kind, input, IdealCoupling{});
      for (const std::string& tag : checkpoint_tags(kind)) {
        const QuantumState expected = checkpoint_oracle(kind, tag, c);
        std::vector<std::string> traced;
        if (r.trace.contains(tag)) {
          traced.push_back(tag);
        } else {
          for (const HeraldedBranch& br : r.branches) traced.push_back(tag + "/" + to_string(br.outcome));
        }
        for (const std::string& t : traced) {
          const double d = phase_aligned_distance(r.trace.at(t), expected);
          if (d > worst) {
            worst = d;
            worst_tag = t;
          }
        }
      }
    }
  }
  res.seconds = seconds_since(t0);
  res.pass = worst <= kCheckpointTol && res.seconds < kCheckpointBudgetSeconds;
  res.detail = fmt("50 angle tuples x 8 checkpoints, max distance %.3e%s%s (tol %.0e), %.3f s",
                   worst, worst_tag.empty() ? "" : " at ", worst_tag.c_str(), kCheckpointTol,
                   res.seconds);
  return res;
}

// 3. Closed-form efficiency at the quoted points.
CriterionResult closed_form_eta(const Options&) {
  CriterionResult res{3, "closed-form efficiency", true, "", 0.0};
  const auto t0 = Clock::now();
  for (const QuotedPoint& q : kQuoted) {
    const double eta = closed_form_efficiency(at(q.gsq, q.ks));
    const bool ok = std::abs(eta - q.eta) <= kClosedFormEtaTol;
    res.pass = res.pass && ok;
    res.detail += fmt("%sks=%.1f: eta=%.6f quoted %.6f |d|=%.1e %s", res.detail.empty() ? "" : "; ",
                      q.ks, eta, q.eta, std::abs(eta - q.eta), ok ? "ok" : "MISS");
  }
  res.seconds = seconds_since(t0);
  return res;
}

// 4. Average fidelities at the quoted points, default model plus alternatives.
CriterionResult average_fidelities(const Options&) {
  CriterionResult res{4, "average fidelities", true, "", 0.0};
  const auto t0 = Clock::now();
  const QuadratureSpec quad;
  for (const QuotedPoint& q : kQuoted) {
    const auto tp = Clock::now();
    const ScatteringCoefficients c = at(q.gsq, q.ks);
    const EffectiveGate gt = effective_gate_matrix(GateKind::kToffoli, c);
    const EffectiveGate gf = effective_gate_matrix(GateKind::kFredkin, c);
    const double ft = average_fidelity(gt, quad);
    const double ff = average_fidelity(gf, quad);
    const double secs = seconds_since(tp);
    const bool ok = std::abs(ft - q.f_toffoli) <= kFidelityTol &&
                    std::abs(ff - q.f_fredkin) <= kFidelityTol && secs < kFidelityBudgetSeconds;
    res.pass = res.pass && ok;
    res.detail += fmt("%sks=%.1f %s: F_T=%.6f (quoted %.6f) F_F=%.6f (quoted %.6f) %.2f s %s",
                      res.detail.empty() ? "" : "\n", q.ks,
                      to_string(FidelityModel::kPreMeasurement).c_str(), ft, q.f_toffoli, ff,
                      q.f_fredkin, secs, ok ? "ok" : "MISS");
    for (FidelityModel m : {FidelityModel::kBranchWeighted, FidelityModel::kBranchAverage,
                            FidelityModel::kCoherentBranchSum}) {
      const double at_ = average_fidelity(gt, quad, m);
      const double af = average_fidelity(gf, quad, m);
      const bool match = std::abs(at_ - q.f_toffoli) <= kFidelityTol &&
                         std::abs(af - q.f_fredkin) <= kFidelityTol;
      res.detail += fmt("\n    alt %s: F_T=%.6f F_F=%.6f %s", to_string(m).c_str(), at_, af,
                        match ? "within tol" : "outside tol");
    }
  }
  res.seconds = seconds_since(t0);
  return res;
}

SweepGrid criterion_grid() {
  return {SweepGrid::linspace(0.5, 5.0, 10), SweepGrid::linspace(0.0, 1.0, 10)};
}

// 5. Simulated against closed-form efficiency on a 10x10 grid.
CriterionResult eta_agreement(const Options&) {
  CriterionResult res{5, "simulated vs closed-form efficiency", true, "", 0.0};
  const auto t0 = Clock::now();
  const SweepGrid grid = criterion_grid();
  RunOptions herald;
  herald.herald_control_spin = true;
  double worst = 0.0;
  int misses = 0;
  std::string report;
  for (double g : grid.gsq_over_kgamma) {
    for (double k : grid.ks_over_k) {
      const ScatteringCoefficients c = at(g, k);
      const double sim = average_survival(effective_gate_matrix(GateKind::kToffoli, c, herald));
      const double closed = closed_form_efficiency(c);
      const double d = std::abs(sim - closed);
      worst = std::max(worst, d);
      if (d > kEtaAgreementTol) {
        ++misses;
        report += fmt("\n    gsq=%.2f ks=%.3f sim=%.6f closed=%.6f", g, k, sim, closed);
      }
    }
  }
  res.seconds = seconds_since(t0);
  res.pass = misses == 0 && res.seconds < kGridBudgetSeconds;
  res.detail = fmt("100 points, max |d|=%.3e (tol %.0e), %d outside, %.2f s (budget %.0f s)",
                   worst, kEtaAgreementTol, misses, res.seconds, kGridBudgetSeconds) +
               report;
  return res;
}

// 6. 9 against 17 nodes per axis.
CriterionResult quadrature_exactness(const Options&) {
  CriterionResult res{6, "quadrature 9 vs 17 nodes", true, "", 0.0};
  const auto t0 = Clock::now();
  const QuadratureSpec q9{9};
  const QuadratureSpec q17{17};
  RunOptions herald;
  herald.herald_control_spin = true;
  for (const QuotedPoint& q : kQuoted) {
    const ScatteringCoefficients c = at(q.gsq, q.ks);
    for (GateKind kind : {GateKind::kToffoli, GateKind::kFredkin}) {
      const EffectiveGate gate = effective_gate_matrix(kind, c);
      const EffectiveGate hg = effective_gate_matrix(kind, c, herald);
      const double df = std::abs(average_fidelity(gate, q9) - average_fidelity(gate, q17));
      const double de = std::abs(average_survival(hg, q9) - average_survival(hg, q17));
      const bool ok = df <= kQuadratureTol && de <= kQuadratureTol;
      res.pass = res.pass && ok;
      res.detail += fmt("%sks=%.1f %s: |dF|=%.3e |deta|=%.3e (tol %.0e) %s",
                        res.detail.empty() ? "" : "\n", q.ks, to_string(kind).c_str(), df, de,
                        kQuadratureTol, ok ? "ok" : "MISS");
    }
  }
  res.seconds = seconds_since(t0);
  return res;
}

// 7. Monotone trend in g^2/(kappa gamma).
CriterionResult monotonicity(const Options&) {
  CriterionResult res{7, "monotonicity in g^2/(kappa gamma)", true, "", 0.0};
  const auto t0 = Clock::now();
  SweepGrid grid{SweepGrid::linspace(0.5, 5.0, 10), {0.1}};
  const std::vector<MetricsPoint> pts = sweep(grid, {}, 1);
  const char* names[] = {"f_toffoli", "f_fredkin", "eta_closed", "eta_sim"};
  for (int m = 0; m < 4; ++m) {
    auto get = [&](const MetricsPoint& p) {
      const double v[] = {p.f_toffoli, p.f_fredkin, p.eta_closed, p.eta_sim};
      return v[m];
    };
    double worst_drop = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      worst_drop = std::max(worst_drop, get(pts[i - 1]) - get(pts[i]));
    }
    const bool ok = worst_drop <= kMonotoneSlack;
    res.pass = res.pass && ok;
    res.detail += fmt("%s%s %.6f -> %.6f %s", res.detail.empty() ? "" : "; ", names[m],
                      get(pts.front()), get(pts.back()), ok ? "ok" : "DROP");
  }
  res.seconds = seconds_since(t0);
  return res;
}

// 8. Strong-coupling, leak-free limit.
CriterionResult limit_consistency(const Options&) {
  CriterionResult res{8, "strong-coupling limit", true, "", 0.0};
  const auto t0 = Clock::now();
  const MetricsPoint p = evaluate_point(1e4, 0.0);
  const double vals[] = {p.f_toffoli, p.f_fredkin, p.eta_closed, p.eta_sim};
  res.pass = std::all_of(std::begin(vals), std::end(vals), [](double v) { return v >= kLimitFloor; });
  res.detail = fmt("F_T=%.9f F_F=%.9f eta_closed=%.9f eta_sim=%.9f (floor %.3f)", p.f_toffoli,
                   p.f_fredkin, p.eta_closed, p.eta_sim, kLimitFloor);
  res.seconds = seconds_since(t0);
  return res;
}

// 9. Structural invariants.
CriterionResult structural(const Options& opt) {
  CriterionResult res{9, "structural invariants", true, "", 0.0};
  const auto t0 = Clock::now();
  std::mt19937_64 rng(opt.seed + 9);

  const ScatteringMatrix s = scattering_matrix(ScatteringCoefficients::ideal());
  const double u_err =
      (s.adjoint() * s - ScatteringMatrix::Identity()).cwiseAbs().maxCoeff();
  double g_err = 0.0;
  for (const SingleQubitMatrix& m : {gates::ry_plus_half_pi(), gates::ry_minus_half_pi(),
                                     gates::hadamard(), gates::sigma_z()}) {
    g_err = std::max(g_err, (m.adjoint() * m - SingleQubitMatrix::Identity()).cwiseAbs().maxCoeff());
  }

  // Norm under realistic scattering: random spin-photon states on both input arms.
  const PathLabel arm_a = PathLabel::internal(Photon::kTwo, "check.a");
  const PathLabel arm_c = PathLabel::internal(Photon::kTwo, "check.c");
  BlockBinding binding;
  binding.inputs = {{arm_a, BlockPort::kA}, {arm_c, BlockPort::kC}};
  binding.outputs = {{{R, BlockPort::kB}, PathLabel::internal(Photon::kTwo, "check.b")},
                     {{L, BlockPort::kD}, PathLabel::internal(Photon::kTwo, "check.d")}};
  const PathLabel lost = PathLabel::loss(Photon::kTwo, "check.loss");
  const LossPolicy loss{{{L, BlockPort::kB}, lost}, {{R, BlockPort::kD}, lost}};
  std::uniform_real_distribution<double> gsq(0.05, 20.0);
  std::uniform_real_distribution<double> ks(0.0, 3.0);
  std::normal_distribution<double> n;
  double norm_excess = -1.0;
  for (int i = 0; i < 200; ++i) {
    const ScatteringCoefficients c = at(gsq(rng), ks(rng));
    QuantumState st;
    for (PolLabel p : {R, L}) {
      for (PathLabel arm : {arm_a, arm_c}) {
        for (SpinLabel sp : {kPlus, kMinus}) {
          st.add({R, PathLabel::a1(), p, arm, sp}, Complex{n(rng), n(rng)});
        }
      }
    }
    st = renormalize(st);
    norm_excess = std::max(norm_excess, norm_sq(realistic_scatter(st, Photon::kTwo, binding, c, loss)) - 1.0);
  }

  // Branch completeness and equal efficiencies on the grid.
  const SweepGrid grid = criterion_grid();
  RunOptions herald;
  herald.herald_control_spin = true;
  double branch_err = 0.0;
  double eta_gap = 0.0;
  for (double g : grid.gsq_over_kgamma) {
    for (double k : grid.ks_over_k) {
      const ScatteringCoefficients c = at(g, k);
      std::array<double, 2> eta{};
      for (GateKind kind : {GateKind::kToffoli, GateKind::kFredkin}) {
        MetricsDiagnostics d;
        eta[static_cast<int>(kind)] =
            average_survival(effective_gate_matrix(kind, c, herald), QuadratureSpec{}, &d);
        branch_err = std::max(branch_err, d.max_branch_sum_error);
        average_survival(effective_gate_matrix(kind, c), QuadratureSpec{kMinQuadratureNodes}, &d);
        branch_err = std::max(branch_err, d.max_branch_sum_error);
      }
      eta_gap = std::max(eta_gap, std::abs(eta[0] - eta[1]));
    }
  }

  const bool ok_u = u_err <= kStructuralTol && g_err <= kStructuralTol;
  const bool ok_n = norm_excess <= kStructuralTol;
  const bool ok_b = branch_err <= kStructuralTol;
  const bool ok_e = eta_gap <= kStructuralTol;
  res.pass = ok_u && ok_n && ok_b && ok_e;
  res.detail = fmt("unitarity scatter %.1e gates %.1e %s; norm excess %.1e %s; "
                   "branch sum %.1e %s; |eta_T-eta_F| %.1e %s (tol %.0e)",
                   u_err, g_err, ok_u ? "ok" : "MISS", std::max(norm_excess, 0.0),
                   ok_n ? "ok" : "MISS", branch_err, ok_b ? "ok" : "MISS", eta_gap,
                   ok_e ? "ok" : "MISS", kStructuralTol);
  res.seconds = seconds_since(t0);
  return res;
}

}  // namespace

std::vector<std::string> checkpoint_tags(GateKind kind) {
  if (kind == GateKind::kToffoli) return {"psi1", "psi2", "psi3"};
  return {"phi1", "phi3", "phi4", "phi5", "phi6"};
}

QuantumState checkpoint_oracle(GateKind kind, std::string_view tag, const InputCoefficients& c) {
  return kind == GateKind::kToffoli ? toffoli_oracle(tag, c) : fredkin_oracle(tag, c);
}

double phase_aligned_distance(const QuantumState& a, const QuantumState& b) {
  const Complex ip = inner_product(b, a);
  const Complex phase = std::abs(ip) > 0.0 ? ip / std::abs(ip) : Complex{1.0, 0.0};
  return std::sqrt(norm_sq(a + b.scaled(-phase)));
}

CriterionResult run_criterion(int id, const Options& options) {
  switch (id) {
    case 1: return oracle_equivalence(options);
    case 2: return checkpoint_fidelity(options);
    case 3: return closed_form_eta(options);
    case 4: return average_fidelities(options);
    case 5: return eta_agreement(options);
    case 6: return quadrature_exactness(options);
    case 7: return monotonicity(options);
    case 8: return limit_consistency(options);
    case 9: return structural(options);
    default: break;
  }
  throw std::out_of_range("no acceptance criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_all(const Options& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kNumCriteria; ++id) out.push_back(run_criterion(id, options));
  return out;
}

}  // namespace nvgate::acceptance
