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

// nvgate command-line front end.
//
// Exit codes: 0 success, 1 invalid input, 2 failed acceptance check.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nvgate/acceptance.hpp"
#include "nvgate/circuits.hpp"
#include "nvgate/emitter.hpp"
#include "nvgate/io.hpp"
#include "nvgate/metrics.hpp"
#include "nvgate/statevec.hpp"

namespace {

using namespace nvgate;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitVerifyFailed = 2;

struct PhysicalFlags {
  double gsq = 2.4;
  double ks = 0.1;
  double cavity_detuning = 0.0;
  double dipole_detuning = 0.0;

  ScatteringCoefficients coeffs() const {
    return coefficients(EmitterParams::from_ratios(gsq, ks, cavity_detuning, dipole_detuning));
  }
};

void add_physical(CLI::App* cmd, PhysicalFlags& p, bool detunings) {
  cmd->add_option("--gsq", p.gsq, "g^2/(kappa gamma)")->capture_default_str();
  cmd->add_option("--ks", p.ks, "kappa_s/kappa")->capture_default_str();
  if (detunings) {
    cmd->add_option("--cavity-detuning", p.cavity_detuning, "(omega_c - omega_p)/kappa");
    cmd->add_option("--dipole-detuning", p.dipole_detuning, "(omega_0 - omega_p)/kappa");
  }
}

std::vector<GateKind> gates_from(const std::string& name) {
  if (name == "both") return {GateKind::kToffoli, GateKind::kFredkin};
  return {parse_gate_kind(name)};
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open '" + out_path + "' for writing");
  f << text;
}

std::string format_entry(Complex v) {
  char buf[64];
  if (std::abs(v.imag()) < 1e-12 && std::abs(v.real() - std::round(v.real())) < 1e-12) {
    std::snprintf(buf, sizeof buf, "%3d", static_cast<int>(std::round(v.real())));
  } else if (std::abs(v.imag()) < 1e-12) {
    std::snprintf(buf, sizeof buf, "%+.3f", v.real());
  } else {
    std::snprintf(buf, sizeof buf, "%+.3f%+.3fi", v.real(), v.imag());
  }
  return buf;
}

std::string basis_name(int k) {
  const BasisConfig c = nominal_config(k, std::nullopt);
  return to_string(c);
}

int cmd_coeffs(const PhysicalFlags& p, const std::string& format) {
  const ScatteringCoefficients c = p.coeffs();
  if (format == "csv") {
    std::printf("r_re,r_im,t_re,t_im,r0_re,r0_im,t0_re,t0_im\n");
    std::printf("%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", c.r.real(), c.r.imag(), c.t.real(),
                c.t.imag(), c.r0.real(), c.r0.imag(), c.t0.real(), c.t0.imag());
  } else {
    json j = to_json(c);
    j["gsq_over_kgamma"] = p.gsq;
    j["ks_over_k"] = p.ks;
    std::cout << j.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_run(const std::string& gate, const std::vector<std::string>& input, bool ideal,
            const PhysicalFlags& p, bool trace) {
  if (input.size() != 8) {
    throw std::invalid_argument("--input takes 8 complex amplitudes "
                                "(alpha1 alpha2 beta1 beta2 gamma1 gamma2 delta1 delta2)");
  }
  std::vector<Complex> v;
  for (const std::string& s : input) v.push_back(parse_complex(s));
  const InputCoefficients c{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}};
  const GateKind kind = parse_gate_kind(gate);
  const QuantumState in = make_input_state(c, SpinLabel::kMinus);
  const Coupling coupling = ideal ? Coupling{IdealCoupling{}} : Coupling{p.coeffs()};
  const RunResult r = run(kind, in, coupling);
  if (trace) {
    std::cout << to_json(r.trace).dump(2) << '\n';
    return kExitOk;
  }
  json out = json::array();
  for (const HeraldedBranch& br : r.branches) {
    out.push_back({{"outcome", to_string(br.outcome)},
                   {"probability", br.probability},
                   {"state", to_json(br.state)},
                   {"norm_sq", norm_sq(br.state)}});
  }
  std::cout << json{{"survival", r.survival()}, {"branches", out}}.dump(2) << '\n';
  return kExitOk;
}

int cmd_truth_table(const std::string& gate) {
  const GateKind kind = parse_gate_kind(gate);
  const NominalMatrix oracle = oracle_matrix(kind);
  const EffectiveGate sim = effective_gate_matrix(kind, IdealCoupling{});
  // The +x branch carries half the weight; undo that and its global phase.
  NominalMatrix m = sim.branches[0] * std::sqrt(2.0);
  const Complex tr = (oracle.adjoint() * m).trace();
  if (std::abs(tr) > 0.0) m *= std::conj(tr / std::abs(tr));

  std::printf("%s: oracle | simulated (ideal, +x branch)\n", to_string(kind).c_str());
  std::printf("basis order (p1pol,p1path,p2pol,p2path):\n");
  for (int k = 0; k < kNominalDim; ++k) std::printf("  %2d %s\n", k, basis_name(k).c_str());
  for (int i = 0; i < kNominalDim; ++i) {
    std::string row;
    for (int j = 0; j < kNominalDim; ++j) row += format_entry(oracle(i, j));
    row += "  |";
    for (int j = 0; j < kNominalDim; ++j) row += format_entry(m(i, j));
    std::printf("%2d %s\n", i, row.c_str());
  }
  const double diff = (m - oracle).cwiseAbs().maxCoeff();
  std::printf("max |simulated - oracle| = %.3e\n", diff);
  std::printf("oracle match: %s\n", diff < 1e-12 ? "yes" : "no");
  return kExitOk;
}

int cmd_fidelity(const std::string& gate, const PhysicalFlags& p, int nodes,
                 const std::string& model) {
  const ScatteringCoefficients c = p.coeffs();
  const QuadratureSpec quad{nodes};
  const FidelityModel m = parse_fidelity_model(model);
  json out = json::array();
  for (GateKind kind : gates_from(gate)) {
    MetricsDiagnostics d;
    const double f = average_fidelity(kind, c, quad, m, &d);
    out.push_back({{"gate", to_string(kind)},
                   {"gsq_over_kgamma", p.gsq},
                   {"ks_over_k", p.ks},
                   {"nodes_per_axis", nodes},
                   {"model", to_string(m)},
                   {"fidelity", f},
                   {"zero_norm_nodes", d.zero_norm_nodes}});
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_efficiency(const std::string& gate, const PhysicalFlags& p, int nodes,
                   const std::string& model) {
  const ScatteringCoefficients c = p.coeffs();
  const QuadratureSpec quad{nodes};
  const EfficiencyModel m = parse_efficiency_model(model);
  json out = json::array();
  for (GateKind kind : gates_from(gate)) {
    out.push_back({{"gate", to_string(kind)},
                   {"gsq_over_kgamma", p.gsq},
                   {"ks_over_k", p.ks},
                   {"nodes_per_axis", nodes},
                   {"model", to_string(m)},
                   {"eta_closed", closed_form_efficiency(c)},
                   {"eta_sim", average_efficiency_sim(kind, c, quad, m)}});
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

struct SweepFlags {
  double gsq_min = 0.5, gsq_max = 5.0, ks_min = 0.0, ks_max = 1.0;
  std::vector<int> steps;
  std::optional<int> gsq_steps, ks_steps;
  std::string out;
  std::string format = "csv";
  int nodes = 16;
  unsigned threads = 0;
  std::string fidelity_model = "pre-measurement";
  std::string efficiency_model = "heralded";
};

int cmd_sweep(const SweepFlags& f) {
  // A single --steps applies to both axes; a second one sets the ks axis.
  int gs = 20, ks = 20;
  if (!f.steps.empty()) gs = ks = f.steps[0];
  if (f.steps.size() >= 2) ks = f.steps[1];
  if (f.steps.size() > 2) throw std::invalid_argument("--steps given more than twice");
  if (f.gsq_steps) gs = *f.gsq_steps;
  if (f.ks_steps) ks = *f.ks_steps;
  if (!(f.gsq_min > 0.0)) throw std::invalid_argument("--gsq-min must be > 0");
  if (f.ks_min < 0.0) throw std::invalid_argument("--ks-min must be >= 0");

  SweepGrid grid{SweepGrid::linspace(f.gsq_min, f.gsq_max, gs),
                 SweepGrid::linspace(f.ks_min, f.ks_max, ks)};
  MetricsOptions opt;
  opt.quad.nodes_per_axis = f.nodes;
  opt.fidelity = parse_fidelity_model(f.fidelity_model);
  opt.efficiency = parse_efficiency_model(f.efficiency_model);
  const std::vector<MetricsPoint> pts = sweep(grid, opt, f.threads);
  std::ostringstream os;
  if (f.format == "json") {
    os << to_json(pts).dump(2) << '\n';
  } else {
    write_csv(os, pts);
  }
  emit(os.str(), f.out);
  return kExitOk;
}

int cmd_verify(std::uint64_t seed, const std::vector<int>& ids_in) {
  namespace acc = nvgate::acceptance;
  std::vector<int> ids = ids_in;
  if (ids.empty()) {
    for (int i = 1; i <= acc::kNumCriteria; ++i) ids.push_back(i);
  }
  acc::Options options;
  options.seed = seed;
  int failed = 0;
  std::printf("%-4s %-4s %-40s %8s\n", "id", "ok", "criterion", "seconds");
  for (int id : ids) {
    const acc::CriterionResult r = acc::run_criterion(id, options);
    std::printf("%-4d %-4s %-40s %8.2f\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.seconds);
    std::istringstream lines(r.detail);
    for (std::string line; std::getline(lines, line);) std::printf("       %s\n", line.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", ids.size(), failed);
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for two-photon four-qubit Toffoli and Fredkin gates"};
  app.require_subcommand(1);

  PhysicalFlags phys;
  std::string format = "json";
  auto* coeffs = app.add_subcommand("coeffs", "Print cavity coefficients r, t, r0, t0");
  add_physical(coeffs, phys, true);
  coeffs->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string gate = "toffoli";
  std::vector<std::string> input;
  bool ideal = false;
  bool trace = false;
  auto* run_cmd = app.add_subcommand("run", "Run one gate on a product input");
  run_cmd->add_option("--gate", gate, "toffoli or fredkin")->required();
  run_cmd->add_option("--input", input,
                      "8 amplitudes \"re,im\": alpha1 alpha2 beta1 beta2 gamma1 gamma2 delta1 delta2")
      ->required()
      ->expected(8)
      ->allow_extra_args(false);
  auto* ideal_flag = run_cmd->add_flag("--ideal", ideal, "Use the ideal cavity");
  auto* gsq_opt = run_cmd->add_option("--gsq", phys.gsq, "g^2/(kappa gamma)");
  auto* ks_opt = run_cmd->add_option("--ks", phys.ks, "kappa_s/kappa");
  ideal_flag->excludes(gsq_opt)->excludes(ks_opt);
  run_cmd->add_flag("--trace", trace, "Emit the checkpoint trace");

  auto* tt = app.add_subcommand("truth-table", "Oracle and simulated ideal 16x16 matrices");
  tt->add_option("--gate", gate, "toffoli or fredkin")->required();

  int nodes = 16;
  std::string fmodel = "pre-measurement";
  std::string emodel = "heralded";
  std::string which = "both";
  auto* fid = app.add_subcommand("fidelity", "Average fidelity");
  fid->add_option("--gate", which, "toffoli, fredkin or both")->capture_default_str();
  add_physical(fid, phys, false);
  fid->add_option("--nodes", nodes, "Quadrature nodes per angle")->capture_default_str();
  fid->add_option("--model", fmodel,
                  "pre-measurement, branch-weighted, branch-average, coherent-branch-sum")
      ->capture_default_str();

  auto* eff = app.add_subcommand("efficiency", "Closed-form and simulated efficiency");
  eff->add_option("--gate", which, "toffoli, fredkin or both")->capture_default_str();
  add_physical(eff, phys, false);
  eff->add_option("--nodes", nodes, "Quadrature nodes per angle")->capture_default_str();
  eff->add_option("--model", emodel, "heralded or total-survival")->capture_default_str();

  SweepFlags sw;
  auto* swp = app.add_subcommand("sweep", "Metrics over a (g^2/kappa gamma, kappa_s/kappa) grid");
  swp->add_option("--gsq-min", sw.gsq_min)->capture_default_str();
  swp->add_option("--gsq-max", sw.gsq_max)->capture_default_str();
  swp->add_option("--ks-min", sw.ks_min)->capture_default_str();
  swp->add_option("--ks-max", sw.ks_max)->capture_default_str();
  swp->add_option("--steps", sw.steps, "Points per axis; repeat to set the ks axis separately");
  swp->add_option("--gsq-steps", sw.gsq_steps);
  swp->add_option("--ks-steps", sw.ks_steps);
  swp->add_option("--out", sw.out, "Output file (default stdout)");
  swp->add_option("--format", sw.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  swp->add_option("--nodes", sw.nodes)->capture_default_str();
  swp->add_option("--threads", sw.threads, "Worker threads (0: all cores)");
  swp->add_option("--fidelity-model", sw.fidelity_model)->capture_default_str();
  swp->add_option("--efficiency-model", sw.efficiency_model)->capture_default_str();

  std::uint64_t seed = nvgate::acceptance::Options{}.seed;
  std::vector<int> criteria;
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--criterion", criteria)->check(CLI::Range(1, nvgate::acceptance::kNumCriteria));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*coeffs) return cmd_coeffs(phys, format);
    if (*run_cmd) return cmd_run(gate, input, ideal, phys, trace);
    if (*tt) return cmd_truth_table(gate);
    if (*fid) return cmd_fidelity(which, phys, nodes, fmodel);
    if (*eff) return cmd_efficiency(which, phys, nodes, emodel);
    if (*swp) return cmd_sweep(sw);
    if (*verify) return cmd_verify(seed, criteria);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  }
  return kExitInvalid;
}
