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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nvgate/circuits.hpp"
#include "nvgate/emitter.hpp"
#include "nvgate/io.hpp"
#include "nvgate/metrics.hpp"

namespace py = pybind11;
using namespace nvgate;

namespace {

GateKind gate(const std::string& name) { return parse_gate_kind(name); }

ScatteringCoefficients coeffs_at(double gsq, double ks, double cavity_detuning,
                                 double dipole_detuning) {
  return coefficients(EmitterParams::from_ratios(gsq, ks, cavity_detuning, dipole_detuning));
}

InputCoefficients input_from(const std::vector<Complex>& amps) {
  if (amps.size() != 8) throw std::invalid_argument("expected 8 amplitudes");
  return {{amps[0], amps[1]}, {amps[2], amps[3]}, {amps[4], amps[5]}, {amps[6], amps[7]}};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-photon Toffoli and Fredkin gates mediated by an NV-cavity emitter";

  py::register_exception<std::out_of_range>(m, "OutOfRange", PyExc_IndexError);

  py::class_<ScatteringCoefficients>(m, "ScatteringCoefficients")
      .def(py::init<Complex, Complex, Complex, Complex>(), py::arg("r"), py::arg("t"),
           py::arg("r0"), py::arg("t0"))
      .def_readwrite("r", &ScatteringCoefficients::r)
      .def_readwrite("t", &ScatteringCoefficients::t)
      .def_readwrite("r0", &ScatteringCoefficients::r0)
      .def_readwrite("t0", &ScatteringCoefficients::t0)
      .def_static("ideal", &ScatteringCoefficients::ideal)
      .def("__repr__", [](const ScatteringCoefficients& c) {
        return "ScatteringCoefficients(" + to_json(c).dump() + ")";
      });

  py::class_<MetricsPoint>(m, "MetricsPoint")
      .def_readonly("gsq_over_kgamma", &MetricsPoint::gsq_over_kgamma)
      .def_readonly("ks_over_k", &MetricsPoint::ks_over_k)
      .def_readonly("f_toffoli", &MetricsPoint::f_toffoli)
      .def_readonly("f_fredkin", &MetricsPoint::f_fredkin)
      .def_readonly("eta_closed", &MetricsPoint::eta_closed)
      .def_readonly("eta_sim", &MetricsPoint::eta_sim)
      .def_readonly("eta_sim_fredkin", &MetricsPoint::eta_sim_fredkin);

  m.def("coefficients", &coeffs_at, py::arg("gsq_over_kgamma"), py::arg("ks_over_k"),
        py::arg("cavity_detuning") = 0.0, py::arg("dipole_detuning") = 0.0,
        "Resonant (by default) r, t, r0, t0.");

  m.def("closed_form_efficiency", &closed_form_efficiency, py::arg("coeffs"));

  m.def(
      "average_fidelity",
      [](const std::string& kind, const ScatteringCoefficients& c, int nodes,
         const std::string& model) {
        return average_fidelity(gate(kind), c, QuadratureSpec{nodes}, parse_fidelity_model(model));
      },
      py::arg("gate"), py::arg("coeffs"), py::arg("nodes") = 16,
      py::arg("model") = "pre-measurement", py::call_guard<py::gil_scoped_release>());

  m.def(
      "average_efficiency",
      [](const std::string& kind, const ScatteringCoefficients& c, int nodes,
         const std::string& model) {
        return average_efficiency_sim(gate(kind), c, QuadratureSpec{nodes},
                                      parse_efficiency_model(model));
      },
      py::arg("gate"), py::arg("coeffs"), py::arg("nodes") = 16, py::arg("model") = "heralded",
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "oracle_matrix", [](const std::string& kind) -> Eigen::MatrixXcd {
        return oracle_matrix(gate(kind));
      },
      py::arg("gate"));

  m.def(
      "effective_branches",
      [](const std::string& kind, const std::optional<ScatteringCoefficients>& c) {
        const Coupling coupling = c ? Coupling{*c} : Coupling{IdealCoupling{}};
        const EffectiveGate g = effective_gate_matrix(gate(kind), coupling);
        return std::vector<Eigen::MatrixXcd>{g.branches[0], g.branches[1]};
      },
      py::arg("gate"), py::arg("coeffs") = std::nullopt,
      "Unnormalized post-feed-forward 16x16 maps for the +x and -x outcomes.");

  m.def(
      "run_trace",
      [](const std::string& kind, const std::vector<Complex>& amps,
         const std::optional<ScatteringCoefficients>& c) {
        const Coupling coupling = c ? Coupling{*c} : Coupling{IdealCoupling{}};
        const RunResult r =
            run(gate(kind), make_input_state(input_from(amps), SpinLabel::kMinus), coupling);
        return to_json(r.trace).dump();
      },
      py::arg("gate"), py::arg("amplitudes"), py::arg("coeffs") = std::nullopt,
      "Checkpoint trace as a JSON string.");

  m.def(
      "sweep",
      [](const std::vector<double>& gsq, const std::vector<double>& ks, int nodes,
         unsigned threads) {
        MetricsOptions opt;
        opt.quad.nodes_per_axis = nodes;
        return sweep(SweepGrid{gsq, ks}, opt, threads);
      },
      py::arg("gsq_over_kgamma"), py::arg("ks_over_k"), py::arg("nodes") = 16,
      py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
}
