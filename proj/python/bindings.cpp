// Copyright 2026 The spinmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

#include "spinmetro/error.hpp"
#include "spinmetro/estimator.hpp"
#include "spinmetro/protocol.hpp"
#include "spinmetro/validation.hpp"
#include "spinmetro/version.hpp"

namespace py = pybind11;
using namespace spinmetro;

namespace {

SpinSystem system_of(double s) { return make_spin_system(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Postselected spin-s phase estimation core";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<Error>(m, "SpinmetroError", PyExc_ValueError);

  py::class_<SpinSystem>(m, "SpinSystem")
      .def(py::init(&system_of), py::arg("s"))
      .def_property_readonly("s", [](const SpinSystem& s) { return s.spin.value(); })
      .def_property_readonly("dim", &SpinSystem::dim)
      .def_property_readonly("max_qfi", [](const SpinSystem& s) { return s.spin.max_qfi(); })
      .def_readonly("sx", &SpinSystem::sx)
      .def_readonly("sy", &SpinSystem::sy)
      .def_readonly("sz", &SpinSystem::sz);

  m.def("hamiltonian", [](const SpinSystem& sys, double theta) { return hamiltonian(sys, Axis(theta)); },
        py::arg("sys"), py::arg("theta"));
  m.def(
      "spectrum",
      [](const SpinSystem& sys, double theta) {
        const HamiltonianSpectrum sp = spectrum(sys, Axis(theta));
        return py::make_tuple(sp.energies, sp.states);
      },
      py::arg("sys"), py::arg("theta"), "(energies descending, eigenvectors as columns)");
  m.def(
      "optimal_states",
      [](const SpinSystem& sys, double theta, double alpha) {
        const OptimalStates n = optimal_states(spectrum(sys, Axis(theta)), alpha);
        return py::make_tuple(n.plus, n.minus);
      },
      py::arg("sys"), py::arg("theta"), py::arg("alpha") = 0.0);
  m.def("qfi_pure", &qfi_pure, py::arg("state"), py::arg("h"));

  py::class_<BipartiteState>(m, "BipartiteState")
      .def(py::init<CMatrix>(), py::arg("chi"))
      .def_property_readonly("chi", &BipartiteState::chi)
      .def_property_readonly("joint", &BipartiteState::joint)
      .def_property_readonly("dim", &BipartiteState::dim);
  m.def("maximally_entangled", &maximally_entangled, py::arg("m"));
  m.def(
      "diagonal_state", [](const std::vector<double>& xi) { return diagonal_state(xi); }, py::arg("xi"));
  m.def(
      "max_prob_state",
      [](const SpinSystem& sys, double theta, double xi1, double xi2) {
        return max_prob_state(spectrum(sys, Axis(theta)), xi1, xi2);
      },
      py::arg("sys"), py::arg("theta"), py::arg("xi1"), py::arg("xi2"));
  m.def(
      "schmidt_coefficients", [](const BipartiteState& psi) { return schmidt(psi).xis; }, py::arg("psi"));

  py::class_<ProtocolOutcome>(m, "ProtocolOutcome")
      .def_readonly("p_closed", &ProtocolOutcome::p_closed)
      .def_readonly("p_bruteforce", &ProtocolOutcome::p_bruteforce)
      .def_property_readonly("branch", [](const ProtocolOutcome& o) { return std::string(to_string(o.branch_set())); })
      .def_property_readonly("min_fidelity", &ProtocolOutcome::min_fidelity);
  py::class_<ProtocolReport, ProtocolOutcome>(m, "ProtocolReport")
      .def_property_readonly("path", [](const ProtocolReport& r) { return std::string(to_string(r.path)); })
      .def_readonly("qfi_achieved", &ProtocolReport::qfi_achieved)
      .def_readonly("combined", &ProtocolReport::combined)
      .def_property_readonly("post_state", &ProtocolReport::post_state);

  m.def(
      "run_protocol",
      [](const BipartiteState& psi, const SpinSystem& sys, double theta, double beta, const std::string& target) {
        return run_protocol(psi, sys, Axis(theta), beta, target == "plus" ? Target::kPlus : Target::kMinus);
      },
      py::arg("psi"), py::arg("sys"), py::arg("theta"), py::arg("beta"), py::arg("target") = "minus");

  py::class_<Spin1ClosedForms>(m, "Spin1ClosedForms")
      .def_readonly("phi", &Spin1ClosedForms::phi)
      .def_readonly("p", &Spin1ClosedForms::p)
      .def_readonly("p_max", &Spin1ClosedForms::p_max)
      .def_readonly("total", &Spin1ClosedForms::total);
  m.def("spin1_closed_forms", &spin1_closed_forms, py::arg("xi"), py::arg("theta"));
  m.def("appendix_special_cases", &appendix_special_cases, py::arg("xi"), py::arg("theta"), py::arg("beta") = 0.0);

  py::class_<EstimationResult>(m, "EstimationResult")
      .def_readonly("beta_hat", &EstimationResult::beta_hat)
      .def_readonly("attempts", &EstimationResult::attempts)
      .def_readonly("mean", &EstimationResult::mean)
      .def_readonly("empirical_variance", &EstimationResult::empirical_variance)
      .def_readonly("mse", &EstimationResult::mse)
      .def_readonly("fisher", &EstimationResult::fisher)
      .def_readonly("crb", &EstimationResult::crb)
      .def_readonly("kept_fraction", &EstimationResult::kept_fraction)
      .def_readonly("total_attempts", &EstimationResult::total_attempts)
      .def_property_readonly("normalized_variance", &EstimationResult::normalized_variance);
  m.def(
      "run_estimation",
      [](const BipartiteState& psi, const SpinSystem& sys, double theta, double beta_true, long long shots, int trials,
         std::uint64_t seed, int threads) {
        const EstimationConfig cfg{beta_true, shots, trials, seed, threads};
        validate(cfg, sys.spin);
        py::gil_scoped_release release;
        return run_estimation(cfg, ProtocolSetup{psi, sys, Axis(theta)});
      },
      py::arg("psi"), py::arg("sys"), py::arg("theta"), py::arg("beta_true"), py::arg("shots"), py::arg("trials"),
      py::arg("seed") = 0, py::arg("threads") = 1);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("passed", &CheckResult::passed)
      .def_readonly("worst", &CheckResult::worst)
      .def_readonly("tolerance", &CheckResult::tolerance)
      .def_readonly("detail", &CheckResult::detail);
  m.def("run_structural_checks", &run_structural_checks, py::arg("seed") = 20240611);
}
