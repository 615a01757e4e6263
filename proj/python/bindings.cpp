// Copyright 2026 The qsl Authors
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

#include "qsl/counterexamples.hpp"
#include "qsl/sweep.hpp"

namespace py = pybind11;
using namespace qsl;

namespace {

RotatedHamiltonianSystem make_system(const Matrix& h, const Matrix& a, const Vector& u) {
  return RotatedHamiltonianSystem(HermitianOperator(h), HermitianOperator(a), PureState(u));
}

py::object optional_value(const std::optional<double>& v) {
  return v ? py::cast(*v) : py::none();
}

py::dict bound_report(const BoundReport& r) {
  py::dict d;
  d["delta"] = r.delta;
  d["tau_actual"] = r.tau_actual;
  d["isolated"] = r.isolated;
  d["mt"] = optional_value(r.mt);
  d["ml"] = optional_value(r.ml);
  d["bd"] = optional_value(r.bd);
  d["mt_closed"] = r.mt_closed;
  d["bd_closed"] = r.bd_closed;
  d["avg_uncertainty"] = r.avg_uncertainty;
  d["avg_bd_factor"] = r.avg_bd_factor;
  d["avg_norm_energy"] = r.avg_norm_energy;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum speed limits for isolated and closed systems.";

  // Owned by the module for the life of the interpreter.
  static PyObject* error_type = PyErr_NewException("qsl._core.QslError", PyExc_ValueError, nullptr);
  m.attr("QslError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::handle(error_type)(e.what());
      instance.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type, instance.ptr());
    }
  });

  m.def("alpha", &alpha, py::arg("delta"));
  m.def("alpha_objective", &alpha_objective, py::arg("z"), py::arg("delta"));
  m.def("fubini_study_distance", &fubini_study_distance, py::arg("delta"));

  m.def(
      "fidelity",
      [](const Vector& a, const Vector& b) { return fidelity(PureState(a), PureState(b)); },
      py::arg("a"), py::arg("b"));
  m.def(
      "eigh",
      [](const Matrix& h) {
        const HermitianOperator op(h);
        return py::make_tuple(op.eigenvalues(), op.eigenvectors());
      },
      py::arg("h"));
  m.def(
      "build_coupling",
      [](const Matrix& h, const Vector& u) {
        return build_coupling(HermitianOperator(h), PureState(u)).matrix();
      },
      py::arg("h"), py::arg("u"));

  m.def(
      "propagate_exact",
      [](const Matrix& h, const Matrix& a, const Vector& u, double t) {
        return propagate_exact(make_system(h, a, u), t).amplitudes();
      },
      py::arg("h"), py::arg("a"), py::arg("u"), py::arg("t"));
  m.def(
      "propagate_numeric",
      [](const Matrix& h, const Matrix& a, const Vector& u, double t, double step) {
        return propagate_numeric(make_system(h, a, u), t, step).amplitudes();
      },
      py::arg("h"), py::arg("a"), py::arg("u"), py::arg("t"), py::arg("step") = 1e-3);
  m.def(
      "first_passage",
      [](const Matrix& h, const Matrix& a, const Vector& u, double delta, double t_max) {
        return first_passage(make_system(h, a, u), delta, t_max);
      },
      py::arg("h"), py::arg("a"), py::arg("u"), py::arg("delta"), py::arg("t_max"));
  m.def(
      "evaluate_bounds",
      [](const Matrix& h, const Matrix& a, const Vector& u, double delta, double t_max,
         int samples) { return bound_report(evaluate_bounds(make_system(h, a, u), delta, t_max, samples)); },
      py::arg("h"), py::arg("a"), py::arg("u"), py::arg("delta"), py::arg("t_max"),
      py::arg("samples") = 1000);

  m.def("ml_family_mu", &ml_family_mu, py::arg("E"), py::arg("theta"));
  m.def("choose_theta", &choose_theta, py::arg("delta"), py::arg("L"),
        py::arg("margin") = kDefaultThetaMargin);
  m.def(
      "run_ml_refutation",
      [](double delta, double L, double E, double margin, int samples) {
        const RefutationReport r = run_ml_refutation(delta, L, E, margin, samples);
        py::dict d;
        d["delta"] = r.spec.delta;
        d["L"] = r.spec.L;
        d["E"] = r.spec.E;
        d["theta"] = r.spec.theta;
        d["mu"] = r.spec.mu;
        d["tau"] = r.tau;
        d["hypothetical_bound"] = r.hypothetical_bound;
        d["mt_closed"] = r.mt_closed;
        d["violated"] = r.violated;
        d["bound_margin"] = r.bound_margin;
        d["saturation_gap"] = r.saturation_gap;
        d["energy_uncertainty"] = r.energy_uncertainty;
        d["max_norm_energy_deviation"] = r.max_norm_energy_deviation;
        return d;
      },
      py::arg("delta"), py::arg("L"), py::arg("E") = 1.0, py::arg("margin") = kDefaultThetaMargin,
      py::arg("samples") = 1000);
  m.def(
      "run_bd_nonsaturation",
      [](const Matrix& h, const Vector& u, double delta, int samples) {
        const BdGapReport r =
            run_bd_nonsaturation(HermitianOperator(h), PureState(u), delta, samples);
        py::dict d = bound_report(r.bounds);
        d["saturation_gap"] = r.saturation_gap;
        d["min_strict_margin"] = r.min_strict_margin;
        d["strict_everywhere"] = r.strict_everywhere;
        d["min_occupied"] = r.min_occupied;
        return d;
      },
      py::arg("h"), py::arg("u"), py::arg("delta") = 0.0, py::arg("samples") = 1000);
  m.def(
      "energy_profile",
      [](double E, const std::vector<double>& thetas) {
        py::list rows;
        for (const auto& row : energy_profile(E, thetas)) {
          py::dict d;
          d["theta"] = row.theta;
          d["mu"] = row.mu;
          d["energy_uncertainty"] = row.energy_uncertainty;
          d["norm_energy"] = row.norm_energy;
          d["closed_form"] = row.closed_form;
          rows.append(d);
        }
        return rows;
      },
      py::arg("E"), py::arg("thetas"));
}
