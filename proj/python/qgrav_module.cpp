#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <ios>
#include <sstream>

#include "qgrav/cli.hpp"
#include "qgrav/closed_system.hpp"
#include "qgrav/config.hpp"
#include "qgrav/open_system.hpp"
#include "qgrav/oracle.hpp"
#include "qgrav/scenario.hpp"

namespace py = pybind11;
using namespace qgrav;

namespace {

py::dict metric_dict(const MetricBlock& m) {
  py::dict d;
  d["F_Q"] = m.F_Q;
  d["F_eff"] = m.F_eff;
  d["eta_g"] = m.eta_g;
  d["delta_g_T_int"] = m.delta_g_T_int;
  d["F_C_max"] = m.F_C_max;
  d["visibility"] = m.visibility;
  return d;
}

py::dict report_dict(const ScenarioReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["model"] = r.model;
  d["n_star"] = r.n_star;
  d["t_star"] = r.t_star;
  d["Gamma_2"] = r.Gamma_2;
  d["realistic"] = metric_dict(r.realistic);
  d["ideal"] = metric_dict(r.ideal);
  d["ideal_eta_with_readout"] = r.ideal_eta_with_readout;
  d["cfi_as_reported"] = r.cfi_as_reported;
  d["cfi_as_reported_exceeds_qfi"] = r.cfi_as_reported_exceeds_qfi;
  py::dict refs;
  for (const ReferenceCheck& c : r.references) {
    refs[py::str(c.quantity)] = py::make_tuple(c.computed, c.reference, c.relative_deviation, c.flagged);
  }
  d["references"] = refs;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qgrav, m) {
  m.doc() = "Qubit-mechanical gravimetry: closed forms, decoherence model and scenarios";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_RuntimeError);
  py::register_exception<oracle::TruncationError>(m, "TruncationError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr e) {
    try {
      if (e) std::rethrow_exception(e);
    } catch (const std::ios_base::failure& f) {
      PyErr_SetString(PyExc_OSError, f.what());
    }
  });

  py::class_<DeviceInput>(m, "DeviceInput")
      .def(py::init<>())
      .def_readwrite("f_m", &DeviceInput::f_m)
      .def_readwrite("m_eff", &DeviceInput::m_eff)
      .def_readwrite("g0_over_2pi", &DeviceInput::g0_over_2pi)
      .def_readwrite("Q_m", &DeviceInput::Q_m)
      .def_readwrite("T_bath", &DeviceInput::T_bath)
      .def_readwrite("T1", &DeviceInput::T1)
      .def_readwrite("T_phi", &DeviceInput::T_phi)
      .def_readwrite("F_r", &DeviceInput::F_r)
      .def_readwrite("theta", &DeviceInput::theta)
      .def_readwrite("alpha", &DeviceInput::alpha)
      .def_readwrite("g", &DeviceInput::g)
      .def_readwrite("T_over", &DeviceInput::T_over);

  py::class_<DerivedParams>(m, "DerivedParams")
      .def(py::init<>())
      .def_readwrite("omega_m", &DerivedParams::omega_m)
      .def_readwrite("z_zpf", &DerivedParams::z_zpf)
      .def_readwrite("gamma_lever", &DerivedParams::gamma_lever)
      .def_readwrite("k", &DerivedParams::k)
      .def_readwrite("G_bar", &DerivedParams::G_bar)
      .def_readwrite("gamma_m", &DerivedParams::gamma_m)
      .def_readwrite("n_th", &DerivedParams::n_th)
      .def_readwrite("Gamma_1", &DerivedParams::Gamma_1)
      .def_readwrite("Gamma_phi", &DerivedParams::Gamma_phi)
      .def_readwrite("Gamma_phi_prime", &DerivedParams::Gamma_phi_prime)
      .def_readwrite("Gamma_2", &DerivedParams::Gamma_2);

  m.def("derive", &derive, py::arg("device"));

  // Times are given as tau / pi so that revivals are exact.
  m.def(
      "qfi_closed_form",
      [](double theta, std::complex<double> alpha, double tau_over_pi, const DerivedParams& p) {
        return qfi_closed_form(theta, alpha, Tau::half_cycles(tau_over_pi), p);
      },
      py::arg("theta"), py::arg("alpha"), py::arg("tau_over_pi"), py::arg("params"));
  m.def("qfi_revival", &qfi_revival, py::arg("gamma_lever"), py::arg("k"), py::arg("p0"));
  m.def("crb_delta_g", &crb_delta_g, py::arg("F_Q"), py::arg("repetitions") = 1);
  m.def(
      "qfi_decohered",
      [](double theta, double tau_over_pi, const DerivedParams& p, bool ideal) {
        return qfi_decohered(theta, Tau::half_cycles(tau_over_pi), p, ideal ? Regime::Ideal : Regime::Realistic);
      },
      py::arg("theta"), py::arg("tau_over_pi"), py::arg("params"), py::arg("ideal") = false);
  m.def(
      "visibility",
      [](double tau_over_pi, const DerivedParams& p, bool ideal) {
        return visibility(Tau::half_cycles(tau_over_pi), p, ideal ? Regime::Ideal : Regime::Realistic);
      },
      py::arg("tau_over_pi"), py::arg("params"), py::arg("ideal") = false);
  m.def(
      "linear_entropy",
      [](double theta, std::complex<double> alpha, double tau_over_pi, const DerivedParams& p) {
        const HybridPureState s = hybrid_state(theta, alpha, Tau::half_cycles(tau_over_pi), p);
        return linear_entropy(s.c1 * s.c1, s.branches[0].alpha, s.branches[1].alpha);
      },
      py::arg("theta"), py::arg("alpha"), py::arg("tau_over_pi"), py::arg("params"));
  m.def(
      "oracle_qfi",
      [](double theta, std::complex<double> alpha, double tau_over_pi, const DerivedParams& p, int n_max) {
        if (n_max <= 0) n_max = oracle::default_n_max(alpha, p);
        return oracle::qfi_pure_fd(theta, alpha, Tau::half_cycles(tau_over_pi), p, n_max).derivative_richardson;
      },
      py::arg("theta"), py::arg("alpha"), py::arg("tau_over_pi"), py::arg("params"), py::arg("n_max") = 0);

  m.def(
      "load_scenarios",
      [](const std::string& path) {
        py::dict out;
        for (const ScenarioSpec& s : load_run_config(path).scenarios) out[py::str(s.name)] = s.device;
        return out;
      },
      py::arg("path"));
  m.def(
      "evaluate_config",
      [](const std::string& path) {
        py::list out;
        for (const ScenarioSpec& s : load_run_config(path).scenarios) out.append(report_dict(evaluate_scenario(s)));
        return out;
      },
      py::arg("path"));
  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "qgrav");
        std::vector<const char*> argv;
        for (const std::string& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
