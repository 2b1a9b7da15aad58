#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fracext/cli.hpp"
#include "fracext/extension.hpp"
#include "fracext/io.hpp"
#include "fracext/variational.hpp"
#include "fracext/verify.hpp"

namespace py = pybind11;
using namespace fracext;

namespace {

ModalVector modal(const std::vector<double>& eigenvalues, const std::vector<double>& coeffs) {
  return ModalVector(coeffs, make_spectrum(eigenvalues, "python"));
}

py::dict report_dict(const CheckReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["rel_err"] = r.rel_err;
  d["tol"] = r.tol;
  d["pass"] = r.pass;
  return d;
}

}  // namespace

PYBIND11_MODULE(_fracext, m) {
  m.doc() = "Fractional powers of nonnegative operators and their Bessel-kernel extensions";

  m.def("psi", &psi, py::arg("s"), py::arg("y"));
  m.def("dtn_constant", &dtn_constant, py::arg("s"));
  m.def(
      "eigenvalues",
      [](const std::string& op) { return build_operator(parse_operator_spec(op)).spectrum->eigenvalues; },
      py::arg("op"), "Eigenvalues of an operator given in CLI shorthand or JSON.");

  m.def(
      "apply_power",
      [](const std::vector<double>& ev, const std::vector<double>& u, double s) {
        return apply_power(modal(ev, u), s).coeffs;
      },
      py::arg("eigenvalues"), py::arg("u"), py::arg("s"));
  m.def(
      "sobolev_norm",
      [](const std::vector<double>& ev, const std::vector<double>& u, double sigma) {
        return sobolev_norm(modal(ev, u), sigma);
      },
      py::arg("eigenvalues"), py::arg("u"), py::arg("sigma"));
  m.def(
      "extend",
      [](const std::vector<double>& ev, const std::vector<double>& u, double s, const std::vector<double>& grid) {
        const ExtensionCurve c = extend(modal(ev, u), s, grid);
        std::vector<std::vector<double>> rows(c.modes(), std::vector<double>(c.points()));
        for (std::size_t j = 0; j < c.modes(); ++j)
          for (std::size_t i = 0; i < c.points(); ++i) rows[j][i] = c(j, i);
        return rows;
      },
      py::arg("eigenvalues"), py::arg("u"), py::arg("s"), py::arg("grid"), "Rows are modes, columns grid points.");
  m.def(
      "conormal_trace",
      [](const std::vector<double>& ev, const std::vector<double>& u, double s) {
        return conormal_trace(modal(ev, u), s).coeffs;
      },
      py::arg("eigenvalues"), py::arg("u"), py::arg("s"));

  m.def(
      "energy_identity", [](double s, double lambda) { return report_dict(energy_identity(s, lambda)); },
      py::arg("s"), py::arg("lambda_"));
  m.def(
      "minimize_curve",
      [](const std::vector<double>& ev, const std::vector<double>& u, double s, std::size_t elements) {
        return report_dict(minimize_curve(modal(ev, u), s, elements));
      },
      py::arg("eigenvalues"), py::arg("u"), py::arg("s"), py::arg("elements") = kDefaultElements);
  m.def(
      "verify",
      [](std::vector<std::string> checks, std::vector<double> s_values, std::vector<double> lambdas) {
        VerifyConfig cfg;
        cfg.checks = std::move(checks);
        if (!s_values.empty()) cfg.s_values = std::move(s_values);
        if (!lambdas.empty()) cfg.lambdas = std::move(lambdas);
        std::vector<CheckReport> reports;
        {
          py::gil_scoped_release release;
          reports = run_verify(cfg);
        }
        py::list out;
        for (const auto& r : reports) out.append(report_dict(r));
        return out;
      },
      py::arg("checks") = std::vector<std::string>{}, py::arg("s_values") = std::vector<double>{},
      py::arg("lambdas") = std::vector<double>{});

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line tool in-process; returns (exit code, stdout, stderr).");
}
