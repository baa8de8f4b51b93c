// Python bindings: cnls._core. Fields cross the boundary as complex128
// numpy arrays shaped like the grid.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>
#include <vector>

#include "cnls/config.hpp"
#include "cnls/diagnostics.hpp"
#include "cnls/experiments.hpp"
#include "cnls/grid.hpp"
#include "cnls/manifest.hpp"
#include "cnls/pade.hpp"
#include "cnls/stability.hpp"
#include "cnls/transforms.hpp"

namespace py = pybind11;
using cnls::Complex;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexArray to_numpy(const cnls::ComplexField& f) {
  const auto ext = f.shape().extents();
  std::vector<py::ssize_t> shape(ext.begin(), ext.end());
  ComplexArray out(shape);
  std::copy(f.begin(), f.end(), out.mutable_data());
  return out;
}

cnls::ComplexField from_numpy(const ComplexArray& a) {
  std::vector<std::size_t> ext(a.shape(), a.shape() + a.ndim());
  cnls::ComplexField f{cnls::Shape(std::move(ext))};
  std::copy(a.data(), a.data() + a.size(), f.begin());
  return f;
}

py::dict records_dict(const std::vector<cnls::DiagnosticRecord>& records) {
  std::vector<double> t, energy, err;
  std::vector<std::vector<double>> mass;
  for (const auto& r : records) {
    t.push_back(r.time);
    mass.push_back(r.mass);
    energy.push_back(r.energy.value_or(std::numeric_limits<double>::quiet_NaN()));
    err.push_back(r.linf_error.value_or(std::numeric_limits<double>::quiet_NaN()));
  }
  py::dict d;
  d["t"] = py::array(py::cast(t));
  d["mass"] = py::array(py::cast(mass));
  d["energy"] = py::array(py::cast(energy));
  d["err"] = py::array(py::cast(err));
  return d;
}

py::dict simulate(const std::string& config_json) {
  const auto cfg = cnls::parse_config(config_json);
  cnls::SimulationOutput out;
  {
    py::gil_scoped_release release;
    out = cnls::simulate(cfg);
  }
  py::dict d = records_dict(out.records);
  py::list fields;
  for (const auto& f : out.state.fields) fields.append(to_numpy(f));
  d["fields"] = fields;
  d["steps"] = out.steps;
  d["warnings"] = out.warnings;
  d["divergence_step"] = out.divergence_step ? py::cast(*out.divergence_step) : py::none();
  return d;
}

py::list converge_time(const std::string& config_json, const std::vector<double>& ks) {
  const auto cfg = cnls::parse_config(config_json);
  cnls::ConvergenceTable table;
  {
    py::gil_scoped_release release;
    table = cnls::converge_time(cfg, ks);
  }
  py::list rows;
  for (const auto& r : table.rows) {
    py::dict row;
    row["k"] = r.k;
    row["linf_error"] = r.linf_error;
    row["order"] = r.order ? py::cast(*r.order) : py::none();
    row["cpu_seconds"] = r.cpu_seconds;
    rows.append(row);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral exponential integrators for coupled NLS systems";
  m.attr("__version__") = cnls::kSoftwareVersion;

  py::register_exception<cnls::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<cnls::DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);
  py::register_exception<cnls::PoleError>(m, "PoleError", PyExc_ZeroDivisionError);

  m.def(
      "axis",
      [](const std::string& bc, double a, double b, std::size_t n) {
        const auto ax = cnls::build_axis(cnls::parse_boundary_condition(bc), a, b, n);
        return py::make_tuple(py::array(py::cast(ax.points)), py::array(py::cast(ax.eigenvalues)));
      },
      py::arg("bc"), py::arg("a"), py::arg("b"), py::arg("n"),
      "Grid points and -d^2/dx^2 eigenvalues (transform order) of one axis.");

  m.def(
      "forward",
      [](const ComplexArray& field, const std::string& bc) {
        return to_numpy(cnls::forward(from_numpy(field), cnls::parse_boundary_condition(bc)).values);
      },
      py::arg("field"), py::arg("bc"));
  m.def(
      "inverse",
      [](const ComplexArray& coeffs, const std::string& bc) {
        return to_numpy(cnls::inverse(cnls::SpectralCoeffs{from_numpy(coeffs)},
                                      cnls::parse_boundary_condition(bc)));
      },
      py::arg("coeffs"), py::arg("bc"));

  m.def("r22", [](Complex z) { return cnls::pade::r22(z); }, py::arg("z"));
  m.def("r13", [](Complex z) { return cnls::pade::r13(z); }, py::arg("z"));

  m.def(
      "convergence_order",
      [](const std::vector<double>& e) { return cnls::convergence_order(e); }, py::arg("errors"));

  m.def("amplification", &cnls::amplification, py::arg("x"), py::arg("y"));
  m.def("amplification_closed_form", &cnls::amplification_closed_form, py::arg("x"), py::arg("y"));
  m.def(
      "stability_region",
      [](Complex y, std::vector<double> window, std::size_t nx, std::size_t ny) {
        if (window.size() != 4) throw py::value_error("window needs 4 values");
        const auto g = cnls::stability_region(y, {window[0], window[1], window[2], window[3]}, nx, ny);
        py::array_t<double> out({ny, nx});
        std::copy(g.abs_r.begin(), g.abs_r.end(), out.mutable_data());
        return py::make_tuple(out, g.stable_area());
      },
      py::arg("y"), py::arg("window") = std::vector<double>{-6, 1, -5, 5}, py::arg("nx") = 64,
      py::arg("ny") = 64, "|r| on the window (rows along Im x) and the stable area.");

  m.def("simulate", &simulate, py::arg("config_json"),
        "Runs a JSON config in memory; returns diagnostics and final fields.");
  m.def("converge_time", &converge_time, py::arg("config_json"), py::arg("ks"));
}
