#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "maglab/analysis.hpp"
#include "maglab/diversity.hpp"
#include "maglab/error.hpp"
#include "maglab/fourier.hpp"
#include "maglab/generators.hpp"
#include "maglab/io.hpp"
#include "maglab/magnitude.hpp"
#include "maglab/negative_type.hpp"

namespace py = pybind11;
using namespace maglab;

namespace {

// Reports cross the boundary as the same documents the CLI writes.
py::object to_python(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: {
      const auto s = j.get<std::string>();
      if (s == "inf") return py::float_(INFINITY);
      if (s == "-inf") return py::float_(-INFINITY);
      if (s == "nan") return py::float_(NAN);
      return py::str(s);
    }
    case json::value_t::array: {
      py::list out;
      for (const auto& x : j) out.append(to_python(x));
      return std::move(out);
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return std::move(out);
    }
    default: return py::none();
  }
}

json from_python(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<std::int64_t>();
  if (py::isinstance<py::float_>(obj)) {
    const double x = obj.cast<double>();
    return std::isinf(x) ? json(x > 0 ? "inf" : "-inf") : json(x);
  }
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::dict>(obj)) {
    json out = json::object();
    for (const auto& [k, v] : obj.cast<py::dict>()) out[py::str(k).cast<std::string>()] = from_python(v);
    return out;
  }
  if (py::isinstance<py::sequence>(obj)) {
    json out = json::array();
    for (const auto& x : obj.cast<py::sequence>()) out.push_back(from_python(x));
    return out;
  }
  throw py::type_error("cannot convert object to a space spec value");
}

template <class Report>
py::object doc(const Report& r) {
  return to_python(to_json(r));
}

}  // namespace

PYBIND11_MODULE(_maglab, m) {
  m.doc() = "Magnitude and maximum diversity of finite metric spaces";

  py::register_exception<Error>(m, "MaglabError", PyExc_ValueError);

  py::class_<FiniteMetricSpace>(m, "MetricSpace")
      .def(py::init([](const Matrix& d, std::vector<std::string> labels) {
             return FiniteMetricSpace::checked(d, std::move(labels));
           }),
           py::arg("distances"), py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("size", &FiniteMetricSpace::size)
      .def_property_readonly("distances", [](const FiniteMetricSpace& s) { return s.dist(); })
      .def_property_readonly("labels", &FiniteMetricSpace::labels)
      .def_property_readonly("diameter", &FiniteMetricSpace::diameter)
      .def("subspace",
           [](const FiniteMetricSpace& s, const std::vector<std::size_t>& idx) { return s.subspace(idx); })
      .def("without_point", &FiniteMetricSpace::without_point)
      .def("__len__", &FiniteMetricSpace::size);

  m.def("validate_metric", [](const Matrix& d) { return doc(validate_metric(d)); });
  m.def("generate", [](const py::dict& spec) { return generate(spec_from_json(from_python(spec))); });
  m.def("scale", &scale_space, py::arg("space"), py::arg("t"));
  m.def("snowflake", &snowflake_space, py::arg("space"), py::arg("alpha"));
  m.def("lp_product", &lp_product, py::arg("a"), py::arg("b"), py::arg("q"));

  m.def("spectrum", [](const FiniteMetricSpace& s) { return doc(spectrum_diagnostics(s)); });
  m.def("magnitude", py::overload_cast<const FiniteMetricSpace&>(&magnitude));
  m.def("weighting", [](const FiniteMetricSpace& s) { return doc(weighting(s)); });
  m.def("rayleigh", &rayleigh, py::arg("space"), py::arg("mu"));
  m.def(
      "scale_sweep",
      [](const FiniteMetricSpace& s, const std::vector<double>& grid, bool with_diversity) {
        return doc(scale_sweep(s, grid, with_diversity));
      },
      py::arg("space"), py::arg("grid"), py::arg("with_diversity") = false);

  m.def(
      "max_diversity",
      [](const FiniteMetricSpace& s, double tol, int max_iters) { return doc(max_diversity(s, tol, max_iters)); },
      py::arg("space"), py::arg("tol") = 1e-8, py::arg("max_iters") = 100000);
  m.def(
      "is_positively_weighted", [](const FiniteMetricSpace& s, double tol) { return doc(is_positively_weighted(s, tol)); },
      py::arg("space"), py::arg("tol") = 1e-7);

  m.def(
      "negative_type_test",
      [](const FiniteMetricSpace& s, std::size_t basepoint) { return doc(negative_type_test(s, basepoint)); },
      py::arg("space"), py::arg("basepoint") = 0);
  m.def(
      "stability_scan",
      [](const FiniteMetricSpace& s, std::optional<std::vector<double>> scales) {
        return doc(scales ? stability_scan(s, *scales) : stability_scan(s));
      },
      py::arg("space"), py::arg("scales") = py::none());

  m.def(
      "approx_magnitude",
      [](const py::dict& family, const std::vector<int>& levels, bool quadrature) {
        return doc(approx_magnitude(spec_from_json(from_python(family)), levels, quadrature));
      },
      py::arg("family"), py::arg("levels"), py::arg("quadrature") = false);
  m.def("lp_ball_volume", &lp_ball_volume, py::arg("n"), py::arg("p"));
  m.def("growth_lower_bound", &growth_lower_bound, py::arg("n"), py::arg("p"), py::arg("alpha"), py::arg("vol_a"),
        py::arg("t"));
  m.def(
      "gamma_hat",
      [](double p, double length, int intervals, double omega_max, double step) {
        return doc(gamma_hat_1d(p, length, intervals, FrequencyGrid{omega_max, step}));
      },
      py::arg("p"), py::arg("length") = 40.0, py::arg("intervals") = 1 << 16, py::arg("omega_max") = 10.0,
      py::arg("step") = 0.05);
  m.def(
      "fourier_upper_bound",
      [](double ell, double p, double alpha, double radius) {
        return doc(fourier_upper_bound_1d(ell, p, alpha, radius));
      },
      py::arg("ell"), py::arg("p"), py::arg("alpha"), py::arg("radius"));

  m.def("product_counterexample", [] { return doc(product_counterexample_experiment()); });
  m.def(
      "witness_search",
      [](double p, int dim, std::uint64_t budget, std::uint64_t seed) {
        WitnessSearchSpec spec;
        spec.p = p;
        spec.dim = dim;
        return doc(witness_search(spec, budget, seed));
      },
      py::arg("p"), py::arg("dim"), py::arg("budget") = 10000, py::arg("seed") = 0);
}
