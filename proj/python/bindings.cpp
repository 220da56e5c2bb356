#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "gflap/config.hpp"
#include "gflap/dirichlet_solver.hpp"
#include "gflap/errors.hpp"
#include "gflap/nonlocal_operator.hpp"
#include "gflap/orlicz_energy.hpp"
#include "gflap/parallel.hpp"
#include "gflap/regularity_diagnostics.hpp"
#include "gflap/young.hpp"

namespace py = pybind11;
using gflap::Json;

namespace {

py::object to_python(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const Json& v : j) out.append(to_python(v));
      return out;
    }
    default: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return out;
    }
  }
}

Json from_python(const py::handle& obj) {
  const std::string text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return Json::parse(text);
}

py::array_t<double> grid_array(const gflap::LatticeFunction& u) {
  const gflap::Grid& g = u.grid();
  std::vector<py::ssize_t> shape{g.nodes(0)};
  if (g.dim() == 2) shape.push_back(g.nodes(1));
  py::array_t<double> out(shape);
  std::copy(u.values().begin(), u.values().end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "fractional g-Laplacian core";

  static py::exception<gflap::Error> error(m, "GflapError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const gflap::Error& e) {
      error((std::string(gflap::to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<gflap::YoungFunction>(m, "YoungFunction")
      .def_static("power", &gflap::YoungFunction::power, py::arg("p"),
                  py::arg("outside_hypotheses") = false)
      .def_static("power_sum", &gflap::YoungFunction::power_sum, py::arg("p"), py::arg("q"),
                  py::arg("a"), py::arg("b"))
      .def_static("from_config", [](const py::object& cfg) {
        return gflap::young_from_json(from_python(cfg));
      })
      .def("to_config", [](const gflap::YoungFunction& yf) {
        return to_python(gflap::young_to_json(yf));
      })
      .def("rescaled", &gflap::YoungFunction::rescaled, py::arg("R"), py::arg("s"))
      .def_property_readonly("name", &gflap::YoungFunction::name)
      .def_property_readonly("lambda_", &gflap::YoungFunction::lambda)
      .def_property_readonly("Lambda", &gflap::YoungFunction::Lambda)
      .def("g", &gflap::YoungFunction::g)
      .def("g_prime", &gflap::YoungFunction::g_prime)
      .def("G", &gflap::YoungFunction::G)
      .def("g_inverse", &gflap::YoungFunction::g_inverse)
      .def("conjugate", &gflap::YoungFunction::conjugate)
      .def("__repr__", [](const gflap::YoungFunction& yf) {
        return "<YoungFunction " + yf.name() + ">";
      });

  m.def(
      "check_inequality_suite",
      [](const gflap::YoungFunction& yf, std::int64_t samples, std::uint64_t seed, double rtol) {
        return to_python(gflap::check_inequality_suite(yf, samples, seed, rtol).to_json());
      },
      py::arg("yf"), py::arg("samples") = 100000, py::arg("seed") = 20241017,
      py::arg("rtol") = 1e-10);
  m.def(
      "check_conjugate_sweep",
      [](const gflap::YoungFunction& yf, int grid, double gap_tol) {
        return to_python(gflap::check_conjugate_sweep(yf, grid, gap_tol).to_json());
      },
      py::arg("yf"), py::arg("grid") = 200, py::arg("gap_tol") = 1e-8);

  m.def(
      "profile_apply",
      [](const gflap::YoungFunction& yf, double s, double x, const py::object& quadrature) {
        const gflap::QuadratureSpec q = quadrature.is_none()
                                            ? gflap::QuadratureSpec{}
                                            : gflap::quadrature_from_json(from_python(quadrature));
        return to_python(gflap::pointwise_apply(yf, gflap::profile_field(s), {x, 0.0}, s, q).to_json());
      },
      py::arg("yf"), py::arg("s"), py::arg("x"), py::arg("quadrature") = py::none());
  m.def("profile_I1", &gflap::profile_I1, py::arg("yf"), py::arg("s"), py::arg("x"));
  m.def("profile_I1_numeric", &gflap::profile_I1_numeric, py::arg("yf"), py::arg("s"),
        py::arg("x"));
  m.def("lieberman_bound", &gflap::lieberman_bound, py::arg("yf"), py::arg("sup_u"),
        py::arg("sup_grad"), py::arg("sup_hess"), py::arg("n"), py::arg("s"));

  m.def(
      "solve",
      [](const py::object& config) {
        const Json j = from_python(config);
        const gflap::DirichletProblem prob = gflap::problem_from_json(j);
        const gflap::SolverConfig cfg =
            gflap::solver_config_from_json(j.contains("solver") ? j["solver"] : Json());
        gflap::DiscreteSolution sol;
        {
          py::gil_scoped_release release;
          sol = gflap::solve(prob, cfg);
        }
        py::dict out;
        out["u"] = grid_array(sol.u);
        out["grid"] = to_python(gflap::grid_to_json(sol.u.grid()));
        out["run"] = to_python(sol.run_record());
        out["problem"] = to_python(gflap::problem_to_json(prob));
        return out;
      },
      py::arg("config"));

  m.def(
      "fit_holder_exponent",
      [](const std::vector<double>& radii, const std::vector<double>& osc) {
        if (radii.size() != osc.size()) throw py::value_error("radii and osc differ in length");
        gflap::Series series;
        for (std::size_t i = 0; i < radii.size(); ++i) series.emplace_back(radii[i], osc[i]);
        const gflap::HolderFit fit = gflap::fit_holder_exponent(series);
        py::dict out;
        out["alpha"] = fit.alpha;
        out["C"] = fit.C;
        out["residual"] = fit.residual;
        out["points"] = fit.points;
        return out;
      },
      py::arg("radii"), py::arg("osc"));

  m.def("set_num_threads", &gflap::set_num_threads, py::arg("n"));
  m.def("num_threads", &gflap::num_threads);
}
