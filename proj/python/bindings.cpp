#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "acceptance.hpp"
#include "steklov/errors.hpp"
#include "steklov/experiments.hpp"
#include "steklov/fem2d.hpp"
#include "steklov/mode_solver.hpp"

namespace py = pybind11;
using namespace steklov;
namespace ex = steklov::experiments;

namespace {

EndCondition end_from_name(const std::string& name, double mass) {
  if (name == "neumann") return NeumannEnd{};
  if (name == "dirichlet") return DirichletEnd{};
  if (name == "steklov") return SteklovEnd{mass};
  throw ConfigError("right_end must be neumann, dirichlet or steklov");
}

ReducedModeProblem problem(double length, std::function<double(double)> w, std::function<double(double)> q,
                           const std::string& right_end, int grid_size, std::vector<double> breakpoints) {
  ReducedModeProblem p;
  p.length = length;
  p.flux_weight = std::move(w);
  p.potential = std::move(q);
  p.right = end_from_name(right_end, 1.0);
  p.grid_size = grid_size;
  p.breakpoints = std::move(breakpoints);
  return p;
}

template <class P>
double checked_value(const P& p, double t) {
  return eval(Profile{p}, t);
}

template <class P>
double checked_derivative(const P& p, double t) {
  return eval_derivative(Profile{p}, t);
}

py::dict row_dict(const ex::ResultRow& r) {
  py::dict d;
  d["epsilon"] = r.epsilon;
  d["k"] = r.k;
  d["sigma"] = r.sigma;
  d["certificate_bound"] = r.certificate_bound;
  d["certificate_kind"] = ex::certificate_kind_name(r.certificate_kind);
  d["volume"] = r.volume;
  d["runtime_ms"] = r.runtime_ms;
  d["holds"] = r.holds();
  d["certificate_json"] = r.certificate.to_json();
  return d;
}

py::list table_rows(const ex::ResultTable& t) {
  py::list out;
  for (const auto& r : t.rows) out.append(row_dict(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steklov eigenvalue solvers for collars and 2D meshes";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  // Profiles
  py::class_<BleeckerRamp>(m, "BleeckerRamp")
      .def(py::init<double, double, double>(), py::arg("epsilon"), py::arg("ramp_end") = 1.0,
           py::arg("plateau_start") = 2.0)
      .def("value", &checked_value<BleeckerRamp>, py::arg("t"))
      .def("derivative", &checked_derivative<BleeckerRamp>, py::arg("t"))
      .def_property_readonly("epsilon", &BleeckerRamp::epsilon);
  py::class_<ConformalStep>(m, "ConformalStep")
      .def(py::init<double, double, double, std::optional<double>>(), py::arg("epsilon"), py::arg("flat_width"),
           py::arg("rise_end"), py::arg("amplitude") = std::nullopt)
      .def("value", &checked_value<ConformalStep>, py::arg("t"))
      .def("derivative", &checked_derivative<ConformalStep>, py::arg("t"))
      .def_property_readonly("amplitude", &ConformalStep::amplitude);
  py::class_<ConformalBump>(m, "ConformalBump")
      .def(py::init<double, double, double, double, double, std::optional<double>>(), py::arg("epsilon"),
           py::arg("flat_width"), py::arg("rise_end"), py::arg("plateau_end"), py::arg("support_end"),
           py::arg("amplitude") = std::nullopt)
      .def("value", &checked_value<ConformalBump>, py::arg("t"))
      .def("derivative", &checked_derivative<ConformalBump>, py::arg("t"))
      .def_property_readonly("amplitude", &ConformalBump::amplitude);

  // Boundary modes
  m.def("berger_mu", &berger_mu, py::arg("k"), py::arg("m"), py::arg("t"));
  m.def("lambda2_bleecker", &lambda2_bleecker, py::arg("t"));
  m.def(
      "berger_oracle",
      [](int k_max) {
        py::list out;
        for (const auto& r : berger_oracle(k_max)) out.append(py::make_tuple(r.k, r.m, r.multiplicity, r.mu1));
        return out;
      },
      py::arg("k_max"), "Rows (k, m, multiplicity, mu(1)) of the harmonic-polynomial decomposition.");

  // Radial problems
  m.def(
      "dtn_value",
      [](double length, std::function<double(double)> w, std::function<double(double)> q,
         const std::string& right_end, std::vector<double> breakpoints) {
        return dtn_value(problem(length, std::move(w), std::move(q), right_end, kDefaultGridSize,
                                 std::move(breakpoints)));
      },
      py::arg("length"), py::arg("flux_weight"), py::arg("potential"), py::arg("right_end") = "neumann",
      py::arg("breakpoints") = std::vector<double>{});
  m.def(
      "mode_eigenvalues",
      [](double length, std::function<double(double)> w, std::function<double(double)> q, int grid_size) {
        return mode_eigenvalues(problem(length, std::move(w), std::move(q), "steklov", grid_size, {}));
      },
      py::arg("length"), py::arg("flux_weight"), py::arg("potential"), py::arg("grid_size") = kDefaultGridSize);

  // Scenarios
  m.def("preset_names", &ex::preset_names);
  m.def(
      "preset", [](const std::string& name) { return ex::preset(name).to_json(); }, py::arg("name"),
      "Scenario JSON for a named preset.");
  m.def(
      "collar_spectrum",
      [](const std::string& config_json, double epsilon, int count) {
        const auto config = ex::ScenarioConfig::from_json(config_json);
        return steklov_spectrum(config.scenario(epsilon), count).values();
      },
      py::arg("config_json"), py::arg("epsilon"), py::arg("count"));
  m.def(
      "run_scenario",
      [](const std::string& config_json, std::optional<double> epsilon) {
        const auto config = ex::ScenarioConfig::from_json(config_json);
        ex::validate(config);
        return table_rows(epsilon ? ex::run_scenario(config, *epsilon) : ex::run_scenario(config));
      },
      py::arg("config_json"), py::arg("epsilon") = std::nullopt);
  m.def(
      "sweep",
      [](const std::string& config_json) { return table_rows(ex::sweep(ex::ScenarioConfig::from_json(config_json))); },
      py::arg("config_json"));
  m.def(
      "sweep_csv",
      [](const std::string& config_json, bool include_runtime) {
        return ex::to_csv(ex::sweep(ex::ScenarioConfig::from_json(config_json)), include_runtime);
      },
      py::arg("config_json"), py::arg("include_runtime") = true);

  // Certificates (JSON strings)
  m.def(
      "certificate_fixed_volume",
      [](double eps, double delta) { return ex::certificate_fixed_volume(eps, delta).to_json(); },
      py::arg("epsilon"), py::arg("delta"));
  m.def(
      "certificate_mixed",
      [](double eps, double lambda_next, int b, double L, double gap, std::vector<double> vols) {
        return ex::certificate_mixed(eps, lambda_next, b, L, gap, vols).to_json();
      },
      py::arg("epsilon"), py::arg("lambda_next"), py::arg("b"), py::arg("collar_length"),
      py::arg("neumann_gap") = 0.0, py::arg("component_volumes") = std::vector<double>{});

  // 2D finite elements
  m.def(
      "disk_spectrum",
      [](int refinement, int k) {
        return fem::steklov_solve(fem::assemble(fem::build_disk_mesh(refinement), fem::MetricField::euclidean()), k);
      },
      py::arg("refinement"), py::arg("k"));
  m.def(
      "cylinder_spectrum",
      [](double radius, double length, int nx, int nt, int k, bool mixed,
         std::optional<std::function<double(double)>> exponent) {
        auto mesh = fem::build_cylinder_mesh(radius, length, nx, nt);
        if (mixed) fem::set_boundary_role(mesh, 1, fem::BoundaryRole::Neumann);
        const auto metric =
            exponent ? fem::MetricField::conformal([f = *exponent](const Eigen::Vector2d& p) {
              return std::exp(2.0 * f(p.y()));
            })
                     : fem::MetricField::euclidean();
        const auto ops = fem::assemble(mesh, metric);
        return mixed ? fem::mixed_solve(ops, k) : fem::steklov_solve(ops, k);
      },
      py::arg("radius"), py::arg("length"), py::arg("nx"), py::arg("nt"), py::arg("k"), py::arg("mixed") = false,
      py::arg("conformal_exponent") = std::nullopt);
  m.def(
      "quasi_isometry",
      [](int trials, int refinement, int k, std::uint64_t seed, double max_ratio) {
        ex::QuasiIsometrySpec spec{trials, refinement, k, seed, max_ratio};
        return ex::quasi_isometry_json(ex::run_quasi_isometry(spec));
      },
      py::arg("trials") = 20, py::arg("refinement") = 2, py::arg("k") = 10, py::arg("seed") = 1,
      py::arg("max_ratio") = 2.0, "JSON list of reports {A, exponent, ratios, pass, ...}.");

  m.def(
      "validate",
      []() {
        std::ostringstream os;
        const int failures = acceptance::run_all(os);
        return py::make_tuple(failures == 0, os.str());
      },
      "Run the acceptance suite; returns (all_passed, report).");
}
