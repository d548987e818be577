#include "birat/errors.hpp"
#include "birat/kahan.hpp"
#include "birat/lvfamily.hpp"
#include "birat/models.hpp"
#include "birat/run.hpp"
#include "birat/verify.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace birat;

namespace {

LVParams lv_params(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return LVParams::parse(obj.cast<std::string>());
  std::vector<std::string> entries;
  for (const auto& item : obj) entries.push_back(py::str(item).cast<std::string>());
  return LVParams::parse(entries);
}

RunConfig run_config(const std::string& model, const std::string& method, const py::object& params,
                     double h, std::int64_t steps, const std::optional<std::vector<double>>& x0,
                     double tol) {
  RunConfig cfg;
  cfg.model = model;
  cfg.method = method;
  if (py::isinstance<py::str>(params)) {
    cfg.params = parse_param_list(params.cast<std::string>());
  } else if (py::isinstance<py::dict>(params)) {
    for (const auto& [k, v] : params.cast<py::dict>()) {
      cfg.params[py::str(k).cast<std::string>()] = py::str(v).cast<std::string>();
    }
  } else if (!params.is_none()) {
    int i = 0;
    for (const auto& item : params) cfg.params[std::to_string(i++)] = py::str(item).cast<std::string>();
  }
  cfg.h = h;
  cfg.steps = steps;
  if (x0) cfg.x0 = *x0;
  cfg.tol = tol;
  finalize_config(cfg);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_birat, m) {
  m.doc() = "Kahan discretization of quadratic vector fields and discrete Lotka-Volterra schemes";

  auto base = py::register_exception<Error>(m, "BiratError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ConstraintViolation>(m, "ConstraintViolation", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NotBirational>(m, "NotBirational", base.ptr());
  py::register_exception<SingularStepMatrix>(m, "SingularStepMatrix", base.ptr());

  py::class_<QuadraticVectorField>(m, "QuadraticVectorField")
      .def_property_readonly("dim", &QuadraticVectorField::dim)
      .def("evaluate", &QuadraticVectorField::evaluate)
      .def("jacobian", &QuadraticVectorField::jacobian)
      .def("polarized_rhs", &QuadraticVectorField::polarized_rhs)
      .def("annihilated_by", &QuadraticVectorField::annihilated_by, py::arg("w"), py::arg("tol") = 1e-12)
      .def("to_json", [](const QuadraticVectorField& vf) { return to_json(vf).dump(); })
      .def_static("from_json",
                  [](const std::string& text) { return vector_field_from_json(nlohmann::json::parse(text)); });

  m.def("enzyme_vf",
        [](double k1, double km1, double k2, double s0, double e0) {
          return enzyme_vf(EnzymeParams{k1, km1, k2, s0, e0});
        },
        py::arg("k1"), py::arg("km1"), py::arg("k2"), py::arg("s0"), py::arg("e0"));
  m.def("enzyme_diml_vf",
        [](double mu, double nu, double eps) { return enzyme_diml_vf({mu, nu, eps}); },
        py::arg("mu") = 0.5, py::arg("nu") = 0.6, py::arg("eps") = 1e-2);
  m.def("lv_vf", &lv_vf);

  m.def("kahan_step",
        [](const QuadraticVectorField& vf, const StateVector& x, double h, std::optional<int> order) {
          return kahan_step(vf, x, {h, order});
        },
        py::arg("vf"), py::arg("x"), py::arg("h"), py::arg("series_order") = py::none());
  m.def("kahan_inverse_step",
        [](const QuadraticVectorField& vf, const StateVector& x, double h) {
          return kahan_inverse_step(vf, x, {h});
        },
        py::arg("vf"), py::arg("xt"), py::arg("h"));
  m.def("multiplier_of_eigenvalue", &multiplier_of_eigenvalue, py::arg("lam"), py::arg("h"));

  m.def("lv_step",
        [](const py::object& p, double x, double y, double h) { return lv_step(lv_params(p), x, y, h); },
        py::arg("params"), py::arg("x"), py::arg("y"), py::arg("h"));
  m.def("lv_inverse_step",
        [](const py::object& p, double xt, double yt, double h) {
          return lv_inverse_step(lv_params(p), xt, yt, h);
        },
        py::arg("params"), py::arg("xt"), py::arg("yt"), py::arg("h"));
  m.def("symplectic_residual",
        [](const py::object& p, double x, double y, double h) {
          return symplectic_residual(lv_params(p), x, y, h);
        },
        py::arg("params"), py::arg("x"), py::arg("y"), py::arg("h"));
  m.def("_classify",
        [](const py::object& p, bool certify) {
          const auto params = lv_params(p);
          return to_json(classify(params, certify), params).dump();
        },
        py::arg("params"), py::arg("certify") = false);

  m.def("schnakenberg_step",
        [](double a, double b, double x, double y, double h) { return schnakenberg_step({a, b}, x, y, h); },
        py::arg("a"), py::arg("b"), py::arg("x"), py::arg("y"), py::arg("h"));
  m.def("schnakenberg_hopf_b", &schnakenberg_hopf_b, py::arg("a"));

  m.def("_integrate",
        [](const std::string& model, const std::string& method, const py::object& params, double h,
           std::int64_t steps, const std::optional<std::vector<double>>& x0, double tol) {
          const auto result = run_integration(run_config(model, method, params, h, steps, x0, tol));
          Eigen::MatrixXd states(static_cast<Eigen::Index>(result.trajectory.size()),
                                 static_cast<Eigen::Index>(result.state_names.size()));
          for (std::size_t k = 0; k < result.trajectory.size(); ++k) {
            states.row(static_cast<Eigen::Index>(k)) = result.trajectory.states[k].transpose();
          }
          Eigen::VectorXd times = Eigen::Map<const Eigen::VectorXd>(
              result.trajectory.times.data(), static_cast<Eigen::Index>(result.trajectory.times.size()));
          return py::make_tuple(times, states, result.state_names, result.error, result.warnings);
        });

  m.def("_verify",
        [](const std::string& suite, std::uint64_t seed, std::optional<double> tol) {
          return to_json(run_suite(suite, {seed, tol})).dump();
        },
        py::arg("suite"), py::arg("seed") = 7, py::arg("tol") = py::none());
}
