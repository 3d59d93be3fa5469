// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "keyhole/analytic.hpp"
#include "keyhole/montecarlo.hpp"
#include "keyhole/params_io.hpp"
#include "keyhole/specfun.hpp"
#include "keyhole/sweep.hpp"

namespace py = pybind11;
using namespace keyhole;

namespace {

std::string repr(const SystemParams& p) {
    std::ostringstream s;
    s.precision(12);
    s << "SystemParams(num_users=" << p.num_users << ", num_eves=" << p.num_eves
      << ", zeta_g=" << p.zeta_g << ", zeta_hd=" << p.zeta_hd << ", zeta_he=" << p.zeta_he
      << ", delta=" << p.delta << ", gamma_bar_d=" << p.gamma_bar_d
      << ", gamma_bar_e=" << p.gamma_bar_e << ", r_th=" << p.r_th << ")";
    return s.str();
}

std::string run_recipe_csv(const std::string& name, std::uint64_t seed,
                           std::optional<std::uint64_t> samples, unsigned streams) {
    auto recipe = sweep::builtin_recipe(name);
    recipe.sweep.seed = seed;
    recipe.sweep.num_streams = streams;
    if (samples) recipe.sweep.mc_samples = *samples;
    std::vector<sweep::SeriesTable> tables;
    {
        py::gil_scoped_release release;
        tables = sweep::run_recipe(recipe);
    }
    std::ostringstream out;
    sweep::emit_recipe_csv(tables, out);
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Keyhole secrecy outage probability core (C++)";

    py::enum_<Method>(m, "Method")
        .value("closed_form", Method::closed_form)
        .value("asymptotic", Method::asymptotic)
        .value("quadrature", Method::quadrature)
        .value("monte_carlo", Method::monte_carlo);

    const SystemParams defaults = default_params();
    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init([](int num_users, int num_eves, double zeta_g, double zeta_hd, double zeta_he,
                         double delta, double gamma_bar_d, std::optional<double> gamma_bar_e,
                         double r_th) {
                 SystemParams p{num_users, num_eves, zeta_g, zeta_hd, zeta_he, delta,
                                gamma_bar_d, gamma_bar_e.value_or(gamma_bar_d), r_th};
                 validate(p);
                 return p;
             }),
             py::arg("num_users") = defaults.num_users, py::arg("num_eves") = defaults.num_eves,
             py::arg("zeta_g") = defaults.zeta_g, py::arg("zeta_hd") = defaults.zeta_hd,
             py::arg("zeta_he") = defaults.zeta_he, py::arg("delta") = defaults.delta,
             py::arg("gamma_bar_d") = defaults.gamma_bar_d, py::arg("gamma_bar_e") = py::none(),
             py::arg("r_th") = defaults.r_th,
             "All values linear; gamma_bar_e defaults to gamma_bar_d.")
        .def_readwrite("num_users", &SystemParams::num_users)
        .def_readwrite("num_eves", &SystemParams::num_eves)
        .def_readwrite("zeta_g", &SystemParams::zeta_g)
        .def_readwrite("zeta_hd", &SystemParams::zeta_hd)
        .def_readwrite("zeta_he", &SystemParams::zeta_he)
        .def_readwrite("delta", &SystemParams::delta)
        .def_readwrite("gamma_bar_d", &SystemParams::gamma_bar_d)
        .def_readwrite("gamma_bar_e", &SystemParams::gamma_bar_e)
        .def_readwrite("r_th", &SystemParams::r_th)
        .def_property_readonly("rho", &SystemParams::rho)
        .def("__repr__", &repr);

    py::class_<SopValue>(m, "SopValue")
        .def_readonly("value", &SopValue::value)
        .def_readonly("method", &SopValue::method)
        .def("__float__", [](const SopValue& v) { return v.value; });

    py::class_<mc::MonteCarloEstimate>(m, "MonteCarloEstimate")
        .def_readonly("sop_hat", &mc::MonteCarloEstimate::sop_hat)
        .def_readonly("num_samples", &mc::MonteCarloEstimate::num_samples)
        .def_readonly("num_outages", &mc::MonteCarloEstimate::num_outages)
        .def_readonly("std_error", &mc::MonteCarloEstimate::std_error)
        .def_readonly("ci95_low", &mc::MonteCarloEstimate::ci95_low)
        .def_readonly("ci95_high", &mc::MonteCarloEstimate::ci95_high)
        .def_readonly("seed", &mc::MonteCarloEstimate::seed)
        .def_readonly("num_streams", &mc::MonteCarloEstimate::num_streams);

    py::class_<mc::ValidationReport>(m, "ValidationReport")
        .def_readonly("mc", &mc::ValidationReport::mc)
        .def_readonly("cf", &mc::ValidationReport::cf)
        .def_readonly("z_score", &mc::ValidationReport::z_score)
        .def_readonly("passed", &mc::ValidationReport::pass);

    m.def("bessel_k1", &specfun::bessel_k1, py::arg("z"));
    m.def("z_times_k1", &specfun::z_times_k1, py::arg("z"));
    m.def("db_to_linear", &db_to_linear, py::arg("x_db"));
    m.def("default_params", &default_params);
    m.def("secrecy_rate",
          [](double gamma_d, double gamma_e) { return secrecy_rate({gamma_d, gamma_e}); },
          py::arg("gamma_d"), py::arg("gamma_e"));

    m.def("best_user_cdf", &analytic::best_user_cdf, py::arg("x"), py::arg("num_users"),
          py::arg("zeta_hd"), py::arg("gamma_bar_d"));
    m.def("best_eve_cdf", &analytic::best_eve_cdf, py::arg("y"), py::arg("num_eves"),
          py::arg("zeta_he"), py::arg("gamma_bar_e"));
    m.def("sop_closed_form", &analytic::sop_closed_form, py::arg("params"));
    m.def("sop_asymptotic", &analytic::sop_asymptotic, py::arg("params"));
    m.def("sop_quadrature", &analytic::sop_quadrature, py::arg("params"),
          py::arg("rel_tol") = 1e-9, py::arg("max_depth") = analytic::kQuadratureMaxDepth,
          py::call_guard<py::gil_scoped_release>());

    m.def("estimate_sop", &mc::estimate_sop, py::arg("params"), py::arg("num_samples"),
          py::arg("seed"), py::arg("num_streams") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("validate_against_analytic", &mc::validate_against_analytic, py::arg("params"),
          py::arg("num_samples"), py::arg("seed"), py::arg("num_streams") = 1,
          py::call_guard<py::gil_scoped_release>());

    m.def("parse_params", [](const std::string& text) { return parse_params(text).params; },
          py::arg("text"), "Parse parameter-file text (dB keys) into linear SystemParams.");
    m.def("load_params", [](const std::string& path) { return load_params_file(path).params; },
          py::arg("path"));
    m.def("builtin_recipe_names", &sweep::builtin_recipe_names);
    m.def("run_recipe_csv", &run_recipe_csv, py::arg("name"), py::arg("seed"),
          py::arg("samples") = py::none(), py::arg("num_streams") = 1,
          "Run a built-in figure recipe and return its CSV text.");
}
