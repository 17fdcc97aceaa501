#include "asymlab/cli_io.hpp"
#include "asymlab/entropy.hpp"
#include "asymlab/errors.hpp"
#include "asymlab/experiments.hpp"
#include "asymlab/gem_models.hpp"
#include "asymlab/inference.hpp"
#include "asymlab/noise_diagnostic.hpp"
#include "asymlab/sce_density.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace asymlab;

namespace {

sce::DensityConfig density_config(std::size_t grid, double pad, double clip)
{
  return { grid, pad, clip };
}

PairedSample paired(std::vector<double> x, std::vector<double> y)
{
  return { std::move(x), std::move(y) };
}

experiments::ExperimentOptions experiment_options(std::size_t replicates, std::uint64_t seed, std::size_t jobs, double alpha)
{
  experiments::ExperimentOptions o;
  o.replicates = replicates;
  o.seed = seed;
  o.jobs = jobs;
  o.alpha = alpha;
  return o;
}

// Long-running native work runs with the interpreter lock released.
template <class F>
auto without_gil(F&& f)
{
  py::gil_scoped_release release;
  return f();
}

Dynamics dynamics_arg(const std::string& text)
{
  return parse_dynamics(text);
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Entropy-based asymmetry coefficient: density estimation, cross-fitted inference, simulations";

  auto base = py::register_exception<Error>(m, "AsymlabError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());

  py::class_<sce::SpatialGrid>(m, "SpatialGrid")
    .def_readonly("origin", &sce::SpatialGrid::origin)
    .def_readonly("spacing", &sce::SpatialGrid::spacing)
    .def_readonly("length", &sce::SpatialGrid::length)
    .def_property_readonly("right", &sce::SpatialGrid::right)
    .def("nodes", [](const sce::SpatialGrid& g) {
      std::vector<double> out(g.length);
      for (std::size_t i = 0; i < g.length; ++i)
        out[i] = g.node(i);
      return out;
    });

  py::class_<sce::DensityModel>(m, "DensityModel")
    .def_readonly("grid", &sce::DensityModel::grid)
    .def_readonly("values", &sce::DensityModel::values)
    .def_readonly("raw_values", &sce::DensityModel::raw_values)
    .def_readonly("integral", &sce::DensityModel::integral)
    .def_readonly("raw_integral", &sce::DensityModel::raw_integral)
    .def_readonly("clipped_count", &sce::DensityModel::clipped_count)
    .def_readonly("sample_size", &sce::DensityModel::sample_size)
    .def_property_readonly("acceptable_half_width", [](const sce::DensityModel& d) { return d.acceptable.half_width; })
    .def_readonly("warnings", &sce::DensityModel::warnings)
    .def("evaluate", [](const sce::DensityModel& d, const std::vector<double>& p) { return sce::evaluate_density(d, p); })
    .def("derivative", &sce::density_derivative);

  m.def(
    "fit_density",
    [](const std::vector<double>& sample, std::size_t grid, double pad, double clip) {
      return sce::fit_density(sample, density_config(grid, pad, clip));
    },
    py::arg("sample"), py::arg("grid_length") = 256, py::arg("pad_fraction") = 0.5, py::arg("clip_floor") = 1e-12);

  m.def(
    "plugin_entropy",
    [](const sce::DensityModel& d, const std::vector<double>& p) { return entropy::plugin_entropy(d, p).value; },
    py::arg("model"), py::arg("points"));
  m.def(
    "fisher_information",
    [](const sce::DensityModel& d, const std::vector<double>& p) { return entropy::fisher_information(d, p).value; },
    py::arg("model"), py::arg("points"));

  py::class_<inference::CrossFitResult>(m, "CrossFitResult")
    .def_readonly("h_x", &inference::CrossFitResult::h_x)
    .def_readonly("h_y", &inference::CrossFitResult::h_y)
    .def_readonly("c_hat", &inference::CrossFitResult::c_hat)
    .def_readonly("sigma11", &inference::CrossFitResult::sigma11)
    .def_readonly("sigma22", &inference::CrossFitResult::sigma22)
    .def_readonly("sigma12", &inference::CrossFitResult::sigma12)
    .def_readonly("sigma_c_sq", &inference::CrossFitResult::sigma_c_sq)
    .def_readonly("ci_lower", &inference::CrossFitResult::ci_lower)
    .def_readonly("ci_upper", &inference::CrossFitResult::ci_upper)
    .def_readonly("alpha", &inference::CrossFitResult::alpha)
    .def_readonly("n", &inference::CrossFitResult::n)
    .def_readonly("clipped_eval_count", &inference::CrossFitResult::clipped_eval_count)
    .def_readonly("warnings", &inference::CrossFitResult::warnings)
    .def_property_readonly("standard_error", &inference::CrossFitResult::standard_error);

  m.def(
    "cross_fit",
    [](std::vector<double> x, std::vector<double> y, double alpha, std::size_t grid, double pad, double clip) {
      return inference::cross_fit(paired(std::move(x), std::move(y)), alpha, density_config(grid, pad, clip));
    },
    py::arg("x"), py::arg("y"), py::arg("alpha") = 0.05, py::arg("grid_length") = 256, py::arg("pad_fraction") = 0.5,
    py::arg("clip_floor") = 1e-12);

  m.def(
    "decide_direction",
    [](const inference::CrossFitResult& r, const std::string& dynamics, double alpha) {
      const auto d = inference::decide_direction(r, dynamics_arg(dynamics), alpha);
      py::dict out;
      out["hypothesis"] = inference::to_string(d.hypothesis);
      out["decision"] = inference::to_string(d.decision);
      out["bound"] = d.bound;
      out["alpha"] = d.alpha;
      out["supported"] = d.supported();
      return out;
    },
    py::arg("result"), py::arg("dynamics"), py::arg("alpha") = 0.05);

  m.def("catalog_ids", [] {
    std::vector<std::string> ids;
    for (const auto& g : gem::catalog())
      ids.push_back(g.id);
    return ids;
  });
  m.def(
    "classify_dynamics",
    [](const std::string& id) {
      const auto r = gem::classify_dynamics(gem::find_function(id));
      return py::make_tuple(r.geometric_mean, to_string(r.dynamics));
    },
    py::arg("g"));
  m.def("analytic_coefficient", &gem::analytic_coefficient, py::arg("case_id"));
  m.def(
    "sample_gem",
    [](const std::string& id, std::size_t n, std::uint64_t seed) {
      auto s = gem::sample_gem(gem::find_function(id), n, seed);
      return py::make_tuple(std::move(s.x), std::move(s.y));
    },
    py::arg("g"), py::arg("n"), py::arg("seed"));
  m.def(
    "sample_npgem",
    [](const std::string& id, double noise_variance, double rho, std::size_t n, std::uint64_t seed) {
      auto s = gem::sample_npgem({ id, noise_variance, rho, n, seed });
      return py::make_tuple(std::move(s.x), std::move(s.y));
    },
    py::arg("g"), py::arg("noise_variance"), py::arg("rho") = 0.0, py::arg("n") = 1000, py::arg("seed") = 0);

  m.def(
    "run_table1",
    [](const std::string& id, double noise_sd, std::size_t n, std::size_t replicates, std::uint64_t seed, std::size_t jobs) {
      const auto s =
        without_gil([&] { return experiments::run_table1(id, noise_sd, n, experiment_options(replicates, seed, jobs, 0.05)); });
      py::dict out;
      out["mean"] = s.summary.mean;
      out["percentile_2_5"] = s.summary.percentile_2_5;
      out["percentile_97_5"] = s.summary.percentile_97_5;
      out["values"] = s.summary.values;
      out["analytic_c"] = s.analytic_c;
      out["analytic_discrepancy"] = s.analytic_discrepancy;
      return out;
    },
    py::arg("g"), py::arg("noise_sd"), py::arg("n") = 1000, py::arg("replicates") = 250,
    py::arg("seed") = cli::default_seed, py::arg("jobs") = 1);

  m.def(
    "run_table2",
    [](const std::string& case_id, std::size_t n, std::size_t replicates, std::uint64_t seed, std::size_t jobs, double alpha) {
      const auto s =
        without_gil([&] { return experiments::run_table2(case_id, n, experiment_options(replicates, seed, jobs, alpha)); });
      py::dict out;
      out["case"] = s.case_id;
      out["analytic_c"] = s.analytic_c;
      out["mean"] = s.mean;
      out["abs_bias"] = s.abs_bias;
      out["ese"] = s.ese;
      out["ase"] = s.ase;
      out["coverage"] = s.coverage;
      out["values"] = s.values;
      return out;
    },
    py::arg("case_id"), py::arg("n"), py::arg("replicates") = 200, py::arg("seed") = cli::default_seed,
    py::arg("jobs") = 1, py::arg("alpha") = 0.05);

  m.def(
    "run_accuracy",
    [](const std::string& id, double noise_sd, double rho, std::size_t n, std::size_t replicates, std::uint64_t seed,
       std::size_t jobs) {
      const auto s =
        without_gil([&] { return experiments::run_accuracy(id, noise_sd, rho, n, experiment_options(replicates, seed, jobs, 0.05)); });
      py::dict out;
      out["detection_rate"] = s.detection_rate;
      out["sign_rate"] = s.sign_rate;
      out["supported_count"] = s.supported_count;
      out["dynamics"] = to_string(s.dynamics);
      out["analytic_discrepancy"] = s.analytic_discrepancy;
      return out;
    },
    py::arg("g"), py::arg("noise_sd"), py::arg("rho"), py::arg("n") = 1000, py::arg("replicates") = 250,
    py::arg("seed") = cli::default_seed, py::arg("jobs") = 1);

  m.def("sigma_crit", &diagnostic::sigma_crit, py::arg("c_hat"), py::arg("fisher_hat"));
  m.def(
    "bootstrap_diagnostic",
    [](std::vector<double> x, std::vector<double> y, std::size_t knots, std::size_t bootstrap, std::uint64_t seed,
       std::size_t jobs) {
      diagnostic::DiagnosticOptions o;
      o.knots = knots;
      o.bootstrap = bootstrap;
      o.seed = seed;
      o.jobs = jobs;
      const auto sample = paired(std::move(x), std::move(y));
      const auto r =
        without_gil([&] { return diagnostic::bootstrap_diagnostic(sample, o); });
      py::dict out;
      out["sigma_hat"] = r.sigma_hat;
      out["sigma_crit_hat"] = r.sigma_crit_hat;
      out["c_hat"] = r.c_hat;
      out["fisher_hat"] = r.fisher_hat;
      out["diff_point"] = r.diff_point;
      out["diff_ci_lower"] = r.diff_ci_lower;
      out["diff_ci_upper"] = r.diff_ci_upper;
      out["knots"] = r.knots;
      out["warnings"] = r.warnings;
      return out;
    },
    py::arg("x"), py::arg("y"), py::arg("knots") = 10, py::arg("bootstrap") = 1000, py::arg("seed") = cli::default_seed,
    py::arg("jobs") = 1);

  m.def(
    "estimate_csv",
    [](const std::string& path, const std::string& x_col, const std::string& y_col, double alpha,
       const std::string& normalize, std::optional<std::string> dynamics) {
      cli::RunConfig c;
      c.command = dynamics ? "test" : "estimate";
      c.input_path = path;
      c.x_col = x_col;
      c.y_col = y_col;
      c.alpha = alpha;
      c.normalize = normalize;
      if (dynamics)
        c.dynamics = *dynamics;
      return cli::dispatch(c).report.serialize();
    },
    "Runs the estimate (or, with dynamics, the test) command and returns the JSON report text.", py::arg("path"),
    py::arg("x_col") = "1", py::arg("y_col") = "2", py::arg("alpha") = 0.05, py::arg("normalize") = "none",
    py::arg("dynamics") = py::none());
}
