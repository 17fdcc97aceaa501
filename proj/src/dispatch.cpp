#include "asymlab/cli_io.hpp"

#include "asymlab/errors.hpp"
#include "asymlab/experiments.hpp"
#include "asymlab/gem_models.hpp"
#include "asymlab/noise_diagnostic.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>

namespace asymlab::cli {

namespace {

sce::DensityConfig density_config(const RunConfig& config)
{
  return { config.grid_length, config.pad_fraction, config.clip_floor };
}

Json cross_fit_json(const inference::CrossFitResult& r)
{
  return Json{ { "h_x", r.h_x },
               { "h_y", r.h_y },
               { "c_hat", r.c_hat },
               { "sigma11", r.sigma11 },
               { "sigma22", r.sigma22 },
               { "sigma12", r.sigma12 },
               { "sigma_c_sq", r.sigma_c_sq },
               { "standard_error", r.standard_error() },
               { "ci_lower", r.ci_lower },
               { "ci_upper", r.ci_upper },
               { "alpha", r.alpha },
               { "n", r.n },
               { "clipped_eval_count", r.clipped_eval_count } };
}

struct LoadedSample
{
  PairedSample sample;
  Json normalization;
  std::vector<std::string> warnings;
};

const std::string& require_input(const RunConfig& config)
{
  if (!config.input_path)
    throw ConfigError("command '" + config.command + "' needs --input");
  return *config.input_path;
}

LoadedSample load_sample(const RunConfig& config)
{
  auto ingest = ingest_csv(require_input(config), config.x_col, config.y_col);
  LoadedSample loaded;
  loaded.warnings = std::move(ingest.warnings);
  if (config.normalize == "minmax") {
    const auto norm = normalize_minmax(ingest.sample);
    loaded.sample = norm.sample;
    loaded.normalization = Json{ { "method", "minmax" },
                                 { "min_x", norm.min_x },
                                 { "range_x", norm.range_x },
                                 { "scale_x", norm.scale_x() },
                                 { "min_y", norm.min_y },
                                 { "range_y", norm.range_y },
                                 { "scale_y", norm.scale_y() },
                                 { "log_shift", norm.log_shift() } };
  } else {
    loaded.sample = std::move(ingest.sample);
    loaded.normalization = Json{ { "method", "none" } };
  }
  return loaded;
}

void append(std::vector<std::string>& into, const std::vector<std::string>& from)
{
  into.insert(into.end(), from.begin(), from.end());
}

Output run_estimate(const RunConfig& config, bool with_test)
{
  auto loaded = load_sample(config);
  const auto fit = inference::cross_fit(loaded.sample, config.alpha, density_config(config));
  append(loaded.warnings, fit.warnings);

  Json result = cross_fit_json(fit);
  result["n_total"] = loaded.sample.n_total();
  result["normalization"] = loaded.normalization;
  if (with_test) {
    const auto dynamics = parse_dynamics(config.dynamics);
    const auto decision = inference::decide_direction(fit, dynamics, config.alpha);
    result["test"] = Json{ { "hypothesis", inference::to_string(decision.hypothesis) },
                           { "decision", inference::to_string(decision.decision) },
                           { "bound", decision.bound },
                           { "alpha", decision.alpha } };
  }
  return { Report(config.command, config.to_json(), std::move(result), std::move(loaded.warnings)), std::nullopt };
}

experiments::ExperimentOptions experiment_options(const RunConfig& config, std::size_t default_replicates)
{
  experiments::ExperimentOptions options;
  options.replicates = config.replicates.value_or(default_replicates);
  options.seed = config.seed;
  options.jobs = config.jobs;
  options.alpha = config.alpha;
  options.density = density_config(config);
  return options;
}

const std::string& require_g(const RunConfig& config)
{
  if (config.g_id.empty())
    throw ConfigError("this command needs --g");
  return config.g_id;
}

Output run_simulate(const RunConfig& config)
{
  Json result;
  std::vector<std::string> warnings;
  switch (config.table) {
    case 1: {
      const auto s = experiments::run_table1(require_g(config), config.noise, config.n.value_or(1000),
                                             experiment_options(config, 250));
      result = Json{ { "table", 1 },
                     { "g", s.g_id },
                     { "noise_sd", s.noise_sd },
                     { "n", s.n },
                     { "replicates", s.summary.replicates },
                     { "mean", s.summary.mean },
                     { "percentile_2_5", s.summary.percentile_2_5 },
                     { "percentile_97_5", s.summary.percentile_97_5 },
                     { "values", s.summary.values },
                     { "analytic_c", s.analytic_c },
                     { "labeled_dynamics", to_string(s.labeled_dynamics) },
                     { "classified_dynamics", to_string(s.classified_dynamics) },
                     { "analytic_discrepancy", s.analytic_discrepancy } };
      if (s.analytic_discrepancy)
        warnings.push_back("catalog label of '" + s.g_id + "' disagrees with its geometric-mean dynamics");
      break;
    }
    case 2: {
      const auto s = experiments::run_table2(config.case_id, config.n.value_or(500), experiment_options(config, 200));
      result = Json{ { "table", 2 },
                     { "case", s.case_id },
                     { "n", s.n },
                     { "replicates", s.replicates },
                     { "analytic_c", s.analytic_c },
                     { "mean", s.mean },
                     { "abs_bias", s.abs_bias },
                     { "ese", s.ese },
                     { "ase", s.ase },
                     { "coverage", s.coverage },
                     { "values", s.values },
                     { "standard_errors", s.standard_errors } };
      break;
    }
    case 3: {
      const auto s = experiments::run_accuracy(require_g(config), config.noise, config.rho, config.n.value_or(1000),
                                               experiment_options(config, 250));
      result = Json{ { "table", 3 },
                     { "g", s.g_id },
                     { "noise_sd", s.noise_sd },
                     { "rho", s.rho },
                     { "n", s.n },
                     { "replicates", s.replicates },
                     { "dynamics", to_string(s.dynamics) },
                     { "supported_count", s.supported_count },
                     { "detection_rate", s.detection_rate },
                     { "sign_rate", s.sign_rate },
                     { "analytic_discrepancy", s.analytic_discrepancy } };
      if (s.analytic_discrepancy)
        warnings.push_back("catalog label of '" + s.g_id + "' disagrees with its geometric-mean dynamics");
      break;
    }
    default:
      throw ConfigError("--table must be 1, 2 or 3");
  }
  return { Report(config.command, config.to_json(), std::move(result), std::move(warnings)), std::nullopt };
}

Output run_diagnose(const RunConfig& config)
{
  auto loaded = load_sample(config);
  diagnostic::DiagnosticOptions options;
  options.knots = config.knots;
  options.bootstrap = config.bootstrap;
  options.seed = config.seed;
  options.jobs = config.jobs;
  options.alpha = config.alpha;
  options.density = density_config(config);
  const auto d = diagnostic::bootstrap_diagnostic(loaded.sample, options);
  append(loaded.warnings, d.warnings);
  Json result{ { "sigma_hat", d.sigma_hat },
               { "sigma_crit_hat", d.sigma_crit_hat },
               { "c_hat", d.c_hat },
               { "fisher_hat", d.fisher_hat },
               { "diff_point", d.diff_point },
               { "diff_ci_lower", d.diff_ci_lower },
               { "diff_ci_upper", d.diff_ci_upper },
               { "bootstrap_replicates", d.bootstrap_replicates },
               { "knots", d.knots },
               { "n_total", loaded.sample.n_total() },
               { "normalization", loaded.normalization } };
  return { Report(config.command, config.to_json(), std::move(result), std::move(loaded.warnings)), std::nullopt };
}

Output run_density(const RunConfig& config)
{
  std::vector<std::string> warnings;
  auto values = ingest_column(require_input(config), config.x_col, warnings);
  Json normalization{ { "method", config.normalize } };
  if (config.normalize == "minmax") {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double min = *lo;
    const double range = *hi - *lo;
    if (!(range > 0.0))
      throw InputError("zero data range");
    for (auto& v : values)
      v = (v - min) / range;
    normalization["min"] = min;
    normalization["range"] = range;
  }
  const auto model = sce::fit_density(values, density_config(config));
  append(warnings, model.warnings);

  std::vector<double> nodes(model.grid.length);
  for (std::size_t m = 0; m < nodes.size(); ++m)
    nodes[m] = model.grid.node(m);

  std::string csv = "x,density\n";
  for (std::size_t m = 0; m < nodes.size(); ++m)
    csv += format_number(nodes[m]) + "," + format_number(model.values[m]) + "\n";

  Json result{ { "n", values.size() },
               { "grid_origin", model.grid.origin },
               { "grid_spacing", model.grid.spacing },
               { "grid_length", model.grid.length },
               { "acceptable_half_width", model.acceptable.half_width },
               { "clipped_count", model.clipped_count },
               { "integral", model.integral },
               { "raw_integral", model.raw_integral },
               { "normalization", normalization },
               { "x", nodes },
               { "density", model.values } };
  return { Report(config.command, config.to_json(), std::move(result), std::move(warnings)), std::move(csv) };
}

Output run_generate(const RunConfig& config)
{
  const std::size_t n = config.n.value_or(1000);
  PairedSample sample;
  Json result{ { "n", n }, { "seed", config.seed } };
  if (!config.g_id.empty()) {
    gem::NpgemConfig npgem{ config.g_id, config.noise * config.noise, config.rho, n, config.seed };
    sample = gem::sample_npgem(npgem);
    result["g"] = config.g_id;
    result["noise_sd"] = config.noise;
    result["rho"] = config.rho;
    result["exposure"] = gem::Exposure::uniform().describe();
  } else {
    const std::string id = experiments::canonical_case(config.case_id);
    const bool lognormal = id == "lognormal_normal";
    const auto exposure = lognormal ? gem::Exposure::lognormal(5.0, 1.0) : gem::Exposure::exponential(1.0);
    sample = gem::sample_gem(gem::find_function(lognormal ? "log" : "pow_two_thirds"), n, config.seed, exposure);
    result["case"] = id;
    result["exposure"] = exposure.describe();
  }
  return { Report(config.command, config.to_json(), std::move(result), {}), to_csv(sample) };
}

} // namespace

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env_value)
{
  if (flag)
    return *flag;
  if (env_value != nullptr && *env_value != '\0') {
    std::uint64_t value = 0;
    const char* end = env_value + std::strlen(env_value);
    const auto [ptr, ec] = std::from_chars(env_value, end, value);
    if (ec != std::errc() || ptr != end)
      throw ConfigError("ASYMLAB_SEED must be a non-negative integer");
    return value;
  }
  return default_seed;
}

void RunConfig::validate() const
{
  static const std::vector<std::string> commands{ "estimate", "test", "simulate", "diagnose", "density", "generate" };
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw ConfigError("unknown command '" + command + "'");
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw ConfigError("alpha must lie in (0, 0.5]");
  if (grid_length < 256 || !std::has_single_bit(grid_length))
    throw ConfigError("grid length must be a power of two and at least 256");
  if (!(pad_fraction >= 0.0) || !std::isfinite(pad_fraction))
    throw ConfigError("pad fraction must be finite and non-negative");
  if (!(clip_floor > 0.0) || !std::isfinite(clip_floor))
    throw ConfigError("clip floor must be positive");
  if (normalize != "none" && normalize != "minmax")
    throw ConfigError("normalize must be none or minmax");
  if (dynamics != "contracting" && dynamics != "expanding")
    throw ConfigError("dynamics must be contracting or expanding");
  if (format && *format != "json" && *format != "csv")
    throw ConfigError("format must be json or csv");
  if (replicates && *replicates < 2)
    throw ConfigError("at least 2 replicates are required");
  if (bootstrap < 200)
    throw ConfigError("bootstrap needs at least 200 replicates");
  if (jobs < 1)
    throw ConfigError("jobs must be at least 1");
  if (!(noise >= 0.0) || !std::isfinite(noise))
    throw ConfigError("noise must be finite and non-negative");
  if (!(std::abs(rho) < 1.0))
    throw ConfigError("rho must lie in (-1, 1)");
  if (n && *n < 8)
    throw ConfigError("n must be at least 8");
}

Json RunConfig::to_json() const
{
  Json j{ { "command", command },
          { "alpha", alpha },
          { "grid_length", grid_length },
          { "pad_fraction", pad_fraction },
          { "clip_floor", clip_floor },
          { "seed", seed } };
  if (command == "estimate" || command == "test" || command == "diagnose" || command == "density") {
    j["input"] = input_path.value_or("");
    j["x_col"] = x_col;
    j["normalize"] = normalize;
    if (command != "density")
      j["y_col"] = y_col;
  }
  if (command == "test")
    j["dynamics"] = dynamics;
  if (command == "diagnose") {
    j["bootstrap"] = bootstrap;
    j["knots"] = knots;
  }
  if (command == "simulate") {
    j["table"] = table;
    if (table == 2) {
      j["case"] = case_id;
    } else {
      j["g"] = g_id;
      j["noise_sd"] = noise;
      if (table == 3)
        j["rho"] = rho;
    }
    if (n)
      j["n"] = *n;
    if (replicates)
      j["replicates"] = *replicates;
  }
  if (command == "generate") {
    if (g_id.empty()) {
      j["case"] = case_id;
    } else {
      j["g"] = g_id;
      j["noise_sd"] = noise;
      j["rho"] = rho;
    }
    if (n)
      j["n"] = *n;
  }
  return j;
}

Output dispatch(const RunConfig& config)
{
  config.validate();
  if (config.command == "estimate")
    return run_estimate(config, false);
  if (config.command == "test")
    return run_estimate(config, true);
  if (config.command == "simulate")
    return run_simulate(config);
  if (config.command == "diagnose")
    return run_diagnose(config);
  if (config.command == "density")
    return run_density(config);
  return run_generate(config);
}

std::string render(const Output& output, const RunConfig& config)
{
  const bool has_payload = output.csv.has_value();
  const std::string format = config.format.value_or(has_payload ? "csv" : "json");
  if (format == "json")
    return output.report.serialize();
  return has_payload ? *output.csv : output.report.to_csv();
}

} // namespace asymlab::cli
