#include "asymlab/experiments.hpp"

#include "asymlab/errors.hpp"
#include "asymlab/inference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

namespace asymlab::experiments {

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body)
{
  std::vector<std::exception_ptr> failures(count);
  const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, count));
  std::atomic<std::size_t> next{ 0 };
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back(worker);
  }
  for (const auto& failure : failures)
    if (failure)
      std::rethrow_exception(failure);
}

double quantile_type7(std::vector<double> values, double p)
{
  if (values.empty())
    throw InputError("quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

ReplicationSummary summarize(std::vector<double> values)
{
  ReplicationSummary s;
  s.replicates = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  s.percentile_2_5 = quantile_type7(values, 0.025);
  s.percentile_97_5 = quantile_type7(values, 0.975);
  s.values = std::move(values);
  return s;
}

namespace {

void check_options(const ExperimentOptions& options)
{
  if (options.replicates < 2)
    throw ConfigError("at least 2 replicates are required");
}

bool label_disagrees(const gem::GenerativeFunctionSpec& g)
{
  return g.support.bounded() && gem::classify_dynamics(g).dynamics != g.labeled_dynamics;
}

} // namespace

Table1Summary run_table1(const std::string& g_id, double noise_sd, std::size_t n, const ExperimentOptions& options)
{
  check_options(options);
  const auto& g = gem::find_function(g_id);
  if (!(noise_sd >= 0.0))
    throw ConfigError("noise standard deviation must be non-negative");

  std::vector<double> values(options.replicates);
  parallel_for(options.replicates, options.jobs, [&](std::size_t r) {
    gem::NpgemConfig config{ g_id, noise_sd * noise_sd, 0.0, n, derive_seed(options.seed, r) };
    const auto sample = gem::sample_npgem(config);
    values[r] = inference::cross_fit(sample, options.alpha, options.density).c_hat;
  });

  Table1Summary out;
  out.g_id = g_id;
  out.noise_sd = noise_sd;
  out.n = n;
  out.summary = summarize(std::move(values));
  out.analytic_c = gem::analytic_coefficient("uniform:" + g_id);
  out.labeled_dynamics = g.labeled_dynamics;
  out.classified_dynamics = gem::classify_dynamics(g).dynamics;
  out.analytic_discrepancy = out.labeled_dynamics != out.classified_dynamics;
  return out;
}

std::string canonical_case(const std::string& case_id)
{
  if (case_id == "i" || case_id == "lognormal_normal")
    return "lognormal_normal";
  if (case_id == "ii" || case_id == "exp_weibull")
    return "exp_weibull";
  throw ConfigError("unknown coverage case '" + case_id + "'");
}

CoverageSummary run_table2(const std::string& case_id, std::size_t n_per_split, const ExperimentOptions& options)
{
  check_options(options);
  const std::string id = canonical_case(case_id);
  const bool lognormal = id == "lognormal_normal";
  const auto& g = gem::find_function(lognormal ? "log" : "pow_two_thirds");
  const auto exposure = lognormal ? gem::Exposure::lognormal(5.0, 1.0) : gem::Exposure::exponential(1.0);

  std::vector<double> values(options.replicates);
  std::vector<double> errors(options.replicates);
  std::vector<double> lower(options.replicates);
  std::vector<double> upper(options.replicates);
  parallel_for(options.replicates, options.jobs, [&](std::size_t r) {
    const auto sample = gem::sample_gem(g, 2 * n_per_split, derive_seed(options.seed, r), exposure);
    const auto fit = inference::cross_fit(sample, options.alpha, options.density);
    values[r] = fit.c_hat;
    errors[r] = fit.standard_error();
    lower[r] = fit.ci_lower;
    upper[r] = fit.ci_upper;
  });

  CoverageSummary out;
  out.case_id = id;
  out.n = n_per_split;
  out.replicates = options.replicates;
  out.analytic_c = gem::analytic_coefficient(id);
  const auto R = static_cast<double>(options.replicates);
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / R;
  out.abs_bias = std::abs(out.mean - out.analytic_c);
  double ss = 0.0;
  for (double v : values)
    ss += (v - out.mean) * (v - out.mean);
  out.ese = std::sqrt(ss / (R - 1.0));
  out.ase = std::accumulate(errors.begin(), errors.end(), 0.0) / R;
  std::size_t covered = 0;
  for (std::size_t r = 0; r < options.replicates; ++r)
    if (lower[r] <= out.analytic_c && out.analytic_c <= upper[r])
      ++covered;
  out.coverage = static_cast<double>(covered) / R;
  out.values = std::move(values);
  out.standard_errors = std::move(errors);
  return out;
}

AccuracySummary
run_accuracy(const std::string& g_id, double noise_sd, double rho, std::size_t n, const ExperimentOptions& options)
{
  check_options(options);
  const auto& g = gem::find_function(g_id);
  if (!g.support.bounded())
    throw ConfigError("accuracy runs need a catalog function on [0, 1]");

  std::vector<char> supported(options.replicates);
  std::vector<char> signed_right(options.replicates);
  parallel_for(options.replicates, options.jobs, [&](std::size_t r) {
    gem::NpgemConfig config{ g_id, noise_sd * noise_sd, rho, n, derive_seed(options.seed, r) };
    const auto sample = gem::sample_npgem(config);
    const auto fit = inference::cross_fit(sample, options.alpha, options.density);
    supported[r] = inference::decide_direction(fit, g.labeled_dynamics, options.alpha).supported();
    signed_right[r] = g.labeled_dynamics == Dynamics::Contracting ? fit.c_hat > 0.0 : fit.c_hat < 0.0;
  });

  AccuracySummary out;
  out.g_id = g_id;
  out.noise_sd = noise_sd;
  out.rho = rho;
  out.n = n;
  out.replicates = options.replicates;
  out.dynamics = g.labeled_dynamics;
  out.supported_count = static_cast<std::size_t>(std::count(supported.begin(), supported.end(), 1));
  const auto R = static_cast<double>(options.replicates);
  out.detection_rate = static_cast<double>(out.supported_count) / R;
  out.sign_rate = static_cast<double>(std::count(signed_right.begin(), signed_right.end(), 1)) / R;
  out.analytic_discrepancy = label_disagrees(g);
  return out;
}

} // namespace asymlab::experiments
