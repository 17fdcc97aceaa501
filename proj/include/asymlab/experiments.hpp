#pragma once

#include "asymlab/gem_models.hpp"
#include "asymlab/sce_density.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace asymlab::experiments {

struct ExperimentOptions
{
  std::size_t replicates = 250;
  std::uint64_t seed = 20240607;
  std::size_t jobs = 1;
  double alpha = 0.05;
  sce::DensityConfig density;
};

//! Runs body(0..count-1) on up to `jobs` threads. Results must be written by
//! index; the first failing index (lowest) is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body);

//! Type-7 (linear interpolation) sample quantile; `values` need not be sorted.
double quantile_type7(std::vector<double> values, double p);

struct ReplicationSummary
{
  std::size_t replicates = 0;
  double mean = 0.0;
  double percentile_2_5 = 0.0;
  double percentile_97_5 = 0.0;
  std::vector<double> values;
};

ReplicationSummary summarize(std::vector<double> values);

struct Table1Summary
{
  std::string g_id;
  double noise_sd = 0.0;
  std::size_t n = 0;
  ReplicationSummary summary;
  double analytic_c = 0.0;
  Dynamics labeled_dynamics = Dynamics::Contracting;
  Dynamics classified_dynamics = Dynamics::Contracting;
  //! True when the catalog label disagrees with the geometric-mean class.
  bool analytic_discrepancy = false;
};

//! Uniform exposure, Y = g(X) + eps with V(eps) = noise_sd^2 and no
//! noise-exposure correlation; n pairs per replicate.
Table1Summary run_table1(const std::string& g_id, double noise_sd, std::size_t n, const ExperimentOptions& options);

struct CoverageSummary
{
  std::string case_id;
  std::size_t n = 0; //!< per-split size; 2n pairs are drawn
  std::size_t replicates = 0;
  double analytic_c = 0.0;
  double mean = 0.0;
  double abs_bias = 0.0;
  double ese = 0.0;
  double ase = 0.0;
  double coverage = 0.0;
  std::vector<double> values;
  std::vector<double> standard_errors;
};

//! Canonical case id for "i"/"lognormal_normal" and "ii"/"exp_weibull".
std::string canonical_case(const std::string& case_id);

CoverageSummary run_table2(const std::string& case_id, std::size_t n_per_split, const ExperimentOptions& options);

struct AccuracySummary
{
  std::string g_id;
  double noise_sd = 0.0;
  double rho = 0.0;
  std::size_t n = 0;
  std::size_t replicates = 0;
  Dynamics dynamics = Dynamics::Contracting;
  std::size_t supported_count = 0;
  double detection_rate = 0.0;
  double sign_rate = 0.0; //!< fraction with sign(c_hat) matching the dynamics
  bool analytic_discrepancy = false;
};

AccuracySummary
run_accuracy(const std::string& g_id, double noise_sd, double rho, std::size_t n, const ExperimentOptions& options);

} // namespace asymlab::experiments
