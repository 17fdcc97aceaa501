#pragma once

#include "asymlab/sce_density.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace asymlab {

//! Observed (x_i, y_i) pairs.
struct PairedSample
{
  std::vector<double> x;
  std::vector<double> y;

  std::size_t n_total() const { return x.size(); }
};

//! Throws InputError unless lengths match, values are finite and there are at
//! least 8 pairs.
void validate_sample(const PairedSample& sample);

enum class Dynamics
{
  Contracting,
  Expanding,
  Boundary
};

const char* to_string(Dynamics d);
Dynamics parse_dynamics(const std::string& text);

} // namespace asymlab

namespace asymlab::inference {

struct SplitPair
{
  PairedSample first;
  PairedSample second;
  std::vector<std::string> warnings;
};

//! First half / second half, no shuffling. An odd count drops the last pair.
SplitPair split(const PairedSample& sample);

//! Per-point negative log-densities on one split, from densities fitted on
//! the other split.
struct SplitEvaluation
{
  std::vector<double> neg_log_x;
  std::vector<double> neg_log_y;

  double entropy_x() const;
  double entropy_y() const;
};

struct CovarianceBlocks
{
  double sigma11 = 0.0;
  double sigma22 = 0.0;
  double sigma12 = 0.0;

  double sigma_c_sq() const;
};

//! Second moments of the centred terms on each split, averaged across splits.
CovarianceBlocks covariance_blocks(const SplitEvaluation& first, const SplitEvaluation& second);

struct CrossFitResult
{
  double h_x = 0.0;
  double h_y = 0.0;
  double c_hat = 0.0;
  double sigma11 = 0.0;
  double sigma22 = 0.0;
  double sigma12 = 0.0;
  double sigma_c_sq = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double alpha = 0.05;
  std::size_t n = 0; //!< per-split size
  std::size_t clipped_eval_count = 0;
  std::vector<std::string> warnings;

  double standard_error() const;
};

CrossFitResult cross_fit(const PairedSample& sample, double alpha, const sce::DensityConfig& config = {});

enum class Hypothesis
{
  ContractingTest,
  ExpandingTest
};

enum class Decision
{
  DirectionSupported,
  DirectionNotSupported
};

const char* to_string(Hypothesis h);
const char* to_string(Decision d);

struct DirectionDecision
{
  Hypothesis hypothesis = Hypothesis::ContractingTest;
  Decision decision = Decision::DirectionNotSupported;
  double bound = 0.0; //!< one-sided lower (contracting) or upper (expanding) limit
  double alpha = 0.05;

  bool supported() const { return decision == Decision::DirectionSupported; }
};

//! Contracting: supported iff c - z(1-alpha) se > 0.
//! Expanding:   supported iff c + z(1-alpha) se < 0.
DirectionDecision decide_direction(const CrossFitResult& result, Dynamics dynamics, double alpha);

//! Standard normal quantile.
double normal_quantile(double p);

} // namespace asymlab::inference
