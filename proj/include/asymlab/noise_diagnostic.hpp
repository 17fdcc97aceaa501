#pragma once

#include "asymlab/inference.hpp"
#include "asymlab/sce_density.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace asymlab::diagnostic {

//! Continuous piecewise-linear least-squares fit on the truncated-linear basis
//! {1, x, (x - k_1)_+, ..., (x - k_K)_+}.
struct SplineFit
{
  std::vector<double> knots;
  std::vector<double> coefficients;
  std::vector<double> fitted;
  double residual_variance = 0.0; //!< RSS / (n - K - 2)
  std::vector<std::string> warnings;

  std::vector<double> predict(std::span<const double> points) const;
};

//! Knots sit at type-7 quantiles j/(K+1) of x. Coincident knots, or knots not
//! strictly inside the data range, are dropped with a warning; a design that
//! is still rank deficient raises NumericError.
SplineFit spline_fit(std::span<const double> x, std::span<const double> y, std::size_t knots);

//! (exp(2c) - 1) / fisher. Throws ConfigError when fisher <= 0.
double sigma_crit(double c_hat, double fisher_hat);

struct DiagnosticOptions
{
  std::size_t knots = 10;
  std::size_t bootstrap = 1000;
  std::uint64_t seed = 20240607;
  std::size_t jobs = 1;
  double alpha = 0.05;
  sce::DensityConfig density;
};

struct DiagnosticPoint
{
  double sigma_hat = 0.0;
  double c_hat = 0.0;
  double fisher_hat = 0.0;
  double sigma_crit_hat = 0.0;

  double difference() const { return sigma_crit_hat - sigma_hat; }
};

//! Spline fit of y on x, cross-fitted coefficient of (x, fitted) and Fisher
//! information of the fitted outcome.
DiagnosticPoint diagnostic_point(const PairedSample& sample, const DiagnosticOptions& options);

struct DiagnosticReport
{
  double sigma_hat = 0.0;
  double sigma_crit_hat = 0.0;
  double c_hat = 0.0;
  double fisher_hat = 0.0;
  double diff_point = 0.0;
  double diff_ci_lower = 0.0;
  double diff_ci_upper = 0.0;
  std::size_t bootstrap_replicates = 0;
  std::size_t knots = 0;
  std::vector<std::string> warnings;
};

//! Point estimates on the full sample, then a percentile interval of
//! sigma_crit - sigma over pair-resampled bootstrap replicates.
DiagnosticReport bootstrap_diagnostic(const PairedSample& sample, const DiagnosticOptions& options);

} // namespace asymlab::diagnostic
