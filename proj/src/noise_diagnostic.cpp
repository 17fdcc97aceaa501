#include "asymlab/noise_diagnostic.hpp"

#include "asymlab/entropy.hpp"
#include "asymlab/errors.hpp"
#include "asymlab/experiments.hpp"
#include "asymlab/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace asymlab::diagnostic {

namespace {

Eigen::MatrixXd design_matrix(std::span<const double> x, const std::vector<double>& knots)
{
  const auto rows = static_cast<Eigen::Index>(x.size());
  const auto cols = static_cast<Eigen::Index>(knots.size() + 2);
  Eigen::MatrixXd design(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = xi;
    for (std::size_t j = 0; j < knots.size(); ++j)
      design(i, static_cast<Eigen::Index>(j + 2)) = std::max(0.0, xi - knots[j]);
  }
  return design;
}

} // namespace

std::vector<double> SplineFit::predict(std::span<const double> points) const
{
  const Eigen::VectorXd beta = Eigen::Map<const Eigen::VectorXd>(coefficients.data(),
                                                                 static_cast<Eigen::Index>(coefficients.size()));
  const Eigen::VectorXd out = design_matrix(points, knots) * beta;
  return { out.data(), out.data() + out.size() };
}

SplineFit spline_fit(std::span<const double> x, std::span<const double> y, std::size_t knots)
{
  if (x.size() != y.size())
    throw InputError("spline_fit: x and y have different lengths");
  if (x.size() < knots + 4)
    throw InputError("spline_fit: need at least K + 4 observations");

  SplineFit fit;
  const std::vector<double> xs(x.begin(), x.end());
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  std::size_t dropped = 0;
  for (std::size_t j = 1; j <= knots; ++j) {
    const double knot = experiments::quantile_type7(xs, static_cast<double>(j) / static_cast<double>(knots + 1));
    const bool interior = knot > *lo && knot < *hi;
    const bool repeated = !fit.knots.empty() && knot <= fit.knots.back();
    if (!interior || repeated)
      ++dropped;
    else
      fit.knots.push_back(knot);
  }
  if (dropped > 0)
    fit.warnings.push_back(std::to_string(dropped) + " duplicate knot(s) removed");

  const Eigen::MatrixXd design = design_matrix(x, fit.knots);
  const Eigen::VectorXd response = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < design.cols())
    throw NumericError("spline_fit: rank-deficient design");
  const Eigen::VectorXd beta = qr.solve(response);
  const Eigen::VectorXd fitted = design * beta;

  fit.coefficients.assign(beta.data(), beta.data() + beta.size());
  fit.fitted.assign(fitted.data(), fitted.data() + fitted.size());
  const double rss = (response - fitted).squaredNorm();
  const auto dof = static_cast<double>(x.size()) - static_cast<double>(fit.knots.size()) - 2.0;
  fit.residual_variance = rss / dof;
  return fit;
}

double sigma_crit(double c_hat, double fisher_hat)
{
  if (!(fisher_hat > 0.0))
    throw ConfigError("sigma_crit: Fisher information must be positive");
  return std::expm1(2.0 * c_hat) / fisher_hat;
}

DiagnosticPoint diagnostic_point(const PairedSample& sample, const DiagnosticOptions& options)
{
  const auto fit = spline_fit(sample.x, sample.y, options.knots);
  PairedSample smoothed{ sample.x, fit.fitted };
  const auto cross = inference::cross_fit(smoothed, options.alpha, options.density);
  const auto outcome_density = sce::fit_density(fit.fitted, options.density);
  const auto fisher = entropy::fisher_information(outcome_density, fit.fitted);

  DiagnosticPoint point;
  point.sigma_hat = fit.residual_variance;
  point.c_hat = cross.c_hat;
  point.fisher_hat = fisher.value;
  point.sigma_crit_hat = sigma_crit(cross.c_hat, fisher.value);
  return point;
}

DiagnosticReport bootstrap_diagnostic(const PairedSample& sample, const DiagnosticOptions& options)
{
  validate_sample(sample);
  if (options.bootstrap < 200)
    throw ConfigError("bootstrap diagnostic needs at least 200 replicates");
  if (!(options.alpha > 0.0 && options.alpha < 1.0))
    throw ConfigError("alpha must lie in (0, 1)");

  DiagnosticReport report;
  report.bootstrap_replicates = options.bootstrap;
  const auto full_fit = spline_fit(sample.x, sample.y, options.knots);
  report.knots = full_fit.knots.size();
  report.warnings = full_fit.warnings;

  const DiagnosticPoint point = diagnostic_point(sample, options);
  report.sigma_hat = point.sigma_hat;
  report.sigma_crit_hat = point.sigma_crit_hat;
  report.c_hat = point.c_hat;
  report.fisher_hat = point.fisher_hat;
  report.diff_point = point.difference();

  const std::size_t n = sample.n_total();
  std::vector<double> diffs(options.bootstrap);
  experiments::parallel_for(options.bootstrap, options.jobs, [&](std::size_t b) {
    Rng rng(derive_seed(options.seed, b));
    PairedSample resampled;
    resampled.x.resize(n);
    resampled.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto j = static_cast<std::size_t>(rng.index(n));
      resampled.x[i] = sample.x[j];
      resampled.y[i] = sample.y[j];
    }
    diffs[b] = diagnostic_point(resampled, options).difference();
  });

  report.diff_ci_lower = experiments::quantile_type7(diffs, options.alpha / 2.0);
  report.diff_ci_upper = experiments::quantile_type7(diffs, 1.0 - options.alpha / 2.0);
  report.warnings.push_back("sigma_hat stands in for the unobservable noise variance; the comparison is a heuristic");
  if (report.diff_ci_upper < 0.0)
    report.warnings.push_back("residual variance exceeds the critical variance: direction evidence may be unreliable");
  return report;
}

} // namespace asymlab::diagnostic
