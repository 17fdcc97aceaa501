#include "asymlab/inference.hpp"

#include "asymlab/entropy.hpp"
#include "asymlab/errors.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace asymlab {

void validate_sample(const PairedSample& sample)
{
  if (sample.x.size() != sample.y.size())
    throw InputError("x and y have different lengths");
  if (sample.x.size() < 8)
    throw InputError("at least 8 pairs are required");
  for (std::size_t i = 0; i < sample.x.size(); ++i)
    if (!std::isfinite(sample.x[i]) || !std::isfinite(sample.y[i]))
      throw InputError("sample contains non-finite values");
}

const char* to_string(Dynamics d)
{
  switch (d) {
    case Dynamics::Contracting:
      return "contracting";
    case Dynamics::Expanding:
      return "expanding";
    case Dynamics::Boundary:
      return "boundary";
  }
  return "unknown";
}

Dynamics parse_dynamics(const std::string& text)
{
  if (text == "contracting")
    return Dynamics::Contracting;
  if (text == "expanding")
    return Dynamics::Expanding;
  throw ConfigError("unknown dynamics '" + text + "'");
}

} // namespace asymlab

namespace asymlab::inference {

namespace {

double mean(const std::vector<double>& v)
{
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double centred_product(const std::vector<double>& a, double ma, const std::vector<double>& b, double mb)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    sum += (a[i] - ma) * (b[i] - mb);
  return sum / static_cast<double>(a.size());
}

CovarianceBlocks split_blocks(const SplitEvaluation& s)
{
  const double hx = s.entropy_x();
  const double hy = s.entropy_y();
  CovarianceBlocks b;
  b.sigma11 = centred_product(s.neg_log_x, hx, s.neg_log_x, hx);
  b.sigma22 = centred_product(s.neg_log_y, hy, s.neg_log_y, hy);
  b.sigma12 = centred_product(s.neg_log_x, hx, s.neg_log_y, hy);
  return b;
}

void append(std::vector<std::string>& into, const std::vector<std::string>& from, const char* prefix)
{
  for (const auto& w : from)
    into.push_back(std::string(prefix) + w);
}

} // namespace

SplitPair split(const PairedSample& sample)
{
  validate_sample(sample);
  SplitPair pair;
  std::size_t total = sample.n_total();
  if (total % 2 != 0) {
    --total;
    pair.warnings.push_back("odd sample size: last pair dropped");
  }
  const std::size_t half = total / 2;
  const auto cut = static_cast<std::ptrdiff_t>(half);
  const auto end = static_cast<std::ptrdiff_t>(total);
  pair.first.x.assign(sample.x.begin(), sample.x.begin() + cut);
  pair.first.y.assign(sample.y.begin(), sample.y.begin() + cut);
  pair.second.x.assign(sample.x.begin() + cut, sample.x.begin() + end);
  pair.second.y.assign(sample.y.begin() + cut, sample.y.begin() + end);
  return pair;
}

double SplitEvaluation::entropy_x() const
{
  return mean(neg_log_x);
}

double SplitEvaluation::entropy_y() const
{
  return mean(neg_log_y);
}

double CovarianceBlocks::sigma_c_sq() const
{
  return std::max(0.0, sigma11 + sigma22 - 2.0 * sigma12);
}

CovarianceBlocks covariance_blocks(const SplitEvaluation& first, const SplitEvaluation& second)
{
  const CovarianceBlocks a = split_blocks(first);
  const CovarianceBlocks b = split_blocks(second);
  return { 0.5 * (a.sigma11 + b.sigma11), 0.5 * (a.sigma22 + b.sigma22), 0.5 * (a.sigma12 + b.sigma12) };
}

double CrossFitResult::standard_error() const
{
  return std::sqrt(sigma_c_sq / static_cast<double>(n));
}

CrossFitResult cross_fit(const PairedSample& sample, double alpha, const sce::DensityConfig& config)
{
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ConfigError("alpha must lie in (0, 1)");
  SplitPair halves = split(sample);

  const auto fx1 = sce::fit_density(halves.first.x, config);
  const auto fy1 = sce::fit_density(halves.first.y, config);
  const auto fx2 = sce::fit_density(halves.second.x, config);
  const auto fy2 = sce::fit_density(halves.second.y, config);

  // Split k is evaluated with densities fitted on the other split.
  SplitEvaluation on_first{ entropy::neg_log_density(fx2, halves.first.x),
                            entropy::neg_log_density(fy2, halves.first.y) };
  SplitEvaluation on_second{ entropy::neg_log_density(fx1, halves.second.x),
                             entropy::neg_log_density(fy1, halves.second.y) };

  CrossFitResult result;
  result.alpha = alpha;
  result.n = halves.first.x.size();
  result.h_x = 0.5 * (on_first.entropy_x() + on_second.entropy_x());
  result.h_y = 0.5 * (on_first.entropy_y() + on_second.entropy_y());
  result.c_hat = result.h_x - result.h_y;

  const CovarianceBlocks blocks = covariance_blocks(on_first, on_second);
  result.sigma11 = blocks.sigma11;
  result.sigma22 = blocks.sigma22;
  result.sigma12 = blocks.sigma12;
  result.sigma_c_sq = blocks.sigma_c_sq();

  const double half_width = normal_quantile(1.0 - alpha / 2.0) * result.standard_error();
  result.ci_lower = result.c_hat - half_width;
  result.ci_upper = result.c_hat + half_width;

  result.warnings = std::move(halves.warnings);
  append(result.warnings, fx1.warnings, "x density (split 1): ");
  append(result.warnings, fy1.warnings, "y density (split 1): ");
  append(result.warnings, fx2.warnings, "x density (split 2): ");
  append(result.warnings, fy2.warnings, "y density (split 2): ");

  // -ln(clip_floor) is the largest possible term; count points that hit it.
  const double floor_term = -std::log(config.clip_floor);
  std::size_t clipped_x = 0;
  std::size_t clipped_y = 0;
  for (const SplitEvaluation* s : { &on_first, &on_second }) {
    clipped_x += static_cast<std::size_t>(std::count_if(
      s->neg_log_x.begin(), s->neg_log_x.end(), [&](double v) { return v >= floor_term; }));
    clipped_y += static_cast<std::size_t>(std::count_if(
      s->neg_log_y.begin(), s->neg_log_y.end(), [&](double v) { return v >= floor_term; }));
  }
  result.clipped_eval_count = clipped_x + clipped_y;
  const double limit = 0.01 * 2.0 * static_cast<double>(result.n);
  if (static_cast<double>(clipped_x) > limit)
    result.warnings.push_back(std::to_string(clipped_x) + " x evaluation points hit the clip floor");
  if (static_cast<double>(clipped_y) > limit)
    result.warnings.push_back(std::to_string(clipped_y) + " y evaluation points hit the clip floor");
  return result;
}

const char* to_string(Hypothesis h)
{
  return h == Hypothesis::ContractingTest ? "contracting" : "expanding";
}

const char* to_string(Decision d)
{
  return d == Decision::DirectionSupported ? "DirectionSupported" : "DirectionNotSupported";
}

DirectionDecision decide_direction(const CrossFitResult& result, Dynamics dynamics, double alpha)
{
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ConfigError("alpha must lie in (0, 1)");
  const double margin = normal_quantile(1.0 - alpha) * result.standard_error();
  DirectionDecision d;
  d.alpha = alpha;
  switch (dynamics) {
    case Dynamics::Contracting:
      d.hypothesis = Hypothesis::ContractingTest;
      d.bound = result.c_hat - margin;
      d.decision = d.bound > 0.0 ? Decision::DirectionSupported : Decision::DirectionNotSupported;
      break;
    case Dynamics::Expanding:
      d.hypothesis = Hypothesis::ExpandingTest;
      d.bound = result.c_hat + margin;
      d.decision = d.bound < 0.0 ? Decision::DirectionSupported : Decision::DirectionNotSupported;
      break;
    case Dynamics::Boundary:
      throw ConfigError("a direction test needs contracting or expanding dynamics");
  }
  return d;
}

double normal_quantile(double p)
{
  if (!(p > 0.0 && p < 1.0))
    throw ConfigError("normal_quantile: probability outside (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

} // namespace asymlab::inference
