#include "asymlab/entropy.hpp"

#include "asymlab/errors.hpp"

#include <cmath>

namespace asymlab::entropy {

std::vector<double> neg_log_density(const sce::DensityModel& model, std::span<const double> points)
{
  auto terms = sce::evaluate_density(model, points);
  for (auto& v : terms)
    v = -std::log(v);
  return terms;
}

EntropyEstimate plugin_entropy(const sce::DensityModel& model, std::span<const double> points)
{
  if (points.empty())
    throw InputError("plugin_entropy: no evaluation points");
  const auto density = sce::evaluate_density(model, points);
  EntropyEstimate estimate;
  estimate.n_eval = points.size();
  double sum = 0.0;
  for (double f : density) {
    if (f <= model.clip_floor)
      ++estimate.clipped_eval_count;
    sum -= std::log(f);
  }
  estimate.value = sum / static_cast<double>(points.size());
  return estimate;
}

double oracle_entropy(const std::function<double(double)>& log_density, std::span<const double> points)
{
  if (points.empty())
    throw InputError("oracle_entropy: no evaluation points");
  double sum = 0.0;
  for (double p : points) {
    const double value = log_density(p);
    if (!std::isfinite(value))
      throw NumericError("oracle_entropy: non-finite log-density");
    sum -= value;
  }
  return sum / static_cast<double>(points.size());
}

FisherEstimate fisher_information(const sce::DensityModel& model, std::span<const double> points)
{
  const auto slope_nodes = sce::density_derivative(model);
  const auto density = sce::evaluate_density(model, points);
  const auto slope = sce::interpolate_on_grid(model.grid, slope_nodes, points, 0.0);
  const double cutoff = 100.0 * model.clip_floor;

  FisherEstimate estimate;
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (density[i] < cutoff) {
      ++estimate.excluded;
      continue;
    }
    const double score = slope[i] / density[i];
    sum += score * score;
    ++estimate.n_eval;
  }
  estimate.value = estimate.n_eval > 0 ? sum / static_cast<double>(estimate.n_eval) : 0.0;
  return estimate;
}

} // namespace asymlab::entropy
