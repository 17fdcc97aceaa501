#pragma once

#include "asymlab/sce_density.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace asymlab::entropy {

//! Plug-in differential entropy in nats.
struct EntropyEstimate
{
  double value = 0.0;
  std::size_t n_eval = 0;
  std::size_t clipped_eval_count = 0;
};

struct FisherEstimate
{
  double value = 0.0;
  std::size_t n_eval = 0;
  std::size_t excluded = 0; //!< points skipped because the density was below 100 * clip_floor
};

//! -ln f(point) for each point; the per-point terms behind plugin_entropy.
std::vector<double> neg_log_density(const sce::DensityModel& model, std::span<const double> points);

EntropyEstimate plugin_entropy(const sce::DensityModel& model, std::span<const double> points);

//! -mean(log_density(point)) with a known log-density. Throws NumericError if
//! the callback returns a non-finite value.
double oracle_entropy(const std::function<double(double)>& log_density, std::span<const double> points);

FisherEstimate fisher_information(const sce::DensityModel& model, std::span<const double> points);

} // namespace asymlab::entropy
