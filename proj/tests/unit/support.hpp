#pragma once

#include "asymlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace testing {

inline std::vector<double> normal_draws(std::size_t n, std::uint64_t seed, double mean = 0.0, double sd = 1.0)
{
  asymlab::Rng rng(seed);
  std::vector<double> out(n);
  for (auto& v : out)
    v = mean + sd * rng.normal();
  return out;
}

inline std::vector<double> uniform_draws(std::size_t n, std::uint64_t seed, double lo = 0.0, double hi = 1.0)
{
  asymlab::Rng rng(seed);
  std::vector<double> out(n);
  for (auto& v : out)
    v = lo + (hi - lo) * rng.uniform();
  return out;
}

inline std::vector<double> exponential_draws(std::size_t n, std::uint64_t seed)
{
  asymlab::Rng rng(seed);
  std::vector<double> out(n);
  for (auto& v : out)
    v = -std::log(rng.uniform());
  return out;
}

inline double normal_pdf(double x, double mean = 0.0, double sd = 1.0)
{
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

inline double median(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

} // namespace testing
