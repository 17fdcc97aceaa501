#include "asymlab/quadrature.hpp"

#include "asymlab/errors.hpp"

#include <cmath>
#include <numbers>

namespace asymlab::quadrature {

Rule gauss_legendre(std::size_t points)
{
  if (points == 0)
    throw ConfigError("gauss_legendre: zero points");
  Rule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const auto n = static_cast<double>(points);
  for (std::size_t i = 0; i < (points + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= points; ++k) {
        const auto kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      if (points == 1)
        p1 = x, p0 = 1.0;
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16)
        break;
    }
    if (points == 1)
      derivative = 1.0;
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[points - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[points - 1 - i] = w;
  }
  if (points == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
  }
  return rule;
}

Rule composite_graded(double lo, double hi, std::size_t total_nodes)
{
  constexpr std::size_t panel_points = 16;
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw ConfigError("composite_graded: empty or unbounded interval");
  if (total_nodes < 2 * panel_points || total_nodes % (2 * panel_points) != 0)
    throw ConfigError("composite_graded: node count must be a positive multiple of 32");

  // Breakpoints on the unit half [0, 1/2]: 0, q^(m-1)/2, ..., q/2, 1/2.
  const std::size_t half_panels = total_nodes / panel_points / 2;
  constexpr double ratio = 0.15;
  std::vector<double> half{ 0.0 };
  for (std::size_t j = half_panels - 1; j >= 1; --j)
    half.push_back(0.5 * std::pow(ratio, static_cast<double>(j)));
  half.push_back(0.5);

  std::vector<double> breaks = half;
  for (auto it = half.rbegin() + 1; it != half.rend(); ++it)
    breaks.push_back(1.0 - *it);

  const Rule base = gauss_legendre(panel_points);
  const double width = hi - lo;
  Rule rule;
  rule.nodes.reserve(total_nodes);
  rule.weights.reserve(total_nodes);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = lo + width * breaks[p];
    const double b = lo + width * breaks[p + 1];
    const double mid = 0.5 * (a + b);
    const double half_width = 0.5 * (b - a);
    for (std::size_t i = 0; i < panel_points; ++i) {
      rule.nodes.push_back(mid + half_width * base.nodes[i]);
      rule.weights.push_back(half_width * base.weights[i]);
    }
  }
  return rule;
}

double integrate(const std::function<double(double)>& f, const Rule& rule)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

} // namespace asymlab::quadrature
