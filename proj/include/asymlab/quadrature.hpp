#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace asymlab::quadrature {

struct Rule
{
  std::vector<double> nodes;
  std::vector<double> weights;
};

//! n-point Gauss-Legendre rule on [-1, 1], computed by Newton iteration on
//! the Legendre recurrence.
Rule gauss_legendre(std::size_t points);

//! Composite Gauss-Legendre rule on [lo, hi] with `total_nodes` nodes split
//! into 16-point panels. Panels are graded geometrically towards both
//! endpoints so that integrable endpoint singularities (log |x|, x^-2/3)
//! converge to near machine precision.
Rule composite_graded(double lo, double hi, std::size_t total_nodes = 512);

double integrate(const std::function<double(double)>& f, const Rule& rule);

} // namespace asymlab::quadrature
