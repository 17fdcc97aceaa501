#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace asymlab::sce {

using Complex = std::complex<double>;

//! Uniform spatial grid with its FFT dual. Node m sits at origin + m*spacing.
struct SpatialGrid
{
  double origin = 0.0;
  double spacing = 1.0;
  std::size_t length = 0;
  double pad_fraction = 0.0;

  double right() const { return origin + spacing * static_cast<double>(length - 1); }
  double node(std::size_t m) const { return origin + spacing * static_cast<double>(m); }

  //! Spacing of the dual frequency grid, 2*pi / (spacing * length).
  double frequency_step() const;

  //! Signed frequency of FFT bin k: bins [0, L/2) are non-negative, the rest
  //! wrap to negative frequencies.
  double frequency(std::size_t k) const;
  std::vector<double> frequencies() const;
};

//! Empirical characteristic function values C(t) = mean(exp(i t X)).
struct EcfTable
{
  std::vector<double> frequencies;
  std::vector<Complex> values;
  std::size_t n = 0;
};

//! Symmetric contiguous band of FFT bins, |k| <= half_width.
struct FrequencyInterval
{
  std::size_t half_width = 0;

  bool contains(std::size_t bin, std::size_t length) const
  {
    const std::size_t distance = bin <= length / 2 ? bin : length - bin;
    return distance <= half_width;
  }
};

struct KernelTransform
{
  std::vector<double> values;
  FrequencyInterval acceptable;
};

struct DensityConfig
{
  std::size_t grid_length = 256;
  double pad_fraction = 0.5;
  double clip_floor = 1e-12;
};

//! A synthesized density on a grid. The clipped values are what gets
//! evaluated; the spectrum is kept so derivatives can be taken exactly.
struct DensityModel
{
  SpatialGrid grid;
  std::vector<double> raw_values;
  std::vector<double> values;
  double clip_floor = 1e-12;
  std::size_t clipped_count = 0;
  double integral = 0.0;     //!< trapezoid rule over the clipped values
  double raw_integral = 0.0; //!< spacing times the periodic sum of raw values
  std::size_t sample_size = 0;
  FrequencyInterval acceptable;
  std::vector<Complex> spectrum; //!< kappa(t_k) * C(t_k), FFT order
  std::vector<std::string> warnings;
};

SpatialGrid build_grid(std::span<const double> sample, std::size_t length, double pad_fraction);

//! Direct O(n m) summation at arbitrary frequencies.
EcfTable ecf(std::span<const double> sample, std::span<const double> frequencies);

//! ECF on the dual grid of `grid`. Uses the direct sum (with an exponential
//! recurrence) when n * length <= 1e7 and the binned FFT path otherwise.
EcfTable ecf_on_grid(std::span<const double> sample, const SpatialGrid& grid);

//! Binned FFT path: linear binning onto grid nodes, then one inverse DFT.
//! Exact for samples that sit on grid nodes.
EcfTable ecf_binned(std::span<const double> sample, const SpatialGrid& grid);

FrequencyInterval acceptable_frequencies(const EcfTable& table);

KernelTransform optimal_kernel_transform(const EcfTable& table, const FrequencyInterval& acceptable);

DensityModel synthesize_density(const KernelTransform& kernel,
                                const EcfTable& table,
                                const SpatialGrid& grid,
                                double clip_floor);

std::vector<double> evaluate_density(const DensityModel& model, std::span<const double> points);

//! Derivative of the raw density at grid nodes, via multiplication of the
//! spectrum by (-i t).
std::vector<double> density_derivative(const DensityModel& model);

//! Linear interpolation of arbitrary node values (e.g. a derivative) at
//! points, with `outside` returned beyond the grid.
std::vector<double>
interpolate_on_grid(const SpatialGrid& grid, std::span<const double> node_values, std::span<const double> points, double outside);

DensityModel fit_density(std::span<const double> sample, const DensityConfig& config = {});

} // namespace asymlab::sce
