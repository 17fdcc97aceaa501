#include "asymlab/sce_density.hpp"

#include "asymlab/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace asymlab::sce {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Above this many sample-frequency products the dual-grid ECF is binned.
constexpr double direct_work_limit = 1e7;

// The exponential recurrence is re-seeded from std::polar this often.
constexpr std::size_t resync_interval = 32;

void require_finite(std::span<const double> sample, const char* what)
{
  if (sample.empty())
    throw InputError(std::string(what) + ": empty sample");
  for (double v : sample)
    if (!std::isfinite(v))
      throw InputError(std::string(what) + ": non-finite value in sample");
}

// Fills the negative-frequency half from the non-negative half.
void mirror_conjugate(std::vector<Complex>& values)
{
  const std::size_t length = values.size();
  for (std::size_t k = length / 2 + 1; k < length; ++k)
    values[k] = std::conj(values[length - k]);
  // Bin L/2 is stored as the negative Nyquist frequency.
  values[length / 2] = std::conj(values[length / 2]);
}

std::vector<double> transform_to_grid(const std::vector<Complex>& spectrum, const SpatialGrid& grid)
{
  const std::size_t length = grid.length;
  std::vector<Complex> shifted(length);
  for (std::size_t k = 0; k < length; ++k)
    shifted[k] = spectrum[k] * std::polar(1.0, -grid.frequency(k) * grid.origin);

  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.fwd(out, shifted);

  const double scale = 1.0 / (static_cast<double>(length) * grid.spacing);
  std::vector<double> result(length);
  for (std::size_t m = 0; m < length; ++m)
    result[m] = out[m].real() * scale;
  return result;
}

} // namespace

double SpatialGrid::frequency_step() const
{
  return two_pi / (spacing * static_cast<double>(length));
}

double SpatialGrid::frequency(std::size_t k) const
{
  const auto signed_bin = k < length / 2 ? static_cast<double>(k)
                                         : static_cast<double>(k) - static_cast<double>(length);
  return signed_bin * frequency_step();
}

std::vector<double> SpatialGrid::frequencies() const
{
  std::vector<double> out(length);
  for (std::size_t k = 0; k < length; ++k)
    out[k] = frequency(k);
  return out;
}

SpatialGrid build_grid(std::span<const double> sample, std::size_t length, double pad_fraction)
{
  require_finite(sample, "build_grid");
  if (length < 256 || !std::has_single_bit(length))
    throw ConfigError("grid length must be a power of two and at least 256");
  if (!(pad_fraction >= 0.0) || !std::isfinite(pad_fraction))
    throw ConfigError("pad fraction must be finite and non-negative");

  const auto [lo, hi] = std::minmax_element(sample.begin(), sample.end());
  const double range = *hi - *lo;
  if (!(range > 0.0))
    throw InputError("zero data range");

  SpatialGrid grid;
  grid.length = length;
  grid.pad_fraction = pad_fraction;
  grid.origin = *lo - pad_fraction * range;
  const double right = *hi + pad_fraction * range;
  grid.spacing = (right - grid.origin) / static_cast<double>(length - 1);
  // Guard the right edge against rounding so the grid always covers the pad.
  while (grid.right() < right)
    grid.spacing = std::nextafter(grid.spacing, INFINITY);
  return grid;
}

EcfTable ecf(std::span<const double> sample, std::span<const double> frequencies)
{
  require_finite(sample, "ecf");
  EcfTable table;
  table.n = sample.size();
  table.frequencies.assign(frequencies.begin(), frequencies.end());
  table.values.resize(frequencies.size());
  const double inv_n = 1.0 / static_cast<double>(sample.size());
  for (std::size_t k = 0; k < frequencies.size(); ++k) {
    const double t = frequencies[k];
    if (t == 0.0) {
      table.values[k] = 1.0;
      continue;
    }
    double re = 0.0;
    double im = 0.0;
    for (double x : sample) {
      re += std::cos(t * x);
      im += std::sin(t * x);
    }
    table.values[k] = Complex(re * inv_n, im * inv_n);
  }
  return table;
}

EcfTable ecf_on_grid(std::span<const double> sample, const SpatialGrid& grid)
{
  require_finite(sample, "ecf");
  const double work = static_cast<double>(sample.size()) * static_cast<double>(grid.length);
  if (work > direct_work_limit)
    return ecf_binned(sample, grid);

  const std::size_t length = grid.length;
  const std::size_t half = length / 2;
  const double step = grid.frequency_step();
  std::vector<Complex> sums(length, Complex(0.0, 0.0));
  for (double x : sample) {
    const Complex rotor = std::polar(1.0, step * x);
    Complex power(1.0, 0.0);
    for (std::size_t k = 1; k <= half; ++k) {
      power = (k % resync_interval == 0) ? std::polar(1.0, static_cast<double>(k) * step * x)
                                         : power * rotor;
      sums[k] += power;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(sample.size());
  for (auto& s : sums)
    s *= inv_n;
  sums[0] = 1.0;
  mirror_conjugate(sums);

  EcfTable table;
  table.n = sample.size();
  table.frequencies = grid.frequencies();
  table.values = std::move(sums);
  return table;
}

EcfTable ecf_binned(std::span<const double> sample, const SpatialGrid& grid)
{
  require_finite(sample, "ecf");
  const std::size_t length = grid.length;
  std::vector<Complex> weights(length, Complex(0.0, 0.0));
  for (double x : sample) {
    const double u = (x - grid.origin) / grid.spacing;
    if (u < 0.0 || u > static_cast<double>(length - 1))
      throw InputError("ecf: sample point outside grid");
    const double cell = std::floor(u);
    auto m = static_cast<std::size_t>(cell);
    if (m >= length - 1)
      m = length - 2;
    const double frac = u - static_cast<double>(m);
    weights[m] += 1.0 - frac;
    weights[m + 1] += frac;
  }

  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.inv(out, weights); // includes the 1/L factor

  const double scale = static_cast<double>(length) / static_cast<double>(sample.size());
  EcfTable table;
  table.n = sample.size();
  table.frequencies = grid.frequencies();
  table.values.resize(length);
  for (std::size_t k = 0; k < length; ++k)
    table.values[k] = out[k] * scale * std::polar(1.0, table.frequencies[k] * grid.origin);
  table.values[0] = 1.0;
  return table;
}

FrequencyInterval acceptable_frequencies(const EcfTable& table)
{
  const std::size_t length = table.values.size();
  FrequencyInterval interval;
  if (table.n < 2 || length < 2)
    return interval;
  const auto n = static_cast<double>(table.n);
  const double threshold = 4.0 * (n - 1.0) / (n * n);
  // Stay strictly inside the representable band so the Nyquist bin is empty.
  while (interval.half_width + 1 < length / 2) {
    const std::size_t k = interval.half_width + 1;
    const double power = std::min(std::norm(table.values[k]), std::norm(table.values[length - k]));
    if (power < threshold)
      break;
    interval.half_width = k;
  }
  return interval;
}

KernelTransform optimal_kernel_transform(const EcfTable& table, const FrequencyInterval& acceptable)
{
  if (table.n < 2)
    throw InputError("insufficient sample");
  const std::size_t length = table.values.size();
  const auto n = static_cast<double>(table.n);
  const double threshold = 4.0 * (n - 1.0) / (n * n);
  const double lead = n / (2.0 * (n - 1.0));

  KernelTransform kernel;
  kernel.acceptable = acceptable;
  kernel.values.assign(length, 0.0);
  for (std::size_t k = 0; k < length; ++k) {
    if (!acceptable.contains(k, length))
      continue;
    const double power = std::norm(table.values[k]);
    const double discriminant = power > 0.0 ? std::max(0.0, 1.0 - threshold / power) : 0.0;
    kernel.values[k] = lead * (1.0 + std::sqrt(discriminant));
  }
  kernel.values[0] = 1.0;
  return kernel;
}

DensityModel synthesize_density(const KernelTransform& kernel,
                                const EcfTable& table,
                                const SpatialGrid& grid,
                                double clip_floor)
{
  if (kernel.values.size() != grid.length || table.values.size() != grid.length)
    throw ConfigError("kernel, ECF and grid sizes disagree");
  if (!(clip_floor > 0.0))
    throw ConfigError("clip floor must be positive");

  DensityModel model;
  model.grid = grid;
  model.clip_floor = clip_floor;
  model.sample_size = table.n;
  model.acceptable = kernel.acceptable;
  model.spectrum.resize(grid.length);
  for (std::size_t k = 0; k < grid.length; ++k)
    model.spectrum[k] = kernel.values[k] * table.values[k];

  model.raw_values = transform_to_grid(model.spectrum, grid);

  double raw_sum = 0.0;
  for (double v : model.raw_values)
    raw_sum += v;
  model.raw_integral = raw_sum * grid.spacing;
  if (std::abs(model.raw_integral - 1.0) > 1e-6)
    throw NumericError("transform inconsistency");

  model.values.resize(grid.length);
  for (std::size_t m = 0; m < grid.length; ++m) {
    model.values[m] = std::max(model.raw_values[m], clip_floor);
    if (model.raw_values[m] < clip_floor)
      ++model.clipped_count;
  }

  double trapezoid = 0.0;
  for (std::size_t m = 0; m + 1 < grid.length; ++m)
    trapezoid += 0.5 * (model.values[m] + model.values[m + 1]);
  model.integral = trapezoid * grid.spacing;
  if (std::abs(model.integral - 1.0) > 1e-3)
    model.warnings.push_back("clipped density integrates to " + std::to_string(model.integral));
  return model;
}

std::vector<double>
interpolate_on_grid(const SpatialGrid& grid, std::span<const double> node_values, std::span<const double> points, double outside)
{
  std::vector<double> out(points.size(), outside);
  const auto last = static_cast<double>(grid.length - 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double u = (points[i] - grid.origin) / grid.spacing;
    if (!(u >= 0.0 && u <= last))
      continue;
    // Points within rounding of a node take the node value exactly.
    const double nearest = std::round(u);
    if (std::abs(u - nearest) < 1e-9) {
      out[i] = node_values[static_cast<std::size_t>(nearest)];
      continue;
    }
    auto m = static_cast<std::size_t>(u);
    if (m >= grid.length - 1) {
      out[i] = node_values[grid.length - 1];
      continue;
    }
    const double frac = u - static_cast<double>(m);
    out[i] = (1.0 - frac) * node_values[m] + frac * node_values[m + 1];
  }
  return out;
}

std::vector<double> evaluate_density(const DensityModel& model, std::span<const double> points)
{
  auto out = interpolate_on_grid(model.grid, model.values, points, model.clip_floor);
  // Interpolation between two floored values can never drop below the floor,
  // but rounding in (1-a)f + a f can; enforce the contract explicitly.
  for (auto& v : out)
    v = std::max(v, model.clip_floor);
  return out;
}

std::vector<double> density_derivative(const DensityModel& model)
{
  std::vector<Complex> spectrum(model.spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k)
    spectrum[k] = Complex(0.0, -model.grid.frequency(k)) * model.spectrum[k];
  return transform_to_grid(spectrum, model.grid);
}

DensityModel fit_density(std::span<const double> sample, const DensityConfig& config)
{
  if (sample.size() < 2)
    throw InputError("insufficient sample");
  const SpatialGrid grid = build_grid(sample, config.grid_length, config.pad_fraction);
  const EcfTable table = ecf_on_grid(sample, grid);
  const FrequencyInterval band = acceptable_frequencies(table);
  const KernelTransform kernel = optimal_kernel_transform(table, band);
  return synthesize_density(kernel, table, grid, config.clip_floor);
}

} // namespace asymlab::sce
