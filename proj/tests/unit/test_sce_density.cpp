#include "asymlab/errors.hpp"
#include "asymlab/sce_density.hpp"

#include "support.hpp"

#include <doctest.h>

#include <complex>
#include <numbers>

using namespace asymlab;
using namespace asymlab::sce;

namespace {

// Brute-force ECF, written independently of the library paths.
Complex naive_ecf(const std::vector<double>& sample, double t)
{
  double re = 0.0;
  double im = 0.0;
  for (double x : sample) {
    re += std::cos(t * x);
    im += std::sin(t * x);
  }
  return { re / static_cast<double>(sample.size()), im / static_cast<double>(sample.size()) };
}

// Inverse transform of a spectrum at one point by direct summation.
Complex naive_inverse(const DensityModel& model, double x)
{
  Complex sum(0.0, 0.0);
  for (std::size_t k = 0; k < model.spectrum.size(); ++k)
    sum += model.spectrum[k] * std::polar(1.0, -model.grid.frequency(k) * x);
  return sum * model.grid.frequency_step() / (2.0 * std::numbers::pi);
}

double mise_proxy(std::size_t n, std::uint64_t seed)
{
  const auto sample = testing::normal_draws(n, seed);
  const auto model = fit_density(sample);
  double sum = 0.0;
  for (std::size_t m = 0; m < model.grid.length; ++m) {
    const double d = model.values[m] - testing::normal_pdf(model.grid.node(m));
    sum += d * d;
  }
  return sum * model.grid.spacing;
}

} // namespace

TEST_CASE("build_grid pads the data range")
{
  const std::vector<double> pair{ 0.0, 1.0 };
  const auto grid = build_grid(pair, 256, 0.5);
  CHECK(grid.origin == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(grid.right() == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(grid.spacing == doctest::Approx(2.0 / 255.0).epsilon(1e-14));
  CHECK(grid.frequency_step() == doctest::Approx(2.0 * std::numbers::pi / (grid.spacing * 256.0)));

  const auto sample = testing::normal_draws(1000, 11);
  const auto g = build_grid(sample, 512, 0.5);
  const double lo = *std::min_element(sample.begin(), sample.end());
  const double hi = *std::max_element(sample.begin(), sample.end());
  CHECK(g.origin <= lo - 0.5 * (hi - lo));
  CHECK(g.right() >= hi + 0.5 * (hi - lo));
  CHECK(g.length == 512);
}

TEST_CASE("build_grid rejects degenerate input")
{
  const std::vector<double> single{ 5.0 };
  CHECK_THROWS_WITH_AS(build_grid(single, 256, 0.5), "zero data range", InputError);
  const std::vector<double> pair{ 0.0, 1.0 };
  CHECK_THROWS_AS(build_grid(pair, 300, 0.5), ConfigError);
  CHECK_THROWS_AS(build_grid(pair, 128, 0.5), ConfigError);
}

TEST_CASE("ecf at arbitrary frequencies")
{
  const std::vector<double> origin{ 0.0 };
  const std::vector<double> ts{ -3.0, 0.0, 0.7, 12.0 };
  for (const auto& v : ecf(origin, ts).values)
    CHECK(std::abs(v - Complex(1.0, 0.0)) == 0.0);

  const double a = 1.3;
  const std::vector<double> symmetric{ -a, a };
  const auto table = ecf(symmetric, ts);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    CHECK(table.values[k].real() == doctest::Approx(std::cos(a * ts[k])).epsilon(1e-14));
    CHECK(std::abs(table.values[k].imag()) < 1e-15);
  }

  const auto uniform = testing::uniform_draws(200, 3);
  std::vector<double> freqs(64);
  for (std::size_t k = 0; k < freqs.size(); ++k)
    freqs[k] = -20.0 + 0.63 * static_cast<double>(k);
  const auto direct = ecf(uniform, freqs);
  for (std::size_t k = 0; k < freqs.size(); ++k)
    CHECK(std::abs(direct.values[k] - naive_ecf(uniform, freqs[k])) < 1e-10);
}

TEST_CASE("dual-grid ECF matches the naive sum and keeps its invariants")
{
  const auto sample = testing::uniform_draws(200, 5);
  const auto grid = build_grid(sample, 256, 0.5);
  const auto table = ecf_on_grid(sample, grid);
  REQUIRE(table.values.size() == 256);
  CHECK(table.values[0] == Complex(1.0, 0.0));
  for (std::size_t k = 0; k < 256; ++k) {
    CHECK(std::abs(table.values[k] - naive_ecf(sample, grid.frequency(k))) < 1e-10);
    CHECK(std::abs(table.values[k]) <= 1.0 + 1e-12);
  }
  for (std::size_t k = 1; k < 128; ++k)
    CHECK(table.values[256 - k] == std::conj(table.values[k]));
}

TEST_CASE("binned ECF is exact for grid-snapped samples")
{
  const auto raw = testing::normal_draws(3000, 17);
  const auto grid = build_grid(raw, 1024, 0.5);
  std::vector<double> snapped(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    snapped[i] = grid.node(static_cast<std::size_t>(std::lround((raw[i] - grid.origin) / grid.spacing)));

  const auto binned = ecf_binned(snapped, grid);
  for (std::size_t k = 0; k < grid.length; ++k)
    CHECK(std::abs(binned.values[k] - naive_ecf(snapped, grid.frequency(k))) < 1e-8);

  // Large n * L takes the binned path automatically.
  const auto big = testing::normal_draws(50000, 19);
  const auto big_grid = build_grid(big, 256, 0.5);
  const auto automatic = ecf_on_grid(big, big_grid);
  const auto explicit_binned = ecf_binned(big, big_grid);
  for (std::size_t k = 0; k < big_grid.length; ++k)
    CHECK(automatic.values[k] == explicit_binned.values[k]);
}

TEST_CASE("acceptable frequencies")
{
  const std::vector<double> pair{ 0.0, 1.0 };
  const auto grid = build_grid(pair, 256, 0.5);
  const auto table = ecf_on_grid(pair, grid);
  // n = 2: the threshold is |C|^2 >= 1, which fails away from t = 0 here.
  CHECK(acceptable_frequencies(table).half_width == 0);

  const auto sample = testing::normal_draws(1000, 23);
  const auto t = ecf_on_grid(sample, build_grid(sample, 256, 0.5));
  const auto band = acceptable_frequencies(t);
  CHECK(band.contains(0, 256));
  CHECK(band.half_width > 0);
  CHECK(band.half_width < 128);
  const double n = 1000.0;
  for (std::size_t k = 0; k <= band.half_width; ++k)
    CHECK(std::norm(n * t.values[k]) >= 4.0 * (n - 1.0));
}

TEST_CASE("acceptable band widens with the sample size")
{
  std::vector<double> small;
  std::vector<double> large;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (std::size_t n : { 250u, 1000u }) {
      const auto sample = testing::normal_draws(n, 1000 + seed);
      const auto grid = build_grid(sample, 256, 0.5);
      const auto band = acceptable_frequencies(ecf_on_grid(sample, grid));
      const double width = (2.0 * static_cast<double>(band.half_width) + 1.0) * grid.frequency_step();
      (n == 250 ? small : large).push_back(width);
    }
  }
  CHECK(testing::median(small) < testing::median(large));
}

TEST_CASE("optimal kernel transform")
{
  EcfTable table;
  table.n = 4;
  table.values.assign(256, Complex(1.0, 0.0));
  table.frequencies.assign(256, 0.0);
  const auto kernel = optimal_kernel_transform(table, FrequencyInterval{ 3 });
  CHECK(kernel.values[0] == 1.0);
  CHECK(kernel.values[1] == doctest::Approx(1.0).epsilon(1e-15)); // (2/3)(1 + 1/2)
  CHECK(kernel.values[255] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(kernel.values[4] == 0.0);
  CHECK(kernel.values[252] == 0.0);

  table.n = 1;
  CHECK_THROWS_WITH_AS(optimal_kernel_transform(table, FrequencyInterval{}), "insufficient sample", InputError);

  const auto sample = testing::normal_draws(500, 29);
  const auto t = ecf_on_grid(sample, build_grid(sample, 256, 0.5));
  const auto k = optimal_kernel_transform(t, acceptable_frequencies(t));
  CHECK(k.values[0] == 1.0);
  for (double v : k.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 500.0 / 499.0 + 1e-15);
  }
}

TEST_CASE("synthesized density matches a direct inverse transform")
{
  const auto sample = testing::normal_draws(800, 31);
  const auto model = fit_density(sample);
  CHECK(std::abs(model.raw_integral - 1.0) <= 1e-6);
  for (std::size_t m = 0; m < model.grid.length; m += 17) {
    const Complex direct = naive_inverse(model, model.grid.node(m));
    CHECK(std::abs(direct.imag()) < 1e-10);
    CHECK(model.raw_values[m] == doctest::Approx(direct.real()).epsilon(1e-9).scale(1.0));
  }
  std::size_t clipped = 0;
  for (std::size_t m = 0; m < model.grid.length; ++m) {
    CHECK(model.values[m] == std::max(model.raw_values[m], model.clip_floor));
    clipped += model.raw_values[m] < model.clip_floor;
  }
  CHECK(model.clipped_count == clipped);

  // Clipping only adds the mass of the negative lobes.
  double trapezoid = 0.0;
  double negative = 0.0;
  for (std::size_t m = 0; m + 1 < model.grid.length; ++m)
    trapezoid += 0.5 * (model.values[m] + model.values[m + 1]);
  for (double v : model.raw_values)
    negative += std::max(0.0, -v);
  CHECK(model.integral == doctest::Approx(trapezoid * model.grid.spacing).epsilon(1e-14));
  CHECK(model.integral >= 1.0 - 1e-6);
  CHECK(model.integral <= 1.0 + (negative + 1e-9) * model.grid.spacing + 1e-6);
  CHECK((std::abs(model.integral - 1.0) > 1e-3) == !model.warnings.empty());
}

TEST_CASE("clipped mass shrinks with the sample size")
{
  double small = 0.0;
  double large = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    small += fit_density(testing::normal_draws(250, 700 + seed)).integral - 1.0;
    large += fit_density(testing::normal_draws(5000, 800 + seed)).integral - 1.0;
  }
  CHECK(large < small);
  CHECK(large / 20.0 < 0.01);
}

TEST_CASE("synthesized density recovers uniform and normal shapes")
{
  const auto uniform = testing::uniform_draws(2000, 37);
  const auto u = fit_density(uniform);
  std::vector<double> inner;
  for (double x = 0.1; x <= 0.9; x += 0.01)
    inner.push_back(x);
  double mad = 0.0;
  for (double f : evaluate_density(u, inner))
    mad += std::abs(f - 1.0);
  CHECK(mad / static_cast<double>(inner.size()) <= 0.1);

  const auto normal = testing::normal_draws(2000, 41);
  const auto g = fit_density(normal);
  std::vector<double> pts;
  for (double x = -2.0; x <= 2.0; x += 0.05)
    pts.push_back(x);
  const auto f = evaluate_density(g, pts);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(std::abs(f[i] - testing::normal_pdf(pts[i])) <= 0.05);
}

TEST_CASE("normalization failure is reported")
{
  const auto sample = testing::normal_draws(100, 43);
  const auto grid = build_grid(sample, 256, 0.5);
  const auto table = ecf_on_grid(sample, grid);
  auto kernel = optimal_kernel_transform(table, acceptable_frequencies(table));
  kernel.values[0] = 1.1;
  CHECK_THROWS_WITH_AS(synthesize_density(kernel, table, grid, 1e-12), "transform inconsistency", NumericError);
}

TEST_CASE("evaluate_density interpolates linearly and floors outside the grid")
{
  const auto sample = testing::normal_draws(400, 47);
  const auto model = fit_density(sample);
  const std::size_t m = 100;
  const std::vector<double> node{ model.grid.node(m) };
  CHECK(evaluate_density(model, node)[0] == model.values[m]);

  const std::vector<double> mid{ model.grid.node(m) + 0.5 * model.grid.spacing };
  CHECK(evaluate_density(model, mid)[0] ==
        doctest::Approx(0.5 * (model.values[m] + model.values[m + 1])).epsilon(1e-12));

  const std::vector<double> outside{ model.grid.origin - 1.0, model.grid.right() + 1.0 };
  for (double v : evaluate_density(model, outside))
    CHECK(v == model.clip_floor);
}

TEST_CASE("density derivative")
{
  const auto sample = testing::normal_draws(5000, 53);
  const auto model = fit_density(sample);
  const auto slope = density_derivative(model);
  const std::vector<double> zero{ 0.0 };
  CHECK(std::abs(interpolate_on_grid(model.grid, slope, zero, 0.0)[0]) <= 0.02);

  // Central differences of the raw values on a fine grid.
  DensityConfig fine;
  fine.grid_length = 1024;
  const auto dense = fit_density(sample, fine);
  const auto d = density_derivative(dense);
  const double peak = std::abs(*std::max_element(d.begin(), d.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  }));
  for (std::size_t m = 1; m + 1 < dense.grid.length; ++m) {
    const double fd = (dense.raw_values[m + 1] - dense.raw_values[m - 1]) / (2.0 * dense.grid.spacing);
    CHECK(std::abs(fd - d[m]) <= 1e-3 * peak);
  }

  std::vector<double> symmetric;
  for (int i = 0; i < 20; ++i)
    symmetric.push_back(i % 2 ? 0.8 : -0.8);
  const auto sym = fit_density(symmetric);
  const auto ds = density_derivative(sym);
  const double scale = std::abs(*std::max_element(ds.begin(), ds.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  }));
  for (std::size_t m = 0; m < sym.grid.length; ++m)
    CHECK(std::abs(ds[m] + ds[sym.grid.length - 1 - m]) <= 1e-9 * scale);
}

TEST_CASE("MISE proxy decreases with n")
{
  std::vector<double> small;
  std::vector<double> large;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    small.push_back(mise_proxy(250, 500 + seed));
    large.push_back(mise_proxy(2000, 900 + seed));
  }
  CHECK(testing::median(large) < testing::median(small));
}

TEST_CASE("affine equivariance")
{
  const double a = 2.5;
  const double b = -3.0;
  const auto x = testing::normal_draws(2000, 59);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] = a * x[i] + b;
  const auto fx = fit_density(x);
  const auto fy = fit_density(y);
  std::vector<double> px;
  std::vector<double> py;
  for (double t = -2.0; t <= 2.0; t += 0.1) {
    px.push_back(t);
    py.push_back(a * t + b);
  }
  const auto vx = evaluate_density(fx, px);
  const auto vy = evaluate_density(fy, py);
  for (std::size_t i = 0; i < px.size(); ++i)
    CHECK(std::abs(vy[i] - vx[i] / a) <= 0.05);
}
