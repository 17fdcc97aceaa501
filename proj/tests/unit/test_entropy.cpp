#include "asymlab/entropy.hpp"
#include "asymlab/errors.hpp"
#include "asymlab/inference.hpp"

#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace asymlab;

namespace {

const double gaussian_entropy = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);

sce::DensityModel flat_unit_model()
{
  sce::DensityModel model;
  model.grid.origin = 0.0;
  model.grid.length = 256;
  model.grid.spacing = 1.0 / 255.0;
  model.values.assign(256, 1.0);
  model.raw_values.assign(256, 1.0);
  return model;
}

double standard_error(const std::vector<double>& terms)
{
  double mean = 0.0;
  for (double t : terms)
    mean += t;
  mean /= static_cast<double>(terms.size());
  double ss = 0.0;
  for (double t : terms)
    ss += (t - mean) * (t - mean);
  return std::sqrt(ss / static_cast<double>(terms.size() - 1)) / std::sqrt(static_cast<double>(terms.size()));
}

} // namespace

TEST_CASE("plug-in entropy of a flat model is zero")
{
  const auto model = flat_unit_model();
  const std::vector<double> pts{ 0.1, 0.25, 0.5, 0.99 };
  const auto h = entropy::plugin_entropy(model, pts);
  CHECK(h.value == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  CHECK(h.n_eval == 4);
  CHECK(h.clipped_eval_count == 0);
  CHECK_THROWS_AS(entropy::plugin_entropy(model, std::vector<double>{}), InputError);
}

TEST_CASE("plug-in entropy recovers analytic values")
{
  const auto normal = testing::normal_draws(2000, 61, 5.0, 1.0);
  const auto h = entropy::plugin_entropy(sce::fit_density(normal), normal);
  CHECK(std::abs(h.value - gaussian_entropy) <= 0.05);

  const auto expo = testing::exponential_draws(2000, 67);
  const auto he = entropy::plugin_entropy(sce::fit_density(expo), expo);
  CHECK(std::abs(he.value - 1.0) <= 0.07);
}

TEST_CASE("clipped evaluations are counted")
{
  const auto sample = testing::normal_draws(500, 71);
  const auto model = sce::fit_density(sample);
  const std::vector<double> far{ 1e6, -1e6, 0.0 };
  const auto h = entropy::plugin_entropy(model, far);
  CHECK(h.clipped_eval_count == 2);
  CHECK(h.clipped_eval_count <= h.n_eval);
  CHECK(std::isfinite(h.value));
}

TEST_CASE("oracle entropy")
{
  const std::vector<double> pts{ 0.2, 0.4, 0.9 };
  CHECK(entropy::oracle_entropy([](double) { return 0.0; }, pts) == 0.0);
  CHECK_THROWS_AS(entropy::oracle_entropy([](double x) { return std::log(x - 0.3); }, pts), NumericError);

  const auto normal = testing::normal_draws(500, 73, 5.0, 1.0);
  const auto log_phi = [](double y) { return std::log(testing::normal_pdf(y, 5.0, 1.0)); };
  std::vector<double> terms;
  for (double y : normal)
    terms.push_back(-log_phi(y));
  CHECK(std::abs(entropy::oracle_entropy(log_phi, normal) - gaussian_entropy) <= 3.0 * standard_error(terms));

  std::vector<double> lognormal(normal.size());
  for (std::size_t i = 0; i < normal.size(); ++i)
    lognormal[i] = std::exp(normal[i]);
  const auto log_f = [](double x) { return std::log(testing::normal_pdf(std::log(x), 5.0, 1.0) / x); };
  terms.clear();
  for (double x : lognormal)
    terms.push_back(-log_f(x));
  CHECK(std::abs(entropy::oracle_entropy(log_f, lognormal) - (5.0 + gaussian_entropy)) <= 3.0 * standard_error(terms));
}

TEST_CASE("Fisher information of Gaussians")
{
  const auto z = testing::normal_draws(5000, 79);
  const auto i1 = entropy::fisher_information(sce::fit_density(z), z);
  CHECK(i1.value == doctest::Approx(1.0).epsilon(0.25));
  CHECK(i1.value >= 0.0);

  std::vector<double> wide(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    wide[i] = 2.0 * z[i];
  const auto i4 = entropy::fisher_information(sce::fit_density(wide), wide);
  CHECK(i4.value == doctest::Approx(0.25).epsilon(0.25));

  // Scale law I(aX) = I(X) / a^2.
  const double ratio = i4.value / (i1.value / 4.0);
  CHECK(ratio == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("Fisher information skips near-zero density points")
{
  const auto z = testing::normal_draws(1000, 83);
  const auto model = sce::fit_density(z);
  const std::vector<double> pts{ 0.0, 1e9 };
  const auto fi = entropy::fisher_information(model, pts);
  CHECK(fi.n_eval == 1);
  CHECK(fi.excluded == 1);
}

TEST_CASE("affine law for plug-in entropy")
{
  const auto x = testing::normal_draws(2000, 89);
  const double a = 3.0;
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] = a * x[i] - 1.0;
  const double hx = entropy::plugin_entropy(sce::fit_density(x), x).value;
  const double hy = entropy::plugin_entropy(sce::fit_density(y), y).value;
  CHECK(std::abs((hy - hx) - std::log(a)) <= 0.05);
}
