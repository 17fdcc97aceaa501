#include "asymlab/gem_models.hpp"

#include "asymlab/errors.hpp"
#include "asymlab/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace asymlab::gem {

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();
constexpr double dynamics_tolerance = 1e-9;

std::vector<GenerativeFunctionSpec> build_catalog()
{
  using std::numbers::pi;
  const Interval unit{ 0.0, 1.0 };
  return {
    { "cbrt", [](double x) { return std::cbrt(x); },
      [](double x) { return 1.0 / (3.0 * std::cbrt(x * x)); }, unit, Dynamics::Contracting },
    { "sqrt", [](double x) { return std::sqrt(x); },
      [](double x) { return 0.5 / std::sqrt(x); }, unit, Dynamics::Contracting },
    { "square", [](double x) { return x * x; },
      [](double x) { return 2.0 * x; }, unit, Dynamics::Contracting },
    { "cube", [](double x) { return x * x * x; },
      [](double x) { return 3.0 * x * x; }, unit, Dynamics::Contracting },
    { "exp", [](double x) { return std::exp(x); },
      [](double x) { return std::exp(x); }, unit, Dynamics::Expanding },
    // Labelled expanding to match the published grouping; its geometric mean
    // is pi/4, so classify_dynamics reports contracting.
    { "sin_half_pi", [](double x) { return std::sin(0.5 * pi * x); },
      [](double x) { return 0.5 * pi * std::cos(0.5 * pi * x); }, unit, Dynamics::Expanding },
    { "log", [](double x) { return std::log(x); },
      [](double x) { return 1.0 / x; }, Interval{ 0.0, infinity }, Dynamics::Contracting },
    { "pow_two_thirds", [](double x) { return std::pow(x, 2.0 / 3.0); },
      [](double x) { return (2.0 / 3.0) / std::cbrt(x); }, Interval{ 0.0, infinity }, Dynamics::Contracting },
  };
}

double mean_log_slope(const GenerativeFunctionSpec& g,
                      const quadrature::Rule& rule,
                      const std::function<double(double)>& weight)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double slope = std::abs(g.derivative(rule.nodes[i]));
    if (slope < 1e-300)
      continue;
    sum += rule.weights[i] * std::log(slope) * weight(rule.nodes[i]);
  }
  return sum;
}

} // namespace

const std::vector<GenerativeFunctionSpec>& catalog()
{
  static const std::vector<GenerativeFunctionSpec> entries = build_catalog();
  return entries;
}

const GenerativeFunctionSpec& find_function(const std::string& id)
{
  for (const auto& g : catalog())
    if (g.id == id)
      return g;
  throw ConfigError("unknown generative function '" + id + "'");
}

DynamicsReport classify_dynamics(const GenerativeFunctionSpec& g, std::size_t nodes)
{
  if (!g.support.bounded())
    throw ConfigError("classify_dynamics: support of '" + g.id + "' is unbounded");
  if (!(g.support.length() > 0.0))
    throw ConfigError("classify_dynamics: support has zero length");

  const auto rule = quadrature::composite_graded(g.support.lo, g.support.hi, nodes);
  const double average = mean_log_slope(g, rule, [](double) { return 1.0; }) / g.support.length();

  DynamicsReport report;
  report.geometric_mean = std::exp(average);
  report.quadrature_nodes = rule.nodes.size();
  if (report.geometric_mean < 1.0 - dynamics_tolerance)
    report.dynamics = Dynamics::Contracting;
  else if (report.geometric_mean > 1.0 + dynamics_tolerance)
    report.dynamics = Dynamics::Expanding;
  else
    report.dynamics = Dynamics::Boundary;
  return report;
}

double orthogonality_gap(const GenerativeFunctionSpec& g,
                         const std::function<double(double)>& density_fx,
                         const Interval& support,
                         std::size_t nodes)
{
  if (!support.bounded() || !(support.length() > 0.0))
    throw ConfigError("orthogonality_gap: support must be a bounded interval");
  const auto rule = quadrature::composite_graded(support.lo, support.hi, nodes);
  const double mass = quadrature::integrate(density_fx, rule);
  if (std::abs(mass - 1.0) > 1e-6)
    throw ConfigError("orthogonality_gap: density integrates to " + std::to_string(mass));

  const double weighted = mean_log_slope(g, rule, density_fx);
  const double flat = mean_log_slope(g, rule, [](double) { return 1.0; }) / support.length();
  return weighted - flat;
}

double Exposure::draw(Rng& rng) const
{
  switch (kind) {
    case Kind::Uniform:
      return a + (b - a) * rng.uniform();
    case Kind::Lognormal:
      return std::exp(a + b * rng.normal());
    case Kind::Exponential:
      return -a * std::log(rng.uniform());
  }
  return 0.0;
}

double Exposure::mean() const
{
  switch (kind) {
    case Kind::Uniform:
      return 0.5 * (a + b);
    case Kind::Lognormal:
      return std::exp(a + 0.5 * b * b);
    case Kind::Exponential:
      return a;
  }
  return 0.0;
}

double Exposure::variance() const
{
  switch (kind) {
    case Kind::Uniform:
      return (b - a) * (b - a) / 12.0;
    case Kind::Lognormal:
      return (std::exp(b * b) - 1.0) * std::exp(2.0 * a + b * b);
    case Kind::Exponential:
      return a * a;
  }
  return 0.0;
}

double Exposure::log_density(double x) const
{
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  switch (kind) {
    case Kind::Uniform:
      return (x >= a && x <= b) ? -std::log(b - a) : neg_inf;
    case Kind::Lognormal: {
      if (x <= 0.0)
        return neg_inf;
      const double z = (std::log(x) - a) / b;
      return -std::log(x * b) - 0.5 * std::log(2.0 * std::numbers::pi) - 0.5 * z * z;
    }
    case Kind::Exponential:
      return x >= 0.0 ? -std::log(a) - x / a : neg_inf;
  }
  return neg_inf;
}

double Exposure::entropy() const
{
  switch (kind) {
    case Kind::Uniform:
      return std::log(b - a);
    case Kind::Lognormal:
      return a + 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * b * b);
    case Kind::Exponential:
      return 1.0 + std::log(a);
  }
  return 0.0;
}

std::string Exposure::describe() const
{
  switch (kind) {
    case Kind::Uniform:
      return "uniform(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Kind::Lognormal:
      return "lognormal(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Kind::Exponential:
      return "exponential(" + std::to_string(a) + ")";
  }
  return "unknown";
}

PairedSample sample_gem(const GenerativeFunctionSpec& g, std::size_t n, std::uint64_t seed, const Exposure& exposure)
{
  if (n < 8)
    throw ConfigError("sample_gem: at least 8 pairs are required");
  Rng rng(seed);
  PairedSample sample;
  sample.x.resize(n);
  sample.y.resize(n);
  for (auto& x : sample.x)
    x = exposure.draw(rng);
  for (std::size_t i = 0; i < n; ++i)
    sample.y[i] = g.eval(sample.x[i]);
  return sample;
}

PairedSample sample_npgem(const NpgemConfig& config, const Exposure& exposure)
{
  const double sigma = config.noise_variance;
  const double rho = config.noise_exposure_correlation;
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw ConfigError("noise variance must be finite and non-negative");
  if (!(std::abs(rho) < 1.0))
    throw ConfigError("noise-exposure correlation must lie in (-1, 1)");
  if (sigma == 0.0 && rho != 0.0)
    throw ConfigError("a nonzero correlation needs positive noise variance");
  if (config.n < 8)
    throw ConfigError("sample_npgem: at least 8 pairs are required");

  const auto& g = find_function(config.g_id);
  Rng rng(config.seed);
  PairedSample sample;
  sample.x.resize(config.n);
  sample.y.resize(config.n);
  for (auto& x : sample.x)
    x = exposure.draw(rng);
  for (std::size_t i = 0; i < config.n; ++i)
    sample.y[i] = g.eval(sample.x[i]);
  if (sigma == 0.0)
    return sample;

  const double slope = rho * std::sqrt(sigma / exposure.variance());
  const double centre = exposure.mean();
  const double eta_sd = std::sqrt(sigma * (1.0 - rho * rho));
  for (std::size_t i = 0; i < config.n; ++i)
    sample.y[i] += slope * (sample.x[i] - centre) + eta_sd * rng.normal();
  return sample;
}

double analytic_coefficient(const std::string& case_id)
{
  using std::numbers::egamma;
  using std::numbers::pi;
  if (case_id == "lognormal_normal")
    return 5.0;
  if (case_id == "exp_weibull")
    return 1.0 - (egamma / 3.0 - std::log(1.5) + 1.0);

  const std::string prefix = "uniform:";
  if (case_id.rfind(prefix, 0) == 0) {
    const std::string gid = case_id.substr(prefix.size());
    // C = -int_0^1 log|g'(x)| dx; for x^k this is (k - 1) - ln k.
    const auto power = [](double k) { return (k - 1.0) - std::log(k); };
    if (gid == "cbrt")
      return power(1.0 / 3.0);
    if (gid == "sqrt")
      return power(0.5);
    if (gid == "square")
      return power(2.0);
    if (gid == "cube")
      return power(3.0);
    if (gid == "exp")
      return -0.5;
    if (gid == "sin_half_pi")
      return std::log(4.0 / pi);
  }
  throw ConfigError("no closed-form coefficient for case '" + case_id + "'");
}

} // namespace asymlab::gem
