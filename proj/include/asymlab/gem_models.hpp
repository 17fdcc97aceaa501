#pragma once

#include "asymlab/inference.hpp"
#include "asymlab/rng.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace asymlab::gem {

struct Interval
{
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

struct GenerativeFunctionSpec
{
  std::string id;
  std::function<double(double)> eval;
  std::function<double(double)> derivative;
  Interval support;
  Dynamics labeled_dynamics = Dynamics::Contracting; //!< class used by direction tests
};

//! The eight stable catalog entries.
const std::vector<GenerativeFunctionSpec>& catalog();

//! Throws ConfigError for unknown ids.
const GenerativeFunctionSpec& find_function(const std::string& id);

struct DynamicsReport
{
  double geometric_mean = 1.0;
  Dynamics dynamics = Dynamics::Boundary;
  std::size_t quadrature_nodes = 0;
};

//! Geometric mean of |g'| over the support by composite Gauss-Legendre
//! quadrature; Contracting below 1 - 1e-9, Expanding above 1 + 1e-9.
DynamicsReport classify_dynamics(const GenerativeFunctionSpec& g, std::size_t nodes = 512);

//! E_f[log|g'|] minus the support average of log|g'|. Throws ConfigError when
//! the density does not integrate to one within 1e-6.
double orthogonality_gap(const GenerativeFunctionSpec& g,
                         const std::function<double(double)>& density_fx,
                         const Interval& support,
                         std::size_t nodes = 512);

//! Distribution of the exposure X.
struct Exposure
{
  enum class Kind
  {
    Uniform,
    Lognormal,
    Exponential
  };

  Kind kind = Kind::Uniform;
  double a = 0.0; //!< uniform lower bound, lognormal mu, exponential mean
  double b = 1.0; //!< uniform upper bound, lognormal sigma

  static Exposure uniform(double lo = 0.0, double hi = 1.0) { return { Kind::Uniform, lo, hi }; }
  static Exposure lognormal(double mu, double sigma) { return { Kind::Lognormal, mu, sigma }; }
  static Exposure exponential(double mean) { return { Kind::Exponential, mean, 0.0 }; }

  double draw(Rng& rng) const;
  double mean() const;
  double variance() const;
  double log_density(double x) const;
  double entropy() const;
  std::string describe() const;
};

//! X_i drawn first (all n), then Y_i = g(X_i).
PairedSample sample_gem(const GenerativeFunctionSpec& g,
                        std::size_t n,
                        std::uint64_t seed,
                        const Exposure& exposure = Exposure::uniform());

struct NpgemConfig
{
  std::string g_id;
  double noise_variance = 0.0;            //!< V(eps)
  double noise_exposure_correlation = 0.0; //!< corr(X, eps)
  std::size_t n = 1000;
  std::uint64_t seed = 0;
};

//! Y* = g(X) + eps with eps = c (X - E X) + eta, c = rho sqrt(V(eps) / V(X)),
//! eta ~ N(0, V(eps)(1 - rho^2)). With zero noise the output is bit-identical
//! to sample_gem under the same seed.
PairedSample sample_npgem(const NpgemConfig& config, const Exposure& exposure = Exposure::uniform());

//! Closed-form coefficients: "lognormal_normal", "exp_weibull" and
//! "uniform:<catalog id>" for the functions on [0, 1].
double analytic_coefficient(const std::string& case_id);

} // namespace asymlab::gem
