#pragma once

#include <cstdint>
#include <random>

namespace asymlab {

//! Seeded generator with platform-independent transforms. The standard
//! library distributions are implementation-defined, so uniform and normal
//! draws are derived here directly from the 64-bit engine output.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  //! Uniform on the open interval (0, 1).
  double uniform();

  //! Standard normal via Box-Muller; the second variate is cached.
  double normal();

  //! Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n);

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

//! Mixes a base seed with a stream index (splitmix64 finalizer). Used to give
//! each Monte Carlo replicate an independent generator.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

} // namespace asymlab
