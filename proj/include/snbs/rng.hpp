#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "snbs/special.hpp"

namespace snbs {

// Deterministic substream RNG: (master seed, stream index) -> independent
// stream. Built on mt19937_64, whose output sequence is pinned by the
// C++ standard, with uniforms taken straight from the raw 64-bit words so
// no implementation-defined distribution code is involved. Gaussians come
// from the inverse CDF, so every variate consumes a fixed number of draws.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_index),
                      static_cast<std::uint32_t>(stream_index >> 32),
                      0x5e1fu};
    engine_.seed(seq);
  }

  // Uniform on the open interval (0,1).
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return normal_quantile(uniform01()); }

  double exponential() { return -std::log(uniform01()); }

  // Pareto with scale 1: P(X > x) = x^{-alpha}, x >= 1.
  double pareto(double alpha) {
    return std::pow(uniform01(), -1.0 / alpha);
  }

  // Symmetric alpha-stable (beta = 0, scale 1), Chambers-Mallows-Stuck.
  double sym_stable(double alpha) {
    const double v = M_PI * (uniform01() - 0.5);
    const double w = exponential();
    const double t = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha);
    const double s =
        std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
    return t * s;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace snbs
