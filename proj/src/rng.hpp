#pragma once

// Deterministic random sources.  Everything is built on std::mt19937_64,
// whose output sequence is fixed by the standard, with all variate
// transformations written out here so results are bit-identical across
// platforms and independent of any library's distribution internals.

#include <cmath>
#include <cstdint>
#include <random>

#include "specfun.hpp"

namespace betagof::rng {

// splitmix64 finalizer; used to decorrelate seeds.
inline std::uint64_t mix_round(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed for substream `index` of a master seed.  Two finalizer rounds keep
// nearby (master, index) pairs statistically unrelated.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master ^ (0x632BE59BD9B4E019ull * (index + 1));
  return mix_round(mix_round(s));
}

class Engine {
 public:
  explicit Engine(std::uint64_t seed) : gen_(seed) {}

  static Engine substream(std::uint64_t master, std::uint64_t index) {
    return Engine(substream_seed(master, index));
  }

  std::uint64_t next_u64() { return gen_(); }

  // Strictly interior uniform on (0,1): 53 high bits, offset by half an ulp.
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Unbiased integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t lim = ~0ull - ~0ull % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= lim);
    return x % n;
  }

  double normal() { return specfun::norm_quantile(uniform()); }

  // Gamma(shape, 1) by Marsaglia-Tsang squeeze; shapes below 1 use the
  // boost Gamma(shape) = Gamma(shape+1) * U^(1/shape).
  double gamma(double shape) {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      return g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Beta(a, b) as X/(X+Y) from two gammas.  Redraws on the (measure-zero
  // in practice) event that rounding lands exactly on 0 or 1.
  double beta(double a, double b) {
    for (int tries = 0; tries < 100; ++tries) {
      const double x = gamma(a);
      const double y = gamma(b);
      const double s = x + y;
      if (s <= 0.0) continue;
      const double r = x / s;
      if (r > 0.0 && r < 1.0) return r;
    }
    return 0.5;  // unreachable for finite positive shapes
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace betagof::rng
