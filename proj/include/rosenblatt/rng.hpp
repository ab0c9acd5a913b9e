#ifndef ROSENBLATT_RNG_HPP
#define ROSENBLATT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace rosenblatt {

/// Mixes (seed, stream) into an independent substream seed. Used everywhere a
/// computation is sharded so that output does not depend on the shard schedule.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over a golden-ratio offset of the stream index
  std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic random stream. The engine is std::mt19937_64 (fully specified
/// by the standard); all distribution transforms are written out explicitly so
/// that a (seed, call-sequence) pair yields the same bits on every platform,
/// unlike the implementation-defined std::*_distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe to pass to log().
  double uniform_pos() { return 1.0 - uniform(); }

  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double t = 6.283185307179586476925286766559 * uniform();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

  /// Gamma with integer shape (Erlang) as a sum of exponentials. shape == 0
  /// returns 0.
  double gamma_int(std::uint64_t shape, double rate) {
    double s = 0.0;
    for (std::uint64_t i = 0; i < shape; ++i) s += -std::log(uniform_pos());
    return s / rate;
  }

  /// Poisson count by Knuth multiplication; large means are split using the
  /// additivity of independent Poisson variables so the product never
  /// underflows.
  std::uint64_t poisson(double mean) {
    std::uint64_t total = 0;
    while (mean > 32.0) {
      total += poisson_small(32.0);
      mean -= 32.0;
    }
    return total + poisson_small(mean);
  }

 private:
  std::uint64_t poisson_small(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace rosenblatt

#endif
