#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "cachecast/geometry.hpp"

namespace cachecast {

/// SplitMix64 mixing step; used to derive substream seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d49b9b471bfd8bULL;
  return x ^ (x >> 31);
}

/// Substream seed for (master, stream): documented fan-out scheme so parallel
/// episodes draw from independent, reproducible streams.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// Deterministic random stream. All samplers are implemented on top of the
/// raw 64-bit generator so sequences do not depend on the standard library's
/// unspecified distribution algorithms.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream substream(std::uint64_t master, std::uint64_t stream) {
    return RandomStream(substream_seed(master, stream));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Strictly positive uniform in (0, 1]; safe as a log argument.
  double uniform_pos() { return 1.0 - uniform(); }

  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

  /// Marsaglia polar method.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  /// Poisson count by sequential inversion; valid for mean < ~700 (the pmf of
  /// n = 0 must be representable). Callers validate the mean at config load.
  int poisson(double mean) {
    if (mean <= 0.0) return 0;
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    int n = 0;
    while (u > cdf && n < 100000) {
      ++n;
      p *= mean / n;
      cdf += p;
    }
    return n;
  }

  /// Uniform point in a disk.
  Point2 point_in_disk(const Point2& center, double radius) {
    const double r = radius * std::sqrt(uniform());
    const double a = 2.0 * M_PI * uniform();
    return {center.x + r * std::cos(a), center.y + r * std::sin(a)};
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cachecast
