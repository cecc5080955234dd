#pragma once

// Counter-based random streams. Every sampled object (point, direction,
// candidate) owns the stream keyed by (seed, index), so parallel generation
// is schedule-independent and reruns are bit-identical.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace holoball {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(mix64(seed) ^ (stream * 0xda942042e4dd58b5ull))) {}

  std::uint64_t next_u64() { return mix64(key_ + (++ctr_) * 0x9e3779b97f4a7c15ull); }

  // Uniform in [0, 1).
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe under log().
  double u01_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // Box-Muller pair of independent standard normals (fixed draw count).
  std::pair<double, double> normal_pair() {
    const double u1 = u01_open();
    const double u2 = u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(th), r * std::sin(th)};
  }

  // Marsaglia-Tsang gamma variate, shape k > 0, unit scale.
  double gamma(double k) {
    if (k < 1.0) {
      const double g = gamma(k + 1.0);
      return g * std::pow(u01_open(), 1.0 / k);
    }
    const double d = k - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal_pair().first;
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = u01_open();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
  }

  // Beta(a, b) variate returned as (u, 1-u); the complement is formed from
  // the gamma pair directly, so it is accurate even when u is close to 1.
  std::pair<double, double> beta_pair(double a, double b) {
    const double ga = gamma(a);
    const double gb = gamma(b);
    const double s = ga + gb;
    return {ga / s, gb / s};
  }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace holoball
