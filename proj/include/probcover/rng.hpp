#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "probcover/common.hpp"

namespace probcover {

/// Deterministic random source. The engine is std::mt19937_64, whose output
/// sequence is pinned bit-for-bit by the C++ standard; every distribution
/// below is implemented here rather than taken from <random>, so a given
/// seed reproduces the same draws on any standard library.
///
/// Draw accounting (relied on by replay tests): next_double consumes one
/// engine word, next_normal consumes exactly two uniform doubles (Box-Muller,
/// re-drawing the first while it is zero), next_index consumes one word per
/// rejection round.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via the Box-Muller transform.
  double next_normal() {
    double u1 = next_double();
    while (u1 == 0.0) u1 = next_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  /// Unbiased uniform integer in [0, n), rejection sampled.
  std::size_t next_index(std::size_t n) {
    if (n == 0) throw validation_error("next_index: n must be positive");
    const std::uint64_t span = n;
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % span;  // largest multiple of span
    for (;;) {
      const std::uint64_t x = engine_();
      if (x < limit) return static_cast<std::size_t>(x % span);
    }
  }

  /// Index drawn with probability proportional to weights[i]. Weights must be
  /// non-negative with a positive sum.
  std::size_t next_weighted(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0))
      throw validation_error("next_weighted: weights must have positive sum");
    const double r = next_double() * total;
    double cum = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      cum += weights[i];
      last_positive = i;
      if (cum > r) return i;
    }
    return last_positive;  // r landed on the rounding tail
  }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[next_index(i)]);
    }
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
};

}  // namespace probcover
