#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace primepot::testing {

/// Seeded source for property tests. Every case derives its own stream from
/// the case index, so a failure message naming the index is reproducible.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  /// Strictly increasing levels with gaps in [min_gap, max_gap].
  std::vector<double> levels(std::size_t count, double start, double min_gap, double max_gap) {
    std::vector<double> out;
    double e = start;
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(e);
      e += real(min_gap, max_gap);
    }
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline constexpr int kCases = 100;

}  // namespace primepot::testing
