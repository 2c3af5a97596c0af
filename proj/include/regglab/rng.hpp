#pragma once

// Counter-based splittable generator. A (base_seed, stream_index) pair names
// an independent stream; trial i of an experiment uses stream i, so Monte
// Carlo loops need no shared state and are thread-count invariant.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace regglab {

struct SeedSpec {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_index = 0;

  SeedSpec child(std::uint64_t index) const;
  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Derives a sub-stream: used when one sample needs several independent draws
/// (e.g. the two halves of a disjoint pair).
inline SeedSpec SeedSpec::child(std::uint64_t index) const {
  return {mix64(base_seed ^ 0x6A09E667F3BCC909ULL) + stream_index, mix64(index + 0xBB67AE8584CAA73BULL)};
}

class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(SeedSpec seed)
      : key_(mix64(mix64(seed.base_seed) + seed.stream_index * 0xD1B54A32D192ED03ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix64(key_ + (counter_++) * 0x9E3779B97F4A7C15ULL); }

  /// Uniform on [0, bound) without modulo bias (Lemire's multiply-shift).
  std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    unsigned __int128 p = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(p);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        p = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(p);
      }
    }
    return static_cast<std::uint64_t>(p >> 64);
  }

  int below(int bound) noexcept { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Standard normal by Box-Muller; the second variate is cached.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2 * std::numbers::pi * u2);
  }

  std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0;
  bool has_spare_ = false;
};

}  // namespace regglab
