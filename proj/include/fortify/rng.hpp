#pragma once
// Portable random stream. std::mt19937_64 has a standardized output sequence,
// but the std distributions do not, so every draw is derived here.

#include <cstdint>
#include <random>
#include <span>

namespace fortify {

/// SplitMix64 output function (Steele, Lea, Flood 2014).
std::uint64_t splitmix64_mix(std::uint64_t z);

/// Seed of run `index` under `master_seed`: the (index+1)-th output of a
/// SplitMix64 generator seeded with master_seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fortify
