#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace nepoll {

/// SplitMix64 finalizer; used to derive independent seeds from structured keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Folds a key path into a seed: derive_seed(s, {a, b}) != derive_seed(s, {b, a}).
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept;

/// Seeded random stream.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard, and
/// implements the bounded draws itself because std:: distributions are
/// implementation-defined. The same seed gives the same draws on every host.
class RandomStream {
public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Independent stream number `index`, a pure function of (seed, index).
  RandomStream substream(std::uint64_t index) const noexcept {
    return RandomStream(derive_seed(seed_, {index}));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Fair coin.
  bool coin() { return (engine_() >> 63) != 0; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = uniform_index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next(); }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace nepoll
