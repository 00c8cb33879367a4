#pragma once

#include <cstdint>
#include <random>

namespace regdecomp {

/// Mixes a 64-bit value with the SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of child stream `stream` under `seed`.
///
/// Child streams are how every randomized routine stays deterministic when it
/// runs work in parallel: each restart, arriving node or row of node pairs
/// draws from its own stream, keyed by its index, so the result does not
/// depend on scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Platform-independent random source.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard.
/// The standard distributions are implementation-defined, so the bounded and
/// real-valued draws are implemented here.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Child generator for stream `stream` of `seed`.
  static Rng child(std::uint64_t seed, std::uint64_t stream) {
    return Rng(derive_seed(seed, stream));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// True with probability p (p <= 0 never, p >= 1 always).
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace regdecomp
