#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string_view>

namespace netshare {

/// SplitMix64 generator. Small state, so one instance per substream is cheap.
/// Satisfies UniformRandomBitGenerator and works with <random> distributions.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Finalizer used for seed derivation.
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a hash of a label, for naming substreams.
std::uint64_t hash_label(std::string_view label);

/// Derives a substream seed from a parent seed and a sequence of counters.
/// Order matters: derive_seed(s, {a, b}) != derive_seed(s, {b, a}).
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path);

/// Convenience: parent seed plus a named experiment.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label);

}  // namespace netshare
