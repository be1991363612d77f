#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace vsl {

/// Seeded generator with platform-independent integer draws.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Range reduction and shuffling are implemented here instead of
/// using the <random> distributions, whose algorithms are left to the
/// library vendor. Together this makes every integer draw and every shuffle
/// reproducible across compilers.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/rejection-v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Uniform real in [0, 1) built from the top 53 bits of one draw.
  double uniform01();

  /// Box-Muller normal draw; consumes two engine outputs per call.
  double normal(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// FNV-1a 64-bit hash of a byte string.
std::uint64_t fnv1a64(std::string_view bytes);

/// Seed for an independent stream keyed by (master seed, key).
std::uint64_t derive_seed(std::uint64_t master, std::string_view key);

/// Fisher-Yates shuffle, iterating from the back.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_index(i));
    if (j != i - 1) {
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }
}

}  // namespace vsl
