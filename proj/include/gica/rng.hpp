#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace gica {

/// Mixes a base seed with a stream index (splitmix64 finalizer). Every
/// parallel task derives its own stream from (seed, task index), so results
/// do not depend on scheduling or worker count.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded generator: 64-bit Mersenne Twister (fully specified by the
/// standard) with hand-rolled uniform, Box-Muller normal and Fisher-Yates
/// shuffle so that streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform in (0, 1].
  double uniform_open_low() { return 1.0 - uniform(); }

  /// Standard normal deviate (Box-Muller, second value cached).
  double normal();

  /// Unbiased integer in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace gica
