#pragma once

#include <array>
#include <cstdint>

namespace chsh {

/// xoshiro256** stream seeded through splitmix64. Streams are bit-identical
/// across platforms for a given seed; gaussians go through libm.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double gaussian();

  friend bool operator==(const SeededRng&, const SeededRng&) = default;

 private:
  std::array<std::uint64_t, 4> state_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

double rng_gaussian(SeededRng& rng);

/// Independent stream for task `index` of a run seeded with `seed`.
SeededRng rng_substream(std::uint64_t seed, std::uint64_t index);

}  // namespace chsh
