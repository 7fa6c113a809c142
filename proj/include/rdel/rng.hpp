#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rdel {

// Seedable, splittable pseudo-random stream. All randomness in the library
// flows through explicitly passed streams; there is no ambient RNG.
//
// The draw sequence is fully pinned by (seed, algorithm): the seed is
// scrambled with the splitmix64 finalizer, the engine is std::mt19937_64
// (whose output sequence the standard specifies exactly), and floating-point
// draws use the 53-bit top-bits conversion below rather than any
// implementation-defined std distribution.
class RngStream {
 public:
  static constexpr std::string_view kAlgorithm = "splitmix64/mt19937_64/v1";

  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  // Child stream derived from (seed, index). Independent of how far this
  // stream has advanced, so trial k can always be replayed in isolation.
  RngStream split(std::uint64_t index) const;

  std::uint64_t next_u64();

  // Fair bit (top bit of the next word).
  bool next_bit();

  // Uniform double in [0, 1).
  double next_canonical();

  // Standard normal via Box-Muller; one value per call.
  double next_gaussian();

  // Uniform index in [0, bound); rejection sampling, bound >= 1.
  std::size_t next_index(std::size_t bound);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace rdel
