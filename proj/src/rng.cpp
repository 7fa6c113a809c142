#include "rdel/rng.hpp"

#include <cmath>
#include <numbers>

#include "rdel/errors.hpp"

namespace rdel {

namespace {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

RngStream RngStream::split(std::uint64_t index) const {
  return RngStream(mix64(seed_ ^ mix64(index + 1)));
}

std::uint64_t RngStream::next_u64() { return engine_(); }

bool RngStream::next_bit() { return (next_u64() >> 63) != 0; }

double RngStream::next_canonical() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_gaussian() {
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - next_canonical();
  const double u2 = next_canonical();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t RngStream::next_index(std::size_t bound) {
  if (bound == 0) throw ParameterError("next_index: bound must be >= 1");
  const std::uint64_t b = bound;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

}  // namespace rdel
