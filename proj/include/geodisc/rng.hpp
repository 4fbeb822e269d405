#pragma once

#include <cstdint>

namespace geodisc {

/// Counter-based pseudo-random source.
///
/// value(i) applies the SplitMix64 output function to seed + (i+1)*GAMMA,
/// so draw i is a pure function of (seed, i): identical across platforms,
/// languages and call orders. Constants are the standard SplitMix64 set
/// (Steele, Lea, Flood 2014).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t index) const {
    return mix(seed_ + (index + 1) * kGamma);
  }

  /// Uniform double in [0,1) from the top 53 bits of draw `index`.
  double uniform(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t seed_;
};

/// Sequential facade over CounterRng for code that wants a draw stream.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : rng_(seed) {}
  double next() { return rng_.uniform(index_++); }
  std::uint64_t next_bits() { return rng_.bits(index_++); }
  void skip(std::uint64_t n) { index_ += n; }

 private:
  CounterRng rng_;
  std::uint64_t index_ = 0;
};

}  // namespace geodisc
