#pragma once

#include <array>
#include <cstdint>

namespace disp {

// SplitMix64 (Steele, Lea, Flood); expands a user seed into stream state and
// derives per-trial sub-seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman, Vigna), seeded through SplitMix64. All draws
// are integer operations, so streams are identical on every platform.
class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : state_) {
      word = sm.next();
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1): top 53 bits scaled by 2^-53; exact in binary64.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi] by modulo reduction. The bias is below 2^-53 for the
  // narrow ranges used here and the draw is reproducible everywhere.
  std::uint64_t next_in(std::uint64_t lo, std::uint64_t hi) {
    return lo + next() % (hi - lo + 1);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int s) {
    return (x << s) | (x >> (64 - s));
  }

  std::array<std::uint64_t, 4> state_;
};

// Standard-normal deviate as a shifted sum of 12 uniforms. Moment-matched,
// bounded to [-6, 6], and bit-exact across platforms, unlike libm-based
// transforms.
inline double gaussian_irwin_hall(Xoshiro256StarStar& rng) {
  double s = 0.0;
  for (int i = 0; i < 12; ++i) {
    s += rng.next_double();
  }
  return s - 6.0;
}

}  // namespace disp
