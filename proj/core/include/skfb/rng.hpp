#pragma once

#include <cmath>
#include <cstdint>

namespace skfb::rng {

// splitmix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic substream keyed by (seed, trial, lane). Draw order inside a
// lane is private to that lane, so Monte Carlo results do not depend on how
// trials are scheduled across threads.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t lane) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ull);
    h = mix64(h ^ (trial * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
    state_ = mix64(h ^ (lane * 0xaf251af3b0f025b5ull + 0x9e3779b97f4a7c15ull));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via the Marsaglia polar method.
  double normal() {
    for (;;) {
      const double u = 2.0 * uniform() - 1.0;
      const double v = 2.0 * uniform() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) {
        return u * std::sqrt(-2.0 * std::log(s) / s);
      }
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace skfb::rng
