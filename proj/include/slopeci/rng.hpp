#pragma once

// Counter-based pseudo-random streams.  Every Monte Carlo replicate draws
// from its own stream keyed by (seed, replicate index), so results are
// reproducible for a given seed no matter how replicates are scheduled
// across threads.  The generator is SplitMix64; each variate consumes a
// fixed number of raw draws (normal: 2, cauchy: 1, uniform: 1).

#include <cmath>
#include <cstdint>

namespace slopeci::rng {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Stream {
 public:
  explicit Stream(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0, 1): 53-bit mantissa, offset by half a
  // step so 0 and 1 are unreachable.
  double next_uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_uniform01();
  }

  // Box-Muller; consumes exactly two uniforms.
  double next_normal(double mean, double sd) {
    double u1 = next_uniform01();
    double u2 = next_uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(6.283185307179586476925286766559 * u2);
  }

  double next_cauchy(double location, double scale) {
    double u = next_uniform01();
    return location + scale * std::tan(3.14159265358979323846264338328 * (u - 0.5));
  }

 private:
  std::uint64_t state_;
};

// Stream for replicate r of a run keyed by `seed`.  The two indices are
// scrambled independently so neighbouring replicates land far apart in the
// underlying sequence.
inline Stream replicate_stream(std::uint64_t seed, std::uint64_t replicate) {
  return Stream(mix64(mix64(seed) ^ mix64(replicate ^ 0xA3C59AC2ED9B81D5ULL)));
}

}  // namespace slopeci::rng
