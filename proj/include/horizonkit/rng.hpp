#pragma once
// Counter-based random number generation. Instead of a stateful engine, every
// draw is a pure hash of (seed, time step, component, lane). This makes noise
// sampling order-independent: re-sampling step t after step t+1 returns the
// same value, and independent trajectory segments can be generated in any
// order without coordination.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace horizonkit::rng {

// splitmix64 finalizer: a well-mixed 64-bit permutation.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Keyed counter hash; lane distinguishes the two uniforms behind one gaussian.
inline std::uint64_t noise_key(std::uint64_t seed, std::uint64_t t,
                               std::uint64_t component, std::uint64_t lane) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ t);
  h = mix64(h ^ component);
  h = mix64(h ^ lane);
  return h;
}

// Map 64 random bits to a double in (0, 1]; the open lower end keeps log()
// finite in the Box-Muller transform below.
inline double uniform01(std::uint64_t bits) {
  return 1.0 - static_cast<double>(bits >> 11) * 0x1p-53;
}

// Standard normal draw, a pure function of (seed, t, component).
inline double gaussian(std::uint64_t seed, std::uint64_t t,
                       std::uint64_t component) {
  const double u1 = uniform01(noise_key(seed, t, component, 0));
  const double u2 = uniform01(noise_key(seed, t, component, 1));
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace horizonkit::rng
