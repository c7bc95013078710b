#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace spiral::rng {

// Deterministic helpers built on raw mt19937_64 output so generated
// instances are reproducible across standard-library implementations.

inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

inline double gaussian(std::mt19937_64& gen) {
  // Box-Muller; guards the log against a zero draw.
  double u1 = uniform01(gen);
  while (u1 <= 0.0) u1 = uniform01(gen);
  const double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

inline int uniform_index(std::mt19937_64& gen, int bound) {
  return static_cast<int>(gen() % static_cast<std::uint64_t>(bound));
}

inline bool bernoulli(std::mt19937_64& gen, double p) {
  return uniform01(gen) < p;
}

inline double sign(std::mt19937_64& gen) { return (gen() & 1u) ? 1.0 : -1.0; }

}  // namespace spiral::rng
