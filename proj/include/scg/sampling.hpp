#pragma once

// Counter-based pseudo-randomness: every sample is a pure function of
// (seed, stream, index), so sample streams do not depend on evaluation order
// or thread count.

#include <cstdint>

#include "scg/geometry.hpp"

namespace scg {

inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t index) noexcept {
  return mix64(mix64(seed ^ mix64(stream)) + index);
}

/// Uniform double in [0, 1) for the given counter.
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t index) noexcept {
  return static_cast<double>(counter_hash(seed, stream, index) >> 11) * 0x1.0p-53;
}

struct SampleConfig {
  std::uint64_t seed = 0;
  int pairs = 4000;       // pair budget for sampled pair quantifiers
  int directions = 16;    // chord directions per sampled point
  int planes = 8;         // 2-planes through a chord in d > 2
  int points = 24;        // grid points per axis for region sampling
  int levels = 12;        // arc bisection depth

  void validate() const;
};

/// Uniform point of the axis-aligned box [lo, hi], index-addressed.
Point sample_box(const Point& lo, const Point& hi, std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t index);

/// Unit vector of R^d, index-addressed (normalized Gaussian via Box-Muller).
Point sample_sphere(int dim, std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace scg
