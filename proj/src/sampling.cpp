#include "scg/sampling.hpp"

#include <cmath>

namespace scg {

void SampleConfig::validate() const {
  if (pairs < 1 || directions < 1 || planes < 1 || points < 1 || levels < 0) {
    throw DomainError("sample counts must be positive");
  }
}

Point sample_box(const Point& lo, const Point& hi, std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t index) {
  require_same_dim(lo, hi);
  Point p(lo.dim());
  for (int k = 0; k < lo.dim(); ++k) {
    const double u = counter_uniform(seed, stream, index * kMaxDim + static_cast<std::uint64_t>(k));
    p[k] = lo[k] + (hi[k] - lo[k]) * u;
  }
  return p;
}

Point sample_sphere(int dim, std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  Point g(dim);
  for (;;) {
    for (int k = 0; k < dim; k += 2) {
      const std::uint64_t base = index * 2 * kMaxDim + static_cast<std::uint64_t>(k);
      const double u1 = 1.0 - counter_uniform(seed, stream, base);
      const double u2 = counter_uniform(seed, stream, base + 1);
      const double rad = std::sqrt(-2.0 * std::log(u1));
      g[k] = rad * std::cos(2.0 * kPi * u2);
      if (k + 1 < dim) g[k + 1] = rad * std::sin(2.0 * kPi * u2);
    }
    const double n = g.norm();
    if (n > 1e-12) return g / n;
    index += 0x100000000ULL;
  }
}

}  // namespace scg
