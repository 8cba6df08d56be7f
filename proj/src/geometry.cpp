#include "scg/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <string>

#include "scg/sampling.hpp"

namespace scg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::degenerate_chord: return "degenerate_chord";
    case ErrorKind::no_containing_ball: return "no_containing_ball";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::empty_body: return "empty_body";
    case ErrorKind::schedule: return "schedule";
    case ErrorKind::budget: return "budget";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

Point::Point(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw DimensionMismatch("point dimension " + std::to_string(dim) + " out of range");
  }
}

Point::Point(std::initializer_list<double> coords) : Point(static_cast<int>(coords.size())) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

Point::Point(std::span<const double> coords) : Point(static_cast<int>(coords.size())) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

Point Point::axis(int dim, int k) {
  Point p(dim);
  p[k] = 1.0;
  return p;
}

Point& Point::operator+=(const Point& o) noexcept {
  assert(dim_ == o.dim_);
  for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
  return *this;
}

Point& Point::operator-=(const Point& o) noexcept {
  assert(dim_ == o.dim_);
  for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
  return *this;
}

Point& Point::operator*=(double s) noexcept {
  for (int i = 0; i < dim_; ++i) c_[i] *= s;
  return *this;
}

bool operator==(const Point& a, const Point& b) noexcept {
  if (a.dim_ != b.dim_) return false;
  for (int i = 0; i < a.dim_; ++i) {
    if (a.c_[i] != b.c_[i]) return false;
  }
  return true;
}

double Point::dot(const Point& o) const noexcept {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += c_[i] * o.c_[i];
  return s;
}

bool Point::finite() const noexcept {
  for (int i = 0; i < dim_; ++i) {
    if (!std::isfinite(c_[i])) return false;
  }
  return true;
}

double distance(const Point& a, const Point& b) noexcept { return (a - b).norm(); }

Point midpoint(const Point& a, const Point& b) noexcept { return (a + b) * 0.5; }

bool lex_less(const Point& a, const Point& b) noexcept {
  const int n = std::min(a.dim(), b.dim());
  for (int i = 0; i < n; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.dim() < b.dim();
}

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
}

double wrap_angle(double a) noexcept {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  if (a >= 2.0 * kPi) a = 0.0;
  return a;
}

UnitVector UnitVector::normalize(const Point& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize the zero vector");
  return UnitVector(v / n);
}

UnitVector UnitVector::checked(const Point& v) {
  if (std::abs(v.norm() - 1.0) > kUnitTolerance) {
    throw DomainError("vector is not of unit length");
  }
  return UnitVector(v);
}

void Tolerance::validate() const {
  if (!(abs_geom > 0.0) || !(rel_geom > 0.0) || !(grid_h > 0.0)) {
    throw DomainError("tolerances must be strictly positive");
  }
}

double ball_modulus(double r, double eps) {
  if (!(r > 0.0)) throw DomainError("ball_modulus: radius must be positive");
  if (!(eps >= 0.0) || eps > 2.0 * r) {
    throw DomainError("ball_modulus: eps must lie in [0, 2r]");
  }
  // r - sqrt(r^2 - e^2/4) rewritten without cancellation.
  const double q = eps * eps / 4.0;
  return std::min(r, q / (r + std::sqrt(std::max(0.0, r * r - q))));
}

double ball_limit_constant(double r) {
  if (!(r > 0.0)) throw DomainError("ball_limit_constant: radius must be positive");
  return 1.0 / (8.0 * r);
}

std::pair<Point, Point> chord_circle_centers(const Point& x, const Point& y, double r) {
  require_same_dim(x, y);
  if (x.dim() != 2) throw DimensionMismatch("chord_circle_centers is two-dimensional");
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  const Point d = y - x;
  const double len = d.norm();
  if (len == 0.0) throw DegenerateChord("chord endpoints coincide");
  if (len > 2.0 * r) {
    throw NoContainingBall("chord longer than the diameter 2r", len / 2.0);
  }
  const double h = std::sqrt(std::max(0.0, r * r - len * len / 4.0));
  const Point n = perp_ccw(d) / len;
  const Point m = midpoint(x, y);
  return {m + n * h, m - n * h};
}

std::vector<Point> complement_basis(const UnitVector& u) {
  const int d = u.dim();
  std::vector<Point> basis;
  basis.reserve(static_cast<std::size_t>(d - 1));
  if (d == 2) {
    basis.push_back(perp_ccw(u.vec()));
    return basis;
  }
  // Gram-Schmidt over the standard basis, most orthogonal axes first.
  std::vector<int> order(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) order[static_cast<std::size_t>(k)] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(u[a]) < std::abs(u[b]); });
  std::vector<Point> frame{u.vec()};
  for (int k : order) {
    if (static_cast<int>(basis.size()) == d - 1) break;
    Point v = Point::axis(d, k);
    for (const Point& f : frame) v -= f * v.dot(f);
    for (const Point& f : frame) v -= f * v.dot(f);
    const double n = v.norm();
    if (n < 1e-6) continue;
    v = v / n;
    frame.push_back(v);
    basis.push_back(v);
  }
  return basis;
}

std::vector<UnitVector> perp_directions(const UnitVector& u, int samples) {
  if (u.dim() < 2) throw DomainError("perp_directions requires dimension >= 2");
  if (samples < 0) throw DomainError("sample count must be nonnegative");
  const std::vector<Point> basis = complement_basis(u);
  std::vector<UnitVector> out;
  out.reserve(2 * basis.size() + static_cast<std::size_t>(samples));
  for (const Point& b : basis) {
    out.push_back(UnitVector::normalize(b));
    out.push_back(UnitVector::normalize(-b));
  }
  const int m = static_cast<int>(basis.size());
  for (int s = 0; s < samples; ++s) {
    const Point g = sample_sphere(m == 1 ? 2 : m, 0x5eedULL, 17, static_cast<std::uint64_t>(s));
    Point v = Point::zeros(u.dim());
    if (m == 1) {
      v = basis[0] * (g[0] >= 0.0 ? 1.0 : -1.0);
    } else {
      for (int k = 0; k < m; ++k) v += basis[static_cast<std::size_t>(k)] * g[k];
    }
    out.push_back(UnitVector::normalize(v));
  }
  return out;
}

namespace {

Ball ball_from(const Point& a) { return {a, 0.0}; }

Ball ball_from(const Point& a, const Point& b) { return {midpoint(a, b), distance(a, b) / 2.0}; }

Ball ball_from(const Point& a, const Point& b, const Point& c) {
  const Point ab = b - a;
  const Point ac = c - a;
  const double det = 2.0 * cross2(ab, ac);
  if (std::abs(det) < 1e-300) {
    // Collinear: the ball of the farthest pair.
    Ball best = ball_from(a, b);
    for (const Ball& cand : {ball_from(a, c), ball_from(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double b2 = ab.norm2();
  const double c2 = ac.norm2();
  const Point off{(ac.y() * b2 - ab.y() * c2) / det, (ab.x() * c2 - ac.x() * b2) / det};
  return {a + off, off.norm()};
}

bool inside(const Ball& b, const Point& p) {
  return distance(p, b.center) <= b.radius * (1.0 + 1e-12) + 1e-15;
}

}  // namespace

Ball min_enclosing_ball(std::span<const Point> points) {
  if (points.empty()) throw DomainError("min_enclosing_ball of an empty set");
  for (const Point& p : points) {
    if (p.dim() != 2) throw DimensionMismatch("min_enclosing_ball is two-dimensional");
  }
  // Deterministic permutation keeps the expected linear running time.
  std::vector<Point> pts(points.begin(), points.end());
  for (std::size_t i = pts.size(); i > 1; --i) {
    const std::size_t j = counter_hash(0x3eb, 0, i) % i;
    std::swap(pts[i - 1], pts[j]);
  }
  Ball b = ball_from(pts[0]);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (inside(b, pts[i])) continue;
    b = ball_from(pts[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (inside(b, pts[j])) continue;
      b = ball_from(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (inside(b, pts[k])) continue;
        b = ball_from(pts[i], pts[j], pts[k]);
      }
    }
  }
  return b;
}

}  // namespace scg
