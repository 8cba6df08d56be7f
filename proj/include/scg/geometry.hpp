#pragma once

// Scalar and point primitives shared by every module: fixed-capacity points,
// unit vectors, balls, the tolerance policy, and the closed-form modulus of a
// Euclidean ball.

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "scg/errors.hpp"

namespace scg {

inline constexpr int kMaxDim = 8;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kUnitTolerance = 1e-12;

/// A point (or free vector) of R^d, 2 <= d <= kMaxDim, stored inline.
class Point {
 public:
  Point() = default;
  explicit Point(int dim);
  Point(std::initializer_list<double> coords);
  explicit Point(std::span<const double> coords);

  static Point zeros(int dim) { return Point(dim); }
  static Point axis(int dim, int k);

  int dim() const noexcept { return dim_; }
  double operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) noexcept { return c_[static_cast<std::size_t>(i)]; }
  double x() const noexcept { return c_[0]; }
  double y() const noexcept { return c_[1]; }
  std::span<const double> coords() const noexcept {
    return {c_.data(), static_cast<std::size_t>(dim_)};
  }

  Point& operator+=(const Point& o) noexcept;
  Point& operator-=(const Point& o) noexcept;
  Point& operator*=(double s) noexcept;

  friend Point operator+(Point a, const Point& b) noexcept { return a += b; }
  friend Point operator-(Point a, const Point& b) noexcept { return a -= b; }
  friend Point operator*(Point a, double s) noexcept { return a *= s; }
  friend Point operator*(double s, Point a) noexcept { return a *= s; }
  friend Point operator/(Point a, double s) noexcept { return a *= (1.0 / s); }
  Point operator-() const noexcept { return *this * -1.0; }

  friend bool operator==(const Point& a, const Point& b) noexcept;

  double dot(const Point& o) const noexcept;
  double norm2() const noexcept { return dot(*this); }
  double norm() const noexcept { return std::sqrt(norm2()); }
  bool finite() const noexcept;

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

double distance(const Point& a, const Point& b) noexcept;
Point midpoint(const Point& a, const Point& b) noexcept;
/// Lexicographic order on coordinates; used to make witness selection reproducible.
bool lex_less(const Point& a, const Point& b) noexcept;
void require_same_dim(const Point& a, const Point& b);

/// Counterclockwise rotation by 90 degrees (2D).
inline Point perp_ccw(const Point& p) { return Point{-p.y(), p.x()}; }
inline double cross2(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }
inline Point polar(double angle) { return Point{std::cos(angle), std::sin(angle)}; }
/// Angle normalized to [0, 2*pi).
double wrap_angle(double a) noexcept;

/// A point of norm one (within kUnitTolerance).
class UnitVector {
 public:
  /// Normalizes `v`; throws DomainError for the zero vector.
  static UnitVector normalize(const Point& v);
  /// Accepts `v` only if it already has unit norm within kUnitTolerance.
  static UnitVector checked(const Point& v);

  const Point& vec() const noexcept { return v_; }
  operator const Point&() const noexcept { return v_; }
  int dim() const noexcept { return v_.dim(); }
  double operator[](int i) const noexcept { return v_[i]; }
  UnitVector operator-() const { return UnitVector(-v_); }

 private:
  explicit UnitVector(const Point& v) : v_(v) {}
  Point v_;
};

struct Ball {
  Point center;
  double radius = 0.0;  // radius 0 is the singleton {center}

  bool contains(const Point& p, double tol) const {
    return distance(p, center) <= radius + tol;
  }
};

struct Tolerance {
  double abs_geom = 1e-9;
  double rel_geom = 1e-12;
  double grid_h = 0.01;

  void validate() const;
};

/// Modulus of convexity of a closed ball of radius r: r - sqrt(r^2 - eps^2/4).
double ball_modulus(double r, double eps);

/// lim_{eps->0} ball_modulus(r, eps) / eps^2 = 1/(8r).
double ball_limit_constant(double r);

/// Centers of the two radius-r circles through x and y (2D). The first is on
/// the left of the oriented chord x->y.
std::pair<Point, Point> chord_circle_centers(const Point& x, const Point& y, double r);

/// Unit vectors orthogonal to u. Convention: an orthonormal basis b_1..b_{d-1}
/// of the complement, listed as b_1, -b_1, b_2, -b_2, ..., followed by
/// `samples` quasi-uniform unit vectors of the complement sphere.
/// In 2D with samples = 0 this is exactly {ccw(u), -ccw(u)}.
std::vector<UnitVector> perp_directions(const UnitVector& u, int samples = 0);

/// Orthonormal basis of the orthogonal complement of u (d-1 vectors).
std::vector<Point> complement_basis(const UnitVector& u);

/// Smallest closed ball containing all points (2D, Welzl with a fixed
/// deterministic insertion order).
Ball min_enclosing_ball(std::span<const Point> points);

}  // namespace scg
