#pragma once

// Lenses (intersection of all radius-r balls containing two points), short
// arcs with their midpoints, arc sampling by repeated midpoint bisection, and
// the sampled arc-property test.

#include <optional>
#include <utility>
#include <vector>

#include "scg/bodies.hpp"
#include "scg/geometry.hpp"

namespace scg {

enum class LensKind {
  universe,  // |x - y| > 2r: no ball contains both points
  point,     // x == y
  ball,      // |x - y| == 2r: the unique containing ball
  proper,    // bounded by two arcs of radius r
};

class Lens {
 public:
  LensKind kind() const noexcept { return kind_; }
  const Point& x() const noexcept { return x_; }
  const Point& y() const noexcept { return y_; }
  double radius() const noexcept { return r_; }
  int dim() const noexcept { return x_.dim(); }

  /// Ball kind: the unique containing ball.
  Ball ball() const { return {midpoint(x_, y_), r_}; }
  /// 2D proper lens: boundary arcs, counterclockwise. The first arc (centered
  /// at the right extreme center) bulges to the left of the chord x->y.
  const std::vector<CircularArc>& boundary_arcs() const noexcept { return arcs_; }
  /// 2D proper lens: centers of the two extreme disks (left, right of x->y).
  std::pair<Point, Point> extreme_centers() const;

 private:
  friend Lens lens(const Point&, const Point&, double, const Tolerance&);
  LensKind kind_ = LensKind::universe;
  Point x_, y_;
  double r_ = 0.0;
  std::vector<CircularArc> arcs_;
};

Lens lens(const Point& x, const Point& y, double r, const Tolerance& tol = {});

/// Exact membership in any dimension. The lens is a solid of revolution about
/// the chord, so membership reduces to the planar lens in (axial, radial)
/// coordinates.
bool lens_contains(const Lens& lens, const Point& p, const Tolerance& tol = {});

/// Minor arc of radius r joining x and y inside the 2-plane spanned by the
/// chord and the bulge direction.
struct ShortArc {
  Point x, y;
  double r = 0.0;
  Point center;    // circle center, on the side opposite the bulge
  Point bulge;     // unit, orthogonal to x - y; zero vector for a singleton arc
  Point midpoint;  // the arc point whose offset from (x+y)/2 is orthogonal to x - y

  bool singleton() const noexcept { return x == y; }
};

/// Short arc bulging along the unit direction `bulge` (orthogonal to x - y).
ShortArc short_arc(const Point& x, const Point& y, double r, const Point& bulge);

/// The two short arcs of radius r joining x and y in the plane: left of x->y first.
std::pair<ShortArc, ShortArc> short_arcs(const Point& x, const Point& y, double r);

/// 2^levels + 1 points from x to y obtained by repeated midpoint bisection.
std::vector<Point> arc_sample(const ShortArc& arc, int levels);

struct ArcPropertyResult {
  bool holds = true;
  bool vacuous = false;           // |x - y| > 2r
  std::optional<Point> witness;   // lexicographically smallest sampled point outside

  explicit operator bool() const noexcept { return holds; }
};

struct ArcPropertyOptions {
  int levels = 12;  // bisection depth per arc
  int planes = 8;   // 2-planes through the chord tested in d > 2
};

/// Sampled test of: every short arc of radius r joining x and y lies in the
/// body. A false result is a certificate; a true result is resolution-limited.
/// Throws DomainError if x or y is not in the body.
ArcPropertyResult arc_property(const Body& body, const Point& x, const Point& y, double r,
                               const ArcPropertyOptions& opts = {}, const Tolerance& tol = {});

/// Bulge directions tested for a chord: +-n in 2D; in d > 2, +-b for the first
/// `planes` directions of the complement (basis first, then sphere samples).
std::vector<Point> bulge_directions(const Point& x, const Point& y, int planes);

}  // namespace scg
