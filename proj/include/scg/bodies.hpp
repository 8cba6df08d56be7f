#pragma once

// Candidate sets: convex polygons and disk-polygons (exact, 2D) and implicit
// bodies given by a membership predicate (R^d). All bodies are immutable
// after construction; every query is a pure function.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "scg/geometry.hpp"
#include "scg/sampling.hpp"

namespace scg {

/// Counterclockwise circular arc: angles start .. start + sweep.
struct CircularArc {
  Point center;
  double radius = 0.0;
  double start_angle = 0.0;  // in [0, 2*pi)
  double sweep = 0.0;        // in (0, 2*pi]

  double end_angle() const { return start_angle + sweep; }
  bool full_circle() const { return sweep >= 2.0 * kPi; }
  /// Point at fraction s in [0, 1] of the sweep.
  Point at(double s) const { return center + polar(start_angle + s * sweep) * radius; }
  Point start() const { return at(0.0); }
  Point end() const { return at(1.0); }
  double length() const { return sweep * radius; }
  /// True if the direction angle `a` lies within the arc's angular range (padding `pad` radians).
  bool covers_angle(double a, double pad = 0.0) const;
};

struct NormalCone {
  Point at;
  std::vector<UnitVector> extreme_rays;  // one ray (smooth point) or two (corner)

  /// The ray itself, or the normalized sum of the two extreme rays.
  UnitVector bisector() const;
};

class ConvexPolygon {
 public:
  /// Vertices in either orientation; duplicate and collinear vertices are
  /// dropped. Throws DomainError if the ordering is not convex.
  static ConvexPolygon from_vertices(std::vector<Point> vertices, const Tolerance& tol = {});
  /// Convex hull of an arbitrary finite point set (monotone chain).
  static ConvexPolygon hull_of(std::span<const Point> points, const Tolerance& tol = {});

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  bool is_point() const noexcept { return vertices_.size() == 1; }
  bool is_segment() const noexcept { return vertices_.size() == 2; }
  bool degenerate() const noexcept { return vertices_.size() < 3; }
  /// Outward unit normal of edge i -> i+1 (proper polygons, and segments for i = 0).
  Point edge_normal(std::size_t i) const;

 private:
  std::vector<Point> vertices_;
};

enum class DiskPolygonKind { point, disk, lens, general };

/// Intersection of finitely many closed disks of one common radius.
class DiskPolygon {
 public:
  /// Single-point variant {p} (tangent generators, or an r-hull of one point).
  static DiskPolygon singleton(const Point& p, double radius);

  DiskPolygonKind kind() const noexcept { return kind_; }
  double radius() const noexcept { return radius_; }
  /// Non-redundant generator centers, one per boundary arc, counterclockwise.
  const std::vector<Point>& centers() const noexcept { return centers_; }
  const std::vector<CircularArc>& arcs() const noexcept { return arcs_; }
  /// Arc start points (empty for point and disk kinds).
  std::vector<Point> vertices() const;
  /// The single point for DiskPolygonKind::point.
  const Point& point() const noexcept { return point_; }

 private:
  friend DiskPolygon intersect_disks(std::span<const Point>, double, const Tolerance&);
  DiskPolygonKind kind_ = DiskPolygonKind::point;
  double radius_ = 0.0;
  std::vector<Point> centers_;
  std::vector<CircularArc> arcs_;
  Point point_;
};

/// A set given by a membership predicate and a trusted bounding box.
///
/// Convexity and connectedness are trusted flags: operations that need them
/// document that their guarantees are void when a flag is wrong.
class ImplicitBody {
 public:
  using Membership = std::function<bool(const Point&)>;

  struct Options {
    bool convex = false;
    bool connected = true;
    /// Accuracy of boundary location through the predicate (e.g. a grid step).
    double resolution = 1e-12;
  };

  /// Throws EmptyBody if no sample of the bounding box is a member.
  ImplicitBody(Membership membership, const Point& lo, const Point& hi, Options options);

  int dim() const noexcept { return lo_.dim(); }
  bool member(const Point& p) const { return (*membership_)(p); }
  const Point& lo() const noexcept { return lo_; }
  const Point& hi() const noexcept { return hi_; }
  bool convex_claimed() const noexcept { return options_.convex; }
  bool connected_claimed() const noexcept { return options_.connected; }
  double resolution() const noexcept { return options_.resolution; }
  /// A deterministic interior point (member sample nearest the sample centroid).
  const Point& reference() const noexcept { return reference_; }

 private:
  std::shared_ptr<const Membership> membership_;
  Point lo_, hi_;
  Options options_;
  Point reference_;
};

using Body = std::variant<ConvexPolygon, DiskPolygon, ImplicitBody>;

int dimension(const Body& body);
/// True for exact representations; the trusted flag for implicit bodies.
bool is_convex(const Body& body);
bool is_exact(const Body& body);
/// Axis-aligned bounding box (lo, hi).
std::pair<Point, Point> bounding_box(const Body& body);

/// Closed-set membership; exact representations accept points within abs_geom.
bool contains(const Body& body, const Point& p, const Tolerance& tol = {});

/// Signed distance to the boundary: positive inside, negative outside, and
/// exactly zero within abs_geom of the boundary.
double boundary_distance(const Body& body, const Point& p, const Tolerance& tol = {});
/// Same without the zero snap; estimators use this.
double signed_distance(const Body& body, const Point& p, const Tolerance& tol = {});

/// sup{t >= 0 : p + t v in body} for p in the body (0 if p is outside).
/// Exact for polygons and disk-polygons; bisection for implicit bodies.
double ray_exit(const Body& body, const Point& p, const Point& v, const Tolerance& tol = {});

/// Support function max_{y in body} <v, y> (exact representations).
double support(const Body& body, const Point& v);

/// Normal cone at a boundary point of an exact body. Throws DomainError if
/// x is not on the boundary or the cone is not pointed (single-point polygon).
NormalCone normal_cone(const Body& body, const Point& x, const Tolerance& tol = {});
/// Whether v is an outer normal at x: <v, y - x> <= tol for all y in the body.
bool is_outer_normal(const Body& body, const Point& x, const Point& v, double tol);

/// Boundary structure of the intersection of the closed disks B(c, R).
/// Throws Infeasible when the intersection is empty.
DiskPolygon intersect_disks(std::span<const Point> centers, double radius,
                            const Tolerance& tol = {});

/// Exact for polygons and disk-polygons; a sampled lower bound for implicit bodies.
double diameter(const Body& body, const Tolerance& tol = {});
struct DiameterBounds {
  double lower = 0.0;
  double upper = 0.0;
};
DiameterBounds diameter_bounds(const Body& body, const Tolerance& tol = {});

/// Accuracy with which estimators can locate the boundary of this body.
double body_resolution(const Body& body, const Tolerance& tol = {});

/// Outer unit normal at (or near) a boundary point. Exact bodies return the
/// normal-cone bisector; implicit bodies use finite differences of ray exits.
UnitVector estimate_normal(const Body& body, const Point& x, const Tolerance& tol = {});

/// Closed boundary curve of a 2D body, or of a planar section of an implicit
/// body through its reference point. Parameter t is periodic with period 1
/// and increases counterclockwise. Holds a reference to `body`.
class BoundaryCurve {
 public:
  explicit BoundaryCurve(const Body& body, const Tolerance& tol = {});
  /// Section of a d-dimensional implicit body by the plane through its
  /// reference point spanned by orthonormal e1, e2.
  BoundaryCurve(const Body& body, const Point& e1, const Point& e2, const Tolerance& tol = {});

  Point at(double t) const;
  const Body& body() const noexcept { return *body_; }

 private:
  const Body* body_;
  Tolerance tol_;
  std::vector<double> cumulative_;  // normalized feature boundaries for exact bodies
  Point e1_, e2_;
};

/// Deterministic samples of a body (optionally clipped to a ball): interior
/// grid points and boundary points found by bisection along grid edges, plus
/// vertices for exact representations.
struct RegionSamples {
  std::vector<Point> interior;
  std::vector<Point> boundary;
};
RegionSamples region_samples(const Body& body, const SampleConfig& cfg, const Tolerance& tol = {},
                             const std::optional<Ball>& window = std::nullopt);

}  // namespace scg
