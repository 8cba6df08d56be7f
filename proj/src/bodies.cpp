#include "scg/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace scg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

double dist_point_segment(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = ab.norm2();
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

double dist_point_arc(const Point& p, const CircularArc& arc) {
  const Point w = p - arc.center;
  const double r = w.norm();
  if (r == 0.0) return arc.radius;
  if (arc.covers_angle(std::atan2(w.y(), w.x()))) return std::abs(r - arc.radius);
  return std::min(distance(p, arc.start()), distance(p, arc.end()));
}

void require_dim(const Body& body, const Point& p) {
  if (p.dim() != dimension(body)) {
    throw DimensionMismatch("point dimension " + std::to_string(p.dim()) +
                            " does not match body dimension " + std::to_string(dimension(body)));
  }
}

// --- convex polygon -------------------------------------------------------

bool polygon_contains(const ConvexPolygon& poly, const Point& p, double tol) {
  const auto& v = poly.vertices();
  if (poly.is_point()) return distance(p, v[0]) <= tol;
  if (poly.is_segment()) return dist_point_segment(p, v[0], v[1]) <= tol;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if ((p - v[i]).dot(poly.edge_normal(i)) > tol) return false;
  }
  return true;
}

double polygon_signed_distance(const ConvexPolygon& poly, const Point& p) {
  const auto& v = poly.vertices();
  if (poly.is_point()) return -distance(p, v[0]);
  if (poly.is_segment()) return -dist_point_segment(p, v[0], v[1]);
  double inner = kInf;
  bool inside = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double depth = -(p - v[i]).dot(poly.edge_normal(i));
    if (depth < 0.0) inside = false;
    inner = std::min(inner, depth);
  }
  if (inside) return inner;
  double outer = kInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    outer = std::min(outer, dist_point_segment(p, v[i], v[(i + 1) % v.size()]));
  }
  return -outer;
}

double polygon_ray_exit(const ConvexPolygon& poly, const Point& p, const Point& dir, double tol) {
  if (!polygon_contains(poly, p, tol)) return 0.0;
  const auto& v = poly.vertices();
  if (poly.is_point()) return 0.0;
  if (poly.is_segment()) {
    const Point ab = v[1] - v[0];
    const double len = ab.norm();
    if (std::abs(cross2(ab / len, dir)) > 1e-12) return 0.0;
    const Point target = dir.dot(ab) > 0.0 ? v[1] : v[0];
    return std::max(0.0, (target - p).dot(dir));
  }
  double t = kInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point n = poly.edge_normal(i);
    const double rate = n.dot(dir);
    if (rate <= 0.0) continue;
    t = std::min(t, (v[i] - p).dot(n) / rate);
  }
  return std::max(0.0, t);
}

// --- disk polygon ---------------------------------------------------------

bool disk_polygon_contains(const DiskPolygon& dp, const Point& p, double tol) {
  if (dp.kind() == DiskPolygonKind::point) return distance(p, dp.point()) <= tol;
  for (const Point& c : dp.centers()) {
    if (distance(p, c) > dp.radius() + tol) return false;
  }
  return true;
}

double disk_polygon_signed_distance(const DiskPolygon& dp, const Point& p) {
  if (dp.kind() == DiskPolygonKind::point) return -distance(p, dp.point());
  double inner = kInf;
  for (const Point& c : dp.centers()) inner = std::min(inner, dp.radius() - distance(p, c));
  if (inner >= 0.0) return inner;
  double outer = kInf;
  for (const CircularArc& a : dp.arcs()) outer = std::min(outer, dist_point_arc(p, a));
  return -outer;
}

double disk_polygon_ray_exit(const DiskPolygon& dp, const Point& p, const Point& dir, double tol) {
  if (dp.kind() == DiskPolygonKind::point || !disk_polygon_contains(dp, p, tol)) return 0.0;
  double t = kInf;
  const double r2 = dp.radius() * dp.radius();
  for (const Point& c : dp.centers()) {
    const Point w = p - c;
    const double b = dir.dot(w);
    const double disc = b * b - (w.norm2() - r2);
    t = std::min(t, -b + std::sqrt(std::max(0.0, disc)));
  }
  return std::max(0.0, t);
}

double arc_support(const CircularArc& arc, const Point& v) {
  const double vn = v.norm();
  if (vn == 0.0) return 0.0;
  if (arc.covers_angle(std::atan2(v.y(), v.x()))) return arc.center.dot(v) + arc.radius * vn;
  return std::max(arc.start().dot(v), arc.end().dot(v));
}

// --- implicit body --------------------------------------------------------

double implicit_ray_exit(const ImplicitBody& body, const Point& p, const Point& dir) {
  if (!body.member(p)) return 0.0;
  double reach = 0.0;
  for (int k = 0; k < body.dim(); ++k) {
    const double e = std::max(std::abs(p[k] - body.lo()[k]), std::abs(body.hi()[k] - p[k]));
    reach += e * e;
  }
  reach = std::sqrt(reach) * (1.0 + 1e-9) + 1e-12;
  double lo = 0.0;
  double hi = reach;
  if (!body.convex_claimed()) {
    // Membership along the ray may not be an interval: march to the first exit.
    double extent = kInf;
    for (int k = 0; k < body.dim(); ++k) extent = std::min(extent, body.hi()[k] - body.lo()[k]);
    const double step = std::max(extent / 512.0, 1e-12);
    double t = step;
    while (t < reach && body.member(p + dir * t)) t += step;
    if (t >= reach) return reach;
    lo = t - step;
    hi = t;
  } else if (body.member(p + dir * hi)) {
    return hi;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (body.member(p + dir * mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::vector<Point> probe_directions(int dim, int planar_count = 64) {
  std::vector<Point> dirs;
  if (dim == 2) {
    const int n = planar_count;
    for (int k = 0; k < n; ++k) dirs.push_back(polar(2.0 * kPi * k / n));
    return dirs;
  }
  for (int k = 0; k < dim; ++k) {
    dirs.push_back(Point::axis(dim, k));
    dirs.push_back(-Point::axis(dim, k));
  }
  for (int s = 0; s < 192; ++s) dirs.push_back(sample_sphere(dim, 0xd1ce, 3, s));
  return dirs;
}

double implicit_depth(const ImplicitBody& body, const Point& p) {
  const std::vector<Point> dirs = probe_directions(body.dim(), 32);
  std::vector<double> t(dirs.size());
  for (std::size_t k = 0; k < dirs.size(); ++k) t[k] = implicit_ray_exit(body, p, dirs[k]);
  double best = *std::min_element(t.begin(), t.end());
  if (body.dim() != 2 || best == 0.0) return best;
  // Golden-section refinement of the exit distance around the best coarse directions.
  const std::size_t n = dirs.size();
  const double step = 2.0 * kPi / static_cast<double>(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + 2, order.end(),
                    [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int c = 0; c < 2; ++c) {
    const double center = step * static_cast<double>(order[static_cast<std::size_t>(c)]);
    double a = center - step;
    double b = center + step;
    auto f = [&](double ang) { return implicit_ray_exit(body, p, polar(ang)); };
    double x1 = b - g * (b - a);
    double x2 = a + g * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = f(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = f(x2);
      }
    }
    best = std::min({best, f1, f2});
  }
  return best;
}

double implicit_outside_distance(const ImplicitBody& body, const Point& p) {
  double extent = kInf;
  double reach = 0.0;
  for (int k = 0; k < body.dim(); ++k) {
    extent = std::min(extent, body.hi()[k] - body.lo()[k]);
    const double e = std::max(std::abs(p[k] - body.lo()[k]), std::abs(body.hi()[k] - p[k]));
    reach += e * e;
  }
  reach = std::sqrt(reach);
  const double step = std::max(extent / 256.0, 1e-12);
  double best = kInf;
  for (const Point& dir : probe_directions(body.dim())) {
    double t = step;
    while (t <= reach && t < best && !body.member(p + dir * t)) t += step;
    if (t > reach || t >= best) continue;
    double lo = t - step;
    double hi = t;
    for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (body.member(p + dir * mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    best = std::min(best, hi);
  }
  if (best == kInf) best = distance(p, body.reference());
  return best;
}

}  // namespace

// --- value types -------------------------------------------------------------

bool CircularArc::covers_angle(double a, double pad) const {
  if (full_circle()) return true;
  const double off = wrap_angle(a - start_angle);
  return off <= sweep + pad || off >= 2.0 * kPi - pad;
}

UnitVector NormalCone::bisector() const {
  if (extreme_rays.size() == 1) return extreme_rays.front();
  const Point s = extreme_rays[0].vec() + extreme_rays[1].vec();
  if (s.norm() < 1e-12) return extreme_rays.front();
  return UnitVector::normalize(s);
}

ConvexPolygon ConvexPolygon::from_vertices(std::vector<Point> vertices, const Tolerance& tol) {
  if (vertices.empty()) throw DomainError("polygon needs at least one vertex");
  for (const Point& v : vertices) {
    if (v.dim() != 2) throw DimensionMismatch("polygons are two-dimensional");
    if (!v.finite()) throw DomainError("non-finite polygon vertex");
  }
  std::vector<Point> pts;
  for (const Point& v : vertices) {
    if (pts.empty() || distance(pts.back(), v) > tol.abs_geom) pts.push_back(v);
  }
  while (pts.size() > 1 && distance(pts.front(), pts.back()) <= tol.abs_geom) pts.pop_back();

  ConvexPolygon out;
  if (pts.size() == 1) {
    out.vertices_ = pts;
    return out;
  }
  // All collinear: keep the two extreme points.
  std::size_t far = 1;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (distance(pts[i], pts[0]) > distance(pts[far], pts[0])) far = i;
  }
  const Point axis = (pts[far] - pts[0]) / distance(pts[far], pts[0]);
  const bool collinear = std::all_of(pts.begin(), pts.end(), [&](const Point& p) {
    return std::abs(cross2(axis, p - pts[0])) <= tol.abs_geom;
  });
  if (collinear) {
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
      return a.dot(axis) < b.dot(axis);
    });
    out.vertices_ = {*lo, *hi};
    return out;
  }

  double area2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) area2 += cross2(pts[i], pts[(i + 1) % pts.size()]);
  if (area2 < 0.0) std::reverse(pts.begin(), pts.end());

  // Drop vertices lying on the segment between their neighbours.
  bool changed = true;
  while (changed && pts.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point& a = pts[(i + pts.size() - 1) % pts.size()];
      const Point& b = pts[i];
      const Point& c = pts[(i + 1) % pts.size()];
      const double base = distance(a, c);
      if (base > 0.0 && std::abs(cross2(c - a, b - a)) / base <= tol.abs_geom &&
          (b - a).dot(c - a) > 0.0 && (b - c).dot(a - c) > 0.0) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  double turning = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point e0 = pts[i] - pts[(i + pts.size() - 1) % pts.size()];
    const Point e1 = pts[(i + 1) % pts.size()] - pts[i];
    const double cr = cross2(e0, e1);
    if (cr <= 0.0) throw DomainError("polygon vertices are not in convex position");
    turning += std::atan2(cr, e0.dot(e1));
  }
  if (std::abs(turning - 2.0 * kPi) > 1e-6) {
    throw DomainError("polygon boundary winds more than once");
  }
  out.vertices_ = std::move(pts);
  return out;
}

ConvexPolygon ConvexPolygon::hull_of(std::span<const Point> points, const Tolerance& tol) {
  if (points.empty()) throw DomainError("hull of an empty point set");
  std::vector<Point> pts(points.begin(), points.end());
  for (const Point& p : pts) {
    if (p.dim() != 2) throw DimensionMismatch("polygons are two-dimensional");
  }
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return from_vertices(pts, tol);
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    const Point& p = pts[i];
    while (k >= t && cross2(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return from_vertices(hull, tol);
}

Point ConvexPolygon::edge_normal(std::size_t i) const {
  const Point& a = vertices_[i % vertices_.size()];
  const Point& b = vertices_[(i + 1) % vertices_.size()];
  const Point e = b - a;
  return Point{e.y(), -e.x()} / e.norm();
}

ImplicitBody::ImplicitBody(Membership membership, const Point& lo, const Point& hi,
                           Options options)
    : membership_(std::make_shared<const Membership>(std::move(membership))),
      lo_(lo),
      hi_(hi),
      options_(options) {
  require_same_dim(lo, hi);
  if (lo.dim() < 2) throw DimensionMismatch("implicit bodies need dimension >= 2");
  for (int k = 0; k < lo.dim(); ++k) {
    if (!(hi[k] > lo[k])) throw DomainError("bounding box must have positive extent");
  }
  if (!(options.resolution > 0.0)) throw DomainError("resolution must be positive");
  const int d = lo.dim();
  const int per_axis =
      std::max(4, static_cast<int>(std::floor(std::pow(65536.0, 1.0 / static_cast<double>(d)))));
  std::vector<Point> members;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    Point p(d);
    for (int k = 0; k < d; ++k) {
      p[k] = lo[k] + (hi[k] - lo[k]) * (idx[static_cast<std::size_t>(k)] + 0.5) / per_axis;
    }
    if ((*membership_)(p)) members.push_back(p);
    int k = 0;
    while (k < d && ++idx[static_cast<std::size_t>(k)] == per_axis) idx[static_cast<std::size_t>(k++)] = 0;
    if (k == d) break;
  }
  if (members.empty()) throw EmptyBody("membership predicate selects no sample of the bounding box");
  Point centroid = Point::zeros(d);
  for (const Point& m : members) centroid += m;
  centroid = centroid / static_cast<double>(members.size());
  if ((*membership_)(centroid)) {
    reference_ = centroid;
  } else {
    reference_ = *std::min_element(members.begin(), members.end(), [&](const Point& a, const Point& b) {
      const double da = distance(a, centroid);
      const double db = distance(b, centroid);
      return da < db || (da == db && lex_less(a, b));
    });
  }
}

// --- body queries ------------------------------------------------------------

int dimension(const Body& body) {
  return std::visit(overloaded{[](const ConvexPolygon&) { return 2; },
                               [](const DiskPolygon&) { return 2; },
                               [](const ImplicitBody& b) { return b.dim(); }},
                    body);
}

bool is_convex(const Body& body) {
  if (const auto* ib = std::get_if<ImplicitBody>(&body)) return ib->convex_claimed();
  return true;
}

bool is_exact(const Body& body) { return !std::holds_alternative<ImplicitBody>(body); }

std::pair<Point, Point> bounding_box(const Body& body) {
  return std::visit(
      overloaded{
          [](const ConvexPolygon& poly) {
            Point lo = poly.vertices()[0];
            Point hi = lo;
            for (const Point& v : poly.vertices()) {
              for (int k = 0; k < 2; ++k) {
                lo[k] = std::min(lo[k], v[k]);
                hi[k] = std::max(hi[k], v[k]);
              }
            }
            return std::pair{lo, hi};
          },
          [](const DiskPolygon& dp) {
            if (dp.kind() == DiskPolygonKind::point) return std::pair{dp.point(), dp.point()};
            auto h = [&](const Point& v) {
              double s = -kInf;
              for (const CircularArc& a : dp.arcs()) s = std::max(s, arc_support(a, v));
              return s;
            };
            const Point lo{-h(Point{-1.0, 0.0}), -h(Point{0.0, -1.0})};
            const Point hi{h(Point{1.0, 0.0}), h(Point{0.0, 1.0})};
            return std::pair{lo, hi};
          },
          [](const ImplicitBody& b) { return std::pair{b.lo(), b.hi()}; }},
      body);
}

bool contains(const Body& body, const Point& p, const Tolerance& tol) {
  require_dim(body, p);
  return std::visit(
      overloaded{[&](const ConvexPolygon& poly) { return polygon_contains(poly, p, tol.abs_geom); },
                 [&](const DiskPolygon& dp) { return disk_polygon_contains(dp, p, tol.abs_geom); },
                 [&](const ImplicitBody& b) { return b.member(p); }},
      body);
}

double signed_distance(const Body& body, const Point& p, const Tolerance& tol) {
  require_dim(body, p);
  (void)tol;
  return std::visit(
      overloaded{[&](const ConvexPolygon& poly) { return polygon_signed_distance(poly, p); },
                 [&](const DiskPolygon& dp) { return disk_polygon_signed_distance(dp, p); },
                 [&](const ImplicitBody& b) {
                   return b.member(p) ? implicit_depth(b, p) : -implicit_outside_distance(b, p);
                 }},
      body);
}

double boundary_distance(const Body& body, const Point& p, const Tolerance& tol) {
  const double d = signed_distance(body, p, tol);
  return std::abs(d) <= tol.abs_geom ? 0.0 : d;
}

double ray_exit(const Body& body, const Point& p, const Point& v, const Tolerance& tol) {
  require_dim(body, p);
  require_dim(body, v);
  const Point dir = UnitVector::normalize(v).vec();
  return std::visit(
      overloaded{
          [&](const ConvexPolygon& poly) { return polygon_ray_exit(poly, p, dir, tol.abs_geom); },
          [&](const DiskPolygon& dp) { return disk_polygon_ray_exit(dp, p, dir, tol.abs_geom); },
          [&](const ImplicitBody& b) { return implicit_ray_exit(b, p, dir); }},
      body);
}

double support(const Body& body, const Point& v) {
  return std::visit(
      overloaded{[&](const ConvexPolygon& poly) {
                   double s = -kInf;
                   for (const Point& y : poly.vertices()) s = std::max(s, y.dot(v));
                   return s;
                 },
                 [&](const DiskPolygon& dp) {
                   if (dp.kind() == DiskPolygonKind::point) return dp.point().dot(v);
                   double s = -kInf;
                   for (const CircularArc& a : dp.arcs()) s = std::max(s, arc_support(a, v));
                   return s;
                 },
                 [&](const ImplicitBody&) -> double {
                   throw DomainError("support function needs an exact body");
                 }},
      body);
}

bool is_outer_normal(const Body& body, const Point& x, const Point& v, double tol) {
  return support(body, v) - x.dot(v) <= tol;
}

NormalCone normal_cone(const Body& body, const Point& x, const Tolerance& tol) {
  require_dim(body, x);
  const double eps = tol.abs_geom;
  return std::visit(
      overloaded{
          [&](const ConvexPolygon& poly) -> NormalCone {
            const auto& v = poly.vertices();
            if (poly.is_point()) throw DomainError("normal cone of a point is the whole space");
            if (poly.is_segment()) {
              if (dist_point_segment(x, v[0], v[1]) > eps) {
                throw DomainError("point is not on the boundary");
              }
              const Point n = poly.edge_normal(0);
              return {x, {UnitVector::normalize(n), UnitVector::normalize(-n)}};
            }
            for (std::size_t i = 0; i < v.size(); ++i) {
              if (distance(x, v[i]) <= eps) {
                const std::size_t prev = (i + v.size() - 1) % v.size();
                return {x, {UnitVector::normalize(poly.edge_normal(prev)),
                            UnitVector::normalize(poly.edge_normal(i))}};
              }
            }
            for (std::size_t i = 0; i < v.size(); ++i) {
              if (dist_point_segment(x, v[i], v[(i + 1) % v.size()]) <= eps &&
                  polygon_contains(poly, x, eps)) {
                return {x, {UnitVector::normalize(poly.edge_normal(i))}};
              }
            }
            throw DomainError("point is not on the boundary");
          },
          [&](const DiskPolygon& dp) -> NormalCone {
            if (dp.kind() == DiskPolygonKind::point) {
              throw DomainError("normal cone of a point is the whole space");
            }
            const auto& arcs = dp.arcs();
            if (arcs.size() > 1) {
              for (std::size_t i = 0; i < arcs.size(); ++i) {
                if (distance(x, arcs[i].start()) <= eps) {
                  const CircularArc& prev = arcs[(i + arcs.size() - 1) % arcs.size()];
                  return {x, {UnitVector::normalize(x - prev.center),
                              UnitVector::normalize(x - arcs[i].center)}};
                }
              }
            }
            for (const CircularArc& a : arcs) {
              const Point w = x - a.center;
              if (std::abs(w.norm() - a.radius) <= eps &&
                  a.covers_angle(std::atan2(w.y(), w.x()), eps / a.radius)) {
                return {x, {UnitVector::normalize(w)}};
              }
            }
            throw DomainError("point is not on the boundary");
          },
          [&](const ImplicitBody&) -> NormalCone {
            throw DomainError("normal cones need an exact body; use estimate_normal");
          }},
      body);
}

DiameterBounds diameter_bounds(const Body& body, const Tolerance& tol) {
  return std::visit(
      overloaded{
          [&](const ConvexPolygon& poly) {
            double d = 0.0;
            const auto& v = poly.vertices();
            for (std::size_t i = 0; i < v.size(); ++i) {
              for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, distance(v[i], v[j]));
            }
            return DiameterBounds{d, d};
          },
          [&](const DiskPolygon& dp) {
            if (dp.kind() == DiskPolygonKind::point) return DiameterBounds{0.0, 0.0};
            if (dp.kind() == DiskPolygonKind::disk) {
              return DiameterBounds{2.0 * dp.radius(), 2.0 * dp.radius()};
            }
            // Maximum width: on each interval of directions where the arcs
            // supporting u and -u are fixed, width(u) = 2R + <c_i - c_j, u>.
            const auto& arcs = dp.arcs();
            std::vector<double> breaks;
            for (const CircularArc& a : arcs) {
              breaks.push_back(wrap_angle(a.start_angle));
              breaks.push_back(wrap_angle(a.start_angle + kPi));
            }
            std::sort(breaks.begin(), breaks.end());
            auto covering = [&](double ang) -> const CircularArc& {
              for (const CircularArc& a : arcs) {
                if (a.covers_angle(ang)) return a;
              }
              return arcs.front();
            };
            double best = 0.0;
            for (std::size_t k = 0; k < breaks.size(); ++k) {
              const double a0 = breaks[k];
              double a1 = k + 1 < breaks.size() ? breaks[k + 1] : breaks[0] + 2.0 * kPi;
              if (a1 - a0 <= 0.0) continue;
              const double mid = 0.5 * (a0 + a1);
              const Point w = covering(mid).center - covering(mid + kPi).center;
              double m = std::max(w.dot(polar(a0)), w.dot(polar(a1)));
              if (w.norm() > 0.0) {
                const double off = wrap_angle(std::atan2(w.y(), w.x()) - a0);
                if (off <= a1 - a0) m = w.norm();
              }
              best = std::max(best, 2.0 * dp.radius() + m);
            }
            return DiameterBounds{best, best};
          },
          [&](const ImplicitBody& b) {
            std::vector<Point> pts;
            if (b.dim() == 2 && b.convex_claimed()) {
              Body view{b};
              BoundaryCurve curve(view, tol);
              constexpr int n = 720;
              for (int i = 0; i < n; ++i) pts.push_back(curve.at(static_cast<double>(i) / n));
            } else {
              SampleConfig cfg;
              cfg.points = b.dim() == 2 ? 64 : 12;
              pts = region_samples(Body{b}, cfg, tol).boundary;
            }
            double lower = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
              for (std::size_t j = i + 1; j < pts.size(); ++j) {
                lower = std::max(lower, distance(pts[i], pts[j]));
              }
            }
            return DiameterBounds{lower, distance(b.lo(), b.hi())};
          }},
      body);
}

double diameter(const Body& body, const Tolerance& tol) { return diameter_bounds(body, tol).lower; }

double body_resolution(const Body& body, const Tolerance& tol) {
  if (const auto* ib = std::get_if<ImplicitBody>(&body)) {
    return std::max(ib->resolution(), tol.abs_geom);
  }
  return tol.abs_geom;
}

UnitVector estimate_normal(const Body& body, const Point& x, const Tolerance& tol) {
  const auto* ib = std::get_if<ImplicitBody>(&body);
  if (ib == nullptr) return normal_cone(body, x, tol).bisector();
  const Point& ref = ib->reference();
  const UnitVector u = UnitVector::normalize(x - ref);
  const std::vector<Point> tangent_dirs = complement_basis(u);
  constexpr double eta = 1e-4;
  std::vector<Point> frame;
  for (const Point& b : tangent_dirs) {
    const Point dp = UnitVector::normalize(u.vec() + b * eta).vec();
    const Point dm = UnitVector::normalize(u.vec() - b * eta).vec();
    const Point bp = ref + dp * implicit_ray_exit(*ib, ref, dp);
    const Point bm = ref + dm * implicit_ray_exit(*ib, ref, dm);
    Point t = bp - bm;
    for (const Point& f : frame) t -= f * t.dot(f);
    const double n = t.norm();
    if (n > 0.0) frame.push_back(t / n);
  }
  Point normal = u.vec();
  for (const Point& f : frame) normal -= f * normal.dot(f);
  return UnitVector::normalize(normal);
}

// --- boundary curves -----------------------------------------------------------

BoundaryCurve::BoundaryCurve(const Body& body, const Tolerance& tol)
    : BoundaryCurve(body, Point::axis(dimension(body), 0), Point::axis(dimension(body), 1), tol) {}

BoundaryCurve::BoundaryCurve(const Body& body, const Point& e1, const Point& e2,
                             const Tolerance& tol)
    : body_(&body), tol_(tol), e1_(e1), e2_(e2) {
  if (const auto* poly = std::get_if<ConvexPolygon>(&body)) {
    const auto& v = poly->vertices();
    double acc = 0.0;
    cumulative_.push_back(0.0);
    if (v.size() >= 2) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        acc += distance(v[i], v[(i + 1) % v.size()]);
        cumulative_.push_back(acc);
      }
      for (double& c : cumulative_) c /= acc;
    }
  } else if (const auto* dp = std::get_if<DiskPolygon>(&body)) {
    double acc = 0.0;
    cumulative_.push_back(0.0);
    if (dp->kind() != DiskPolygonKind::point) {
      for (const CircularArc& a : dp->arcs()) {
        acc += a.length();
        cumulative_.push_back(acc);
      }
      for (double& c : cumulative_) c /= acc;
    }
  } else if (dimension(body) == 2) {
    e1_ = Point{1.0, 0.0};
    e2_ = Point{0.0, 1.0};
  }
}

Point BoundaryCurve::at(double t) const {
  t -= std::floor(t);
  auto locate = [&](double s, std::size_t n) {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - cumulative_.begin() - 1));
    k = std::min(k, n - 1);
    const double span = cumulative_[k + 1] - cumulative_[k];
    const double frac = span > 0.0 ? std::clamp((s - cumulative_[k]) / span, 0.0, 1.0) : 0.0;
    return std::pair{k, frac};
  };
  if (const auto* poly = std::get_if<ConvexPolygon>(body_)) {
    const auto& v = poly->vertices();
    if (v.size() == 1) return v[0];
    const auto [k, frac] = locate(t, v.size());
    const Point& a = v[k];
    const Point& b = v[(k + 1) % v.size()];
    return a + (b - a) * frac;
  }
  if (const auto* dp = std::get_if<DiskPolygon>(body_)) {
    if (dp->kind() == DiskPolygonKind::point) return dp->point();
    const auto [k, frac] = locate(t, dp->arcs().size());
    return dp->arcs()[k].at(frac);
  }
  const auto& ib = std::get<ImplicitBody>(*body_);
  const double ang = 2.0 * kPi * t;
  const Point dir = e1_ * std::cos(ang) + e2_ * std::sin(ang);
  return ib.reference() + dir * implicit_ray_exit(ib, ib.reference(), dir);
}

// --- region sampling -----------------------------------------------------------

RegionSamples region_samples(const Body& body, const SampleConfig& cfg, const Tolerance& tol,
                             const std::optional<Ball>& window) {
  const int d = dimension(body);
  auto [lo, hi] = bounding_box(body);
  if (window) {
    require_dim(body, window->center);
    for (int k = 0; k < d; ++k) {
      lo[k] = std::max(lo[k], window->center[k] - window->radius);
      hi[k] = std::min(hi[k], window->center[k] + window->radius);
    }
  }
  RegionSamples out;
  for (int k = 0; k < d; ++k) {
    if (hi[k] < lo[k]) return out;
  }
  auto inside = [&](const Point& p) {
    if (window && !window->contains(p, tol.abs_geom)) return false;
    return contains(body, p, tol);
  };

  // Bisection keeps points on the closed set itself, not within the tolerance band.
  const bool exact = is_exact(body);
  auto inside_exact = [&](const Point& p) {
    if (window && distance(p, window->center) > window->radius) return false;
    return exact ? signed_distance(body, p, tol) >= 0.0 : contains(body, p, tol);
  };

  int n = std::max(2, cfg.points);
  while (std::pow(static_cast<double>(n), d) > 262144.0 && n > 2) --n;
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) total *= static_cast<std::size_t>(n);

  auto node = [&](std::size_t flat) {
    Point p(d);
    for (int k = 0; k < d; ++k) {
      const auto i = static_cast<double>(flat % static_cast<std::size_t>(n));
      flat /= static_cast<std::size_t>(n);
      p[k] = hi[k] > lo[k] ? lo[k] + (hi[k] - lo[k]) * i / (n - 1) : lo[k];
    }
    return p;
  };
  std::vector<char> in(total);
  for (std::size_t f = 0; f < total; ++f) {
    const Point p = node(f);
    in[f] = inside(p) ? 1 : 0;
    if (in[f]) out.interior.push_back(p);
  }
  std::size_t stride = 1;
  for (int k = 0; k < d; ++k) {
    for (std::size_t f = 0; f < total; ++f) {
      if ((f / stride) % static_cast<std::size_t>(n) == static_cast<std::size_t>(n - 1)) continue;
      const std::size_t g = f + stride;
      if (in[f] == in[g]) continue;
      Point a = node(in[f] ? f : g);  // inside
      Point b = node(in[f] ? g : f);  // outside
      for (int it = 0; it < 60; ++it) {
        const Point m = midpoint(a, b);
        if (inside_exact(m)) {
          a = m;
        } else {
          b = m;
        }
      }
      out.boundary.push_back(a);
    }
    stride *= static_cast<std::size_t>(n);
  }

  std::vector<Point> features;
  if (const auto* poly = std::get_if<ConvexPolygon>(&body)) {
    features = poly->vertices();
  } else if (const auto* dp = std::get_if<DiskPolygon>(&body)) {
    features = dp->kind() == DiskPolygonKind::point ? std::vector<Point>{dp->point()} : dp->vertices();
  }
  if (d == 2 && is_convex(body)) {
    BoundaryCurve curve(body, tol);
    const int m = 4 * n;
    for (int i = 0; i < m; ++i) features.push_back(curve.at(static_cast<double>(i) / m));
  }
  for (const Point& f : features) {
    if (!window || window->contains(f, tol.abs_geom)) out.boundary.push_back(f);
  }
  return out;
}

}  // namespace scg
