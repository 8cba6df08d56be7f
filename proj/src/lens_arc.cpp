#include "scg/lens_arc.hpp"

#include <algorithm>
#include <cmath>

namespace scg {

std::pair<Point, Point> Lens::extreme_centers() const {
  if (kind_ != LensKind::proper || dim() != 2) {
    throw DomainError("extreme centers exist only for proper planar lenses");
  }
  return chord_circle_centers(x_, y_, r_);
}

Lens lens(const Point& x, const Point& y, double r, const Tolerance& tol) {
  require_same_dim(x, y);
  if (!(r > 0.0)) throw DomainError("lens radius must be positive");
  Lens out;
  out.x_ = x;
  out.y_ = y;
  out.r_ = r;
  const double len = distance(x, y);
  if (len == 0.0) {
    out.kind_ = LensKind::point;
  } else if (len > 2.0 * r + tol.abs_geom) {
    out.kind_ = LensKind::universe;
  } else if (len >= 2.0 * r - tol.abs_geom) {
    out.kind_ = LensKind::ball;
  } else {
    out.kind_ = LensKind::proper;
    if (x.dim() == 2) {
      const auto [left, right] = chord_circle_centers(x, y, r);
      const double sweep = 2.0 * std::asin(std::min(1.0, len / (2.0 * r)));
      auto angle = [](const Point& v) { return wrap_angle(std::atan2(v.y(), v.x())); };
      // Arc around `right` runs y -> x through the left side; arc around `left` runs x -> y.
      out.arcs_ = {CircularArc{right, r, angle(y - right), sweep},
                   CircularArc{left, r, angle(x - left), sweep}};
    }
  }
  return out;
}

bool lens_contains(const Lens& L, const Point& p, const Tolerance& tol) {
  require_same_dim(L.x(), p);
  switch (L.kind()) {
    case LensKind::universe:
      return true;
    case LensKind::point:
      return distance(p, L.x()) <= tol.abs_geom;
    case LensKind::ball:
      return L.ball().contains(p, tol.abs_geom);
    case LensKind::proper:
      break;
  }
  const Point m = midpoint(L.x(), L.y());
  const double half = distance(L.x(), L.y()) / 2.0;
  const Point axis = (L.y() - L.x()) / (2.0 * half);
  const double r = L.radius();
  const double h = std::sqrt(std::max(0.0, r * r - half * half));
  const Point w = p - m;
  const double axial = w.dot(axis);
  const double radial = (w - axis * axial).norm();
  // Farthest extreme center sits at distance h on the opposite side of the axis.
  return std::hypot(axial, radial + h) <= r + tol.abs_geom;
}

ShortArc short_arc(const Point& x, const Point& y, double r, const Point& bulge) {
  require_same_dim(x, y);
  require_same_dim(x, bulge);
  if (!(r > 0.0)) throw DomainError("arc radius must be positive");
  ShortArc a;
  a.x = x;
  a.y = y;
  a.r = r;
  if (x == y) {
    a.center = x;
    a.bulge = Point::zeros(x.dim());
    a.midpoint = x;
    return a;
  }
  const double len = distance(x, y);
  if (len > 2.0 * r) throw NoContainingBall("no short arc: chord longer than 2r", len / 2.0);
  const Point chord = (y - x) / len;
  Point w = bulge - chord * bulge.dot(chord);
  a.bulge = UnitVector::normalize(w).vec();
  const Point m = midpoint(x, y);
  const double h = std::sqrt(std::max(0.0, r * r - len * len / 4.0));
  a.center = m - a.bulge * h;
  a.midpoint = m + a.bulge * ball_modulus(r, std::min(len, 2.0 * r));
  return a;
}

std::pair<ShortArc, ShortArc> short_arcs(const Point& x, const Point& y, double r) {
  require_same_dim(x, y);
  if (x.dim() != 2) throw DimensionMismatch("short_arcs enumerates planar arcs; use short_arc");
  if (x == y) return {short_arc(x, y, r, Point{0.0, 1.0}), short_arc(x, y, r, Point{0.0, 1.0})};
  const Point n = perp_ccw(y - x);
  return {short_arc(x, y, r, n), short_arc(x, y, r, -n)};
}

std::vector<Point> arc_sample(const ShortArc& arc, int levels) {
  if (levels < 0) throw DomainError("levels must be nonnegative");
  if (levels > 24) throw DomainError("levels above 24 are not supported");
  const std::size_t count = (std::size_t{1} << levels) + 1;
  if (arc.singleton()) return std::vector<Point>(count, arc.x);
  std::vector<Point> pts(count);
  pts.front() = arc.x;
  pts.back() = arc.y;
  if (levels == 0) return pts;
  pts[count / 2] = arc.midpoint;
  for (std::size_t step = count / 2; step > 1; step /= 2) {
    for (std::size_t i = 0; i + step < count; i += step) {
      const Point m = midpoint(pts[i], pts[i + step]);
      pts[i + step / 2] = arc.center + UnitVector::normalize(m - arc.center).vec() * arc.r;
    }
  }
  return pts;
}

std::vector<Point> bulge_directions(const Point& x, const Point& y, int planes) {
  require_same_dim(x, y);
  const UnitVector u = UnitVector::normalize(y - x);
  if (x.dim() == 2) {
    const Point n = perp_ccw(u.vec());
    return {n, -n};
  }
  const int basis = x.dim() - 1;
  const int extra = std::max(0, planes - basis);
  const std::vector<UnitVector> dirs = perp_directions(u, extra);
  std::vector<Point> out;
  const int from_basis = std::min(planes, basis);
  for (int k = 0; k < 2 * from_basis; ++k) out.push_back(dirs[static_cast<std::size_t>(k)].vec());
  for (int k = 0; k < extra; ++k) {
    const Point& s = dirs[static_cast<std::size_t>(2 * basis + k)].vec();
    out.push_back(s);
    out.push_back(-s);
  }
  return out;
}

ArcPropertyResult arc_property(const Body& body, const Point& x, const Point& y, double r,
                               const ArcPropertyOptions& opts, const Tolerance& tol) {
  if (!(r > 0.0)) throw DomainError("arc radius must be positive");
  if (!contains(body, x, tol) || !contains(body, y, tol)) {
    throw DomainError("arc_property: both endpoints must belong to the body");
  }
  ArcPropertyResult res;
  const double len = distance(x, y);
  if (len > 2.0 * r) {
    res.vacuous = true;
    return res;
  }
  if (len == 0.0) return res;
  for (const Point& w : bulge_directions(x, y, opts.planes)) {
    const std::vector<Point> pts = arc_sample(short_arc(x, y, r, w), opts.levels);
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
      if (contains(body, pts[i], tol)) continue;
      res.holds = false;
      if (!res.witness || lex_less(pts[i], *res.witness)) res.witness = pts[i];
    }
  }
  return res;
}

}  // namespace scg
