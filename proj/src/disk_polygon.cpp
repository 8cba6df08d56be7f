// Intersection of congruent disks.
//
// For congruent disks, the part of circle i inside disk j is a single arc of
// half-angle acos(d_ij / 2R) <= pi/2 around the direction c_j - c_i. Two such
// arcs intersect in at most one component, so the boundary contribution of
// circle i is one angular interval, computed by O(n) successive
// intersections (O(n^2) overall). Feasibility and tangency are decided
// beforehand from the minimal enclosing ball of the centers: the
// intersection is nonempty iff that ball has radius <= R, and it is a single
// point when the radius equals R.

#include <algorithm>
#include <cmath>
#include <optional>

#include "scg/bodies.hpp"

namespace scg {

namespace {

struct AngularInterval {
  double start = 0.0;
  double length = 2.0 * kPi;
};

std::optional<AngularInterval> intersect(const AngularInterval& a, const AngularInterval& b) {
  if (a.length >= 2.0 * kPi) return b;
  if (b.length >= 2.0 * kPi) return a;
  const double u = wrap_angle(b.start - a.start);
  const double lo1 = std::max(0.0, u);
  const double hi1 = std::min(a.length, u + b.length);
  const double lo2 = std::max(0.0, u - 2.0 * kPi);
  const double hi2 = std::min(a.length, u - 2.0 * kPi + b.length);
  const double len1 = hi1 - lo1;
  const double len2 = hi2 - lo2;
  if (len1 < 0.0 && len2 < 0.0) return std::nullopt;
  if (len1 >= len2) return AngularInterval{wrap_angle(a.start + lo1), len1};
  return AngularInterval{wrap_angle(a.start + lo2), len2};
}

std::vector<Point> dedupe(std::span<const Point> centers, double tol) {
  std::vector<Point> out;
  for (const Point& c : centers) {
    if (c.dim() != 2) throw DimensionMismatch("intersect_disks is two-dimensional");
    if (!c.finite()) throw DomainError("non-finite disk center");
    const bool dup = std::any_of(out.begin(), out.end(),
                                 [&](const Point& o) { return distance(o, c) <= tol; });
    if (!dup) out.push_back(c);
  }
  return out;
}

}  // namespace

DiskPolygon DiskPolygon::singleton(const Point& p, double radius) {
  if (p.dim() != 2) throw DimensionMismatch("disk-polygons are two-dimensional");
  if (!(radius > 0.0)) throw DomainError("disk-polygon radius must be positive");
  DiskPolygon out;
  out.kind_ = DiskPolygonKind::point;
  out.radius_ = radius;
  out.point_ = p;
  out.centers_ = {p};
  return out;
}

std::vector<Point> DiskPolygon::vertices() const {
  std::vector<Point> out;
  if (kind_ == DiskPolygonKind::point || kind_ == DiskPolygonKind::disk) return out;
  out.reserve(arcs_.size());
  for (const CircularArc& a : arcs_) out.push_back(a.start());
  return out;
}

DiskPolygon intersect_disks(std::span<const Point> centers, double radius, const Tolerance& tol) {
  if (centers.empty()) throw DomainError("intersect_disks needs at least one center");
  if (!(radius > 0.0)) throw DomainError("disk radius must be positive");
  const std::vector<Point> cs = dedupe(centers, tol.abs_geom);

  DiskPolygon out;
  out.radius_ = radius;
  if (cs.size() == 1) {
    out.kind_ = DiskPolygonKind::disk;
    out.centers_ = cs;
    out.arcs_ = {CircularArc{cs[0], radius, 0.0, 2.0 * kPi}};
    return out;
  }

  const Ball meb = min_enclosing_ball(cs);
  if (meb.radius > radius + tol.abs_geom) {
    throw Infeasible("disks have an empty intersection", meb.radius);
  }
  if (meb.radius >= radius - tol.abs_geom) {
    return DiskPolygon::singleton(meb.center, radius);
  }

  struct Piece {
    std::size_t generator;
    AngularInterval interval;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::optional<AngularInterval> acc = AngularInterval{};
    for (std::size_t j = 0; j < cs.size() && acc; ++j) {
      if (i == j) continue;
      const Point d = cs[j] - cs[i];
      const double len = d.norm();
      const double half = std::atan2(std::sqrt(std::max(0.0, radius * radius - len * len / 4.0)),
                                     len / 2.0);
      const double dir = std::atan2(d.y(), d.x());
      acc = intersect(*acc, AngularInterval{wrap_angle(dir - half), 2.0 * half});
    }
    if (acc && acc->length * radius > tol.rel_geom * std::max(1.0, radius)) {
      pieces.push_back({i, *acc});
    }
  }
  if (pieces.empty()) return DiskPolygon::singleton(meb.center, radius);

  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return a.interval.start < b.interval.start;
  });
  for (const Piece& p : pieces) {
    out.centers_.push_back(cs[p.generator]);
    out.arcs_.push_back(CircularArc{cs[p.generator], radius, p.interval.start,
                                    std::min(p.interval.length, 2.0 * kPi)});
  }
  if (out.arcs_.size() == 1) {
    out.kind_ = DiskPolygonKind::disk;
    out.arcs_[0].start_angle = 0.0;
    out.arcs_[0].sweep = 2.0 * kPi;
  } else {
    out.kind_ = out.arcs_.size() == 2 ? DiskPolygonKind::lens : DiskPolygonKind::general;
  }
  return out;
}

}  // namespace scg
