#include "scg/fixtures.hpp"

#include <cmath>

namespace scg::fixtures {

namespace {

Fixture disk_family(const std::string& name, const std::vector<Point>& centers, double R) {
  const DiskPolygon dp = intersect_disks(centers, R);
  const auto [lo, hi] = bounding_box(dp);
  return {name, dp,
          [centers, R](const Point& p) {
            for (const Point& c : centers) {
              const double dx = p.x() - c.x(), dy = p.y() - c.y();
              if (dx * dx + dy * dy > R * R) return false;
            }
            return true;
          },
          lo, hi, true};
}

}  // namespace

Fixture disk(double r) {
  Fixture f = disk_family("disk", {Point{0.0, 0.0}}, r);
  f.lo = Point{-r, -r};
  f.hi = Point{r, r};
  return f;
}

Fixture unit_square() {
  return {"square",
          ConvexPolygon::from_vertices({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}),
          [](const Point& p) { return p.x() >= 0.0 && p.x() <= 1.0 && p.y() >= 0.0 && p.y() <= 1.0; },
          Point{0.0, 0.0},
          Point{1.0, 1.0},
          true};
}

Fixture ellipse() {
  auto in = [](const Point& p) {
    const double u = p.x() / kEllipseA, v = p.y() / kEllipseB;
    return u * u + v * v <= 1.0;
  };
  ImplicitBody::Options opts;
  opts.convex = true;
  const Point lo{-kEllipseA, -kEllipseB}, hi{kEllipseA, kEllipseB};
  return {"ellipse", ImplicitBody(in, lo, hi, opts), in, lo, hi, true};
}

Fixture tangent_disks() {
  auto in = [](const Point& p) {
    const double y2 = p.y() * p.y();
    const double a = p.x() + 1.0, b = p.x() - 1.0;
    return a * a + y2 <= 1.0 || b * b + y2 <= 1.0;
  };
  ImplicitBody::Options opts;
  opts.convex = false;
  const Point lo{-2.0, -1.0}, hi{2.0, 1.0};
  return {"tangent_disks", ImplicitBody(in, lo, hi, opts), in, lo, hi, false};
}

Fixture three_generator() {
  return disk_family("three_generator", {{0.0, 0.0}, {0.6, 0.0}, {0.3, 0.5}}, 1.0);
}

Fixture five_disk() {
  std::vector<Point> cs;
  for (int i = 0; i < 5; ++i) cs.push_back(polar(2.0 * kPi * i / 5.0) * 0.5);
  return disk_family("five_disk", cs, 1.0);
}

std::vector<Fixture> all() {
  return {disk(), unit_square(), ellipse(), tangent_disks(), three_generator(), five_disk()};
}

}  // namespace scg::fixtures
