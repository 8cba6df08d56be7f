#include <cmath>

#include "doctest.h"
#include "scg/bodies.hpp"
#include "scg/fixtures.hpp"

using namespace scg;

namespace {
const Body kDisk = intersect_disks(std::vector<Point>{{0.0, 0.0}}, 1.0);
const Body kSquare = ConvexPolygon::from_vertices({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
}  // namespace

TEST_CASE("contains") {
  CHECK(contains(kDisk, Point{0.0, 0.0}));
  CHECK(contains(kDisk, Point{1.0, 0.0}));
  CHECK_FALSE(contains(kDisk, Point{1.01, 0.0}));
  CHECK(contains(kSquare, Point{1.0, 0.5}));
  CHECK_FALSE(contains(kSquare, Point{1.0 + 1e-6, 0.5}));
  CHECK_THROWS_AS(contains(kDisk, Point{0.0, 0.0, 0.0}), DimensionMismatch);
}

TEST_CASE("boundary_distance") {
  CHECK(boundary_distance(kDisk, Point{0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(boundary_distance(kSquare, Point{0.5, 0.5}) == doctest::Approx(0.5));
  CHECK(boundary_distance(kDisk, Point{2.0, 0.0}) == doctest::Approx(-1.0));
  CHECK(boundary_distance(kDisk, polar(0.7)) == 0.0);
  CHECK(boundary_distance(kSquare, Point{0.3, 1e-10}) == 0.0);
  CHECK(boundary_distance(kSquare, Point{2.0, 2.0}) == doctest::Approx(-std::sqrt(2.0)));
}

TEST_CASE("boundary_distance of an implicit body tracks the formula") {
  const auto f = fixtures::tangent_disks();
  for (double x : {-1.5, -1.0, -0.3, 0.6}) {
    const Point p{x, 0.2};
    const double exact = std::max(1.0 - distance(p, Point{-1.0, 0.0}), 1.0 - distance(p, Point{1.0, 0.0}));
    CHECK(std::abs(boundary_distance(f.body, p) - exact) < 1e-6);
  }
}

TEST_CASE("normal_cone") {
  const NormalCone a = normal_cone(kDisk, Point{1.0, 0.0});
  REQUIRE(a.extreme_rays.size() == 1);
  CHECK(distance(a.extreme_rays[0].vec(), Point{1.0, 0.0}) < 1e-12);

  const NormalCone b = normal_cone(kSquare, Point{1.0, 1.0});
  REQUIRE(b.extreme_rays.size() == 2);
  bool has_x = false, has_y = false;
  for (const UnitVector& v : b.extreme_rays) {
    has_x = has_x || distance(v.vec(), Point{1.0, 0.0}) < 1e-12;
    has_y = has_y || distance(v.vec(), Point{0.0, 1.0}) < 1e-12;
  }
  CHECK((has_x && has_y));
  CHECK(distance(b.bisector().vec(), Point{std::sqrt(0.5), std::sqrt(0.5)}) < 1e-12);

  const NormalCone c = normal_cone(kSquare, Point{0.5, 0.0});
  REQUIRE(c.extreme_rays.size() == 1);
  CHECK(distance(c.extreme_rays[0].vec(), Point{0.0, -1.0}) < 1e-12);

  CHECK_THROWS_AS(normal_cone(kSquare, Point{0.5, 0.5}), DomainError);
}

TEST_CASE("normal cone rays are outer normals") {
  const auto f = fixtures::five_disk();
  const auto& dp = std::get<DiskPolygon>(f.body);
  std::vector<Point> probes = dp.vertices();
  for (const CircularArc& a : dp.arcs()) probes.push_back(a.at(0.4));
  const double tol = 1e-9 * diameter(f.body);
  for (const Point& x : probes) {
    const NormalCone cone = normal_cone(f.body, x);
    for (const UnitVector& v : cone.extreme_rays) {
      for (const Point& y : probes) CHECK(v.vec().dot(y - x) <= tol);
      CHECK(is_outer_normal(f.body, x, v, tol));
    }
  }
}

TEST_CASE("intersect_disks examples") {
  const DiskPolygon one = intersect_disks(std::vector<Point>{{0.0, 0.0}}, 1.0);
  CHECK(one.kind() == DiskPolygonKind::disk);
  REQUIRE(one.arcs().size() == 1);
  CHECK(one.arcs()[0].full_circle());

  const DiskPolygon tangent = intersect_disks(std::vector<Point>{{-1.0, 0.0}, {1.0, 0.0}}, 1.0);
  CHECK(tangent.kind() == DiskPolygonKind::point);
  CHECK(tangent.point().norm() < 1e-12);

  const std::vector<Point> lens_centers{{-0.5, 0.0}, {0.5, 0.0}};
  const DiskPolygon ln = intersect_disks(lens_centers, 1.0);
  CHECK(ln.kind() == DiskPolygonKind::lens);
  REQUIRE(ln.arcs().size() == 2);
  for (const CircularArc& a : ln.arcs()) CHECK(std::abs(std::abs(a.center.x()) - 0.5) < 1e-15);
  int mismatches = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const Point p = sample_box(Point{-1.0, -1.0}, Point{1.0, 1.0}, 0, 1, i);
    const bool raw = distance(p, lens_centers[0]) <= 1.0 && distance(p, lens_centers[1]) <= 1.0;
    if (raw != contains(Body(ln), p) && std::abs(boundary_distance(Body(ln), p)) > 1e-9) ++mismatches;
  }
  CHECK(mismatches == 0);

  CHECK_THROWS_AS(intersect_disks(std::vector<Point>{{-2.0, 0.0}, {2.0, 0.0}}, 1.0), Infeasible);
}

TEST_CASE("disk-polygon membership matches its generators") {
  for (const auto& f : {fixtures::three_generator(), fixtures::five_disk()}) {
    const auto& dp = std::get<DiskPolygon>(f.body);
    for (std::uint64_t i = 0; i < 5000; ++i) {
      const Point p = sample_box(f.lo - Point{0.2, 0.2}, f.hi + Point{0.2, 0.2}, 1, 2, i);
      bool all = true;
      for (const Point& c : dp.centers()) all = all && distance(p, c) <= dp.radius() + 1e-9;
      CHECK(contains(f.body, p) == all);
    }
    // Consecutive arcs share endpoints.
    for (std::size_t i = 0; i < dp.arcs().size(); ++i) {
      const CircularArc& a = dp.arcs()[i];
      const CircularArc& b = dp.arcs()[(i + 1) % dp.arcs().size()];
      CHECK(distance(a.end(), b.start()) < 1e-9);
    }
  }
}

TEST_CASE("intersect_disks ignores duplicate centers") {
  std::vector<Point> cs{{0.0, 0.0}, {0.6, 0.0}, {0.3, 0.5}};
  const DiskPolygon a = intersect_disks(cs, 1.0);
  cs.push_back(cs[1]);
  cs.push_back(cs[0]);
  const DiskPolygon b = intersect_disks(cs, 1.0);
  REQUIRE(a.arcs().size() == b.arcs().size());
  for (std::size_t i = 0; i < a.arcs().size(); ++i) {
    CHECK(a.arcs()[i].center == b.arcs()[i].center);
    CHECK(a.arcs()[i].start_angle == b.arcs()[i].start_angle);
    CHECK(a.arcs()[i].sweep == b.arcs()[i].sweep);
  }
}

TEST_CASE("diameter") {
  CHECK(diameter(kDisk) == doctest::Approx(2.0));
  CHECK(diameter(kSquare) == doctest::Approx(std::sqrt(2.0)));
  CHECK(diameter(ConvexPolygon::from_vertices({{0.0, 0.0}, {3.0, 0.0}})) == doctest::Approx(3.0));
  const auto bounds = diameter_bounds(fixtures::ellipse().body);
  CHECK(bounds.lower <= 4.0 + 1e-9);
  CHECK(bounds.upper >= 4.0);
  CHECK(bounds.lower > 3.99);
}

TEST_CASE("polygon construction") {
  const ConvexPolygon p = ConvexPolygon::from_vertices({{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}});
  CHECK(p.size() == 4);
  const ConvexPolygon collinear = ConvexPolygon::from_vertices({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
  CHECK(collinear.is_segment());
  CHECK(ConvexPolygon::from_vertices({{1.0, 1.0}}).is_point());
  CHECK_THROWS_AS(ConvexPolygon::from_vertices({{0.0, 0.0}, {1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}}), DomainError);
  const std::vector<Point> cloud{{0.0, 0.0}, {2.0, 0.0}, {1.0, 0.5}, {2.0, 2.0}, {0.0, 2.0}, {1.0, 1.0}};
  CHECK(ConvexPolygon::hull_of(cloud).size() == 4);
}

TEST_CASE("implicit bodies") {
  CHECK_THROWS_AS(ImplicitBody([](const Point&) { return false; }, Point{0.0, 0.0}, Point{1.0, 1.0}, {}),
                  EmptyBody);
  const auto f = fixtures::ellipse();
  const auto& ib = std::get<ImplicitBody>(f.body);
  CHECK(ib.convex_claimed());
  CHECK(ib.member(ib.reference()));
  CHECK(ray_exit(f.body, Point{0.0, 0.0}, Point{1.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("boundary curve traces the boundary") {
  for (const auto& f : fixtures::all()) {
    if (!is_convex(f.body)) continue;
    const BoundaryCurve curve(f.body);
    for (int i = 0; i < 64; ++i) {
      const Point p = curve.at(i / 64.0);
      CHECK(std::abs(signed_distance(f.body, p)) < 1e-6);
    }
  }
}
