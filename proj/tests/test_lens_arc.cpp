#include <cmath>

#include "doctest.h"
#include "scg/fixtures.hpp"
#include "scg/lens_arc.hpp"
#include "scg/sampling.hpp"

using namespace scg;

TEST_CASE("lens kinds") {
  CHECK(lens(Point{-2.0, 0.0}, Point{2.0, 0.0}, 1.0).kind() == LensKind::universe);
  const Lens b = lens(Point{-1.0, 0.0}, Point{1.0, 0.0}, 1.0);
  CHECK(b.kind() == LensKind::ball);
  CHECK(b.ball().center.norm() < 1e-15);
  CHECK(lens(Point{3.0, 4.0}, Point{3.0, 4.0}, 1.0).kind() == LensKind::point);
  CHECK_THROWS_AS(lens(Point{0.0, 0.0}, Point{1.0, 0.0}, 0.0), DomainError);
}

TEST_CASE("proper lens arcs and boundary point") {
  const Lens l = lens(Point{-0.5, 0.0}, Point{0.5, 0.0}, 1.0);
  REQUIRE(l.kind() == LensKind::proper);
  REQUIRE(l.boundary_arcs().size() == 2);
  for (const CircularArc& a : l.boundary_arcs()) {
    CHECK(std::abs(a.center.x()) < 1e-15);
    CHECK(std::abs(std::abs(a.center.y()) - std::sqrt(0.75)) < 1e-15);
    CHECK(a.radius == 1.0);
  }
  const Point top{0.0, 1.0 - std::sqrt(0.75)};
  CHECK(lens_contains(l, top));
  CHECK_FALSE(lens_contains(l, top + Point{0.0, 1e-6}));
}

TEST_CASE("lens_contains examples") {
  const Lens l = lens(Point{-0.5, 0.0}, Point{0.5, 0.0}, 1.0);
  CHECK(lens_contains(l, Point{0.0, 0.0}));
  CHECK_FALSE(lens_contains(l, Point{0.0, 0.2}));
  const Lens u = lens(Point{-2.0, 0.0}, Point{2.0, 0.0}, 1.0);
  CHECK(lens_contains(u, Point{1e6, 1e6}));
  CHECK_THROWS_AS(lens_contains(l, Point{0.0, 0.0, 0.0}), DimensionMismatch);
}

TEST_CASE("lens membership is symmetric and shrinks as r grows") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    const Point x = sample_box(Point{-1.0, -1.0}, Point{1.0, 1.0}, 2, 1, i);
    const Point y = sample_box(Point{-1.0, -1.0}, Point{1.0, 1.0}, 2, 2, i);
    const double r = 0.6 * distance(x, y) + 0.1;
    const Lens a = lens(x, y, r), b = lens(y, x, r), wide = lens(x, y, 2.0 * r);
    for (std::uint64_t j = 0; j < 300; ++j) {
      const Point p = sample_box(Point{-2.0, -2.0}, Point{2.0, 2.0}, 2, 3 + i, j);
      CHECK(lens_contains(a, p) == lens_contains(b, p));
      if (lens_contains(wide, p)) CHECK(lens_contains(a, p));
    }
  }
}

TEST_CASE("solid lens in three dimensions") {
  const Lens l = lens(Point{0.0, 0.0, -0.5}, Point{0.0, 0.0, 0.5}, 1.0);
  const double top = 1.0 - std::sqrt(0.75);
  for (int k = 0; k < 12; ++k) {
    const double phi = 2.0 * kPi * k / 12.0;
    CHECK(lens_contains(l, Point{top * std::cos(phi), top * std::sin(phi), 0.0}));
    CHECK_FALSE(lens_contains(l, Point{(top + 1e-6) * std::cos(phi), (top + 1e-6) * std::sin(phi), 0.0}));
  }
}

TEST_CASE("short_arcs midpoints") {
  const auto [left, right] = short_arcs(Point{-0.5, 0.0}, Point{0.5, 0.0}, 1.0);
  const double m = 1.0 - std::sqrt(0.75);
  CHECK(distance(left.midpoint, Point{0.0, m}) < 1e-12);
  CHECK(distance(right.midpoint, Point{0.0, -m}) < 1e-12);

  const auto [top, bottom] = short_arcs(Point{-1.0, 0.0}, Point{1.0, 0.0}, 1.0);
  CHECK(distance(top.midpoint, Point{0.0, 1.0}) < 1e-12);
  CHECK(distance(bottom.midpoint, Point{0.0, -1.0}) < 1e-12);

  const auto [s, t] = short_arcs(Point{3.0, 4.0}, Point{3.0, 4.0}, 0.7);
  CHECK(s.singleton());
  CHECK(s.midpoint == Point{3.0, 4.0});
  CHECK(t.singleton());
  CHECK_THROWS_AS(short_arcs(Point{-1.0, 0.0}, Point{1.0, 0.0}, 0.9), NoContainingBall);
}

TEST_CASE("short arc midpoint offset equals the ball modulus") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Point x = sample_box(Point{-1.0, -1.0}, Point{1.0, 1.0}, 4, 1, i);
    const Point y = sample_box(Point{-1.0, -1.0}, Point{1.0, 1.0}, 4, 2, i);
    const double r = 0.5 * distance(x, y) * (1.0 + 3.0 * counter_uniform(4, 3, i));
    const auto [a, b] = short_arcs(x, y, r);
    for (const ShortArc& s : {a, b}) {
      CHECK(std::abs(distance(s.midpoint, midpoint(x, y)) - ball_modulus(r, distance(x, y))) < 1e-9);
      CHECK(std::abs((x - y).dot(s.midpoint - midpoint(x, y))) < 1e-9);
    }
  }
}

TEST_CASE("arc_sample") {
  const ShortArc semi = short_arcs(Point{-1.0, 0.0}, Point{1.0, 0.0}, 1.0).first;
  const auto one = arc_sample(semi, 1);
  REQUIRE(one.size() == 3);
  CHECK(one[0] == Point{-1.0, 0.0});
  CHECK(distance(one[1], Point{0.0, 1.0}) < 1e-12);
  CHECK(one[2] == Point{1.0, 0.0});

  const auto zero = arc_sample(semi, 0);
  REQUIRE(zero.size() == 2);

  const auto two = arc_sample(semi, 2);
  REQUIRE(two.size() == 5);
  const double h = std::sqrt(2.0) / 2.0;
  CHECK(distance(two[1], Point{-h, h}) < 1e-12);
  CHECK(distance(two[3], Point{h, h}) < 1e-12);
  for (const Point& p : two) CHECK(std::abs(p.norm() - 1.0) < 1e-12);
  CHECK_THROWS_AS(arc_sample(semi, -1), DomainError);
}

TEST_CASE("arc_sample gaps halve per level") {
  const ShortArc arc = short_arcs(Point{-0.8, 0.1}, Point{0.7, -0.3}, 1.3).second;
  const double len2 = (arc.x - arc.y).norm2();
  double prev = len2;
  for (int level = 1; level <= 10; ++level) {
    const auto pts = arc_sample(arc, level);
    double gap2 = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) gap2 = std::max(gap2, (pts[i] - pts[i - 1]).norm2());
    CHECK(gap2 <= len2 / std::ldexp(1.0, level) + 1e-15);
    CHECK(gap2 / prev <= 0.5 + 1e-6);
    for (const Point& p : pts) CHECK(std::abs(distance(p, arc.center) - 1.3) < 1e-9);
    prev = gap2;
  }
}

TEST_CASE("arc_property examples") {
  const auto disk = fixtures::disk(1.0);
  CHECK(arc_property(disk.body, Point{-0.5, 0.0}, Point{0.5, 0.0}, 1.0).holds);
  const auto square = fixtures::unit_square();
  const ArcPropertyResult sq = arc_property(square.body, Point{0.1, 0.0}, Point{0.9, 0.0}, 10.0);
  CHECK_FALSE(sq.holds);
  REQUIRE(sq.witness.has_value());
  CHECK(sq.witness->y() < 0.0);
  const ArcPropertyResult vac = arc_property(disk.body, Point{-1.0, 0.0}, Point{1.0, 0.0}, 0.9);
  CHECK(vac.holds);
  CHECK(vac.vacuous);
  CHECK_THROWS_AS(arc_property(disk.body, Point{2.0, 0.0}, Point{0.0, 0.0}, 1.0), DomainError);
}

TEST_CASE("arc property holds on boundary pairs of disk-polygons with R <= r") {
  for (const auto& f : {fixtures::three_generator(), fixtures::five_disk()}) {
    const auto& dp = std::get<DiskPolygon>(f.body);
    std::vector<Point> pts = dp.vertices();
    for (const CircularArc& a : dp.arcs()) {
      for (double s : {0.2, 0.5, 0.8}) pts.push_back(a.at(s));
    }
    for (double r : {1.0, 1.5}) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          CHECK(arc_property(f.body, pts[i], pts[j], r, {8, 8}).holds);
        }
      }
    }
  }
}

TEST_CASE("arc property in three dimensions") {
  ImplicitBody::Options opts;
  opts.convex = true;
  const Body ball3(ImplicitBody([](const Point& p) { return p.norm2() <= 1.0; }, Point{-1.0, -1.0, -1.0},
                                Point{1.0, 1.0, 1.0}, opts));
  CHECK(arc_property(ball3, Point{-0.5, 0.0, 0.0}, Point{0.5, 0.0, 0.0}, 1.0).holds);
  const Body cube(ImplicitBody(
      [](const Point& p) { return std::abs(p[0]) <= 1.0 && std::abs(p[1]) <= 1.0 && std::abs(p[2]) <= 1.0; },
      Point{-1.0, -1.0, -1.0}, Point{1.0, 1.0, 1.0}, opts));
  CHECK_FALSE(arc_property(cube, Point{-0.5, 1.0, 0.0}, Point{0.5, 1.0, 0.0}, 2.0).holds);
}
