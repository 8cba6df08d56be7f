#include <cmath>

#include "doctest.h"
#include "scg/fixtures.hpp"
#include "scg/oracles.hpp"
#include "scg/sampling.hpp"

using namespace scg;

TEST_CASE("brute_delta examples") {
  const auto disk = fixtures::disk(1.0);
  const ModulusSample d = brute_delta(disk.body, 1.0);
  REQUIRE(d.finite());
  CHECK(std::abs(d.delta - 0.1340) < 0.02);
  const ModulusSample sq = brute_delta(fixtures::unit_square().body, 0.5);
  REQUIRE(sq.finite());
  CHECK(std::abs(sq.delta) < 0.02);
  CHECK(brute_delta(disk.body, 3.0).sentinel == Sentinel::plus_infinity);
  CHECK_THROWS_AS(brute_delta(disk.body, 0.0), DomainError);
}

TEST_CASE("brute_delta on a raw predicate matches the body overload") {
  const auto f = fixtures::three_generator();
  const ModulusSample a = brute_delta(f.raw, f.lo, f.hi, 0.5);
  const ModulusSample b = brute_delta(f.body, 0.5);
  CHECK(std::abs(a.delta - b.delta) < 0.02);
}

TEST_CASE("brute_lens examples") {
  const Point x{-0.5, 0.0}, y{0.5, 0.0};
  for (int n : {64, 256, 2048}) {
    BruteConfig cfg;
    cfg.circle_samples = n;
    const SampledBallIntersection l = brute_lens(x, y, 1.0, cfg);
    CHECK(l.contains(Point{0.0, 0.0}));
    CHECK_FALSE(l.contains(Point{0.0, 0.2}));
    CHECK(l.contains(Point{0.0, 0.1}));
  }
  CHECK_THROWS_AS(brute_lens(Point{-2.0, 0.0}, Point{2.0, 0.0}, 1.0), NoContainingBall);
}

TEST_CASE("sampled centers contain every input point") {
  std::vector<Point> pts;
  for (std::uint64_t i = 0; i < 8; ++i) pts.push_back(sample_box(Point{-0.4, -0.4}, Point{0.4, 0.4}, 3, 0, i));
  const SampledBallIntersection h = brute_hull(pts, 1.0);
  CHECK_FALSE(h.centers().empty());
  for (const Point& c : h.centers()) {
    for (const Point& p : pts) CHECK(distance(c, p) <= 1.0 + 1e-12);
  }
}

TEST_CASE("brute_hull_membership examples") {
  const std::vector<Point> two{{-1.0, 0.0}, {1.0, 0.0}};
  CHECK(brute_hull_membership(two, 1.0, Point{0.0, 0.5}));
  CHECK_FALSE(brute_hull_membership(two, 1.0, Point{0.0, 1.01}));
  const std::vector<Point> corners{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  CHECK(brute_hull_membership(corners, 1.0, Point{0.5, 0.5}));
  CHECK_THROWS_AS(brute_hull_membership(std::vector<Point>{{-2.0, 0.0}, {2.0, 0.0}}, 1.0, Point{0.0, 0.0}),
                  NoContainingBall);
}

TEST_CASE("grid_body examples") {
  const GridBody g = grid_body([](const Point& p) { return p.norm2() <= 1.0; }, Point{-1.0, -1.0},
                               Point{1.0, 1.0}, 0.01);
  CHECK(std::abs(g.area() - kPi) < 0.01 * kPi);
  CHECK(g.contains(Point{0.0, 0.0}));
  CHECK_FALSE(g.contains(Point{0.95, 0.95}));
  CHECK(std::abs(g.boundary_distance(Point{0.0, 0.0}) - 1.0) < 0.02);
  CHECK_THROWS_AS(grid_body([](const Point&) { return false; }, Point{0.0, 0.0}, Point{1.0, 1.0}, 0.1),
                  EmptyBody);
  CHECK_THROWS_AS(grid_body([](const Point&) { return true; }, Point{0.0, 0.0}, Point{1.0, 1.0}, 1e-5, 1000),
                  BudgetExceeded);
  CHECK_THROWS_AS(grid_body([](const Point&) { return true; }, Point{0.0, 0.0}, Point{1.0, 1.0}, 0.0),
                  DomainError);
}

TEST_CASE("grid half-plane distance") {
  // x <= 0 clipped to [-1, 1]^2: interior points at depth t have distance t.
  const GridBody g = grid_body([](const Point& p) { return p.x() <= 0.0; }, Point{-1.0, -1.0}, Point{1.0, 1.0},
                               0.01);
  for (double t : {0.1, 0.3, 0.5}) {
    CHECK(std::abs(g.boundary_distance(Point{-t, 0.0}) - t) <= 0.01 + 1e-12);
  }
  CHECK(g.boundary_distance(Point{0.3, 0.0}) < 0.0);
}

TEST_CASE("grid words round-trip") {
  const GridBody g = grid_body(fixtures::five_disk().raw, Point{-1.0, -1.0}, Point{1.0, 1.0}, 0.05);
  const GridBody back = GridBody::from_bits(g.lo(), g.h(), g.counts(), g.words());
  CHECK(back.occupied_count() == g.occupied_count());
  for (std::size_t i = 0; i < g.cell_count(); ++i) CHECK(back.occupied(i) == g.occupied(i));
}

TEST_CASE("oracles are deterministic across seeds and policies") {
  BruteConfig a, b;
  a.seed = b.seed = 21;
  a.policy = ExecPolicy::serial;
  b.policy = ExecPolicy::parallel;
  const std::vector<Point> pts{{0.0, 0.0}, {0.5, 0.1}, {0.2, 0.6}};
  const SampledBallIntersection ha = brute_hull(pts, 1.0, a), hb = brute_hull(pts, 1.0, b);
  CHECK(ha.centers() == hb.centers());
  const ModulusSample da = brute_delta(fixtures::disk(1.0).body, 0.7, a);
  const ModulusSample db = brute_delta(fixtures::disk(1.0).body, 0.7, b);
  CHECK(da.delta == db.delta);
  CHECK(da.witness == db.witness);
}
