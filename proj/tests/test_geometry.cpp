#include <cmath>

#include "doctest.h"
#include "scg/geometry.hpp"
#include "scg/sampling.hpp"

using namespace scg;

TEST_CASE("ball_modulus closed values") {
  CHECK(ball_modulus(1.0, 0.0) == 0.0);
  CHECK(ball_modulus(1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ball_modulus(1.0, 1.0) == doctest::Approx(1.0 - std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(ball_modulus(1.0, -0.1), DomainError);
  CHECK_THROWS_AS(ball_modulus(1.0, 2.1), DomainError);
  CHECK_THROWS_AS(ball_modulus(0.0, 0.1), DomainError);
}

TEST_CASE("ball_modulus is monotone in eps and nonincreasing in r") {
  for (int i = 1; i <= 30; ++i) {
    const double r = 0.05 * i;
    double prev = -1.0;
    for (int j = 0; j <= 40; ++j) {
      const double eps = 2.0 * r * j / 40.0;
      const double v = ball_modulus(r, eps);
      CHECK(v >= prev);
      CHECK(v >= 0.0);
      CHECK(v <= r);
      prev = v;
      if (eps <= 2.0 * (r - 0.05) && r > 0.05) CHECK(ball_modulus(r - 0.05, eps) >= v);
    }
  }
}

TEST_CASE("ball_modulus ratio stays above the limit constant") {
  for (double r : {0.3, 1.0, 7.0}) {
    for (int j = 1; j <= 50; ++j) {
      const double eps = 2.0 * r * j / 50.0;
      CHECK(ball_modulus(r, eps) / (eps * eps) > ball_limit_constant(r));
    }
  }
}

TEST_CASE("ball_limit_constant") {
  CHECK(ball_limit_constant(1.0) == 0.125);
  CHECK(ball_limit_constant(2.0) == 0.0625);
  CHECK(ball_limit_constant(0.125) == 1.0);
  CHECK_THROWS_AS(ball_limit_constant(0.0), DomainError);
  CHECK_THROWS_AS(ball_limit_constant(-1.0), DomainError);
}

TEST_CASE("chord_circle_centers examples") {
  auto [a, b] = chord_circle_centers(Point{-1.0, 0.0}, Point{1.0, 0.0}, 1.0);
  CHECK(a.norm() < 1e-12);
  CHECK(b.norm() < 1e-12);

  auto [c, d] = chord_circle_centers(Point{-0.5, 0.0}, Point{0.5, 0.0}, 1.0);
  CHECK(std::abs(c.x()) < 1e-12);
  CHECK(std::abs(std::abs(c.y()) - std::sqrt(0.75)) < 1e-12);
  CHECK(c.y() == doctest::Approx(-d.y()));

  const Point x{0.0, 0.0}, y{0.0, 1.0};
  auto [e, f] = chord_circle_centers(x, y, 1.0);
  for (const Point& cc : {e, f}) {
    CHECK(std::abs(distance(cc, x) - 1.0) < 1e-12);
    CHECK(std::abs(distance(cc, y) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(cc.x()) - std::sqrt(0.75)) < 1e-12);
    CHECK(cc.y() == doctest::Approx(0.5));
  }
  // The first center lies to the left of the chord x -> y.
  CHECK(cross2(y - x, e - x) > 0.0);

  CHECK_THROWS_AS(chord_circle_centers(x, x, 1.0), DegenerateChord);
  CHECK_THROWS_AS(chord_circle_centers(Point{-2.0, 0.0}, Point{2.0, 0.0}, 1.0), NoContainingBall);
}

TEST_CASE("chord_circle_centers are symmetric about the chord midpoint") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Point x = sample_box(Point{-1.0, -1.0}, Point{1.0, 1.0}, 3, 1, i);
    const Point y = sample_box(Point{-1.0, -1.0}, Point{1.0, 1.0}, 3, 2, i);
    const double r = 0.5 * distance(x, y) + 2.0 * counter_uniform(3, 3, i);
    auto [a, b] = chord_circle_centers(x, y, r);
    CHECK(distance(a + b, x + y) < 1e-9);
    CHECK(std::abs(distance(a, x) - r) < 1e-9);
    CHECK(std::abs(distance(b, y) - r) < 1e-9);
  }
}

TEST_CASE("perp_directions") {
  auto p = perp_directions(UnitVector::normalize(Point{1.0, 0.0}));
  REQUIRE(p.size() == 2);
  CHECK(p[0].vec() == Point{0.0, 1.0});
  CHECK(p[1].vec() == Point{0.0, -1.0});

  auto q = perp_directions(UnitVector::normalize(Point{0.0, 1.0}));
  REQUIRE(q.size() == 2);
  CHECK(std::abs(std::abs(q[0][0]) - 1.0) < 1e-15);
  CHECK(q[0].vec() == -q[1].vec());

  auto s = perp_directions(UnitVector::normalize(Point{1.0, 0.0, 0.0}));
  REQUIRE(s.size() == 4);
  CHECK(distance(s[0].vec(), Point{0.0, 1.0, 0.0}) < 1e-15);
  CHECK(distance(s[1].vec(), Point{0.0, -1.0, 0.0}) < 1e-15);
  CHECK(distance(s[2].vec(), Point{0.0, 0.0, 1.0}) < 1e-15);
  CHECK(distance(s[3].vec(), Point{0.0, 0.0, -1.0}) < 1e-15);

  CHECK_THROWS_AS(UnitVector::normalize(Point{0.0, 0.0}), DomainError);
}

TEST_CASE("perp_directions are orthogonal unit vectors in higher dimension") {
  for (int d : {3, 5, 8}) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      const UnitVector u = UnitVector::normalize(sample_sphere(d, 5, 0, i));
      const auto vs = perp_directions(u, 12);
      CHECK(vs.size() == static_cast<std::size_t>(2 * (d - 1) + 12));
      for (const UnitVector& v : vs) {
        CHECK(std::abs(v.vec().dot(u)) < 1e-12);
        CHECK(std::abs(v.vec().norm() - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("min_enclosing_ball") {
  const std::vector<Point> pts{{-2.0, 0.0}, {2.0, 0.0}, {0.0, 1.0}, {0.5, -0.5}};
  const Ball b = min_enclosing_ball(pts);
  CHECK(b.radius == doctest::Approx(2.0));
  CHECK(b.center.norm() < 1e-12);
  for (std::uint64_t i = 0; i < 20; ++i) {
    std::vector<Point> cloud;
    for (std::uint64_t j = 0; j < 15; ++j) cloud.push_back(sample_box(Point{0.0, 0.0}, Point{3.0, 1.0}, i, 7, j));
    const Ball m = min_enclosing_ball(cloud);
    for (const Point& p : cloud) CHECK(distance(p, m.center) <= m.radius + 1e-12);
  }
  CHECK(min_enclosing_ball(std::vector<Point>{{1.0, 1.0}}).radius == 0.0);
}

TEST_CASE("counter-based samples depend only on their counter") {
  CHECK(counter_uniform(1, 2, 3) == counter_uniform(1, 2, 3));
  CHECK(counter_uniform(1, 2, 3) != counter_uniform(1, 2, 4));
  CHECK(counter_uniform(1, 2, 3) != counter_uniform(2, 2, 3));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = counter_uniform(9, 9, i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("tolerance validation") {
  Tolerance t;
  CHECK_NOTHROW(t.validate());
  t.abs_geom = 0.0;
  CHECK_THROWS_AS(t.validate(), DomainError);
}
