#include <cmath>
#include <vector>

#include "doctest.h"
#include "scg/fixtures.hpp"
#include "scg/modulus.hpp"

using namespace scg;

namespace {
ModulusBudget scan() {
  ModulusBudget b;
  b.closed_form = false;
  return b;
}

// Brute-force directional modulus of the unit disk: y on the circle of radius
// eps around x, both perpendicular directions, exact ray exit from the disk.
double disk_delta_circ_oracle(const Point& x, double eps) {
  std::vector<Point> ys;
  for (int k = 0; k < 20000; ++k) ys.push_back(x + polar(2.0 * kPi * k / 20000.0) * eps);
  // Exact crossings of the eps-circle with the unit circle.
  const double d = x.norm();
  if (d > 0.0) {
    const double a = (1.0 - eps * eps + d * d) / (2.0 * d);
    const double h2 = 1.0 - a * a;
    if (h2 >= 0.0) {
      const Point u = x / d;
      for (double s : {-1.0, 1.0}) ys.push_back(u * a + perp_ccw(u) * (s * std::sqrt(h2)));
    }
  }
  double best = INFINITY;
  for (const Point& y : ys) {
    if (y.norm2() > 1.0 + 1e-12) continue;
    const Point m = midpoint(x, y);
    const Point u = (y - x) / eps;
    for (const Point& v : {perp_ccw(u), -perp_ccw(u)}) {
      const double b = m.dot(v);
      best = std::min(best, -b + std::sqrt(std::max(0.0, b * b - m.norm2() + 1.0)));
    }
  }
  return best;
}
}  // namespace

TEST_CASE("delta_omega examples") {
  const auto disk = fixtures::disk(1.0);
  CHECK(std::abs(delta_omega(disk.body, 1.0).delta - (1.0 - std::sqrt(3.0) / 2.0)) < 1e-6);
  CHECK(std::abs(delta_omega(disk.body, 1.0, scan()).delta - (1.0 - std::sqrt(3.0) / 2.0)) < 1e-6);
  const auto square = fixtures::unit_square();
  const ModulusSample sq = delta_omega(square.body, 0.5);
  REQUIRE(sq.finite());
  CHECK(std::abs(sq.delta) < 1e-12);
  CHECK(delta_omega(disk.body, 3.0).sentinel == Sentinel::plus_infinity);
  CHECK(delta_omega(disk.body, 3.0, scan()).sentinel == Sentinel::plus_infinity);
  CHECK_THROWS_AS(delta_omega(disk.body, 0.0), DomainError);
  CHECK_THROWS_AS(delta_omega(disk.body, -1.0), DomainError);
}

TEST_CASE("delta_omega witness pair sits at distance eps") {
  const auto f = fixtures::three_generator();
  const ModulusSample s = delta_omega(f.body, 0.4);
  REQUIRE(s.witness.has_value());
  CHECK(std::abs(distance(s.witness->first, s.witness->second) - 0.4) < 1e-9);
  CHECK(std::abs(boundary_distance(f.body, midpoint(s.witness->first, s.witness->second)) - s.delta) < 1e-9);
}

TEST_CASE("delta_omega is nondecreasing in eps on convex fixtures") {
  for (const auto& f : {fixtures::disk(1.0), fixtures::three_generator(), fixtures::five_disk()}) {
    double prev = 0.0;
    for (int i = 1; i <= 12; ++i) {
      const double eps = 0.1 * i;
      const ModulusSample s = delta_omega(f.body, eps, scan());
      if (!s.finite()) break;
      CHECK(s.delta >= prev - 1e-9);
      prev = s.delta;
    }
  }
}

TEST_CASE("delta_omega reports -infinity for a non-convex union") {
  const auto f = fixtures::tangent_disks();
  CHECK(delta_omega(f.body, 0.5).sentinel == Sentinel::minus_infinity);
}

TEST_CASE("delta_circ examples") {
  const auto disk = fixtures::disk(1.0);
  const ModulusSample c0 = delta_circ(disk.body, Point{0.0, 0.0}, 0.0);
  CHECK(c0.delta == doctest::Approx(1.0));
  CHECK(delta_circ(disk.body, Point{1.0, 0.0}, 3.0).sentinel == Sentinel::minus_infinity);
  const ModulusSample c = delta_circ(disk.body, Point{1.0, 0.0}, 0.5);
  const double oracle = disk_delta_circ_oracle(Point{1.0, 0.0}, 0.5);
  CHECK(std::abs(c.delta - oracle) < 1e-6);
  CHECK(std::abs(c.delta - (1.0 - std::sqrt(1.0 - 0.0625))) < 1e-6);
  CHECK_THROWS_AS(delta_circ(disk.body, Point{2.0, 0.0}, 0.5), DomainError);
}

TEST_CASE("delta_circ matches the brute-force oracle at interior points") {
  const auto disk = fixtures::disk(1.0);
  for (const Point& x : {Point{0.3, 0.2}, Point{-0.6, 0.5}, Point{0.0, -0.9}}) {
    for (double eps : {0.2, 0.7}) {
      const ModulusSample c = delta_circ(disk.body, x, eps);
      CHECK(std::abs(c.delta - disk_delta_circ_oracle(x, eps)) < 1e-6);
    }
  }
}

TEST_CASE("on balls the two moduli agree with the closed form") {
  for (double r : {0.5, 2.0}) {
    const auto f = fixtures::disk(r);
    for (double t : {0.2, 0.9}) {
      const double eps = t * r;
      CHECK(std::abs(delta_circ(f.body, Point{r, 0.0}, eps).delta - ball_modulus(r, eps)) < 1e-6);
      CHECK(std::abs(delta_omega(f.body, eps, scan()).delta - ball_modulus(r, eps)) < 1e-6);
    }
  }
}

TEST_CASE("limit_estimate examples") {
  const LimitEstimate d1 = limit_estimate(fixtures::disk(1.0).body, 0.5, 8);
  CHECK(d1.value == doctest::Approx(0.125).epsilon(0.01));
  CHECK(d1.cauchy_residual < 1e-3);
  CHECK(d1.samples.size() == 9);
  CHECK(d1.samples.back().eps == std::ldexp(0.5, -8));
  const LimitEstimate d2 = limit_estimate(fixtures::disk(2.0).body, 0.5, 8);
  CHECK(d2.value == doctest::Approx(0.0625).epsilon(0.01));
  const LimitEstimate sq = limit_estimate(fixtures::unit_square().body, 0.5, 6);
  for (const ModulusSample& s : sq.samples) CHECK(std::abs(s.delta) < 1e-12);
  CHECK_THROWS_AS(limit_estimate(fixtures::disk(1.0).body, 3.0, 4), ScheduleError);
}

TEST_CASE("threshold_test examples") {
  const Body disk = fixtures::disk(1.0).body;
  CHECK(threshold_test(disk, 1.0, 0.5, 8).verdict == Verdict::certified);
  const ThresholdReport low = threshold_test(disk, 0.9, 0.5, 8);
  CHECK(low.verdict == Verdict::refuted);
  CHECK(low.witness.has_value());
  CHECK(low.threshold == doctest::Approx(1.0 / 7.2));
  const ThresholdReport sq = threshold_test(fixtures::unit_square().body, 1.0, 0.25, 8);
  CHECK(sq.verdict == Verdict::refuted);
  CHECK(sq.witness.has_value());
}

TEST_CASE("directional threshold test examples") {
  const Body disk = fixtures::disk(1.0).body;
  const std::vector<double> sched = default_eps_schedule(disk, 6);
  const auto ok = delta_circ_threshold_test(disk, {{0.0, 0.0}, {1.0, 0.0}, {0.0, -1.0}}, 1.0, sched);
  CHECK(ok.verdict == Verdict::certified);

  const auto td = fixtures::tangent_disks();
  const auto un = delta_circ_threshold_test(td.body, {{-1.0, 0.0}, {1.0, 0.0}}, 1.0, default_eps_schedule(td.body, 6));
  for (const ProbeReport& p : un.probes) CHECK(p.passed);
  CHECK(un.verdict == Verdict::inconclusive);

  const Body sq = fixtures::unit_square().body;
  const auto ref = delta_circ_threshold_test(sq, {{0.5, 0.0}, {0.5, 0.5}}, 1.0, default_eps_schedule(sq, 6));
  CHECK(ref.verdict == Verdict::refuted);
  REQUIRE(ref.probes.size() == 2);
  CHECK_FALSE(ref.probes[0].passed);

  CHECK_THROWS_AS(delta_circ_threshold_test(disk, {{2.0, 0.0}}, 1.0, sched), DomainError);
}

TEST_CASE("default schedule") {
  const auto s = default_eps_schedule(fixtures::disk(1.0).body, 8);
  REQUIRE(s.size() == 8);
  CHECK(s.front() == 0.25);
  CHECK(s.back() == std::ldexp(0.5, -8));
}

TEST_CASE("budget validation") {
  ModulusBudget b;
  b.boundary_samples = 0;
  CHECK_THROWS_AS(delta_omega(fixtures::disk(1.0).body, 0.5, b), DomainError);
}

TEST_CASE("planar sections of a three-dimensional ball") {
  ImplicitBody::Options opts;
  opts.convex = true;
  const Body ball3(ImplicitBody([](const Point& p) { return p.norm2() <= 1.0; }, Point{-1.0, -1.0, -1.0},
                                Point{1.0, 1.0, 1.0}, opts));
  const ModulusSample s = delta_omega(ball3, 0.5);
  REQUIRE(s.finite());
  CHECK(std::abs(s.delta - ball_modulus(1.0, 0.5)) < 1e-4);
}
