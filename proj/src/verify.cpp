#include "scg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "scg/fixtures.hpp"
#include "scg/lens_arc.hpp"
#include "scg/modulus.hpp"
#include "scg/oracles.hpp"
#include "scg/rconvex.hpp"
#include "scg/sampling.hpp"

namespace scg::verify {

namespace {

// Pinned tolerances.
constexpr double kBallModulusTol = 1e-6;
constexpr double kGridH = 0.01;
constexpr double kBruteTol = 2.0 * kGridH;
constexpr double kLimitRelTol = 0.01;
constexpr double kResidualTol = 1e-3;
constexpr double kEllipseRelTol = 0.05;
constexpr double kEllipseOracleTol = 1e-6;
constexpr double kMembershipTol = 1e-9;
constexpr double kDisagreementRate = 1e-3;
constexpr double kLensOffsetTol = 1e-9;
constexpr double kRecurrenceTol = 1e-12;
constexpr double kArcBoundTol = 1e-6;
constexpr double kZeroDelta = 1e-9;

using fixtures::Fixture;
using io::Json;

class Check {
 public:
  Check(std::string id, std::string title) {
    result_.id = std::move(id);
    result_.title = std::move(title);
  }

  bool require(bool cond, const std::string& what) {
    if (!cond) {
      result_.passed = false;
      result_.failures.push_back(what);
    }
    return cond;
  }
  Json& metrics() { return result_.metrics; }
  CheckResult done() { return std::move(result_); }

 private:
  CheckResult result_;
};

std::string fmt(double v) { return io::format_double(v); }

std::vector<double> dyadic(double e0, int from, int to) {
  std::vector<double> out;
  for (int i = from; i <= to; ++i) out.push_back(std::ldexp(e0, -i));
  return out;
}

std::string describe(const Point& p) {
  std::string s = "(";
  for (int i = 0; i < p.dim(); ++i) s += (i ? "," : "") + fmt(p[i]);
  return s + ")";
}

double naive_ball_modulus(double r, double eps) {
  const long double rl = r, el = eps;
  return static_cast<double>(rl - std::sqrt(rl * rl - el * el / 4.0L));
}

// --- independent parametric oracle for the ellipse fixture ---------------------

Point ellipse_at(double t) {
  return Point{fixtures::kEllipseA * std::cos(t), fixtures::kEllipseB * std::sin(t)};
}

template <class F>
double golden_min(F&& f, double a, double b, int iterations) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::min(fc, fd);
}

// Distance from an interior point to the ellipse boundary.
double ellipse_depth(const Point& m) {
  constexpr int n = 1024;
  const double step = 2.0 * kPi / n;
  auto dist = [&](double s) { return distance(m, ellipse_at(s)); };
  int best = 0;
  double best_v = dist(0.0);
  for (int k = 1; k < n; ++k) {
    const double v = dist(k * step);
    if (v < best_v) {
      best_v = v;
      best = k;
    }
  }
  return std::min(best_v, golden_min(dist, (best - 1) * step, (best + 1) * step, 80));
}

// Partner of P(t) at chord length eps, found by bisection in the parameter.
double ellipse_partner(double t, double eps) {
  double a = t, b = t + kPi / 2.0;
  for (int it = 0; it < 80; ++it) {
    const double m = 0.5 * (a + b);
    if (distance(ellipse_at(t), ellipse_at(m)) < eps) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Minimum midpoint depth over boundary chords of length eps (eps < sqrt(2)).
double ellipse_delta_oracle(double eps) {
  constexpr int n = 2048;
  const double step = 2.0 * kPi / n;
  auto depth_at = [&](double t) {
    return ellipse_depth(midpoint(ellipse_at(t), ellipse_at(ellipse_partner(t, eps))));
  };
  int best = 0;
  double best_v = depth_at(0.0);
  for (int k = 1; k < n; ++k) {
    const double v = depth_at(k * step);
    if (v < best_v) {
      best_v = v;
      best = k;
    }
  }
  return std::min(best_v, golden_min(depth_at, (best - 1) * step, (best + 1) * step, 60));
}

ModulusBudget scan_budget() {
  ModulusBudget b;
  b.closed_form = false;
  return b;
}

BruteConfig brute_config(std::uint64_t seed) {
  BruteConfig c;
  c.h = kGridH;
  c.seed = seed;
  return c;
}

std::vector<Point> hull_points(std::uint64_t seed) {
  std::vector<Point> pts;
  for (std::uint64_t i = 0; i < 20; ++i) {
    pts.push_back(sample_box(Point{0.0, 0.0}, Point{1.0, 1.0}, seed, 0xC6, i));
  }
  return pts;
}

bool certified(const RConvexityReport& rep) { return rep.verdict == Verdict::certified; }

// --- acceptance criteria 1..11 ------------------------------------------------

CheckResult ball_modulus_exactness(std::uint64_t seed) {
  Check c("C1", "ball modulus: closed form, boundary scan and grid oracle");
  double worst_closed = 0.0, worst_scan = 0.0, worst_brute = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    const Fixture f = fixtures::disk(r);
    for (double t : {0.1, 0.5, 1.0}) {
      const double eps = t * r;
      const double ref = naive_ball_modulus(r, eps);
      const std::string at = " at r=" + fmt(r) + " eps=" + fmt(eps);
      const ModulusSample closed = delta_omega(f.body, eps);
      const ModulusSample scan = delta_omega(f.body, eps, scan_budget());
      const ModulusSample brute = brute_delta(f.raw, f.lo, f.hi, eps, brute_config(seed));
      if (!c.require(closed.finite() && scan.finite() && brute.finite(), "sentinel" + at)) continue;
      worst_closed = std::max(worst_closed, std::abs(closed.delta - ref));
      worst_scan = std::max(worst_scan, std::abs(scan.delta - ref));
      worst_brute = std::max(worst_brute, std::abs(brute.delta - ref));
      c.require(std::abs(closed.delta - ref) < kBallModulusTol, "closed form off" + at);
      c.require(std::abs(scan.delta - ref) < kBallModulusTol, "scan off by " + fmt(scan.delta - ref) + at);
      c.require(std::abs(brute.delta - ref) <= kBruteTol, "grid oracle off by " + fmt(brute.delta - ref) + at);
    }
  }
  c.metrics()["max_error_closed_form"] = worst_closed;
  c.metrics()["max_error_scan"] = worst_scan;
  c.metrics()["max_error_grid_oracle"] = worst_brute;
  return c.done();
}

CheckResult limit_constant() {
  Check c("C2", "limit of delta/eps^2 on balls is 1/(8r)");
  Json per_r = Json::array();
  for (double r : {1.0, 2.0}) {
    const Fixture f = fixtures::disk(r);
    const double target = 1.0 / (8.0 * r);
    std::vector<double> residuals;
    LimitEstimate est;
    for (int k = 5; k <= 8; ++k) {
      est = limit_estimate(f.body, r / 2.0, k);
      residuals.push_back(est.cauchy_residual);
    }
    const LimitEstimate scan = limit_estimate(f.body, r / 2.0, 8, scan_budget());
    const std::string at = " at r=" + fmt(r);
    c.require(std::abs(est.value - target) <= kLimitRelTol * target,
              "value " + fmt(est.value) + " vs " + fmt(target) + at);
    c.require(std::abs(scan.value - target) <= kLimitRelTol * target,
              "scan value " + fmt(scan.value) + " vs " + fmt(target) + at);
    c.require(est.cauchy_residual < kResidualTol, "residual " + fmt(est.cauchy_residual) + at);
    c.require(scan.cauchy_residual < kResidualTol, "scan residual " + fmt(scan.cauchy_residual) + at);
    for (std::size_t i = 1; i < residuals.size(); ++i) {
      c.require(residuals[i] < residuals[i - 1], "residual not decreasing in k" + at);
    }
    per_r.push_back(Json{{"r", r},
                         {"value", est.value},
                         {"scan_value", scan.value},
                         {"residuals_k5_to_k8", residuals}});
  }
  c.metrics()["disks"] = per_r;
  return c.done();
}

CheckResult threshold_theorem() {
  Check c("C3", "threshold test: disk certified at r >= 1, refuted below; square refuted");
  const Fixture disk = fixtures::disk(1.0);
  const Fixture square = fixtures::unit_square();
  Json verdicts = Json::object();
  auto run = [&](const Fixture& f, double r, Verdict expected) {
    const RConvexityReport rep = check_r_convexity(f.body, r, CheckMethod::threshold);
    verdicts[f.name + "@" + fmt(r)] = to_string(rep.verdict);
    c.require(rep.verdict == expected, f.name + " at r=" + fmt(r) + " is " + to_string(rep.verdict));
    return rep;
  };
  run(disk, 1.0, Verdict::certified);
  run(disk, 2.0, Verdict::certified);
  run(disk, 0.9, Verdict::refuted);
  for (double r : {0.5, 1.0, 10.0}) {
    const RConvexityReport rep = run(square, r, Verdict::refuted);
    for (const ModulusSample& s : rep.samples) {
      c.require(s.finite() && std::abs(s.delta) <= kZeroDelta,
                "square sample at eps=" + fmt(s.eps) + " is not zero");
    }
  }
  c.metrics()["verdicts"] = verdicts;
  return c.done();
}

CheckResult strict_ball_inequality() {
  Check c("C4", "ball_modulus(r, eps)/eps^2 > 1/(8r) on a 20x20 grid");
  double min_margin = INFINITY;
  double max_formula_gap = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double r = 0.1 * std::pow(100.0, i / 19.0);
    for (int j = 0; j < 20; ++j) {
      const double eps = r * ((j + 1) / 10.0);
      const double ratio = ball_modulus(r, eps) / (eps * eps);
      min_margin = std::min(min_margin, ratio - 1.0 / (8.0 * r));
      const double ref = naive_ball_modulus(r, eps);
      max_formula_gap = std::max(max_formula_gap, std::abs(ball_modulus(r, eps) - ref) / std::max(ref, 1e-300));
      c.require(ratio > 1.0 / (8.0 * r), "no margin at r=" + fmt(r) + " eps=" + fmt(eps));
    }
  }
  c.require(max_formula_gap < 1e-12, "closed form disagrees with direct evaluation");
  c.metrics()["min_margin"] = min_margin;
  c.metrics()["max_relative_gap"] = max_formula_gap;
  return c.done();
}

CheckResult ellipse_fixture(std::uint64_t seed) {
  Check c("C5", "ellipse (2,1): limit 1/32, threshold certifies 4.5 and refutes 3.5");
  const Fixture f = fixtures::ellipse();
  const double target = 1.0 / 32.0;
  const LimitEstimate est = limit_estimate(f.body, 0.5, 8);
  c.require(std::abs(est.value - target) <= kEllipseRelTol * target,
            "limit " + fmt(est.value) + " vs 1/32");

  const double coarse = ellipse_delta_oracle(0.5);
  const double fine_eps = est.samples.back().eps;
  const double fine_ratio = ellipse_delta_oracle(fine_eps) / (fine_eps * fine_eps);
  c.require(std::abs(est.samples.front().delta - coarse) <= kEllipseOracleTol,
            "scan at eps=0.5 is " + fmt(est.samples.front().delta) + ", parametric oracle " + fmt(coarse));
  c.require(std::abs(est.value - fine_ratio) <= kLimitRelTol * fine_ratio,
            "finest ratio " + fmt(est.value) + ", parametric oracle " + fmt(fine_ratio));
  const ModulusSample brute = brute_delta(f.raw, f.lo, f.hi, 0.5, brute_config(seed));
  c.require(brute.finite() && std::abs(brute.delta - coarse) <= kBruteTol,
            "grid oracle at eps=0.5 is " + fmt(brute.delta));

  const RConvexityReport high = check_r_convexity(f.body, 4.5, CheckMethod::threshold);
  const RConvexityReport low = check_r_convexity(f.body, 3.5, CheckMethod::threshold);
  c.require(certified(high), std::string("r=4.5 is ") + to_string(high.verdict));
  c.require(low.verdict == Verdict::refuted, std::string("r=3.5 is ") + to_string(low.verdict));
  c.metrics()["limit"] = est.value;
  c.metrics()["cauchy_residual"] = est.cauchy_residual;
  c.metrics()["oracle_delta_0.5"] = coarse;
  c.metrics()["oracle_finest_ratio"] = fine_ratio;
  c.metrics()["grid_delta_0.5"] = brute.finite() ? Json(brute.delta) : Json(nullptr);
  c.metrics()["verdict_4.5"] = to_string(high.verdict);
  c.metrics()["verdict_3.5"] = to_string(low.verdict);
  return c.done();
}

CheckResult hull_pipeline(std::uint64_t seed) {
  Check c("C6", "r-hull of 20 seeded points at r=2");
  constexpr double r = 2.0;
  const std::vector<Point> pts = hull_points(seed);
  const DiskPolygon hull = r_hull(pts, r);
  const Body body = hull;

  double worst_in = 0.0;
  for (const Point& p : pts) worst_in = std::min(worst_in, boundary_distance(body, p));
  c.require(worst_in >= -kMembershipTol, "input point outside the hull by " + fmt(-worst_in));
  c.require(certified(is_r_convex(body, r)), "hull is not certified r-convex");

  // Idempotence from vertices plus arc samples.
  std::vector<Point> again_in = hull.vertices();
  for (const CircularArc& a : hull.arcs()) {
    for (double s : {0.25, 0.5, 0.75}) again_in.push_back(a.at(s));
  }
  if (hull.kind() == DiskPolygonKind::point) again_in.push_back(hull.point());
  const DiskPolygon again = r_hull(again_in, r);
  bool same = again.centers().size() == hull.centers().size();
  for (std::size_t i = 0; same && i < hull.centers().size(); ++i) {
    same = distance(again.centers()[i], hull.centers()[i]) <= kMembershipTol;
  }
  c.require(same, "hull of hull samples has a different arc structure");

  const SampledBallIntersection brute = brute_hull(pts, r, brute_config(seed));
  constexpr int trials = 100000;
  int disagree = 0, outside_band = 0, exact_in_brute_out = 0;
  for (int i = 0; i < trials; ++i) {
    const Point p = sample_box(Point{-0.5, -0.5}, Point{1.5, 1.5}, seed, 0xC7, static_cast<std::uint64_t>(i));
    const bool exact = contains(body, p);
    if (exact == brute.contains(p)) continue;
    ++disagree;
    if (exact) ++exact_in_brute_out;
    if (std::abs(boundary_distance(body, p)) > kBruteTol) ++outside_band;
  }
  c.require(disagree <= kDisagreementRate * trials, std::to_string(disagree) + " disagreements");
  c.require(outside_band == 0, std::to_string(outside_band) + " disagreements outside the 2h band");
  c.require(exact_in_brute_out == 0, std::to_string(exact_in_brute_out) + " hull points outside a sampled disk");
  c.metrics()["generators"] = hull.centers().size();
  c.metrics()["disagreements"] = disagree;
  c.metrics()["sampled_centers"] = brute.centers().size();
  return c.done();
}

CheckResult lens_identities() {
  Check c("C7", "lens identities");
  const Lens diam = lens(Point{-1.0, 0.0}, Point{1.0, 0.0}, 1.0);
  c.require(diam.kind() == LensKind::ball, "diameter lens is not the ball");
  int mismatches = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const Point p = sample_box(Point{-1.5, -1.5}, Point{1.5, 1.5}, 0, 0xC8, i);
    if (lens_contains(diam, p) != (p.norm2() <= 1.0)) ++mismatches;
  }
  c.require(mismatches == 0, std::to_string(mismatches) + " membership mismatches against the unit ball");
  c.require(lens(Point{-2.0, 0.0}, Point{2.0, 0.0}, 1.0).kind() == LensKind::universe,
            "far lens is not the universe");

  const double expected = 1.0 - std::sqrt(3.0) / 2.0;
  const Point x{-0.5, 0.0}, y{0.5, 0.0};
  const Lens unit_chord = lens(x, y, 1.0);
  double worst = 0.0;
  if (c.require(unit_chord.kind() == LensKind::proper, "unit chord lens is not proper")) {
    for (const CircularArc& a : unit_chord.boundary_arcs()) {
      worst = std::max(worst, std::abs(distance(a.at(0.5), midpoint(x, y)) - expected));
    }
  }
  const auto [left, right] = short_arcs(x, y, 1.0);
  worst = std::max(worst, std::abs(distance(left.midpoint, midpoint(x, y)) - expected));
  worst = std::max(worst, std::abs(distance(right.midpoint, midpoint(x, y)) - expected));
  worst = std::max(worst, std::abs(ball_modulus(1.0, 1.0) - expected));
  c.require(worst <= kLensOffsetTol, "midpoint offset off by " + fmt(worst));
  c.metrics()["mismatches"] = mismatches;
  c.metrics()["max_offset_error"] = worst;
  return c.done();
}

CheckResult refinement_recurrence() {
  Check c("C8", "radius refinement closed form and arc radius bound");
  const RefinementTrace trace = radius_refinement(2.0, 1.0, 10);
  c.require(trace.sequence.size() == 11, "trace length " + std::to_string(trace.sequence.size()));
  double worst = 0.0;
  for (std::size_t n = 0; n < trace.sequence.size(); ++n) {
    const double p = std::ldexp(1.0, static_cast<int>(n) + 1);
    const double err = std::abs(trace.sequence[n] - p / (p - 1.0));
    worst = std::max(worst, err);
    c.require(err <= kRecurrenceTol, "R_" + std::to_string(n) + " off by " + fmt(err));
    if (n > 0) c.require(trace.sequence[n] < trace.sequence[n - 1], "trace not decreasing");
  }
  const double rho = arc_radius_bound(1.0, 2.0, 1e-4);
  c.require(std::abs(rho - 4.0 / 3.0) <= kArcBoundTol, "arc radius bound " + fmt(rho));
  c.metrics()["max_recurrence_error"] = worst;
  c.metrics()["arc_radius_bound"] = rho;
  return c.done();
}

CheckResult sequence_conditions() {
  Check c("C9", "sequence conditions (A) and (C)");
  const std::vector<double> eps = dyadic(1.0, 1, 6);
  Json outcomes = Json::object();
  auto expect_a = [&](const Fixture& f, double r, bool holds) {
    const ConditionResult res = condition_A_check(f.body, r, eps);
    outcomes["A:" + f.name + "@" + fmt(r)] = res.holds;
    c.require(res.holds == holds, "(A) on " + f.name + " at r=" + fmt(r) + " gave " + (res.holds ? "pass" : "fail"));
    if (!holds && !res.holds) {
      c.require(res.witness_point && !f.raw(*res.witness_point), "(A) witness missing or inside " + f.name);
    }
  };
  expect_a(fixtures::disk(1.0), 1.0, true);
  const Fixture tri = fixtures::three_generator();
  expect_a(tri, 1.0, true);
  expect_a(tri, 2.0, true);
  const Fixture square = fixtures::unit_square();
  for (double r : {0.5, 1.0, 10.0}) expect_a(square, r, false);

  for (const Fixture& f : {square, fixtures::disk(1.0)}) {
    const ConditionResult res = condition_C_check(f.body, eps);
    outcomes["C:" + f.name] = res.holds;
    c.require(res.holds, "(C) fails on " + f.name);
  }
  const Fixture td = fixtures::tangent_disks();
  const ConditionResult res = condition_C_check(td.body, eps);
  outcomes["C:" + td.name] = res.holds;
  if (c.require(!res.holds, "(C) passes on the tangent disks")) {
    const bool straddles = res.witness_pair &&
                           res.witness_pair->first.x() * res.witness_pair->second.x() < 0.0;
    c.require(straddles, "witness pair does not straddle the tangency");
    c.require(res.witness_point && !td.raw(*res.witness_point), "segment witness is not outside");
    if (res.witness_pair) {
      c.metrics()["witness_pair"] = Json::array({io::point_json(res.witness_pair->first),
                                                 io::point_json(res.witness_pair->second)});
    }
  }
  c.metrics()["outcomes"] = outcomes;
  return c.done();
}

CheckResult convexity_necessity() {
  Check c("C10", "tangent disks: directional test not certified, midpoint refutation");
  const Fixture td = fixtures::tangent_disks();
  const std::vector<Point> probes{{-1.0, 0.0}, {1.0, 0.0}, {-2.0, 0.0}, {2.0, 0.0}, {-1.0, 0.5}};
  const DirectionalThresholdReport rep =
      delta_circ_threshold_test(td.body, probes, 1.0, default_eps_schedule(td.body));
  bool all_pass = true;
  for (const ProbeReport& p : rep.probes) {
    all_pass = all_pass && p.passed;
    c.require(p.passed, "probe " + describe(p.x) + " failed");
  }
  c.require(rep.verdict != Verdict::certified, "certified without convexity");
  c.metrics()["probes_passed"] = all_pass;
  c.metrics()["directional_verdict"] = to_string(rep.verdict);
  for (double r : {1.0, 2.0}) {
    const RConvexityReport ir = is_r_convex(td.body, r);
    const std::string at = " at r=" + fmt(r);
    c.require(ir.verdict == Verdict::refuted, std::string("is_r_convex is ") + to_string(ir.verdict) + at);
    c.require(ir.method == RConvexMethod::convexity, "refutation is not a midpoint witness" + at);
    if (c.require(ir.witness && ir.witness->chord.has_value(), "no chord witness" + at)) {
      const auto& [a, b] = *ir.witness->chord;
      const Point m = midpoint(a, b);
      c.require(td.raw(a) && td.raw(b), "chord endpoints not in the union" + at);
      c.require(!td.raw(m) && distance(m, ir.witness->violating_point) <= kMembershipTol,
                "chord midpoint is not the outside witness" + at);
      c.metrics()["midpoint@" + fmt(r)] = io::point_json(m);
    }
  }
  return c.done();
}

CheckResult radius_monotonicity(std::uint64_t seed) {
  Check c("C11", "certification persists at 1.1r, 2r and 10r");
  struct Case {
    std::string name;
    Body body;
    double r;
    CheckMethod method;
  };
  const std::vector<Case> cases{
      {"disk", fixtures::disk(1.0).body, 1.0, CheckMethod::support},
      {"three_generator", fixtures::three_generator().body, 1.0, CheckMethod::support},
      {"five_disk", fixtures::five_disk().body, 1.0, CheckMethod::support},
      {"hull", r_hull(hull_points(seed), 2.0), 2.0, CheckMethod::support},
      {"ellipse", fixtures::ellipse().body, 4.5, CheckMethod::threshold},
  };
  Json verdicts = Json::object();
  for (const Case& k : cases) {
    for (double m : {1.0, 1.1, 2.0, 10.0}) {
      const RConvexityReport rep = check_r_convexity(k.body, m * k.r, k.method);
      verdicts[k.name + "@" + fmt(m * k.r)] = to_string(rep.verdict);
      c.require(certified(rep), k.name + " not certified at r=" + fmt(m * k.r));
    }
  }
  c.metrics()["verdicts"] = verdicts;
  return c.done();
}

// --- lens suite ------------------------------------------------------------------

CheckResult lens_structure(std::uint64_t seed) {
  Check c("L1", "lens symmetry and arc structure");
  int checked = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Point x = sample_box(Point{-1.0, -1.0}, Point{1.0, 1.0}, seed, 0x11, i);
    const Point y = sample_box(Point{-1.0, -1.0}, Point{1.0, 1.0}, seed, 0x12, i);
    const double r = 0.5 + 2.0 * counter_uniform(seed, 0x13, i);
    const Lens a = lens(x, y, r), b = lens(y, x, r);
    if (a.kind() != LensKind::proper) continue;
    ++checked;
    const auto [cl, cr] = chord_circle_centers(x, y, r);
    const auto [el, er] = a.extreme_centers();
    c.require(distance(cl, el) <= kMembershipTol && distance(cr, er) <= kMembershipTol,
              "extreme centers differ from the chord circle centers");
    for (const CircularArc& arc : a.boundary_arcs()) {
      c.require(std::abs(arc.radius - r) <= kMembershipTol, "arc radius differs from r");
      const bool ends = (distance(arc.start(), x) <= kMembershipTol && distance(arc.end(), y) <= kMembershipTol) ||
                        (distance(arc.start(), y) <= kMembershipTol && distance(arc.end(), x) <= kMembershipTol);
      c.require(ends, "arc does not join x and y");
    }
    for (std::uint64_t j = 0; j < 200; ++j) {
      const Point p = sample_box(Point{-2.0, -2.0}, Point{2.0, 2.0}, seed, 0x14 + i, j);
      if (lens_contains(a, p) != lens_contains(b, p)) {
        c.require(false, "lens is not symmetric at " + describe(p));
        break;
      }
    }
  }
  c.require(checked > 0, "no proper lens sampled");
  c.metrics()["proper_lenses"] = checked;
  return c.done();
}

CheckResult lens_oracles(std::uint64_t seed) {
  Check c("L2", "lens against sampled-center oracle and the two-point hull");
  const Point x{-0.6, 0.1}, y{0.7, -0.2};
  constexpr double r = 1.0;
  const Lens ln = lens(x, y, r);
  const SampledBallIntersection brute = brute_lens(x, y, r, brute_config(seed));
  const std::vector<Point> pair{x, y};
  const Body hull = r_hull(pair, r);
  const auto [cl, cr] = ln.extreme_centers();
  constexpr int trials = 10000;
  int brute_disagree = 0, brute_outside_band = 0, hull_disagree = 0;
  for (int i = 0; i < trials; ++i) {
    const Point p = sample_box(Point{-1.2, -1.2}, Point{1.2, 1.2}, seed, 0x21, static_cast<std::uint64_t>(i));
    const bool in = lens_contains(ln, p);
    const double band = std::min(r - distance(p, cl), r - distance(p, cr));
    if (in != brute.contains(p)) {
      ++brute_disagree;
      if (std::abs(band) > kBruteTol) ++brute_outside_band;
    }
    if (in != contains(hull, p) && std::abs(band) > kMembershipTol) ++hull_disagree;
  }
  c.require(brute_disagree <= kDisagreementRate * trials, std::to_string(brute_disagree) + " oracle disagreements");
  c.require(brute_outside_band == 0, "oracle disagreement outside the 2h band");
  c.require(hull_disagree == 0, std::to_string(hull_disagree) + " lens/hull disagreements");
  c.metrics()["oracle_disagreements"] = brute_disagree;
  c.metrics()["hull_disagreements"] = hull_disagree;
  return c.done();
}

CheckResult short_arc_invariants(std::uint64_t seed) {
  Check c("L3", "short arcs: midpoint orthogonality, radius, bisection samples");
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 40; ++i) {
    const Point x = sample_box(Point{-1.0, -1.0}, Point{1.0, 1.0}, seed, 0x31, i);
    const Point y = sample_box(Point{-1.0, -1.0}, Point{1.0, 1.0}, seed, 0x32, i);
    const double r = 1.5 + counter_uniform(seed, 0x33, i);
    const auto [left, right] = short_arcs(x, y, r);
    for (const ShortArc& a : {left, right}) {
      const Point m = midpoint(x, y);
      worst = std::max(worst, std::abs((x - y).dot(a.midpoint - m)));
      worst = std::max(worst, std::abs(distance(a.midpoint, a.center) - r));
      const std::vector<Point> pts = arc_sample(a, 6);
      c.require(pts.size() == 65, "arc sample size");
      c.require(pts.front() == x && pts.back() == y, "arc sample endpoints");
      for (const Point& p : pts) worst = std::max(worst, std::abs(distance(p, a.center) - r));
      c.require(distance(pts[32], a.midpoint) <= kMembershipTol, "middle sample is not the midpoint");
    }
  }
  c.require(worst <= kMembershipTol, "arc invariant violated by " + fmt(worst));
  c.metrics()["max_error"] = worst;
  return c.done();
}

CheckResult solid_lens(std::uint64_t seed) {
  Check c("L4", "lens in R^3: rotational invariance and planar sections");
  const Point x{-0.5, 0.0, 0.0}, y{0.5, 0.0, 0.0};
  constexpr double r = 1.0;
  const Lens l3 = lens(x, y, r);
  const Lens l2 = lens(Point{-0.5, 0.0}, Point{0.5, 0.0}, r);
  int mismatches = 0;
  for (std::uint64_t i = 0; i < 5000; ++i) {
    const double ax = -1.0 + 2.0 * counter_uniform(seed, 0x41, i);
    const double rad = 1.0 * counter_uniform(seed, 0x42, i);
    const double phi = 2.0 * kPi * counter_uniform(seed, 0x43, i);
    const Point p3{ax, rad * std::cos(phi), rad * std::sin(phi)};
    const Point p2{ax, rad};
    if (std::abs(std::min(r - distance(p2, Point{0.0, -std::sqrt(0.75)}),
                          r - distance(p2, Point{0.0, std::sqrt(0.75)}))) <= kMembershipTol) {
      continue;
    }
    if (lens_contains(l3, p3) != lens_contains(l2, p2)) ++mismatches;
  }
  c.require(mismatches == 0, std::to_string(mismatches) + " section mismatches");
  c.metrics()["mismatches"] = mismatches;
  return c.done();
}

CheckResult arc_property_examples() {
  Check c("L5", "arc property on the disk and the square");
  const Fixture disk = fixtures::disk(1.0);
  const ArcPropertyResult on_disk = arc_property(disk.body, polar(0.3), polar(1.4), 1.0);
  c.require(on_disk.holds, "boundary arc of the unit disk leaves the disk");
  const Fixture square = fixtures::unit_square();
  const ArcPropertyResult on_square = arc_property(square.body, Point{0.1, 0.0}, Point{0.9, 0.0}, 10.0);
  c.require(!on_square.holds, "bulging arc stays in the square");
  c.require(on_square.witness && !square.raw(*on_square.witness), "square witness is not outside");
  const ArcPropertyResult vac = arc_property(disk.body, Point{-1.0, 0.0}, Point{1.0, 0.0}, 0.4);
  c.require(vac.vacuous, "chord longer than 2r is not vacuous");
  return c.done();
}

// --- oracle suite ----------------------------------------------------------------

CheckResult brute_agreement(std::uint64_t seed) {
  Check c("O1", "boundary scan against the grid oracle on every fixture");
  constexpr double eps = 0.5;
  Json per = Json::object();
  for (const Fixture& f : fixtures::all()) {
    const ModulusSample scan = delta_omega(f.body, eps);
    const ModulusSample brute = brute_delta(f.raw, f.lo, f.hi, eps, brute_config(seed));
    const bool ok = scan.sentinel == brute.sentinel &&
                    (!scan.finite() || std::abs(scan.delta - brute.delta) <= kBruteTol);
    c.require(ok, f.name + ": scan " + (scan.finite() ? fmt(scan.delta) : "sentinel") + ", grid " +
                      (brute.finite() ? fmt(brute.delta) : "sentinel"));
    per[f.name] = io::sample_json(scan)["delta"];
  }
  c.metrics()["delta_0.5"] = per;
  return c.done();
}

CheckResult limit_stability() {
  Check c("O2", "Cauchy residual shrinks from k=5 to k=8");
  Json per = Json::object();
  for (const Fixture& f : {fixtures::disk(1.0), fixtures::ellipse(), fixtures::five_disk()}) {
    const LimitEstimate k5 = limit_estimate(f.body, 0.5, 5);
    const LimitEstimate k8 = limit_estimate(f.body, 0.5, 8);
    c.require(k8.cauchy_residual < k5.cauchy_residual, f.name + " residual did not shrink");
    per[f.name] = Json::array({k5.cauchy_residual, k8.cauchy_residual});
  }
  c.metrics()["residuals"] = per;
  return c.done();
}

CheckResult grid_bodies() {
  Check c("O3", "grid occupancy: half-plane distance and disk area");
  constexpr double h = 0.02;
  const GridBody half = grid_body([](const Point& p) { return p.x() + 0.5 * p.y() <= 0.3; },
                                  Point{-1.0, -1.0}, Point{1.0, 1.0}, h);
  // The clipped half-plane is a polygon with exact signed distance.
  const Body clipped = ConvexPolygon::from_vertices({{-1.0, -1.0}, {0.8, -1.0}, {-0.2, 1.0}, {-1.0, 1.0}});
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Point p = sample_box(Point{-0.9, -0.9}, Point{0.9, 0.9}, 0, 0x51, i);
    worst = std::max(worst, std::abs(half.boundary_distance(p) - signed_distance(clipped, p)));
  }
  c.require(worst <= h, "half-plane distance off by " + fmt(worst));
  const Fixture disk = fixtures::disk(1.0);
  const GridBody gd = grid_body(disk.raw, disk.lo, disk.hi, h);
  const double area_err = std::abs(gd.area() - kPi);
  c.require(area_err <= 2.0 * kPi * h, "disk area off by " + fmt(area_err));
  c.metrics()["max_distance_error"] = worst;
  c.metrics()["area_error"] = area_err;
  return c.done();
}

CheckResult serial_parallel() {
  Check c("O4", "serial and parallel kernels agree bit for bit");
  const Fixture el = fixtures::ellipse();
  ModulusBudget par, ser;
  ser.policy = ExecPolicy::serial;
  const ModulusSample a = delta_omega(el.body, 0.3, par);
  const ModulusSample b = delta_omega(el.body, 0.3, ser);
  c.require(a.delta == b.delta, "delta_omega differs");
  BruteConfig bp = brute_config(0), bs = brute_config(0);
  bs.policy = ExecPolicy::serial;
  const Fixture sq = fixtures::unit_square();
  c.require(brute_delta(sq.raw, sq.lo, sq.hi, 0.5, bp).delta == brute_delta(sq.raw, sq.lo, sq.hi, 0.5, bs).delta,
            "brute_delta differs");
  const Fixture td = fixtures::tangent_disks();
  const std::vector<double> eps{0.5, 0.25};
  const ConditionResult cp = condition_C_check(td.body, eps, {}, {}, ExecPolicy::parallel);
  const ConditionResult cs = condition_C_check(td.body, eps, {}, {}, ExecPolicy::serial);
  c.require(cp.holds == cs.holds && cp.witness_pair.has_value() == cs.witness_pair.has_value() &&
                (!cp.witness_pair || (cp.witness_pair->first == cs.witness_pair->first &&
                                      cp.witness_pair->second == cs.witness_pair->second)),
            "condition (C) witness differs");
  return c.done();
}

using Runner = std::function<CheckResult(std::uint64_t)>;

struct Entry {
  const char* id;
  Runner run;
};

template <CheckResult (*F)()>
CheckResult unseeded(std::uint64_t) {
  return F();
}

std::vector<Entry> theorems() {
  return {{"C1", ball_modulus_exactness},
          {"C2", unseeded<limit_constant>},
          {"C3", unseeded<threshold_theorem>},
          {"C4", unseeded<strict_ball_inequality>},
          {"C5", ellipse_fixture},
          {"C6", hull_pipeline},
          {"C7", unseeded<lens_identities>},
          {"C8", unseeded<refinement_recurrence>},
          {"C9", unseeded<sequence_conditions>},
          {"C10", unseeded<convexity_necessity>},
          {"C11", radius_monotonicity}};
}

std::vector<Entry> lens_suite() {
  return {{"L1", lens_structure},
          {"L2", lens_oracles},
          {"L3", short_arc_invariants},
          {"L4", solid_lens},
          {"L5", unseeded<arc_property_examples>}};
}

std::vector<Entry> oracle_suite() {
  return {{"O1", brute_agreement},
          {"O2", unseeded<limit_stability>},
          {"O3", unseeded<grid_bodies>},
          {"O4", unseeded<serial_parallel>}};
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"theorems", "lens", "oracles", "all"};
  return names;
}

bool known_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  if (!known_suite(name)) throw DomainError("unknown suite \"" + name + "\"");
  std::vector<Entry> entries;
  auto add = [&](std::vector<Entry> more) { entries.insert(entries.end(), more.begin(), more.end()); };
  if (name == "theorems" || name == "all") add(theorems());
  if (name == "lens" || name == "all") add(lens_suite());
  if (name == "oracles" || name == "all") add(oracle_suite());
  SuiteReport report{name, seed, {}};
  for (const Entry& e : entries) {
    try {
      report.checks.push_back(e.run(seed));
    } catch (const std::exception& ex) {
      CheckResult failed;
      failed.id = e.id;
      failed.title = "check raised an exception";
      failed.passed = false;
      failed.failures.push_back(ex.what());
      report.checks.push_back(std::move(failed));
    }
  }
  return report;
}

Json to_json(const SuiteReport& report) {
  Json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["passed"] = report.passed();
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back(Json{{"id", c.id},
                          {"title", c.title},
                          {"passed", c.passed},
                          {"failures", c.failures},
                          {"metrics", c.metrics}});
  }
  j["checks"] = checks;
  return j;
}

std::string table(const SuiteReport& report) {
  std::ostringstream out;
  for (const CheckResult& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.id;
    for (std::size_t pad = c.id.size(); pad < 5; ++pad) out << ' ';
    out << c.title;
    if (!c.failures.empty()) out << "  [" << c.failures.front() << "]";
    out << '\n';
  }
  out << (report.passed() ? "all checks passed" : "some checks failed") << " (suite " << report.suite
      << ", seed " << report.seed << ")\n";
  return out.str();
}

}  // namespace scg::verify
