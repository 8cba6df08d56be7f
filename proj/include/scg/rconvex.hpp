#pragma once

// r-convexity: spherical-support checks, certification by representation,
// r-hulls of planar point sets, local checks on neighborhoods, the sampled
// sequence conditions (A) and (C), and radius-refinement numerics.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scg/bodies.hpp"
#include "scg/lens_arc.hpp"
#include "scg/modulus.hpp"

namespace scg {

enum class RConvexMethod {
  support_condition,    // sampled supporting balls (implicit bodies)
  disk_polygon_radius,  // generator radius compared to r
  flat_edge,            // polygon edge
  threshold,            // dyadic modulus ratios against 1/(8r)
  convexity,            // a chord midpoint outside the body
  degenerate,           // single point
};
const char* to_string(RConvexMethod m) noexcept;

struct Witness {
  Point boundary_point;
  std::optional<Point> normal;
  Point violating_point;
  /// Chord whose midpoint is violating_point (convexity method).
  std::optional<std::pair<Point, Point>> chord;
  /// Distance by which violating_point exceeds the supporting ball.
  double excess = 0.0;
};

struct RConvexityReport {
  double r = 0.0;
  Verdict verdict = Verdict::inconclusive;
  RConvexMethod method = RConvexMethod::support_condition;
  std::optional<Witness> witness;
  std::vector<ModulusSample> samples;  // threshold method only
  std::string note;
};

struct SupportResult {
  bool holds = true;
  std::optional<Point> violating_point;  // lexicographically smallest violator
  double excess = 0.0;                   // largest distance beyond the ball
};

/// Whether the body lies in the closed ball B(x - r v, r). Exact bodies test
/// vertices and arc extremes and require v to be an outer normal at x
/// (DomainError otherwise); implicit bodies test boundary samples with a
/// slack of resolution + abs_geom + 1e-6 r for normal estimation error.
SupportResult spherical_support_at(const Body& body, const Point& x, const Point& v, double r,
                                   const SampleConfig& cfg = {}, const Tolerance& tol = {});
/// Same, against caller-provided samples (implicit bodies only use these).
SupportResult spherical_support_at(const Body& body, const Point& x, const Point& v, double r,
                                   const std::vector<Point>& samples, const Tolerance& tol = {});

/// Exact verdicts for polygons and disk-polygons; implicit bodies are refuted
/// with a witness or left inconclusive.
RConvexityReport is_r_convex(const Body& body, double r, const SampleConfig& cfg = {},
                             const Tolerance& tol = {});

enum class CheckMethod { support, threshold, automatic };

/// `support` is is_r_convex; `threshold` runs threshold_test (eps0 =
/// min(0.5, diameter / 4), k = 8); `automatic` runs is_r_convex and falls back
/// to the threshold test when that is inconclusive for a convex-flagged body.
RConvexityReport check_r_convexity(const Body& body, double r, CheckMethod method,
                                   const SampleConfig& cfg = {}, const ModulusBudget& budget = {},
                                   const Tolerance& tol = {});

/// Intersection of all radius-r disks containing the points. Throws
/// NoContainingBall (carrying the minimal enclosing radius) when there is none.
DiskPolygon r_hull(std::span<const Point> points, double r, const Tolerance& tol = {});

struct LocalCheckResult {
  bool holds = true;
  std::optional<Point> witness;                    // arc point outside B(x, rho) ∩ body
  std::optional<std::pair<Point, Point>> pair;     // the chord it came from
  std::optional<Point> normal;                     // spherical_support_local: normal used
};

/// Sampled arc-property test of B(x, nbhd) ∩ body at radius r. Pairs are
/// drawn from region samples of the neighborhood; arcs use cfg.levels capped
/// at kSweepLevels. Throws DomainError if x is outside the body.
LocalCheckResult local_r_convex_check(const Body& body, const Point& x, double nbhd, double r,
                                      const SampleConfig& cfg = {}, const Tolerance& tol = {});

/// Whether some candidate normal v at x (cone rays and bisector, or the
/// estimated normal) puts every neighborhood sample in B(x - r v, r).
/// Throws DomainError if x is not on the boundary.
LocalCheckResult spherical_support_local(const Body& body, const Point& x, double nbhd, double r,
                                         const SampleConfig& cfg = {}, const Tolerance& tol = {});

/// Arc depth used by the pair sweeps (local checks, condition A).
inline constexpr int kSweepLevels = 6;

struct ConditionResult {
  bool holds = true;
  std::vector<double> checked_eps;
  std::vector<double> skipped_eps;  // larger than the diameter
  std::size_t pairs_tested = 0;
  std::optional<std::pair<Point, Point>> witness_pair;
  std::optional<Point> witness_point;
};

/// For each eps and sampled pairs at distance eps, sampled lens-boundary
/// points (both short arcs) must lie in the body.
ConditionResult condition_A_check(const Body& body, double r, const std::vector<double>& eps_list,
                                  const SampleConfig& cfg = {}, const Tolerance& tol = {},
                                  ExecPolicy policy = ExecPolicy::parallel);
/// For each eps and sampled pairs at distance eps, sampled segment points
/// must lie in the body.
ConditionResult condition_C_check(const Body& body, const std::vector<double>& eps_list,
                                  const SampleConfig& cfg = {}, const Tolerance& tol = {},
                                  ExecPolicy policy = ExecPolicy::parallel);

struct RefinementTrace {
  double r_target = 0.0;
  std::vector<double> sequence;
  bool converged = false;
};

/// R_{n+1} = 2 R_n / (1 + R_n / r), starting at R0. Throws DomainError if R0 < r.
RefinementTrace radius_refinement(double R0, double r, int n, const Tolerance& tol = {});

/// R / (1/2 + 2 D) with D = (delta/eps^2) sqrt(R^2 / ((delta/eps)^2 + 1/4) - eps^2/4)
/// and delta = ball_modulus(r, eps).
double arc_radius_bound(double r, double R, double eps);

}  // namespace scg
