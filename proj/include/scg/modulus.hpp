#pragma once

// Moduli of convexity: the pairwise modulus delta_omega, the directional
// modulus delta_circ at a point, dyadic limit estimates of delta/eps^2, and
// the three-valued 1/(8r) threshold tests built on them.

#include <optional>
#include <utility>
#include <vector>

#include "scg/bodies.hpp"
#include "scg/parallel.hpp"

namespace scg {

enum class Sentinel { none, plus_infinity, minus_infinity };

struct ModulusSample {
  double eps = 0.0;
  double delta = 0.0;  // meaningful only when sentinel == none
  Sentinel sentinel = Sentinel::none;
  std::optional<std::pair<Point, Point>> witness;
  /// Accuracy with which the estimator locates the boundary (body resolution).
  double sampling_error = 0.0;

  bool finite() const noexcept { return sentinel == Sentinel::none; }
  /// delta / eps^2, or nullopt for sentinels.
  std::optional<double> ratio() const;

  static ModulusSample plus_infinity(double eps);
  static ModulusSample minus_infinity(double eps);
};

struct ModulusBudget {
  int boundary_samples = 512;   // boundary points scanned per curve
  int refine_candidates = 8;    // local minima refined by golden-section search
  int refine_iterations = 48;
  int circle_samples = 256;     // directions of y around x for delta_circ
  int perp_samples = 16;        // extra unit v samples in d > 2
  int planes = 6;               // planar sections of d > 2 bodies
  bool closed_form = true;      // dispatch single-disk bodies to ball_modulus
  ExecPolicy policy = ExecPolicy::parallel;

  void validate() const;
};

/// Infimum over pairs at distance eps of the midpoint's boundary distance,
/// searched over boundary pairs with local refinement. +infinity when eps
/// exceeds the diameter; -infinity when a midpoint falls outside the body
/// (only possible for non-convex input). Throws DomainError for eps <= 0.
ModulusSample delta_omega(const Body& body, double eps, const ModulusBudget& budget = {},
                          const Tolerance& tol = {});

/// Directional modulus at x: the largest delta with (x+y)/2 + delta v in the
/// body for every y in the body at distance eps and unit v orthogonal to x - y.
/// -infinity when no such y exists. Throws DomainError if x is outside.
ModulusSample delta_circ(const Body& body, const Point& x, double eps,
                         const ModulusBudget& budget = {}, const Tolerance& tol = {});

struct LimitEstimate {
  double value = 0.0;
  std::vector<ModulusSample> samples;  // eps0 * 2^-j, j = 0..k
  double cauchy_residual = 0.0;        // max |ratio_{j+1} - ratio_j| over the last 3 steps
  double eps0 = 0.0;
  int k = 0;
};

/// Throws ScheduleError if any sample is a sentinel.
LimitEstimate limit_estimate(const Body& body, double eps0, int k, const ModulusBudget& budget = {},
                             const Tolerance& tol = {});

enum class Verdict { certified, refuted, inconclusive };
const char* to_string(Verdict v) noexcept;

struct ThresholdReport {
  Verdict verdict = Verdict::inconclusive;
  double r = 0.0;
  double threshold = 0.0;  // 1/(8r)
  LimitEstimate estimate;
  std::vector<double> margins;  // per sample: 2 * sampling_error / eps^2
  std::optional<std::pair<Point, Point>> witness;
};

/// Residual below which the dyadic ratios count as settled, relative to 1/(8r).
inline constexpr double kSettledResidual = 0.05;

/// Certified when every ratio clears 1/(8r) - margin and the residual is
/// below kSettledResidual / (8r); refuted when some ratio falls below
/// 1/(8r) - margin; inconclusive otherwise.
ThresholdReport threshold_test(const Body& body, double r, double eps0, int k,
                               const ModulusBudget& budget = {}, const Tolerance& tol = {});

struct ProbeReport {
  Point x;
  bool passed = false;
  std::optional<double> liminf_ratio;  // nullopt when some sample was -infinity
  std::vector<ModulusSample> samples;
};

struct DirectionalThresholdReport {
  Verdict verdict = Verdict::inconclusive;
  double r = 0.0;
  double threshold = 0.0;
  bool convexity_asserted = false;
  std::vector<ProbeReport> probes;
};

/// Per probe, the smallest sampled delta_circ / eps^2 is compared to 1/(8r).
/// Combined verdict: refuted if a probe fails, certified only if all pass and
/// the body is flagged convex, inconclusive otherwise.
DirectionalThresholdReport delta_circ_threshold_test(const Body& body,
                                                     const std::vector<Point>& probes, double r,
                                                     const std::vector<double>& eps_schedule,
                                                     const ModulusBudget& budget = {},
                                                     const Tolerance& tol = {});

/// eps0 * 2^-i for i = 1..count with eps0 = min(1, diameter / 4).
std::vector<double> default_eps_schedule(const Body& body, int count = 8,
                                         const Tolerance& tol = {});

}  // namespace scg
