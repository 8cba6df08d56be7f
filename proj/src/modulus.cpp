#include "scg/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace scg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBisectIterations = 56;
const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

bool lex_pair_less(const std::pair<Point, Point>& a, const std::pair<Point, Point>& b) {
  if (lex_less(a.first, b.first)) return true;
  if (lex_less(b.first, a.first)) return false;
  return lex_less(a.second, b.second);
}

struct Candidate {
  double delta = kInf;
  double tx = 0.0;
  double ty = 0.0;
  std::optional<std::pair<Point, Point>> pair;
};

bool candidate_less(const Candidate& a, const Candidate& b) {
  if (a.delta != b.delta) return a.delta < b.delta;
  if (!a.pair || !b.pair) return a.pair.has_value() && !b.pair.has_value();
  return lex_pair_less(*a.pair, *b.pair);
}

// Finds the parameter in [a, b] where |curve(t) - x| crosses eps.
double bisect_crossing(const BoundaryCurve& curve, const Point& x, double eps, double a, double b) {
  double fa = distance(curve.at(a), x) - eps;
  for (int it = 0; it < kBisectIterations && b - a > 1e-17; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = distance(curve.at(m), x) - eps;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

Candidate evaluate_pair(const Body& body, const BoundaryCurve& curve, double tx, double ty,
                        const Tolerance& tol) {
  Candidate c;
  c.tx = tx;
  c.ty = ty;
  const Point x = curve.at(tx);
  const Point y = curve.at(ty);
  c.delta = signed_distance(body, midpoint(x, y), tol);
  c.pair = lex_less(y, x) ? std::pair{y, x} : std::pair{x, y};
  return c;
}

// Best pair with first endpoint at parameter tx and second endpoint near ty.
Candidate local_pair(const Body& body, const BoundaryCurve& curve, double eps, double tx, double ty,
                     double window, const Tolerance& tol) {
  const Point x = curve.at(tx);
  constexpr int kSteps = 8;
  Candidate best;
  double best_gap = kInf;
  double prev_t = ty - window;
  double prev_f = distance(curve.at(prev_t), x) - eps;
  for (int s = 1; s <= kSteps; ++s) {
    const double t = ty - window + 2.0 * window * s / kSteps;
    const double f = distance(curve.at(t), x) - eps;
    if ((f < 0.0) != (prev_f < 0.0)) {
      const double root = bisect_crossing(curve, x, eps, prev_t, t);
      if (std::abs(root - ty) < best_gap) {
        best_gap = std::abs(root - ty);
        best = evaluate_pair(body, curve, tx, root, tol);
      }
    }
    prev_t = t;
    prev_f = f;
  }
  return best;
}

std::optional<Candidate> scan_curve(const Body& body, const BoundaryCurve& curve, double eps,
                                    int n, const ModulusBudget& budget, const Tolerance& tol) {
  const auto N = static_cast<std::int64_t>(n);
  const double dt = 1.0 / static_cast<double>(n);
  const bool exits_only = is_convex(body);
  const std::vector<Point> pts = map_indices<Point>(
      budget.policy, N, [&](std::int64_t i) { return curve.at(static_cast<double>(i) * dt); });

  const std::vector<Candidate> per_x = map_indices<Candidate>(budget.policy, N, [&](std::int64_t i) {
    Candidate best;
    const Point& x = pts[static_cast<std::size_t>(i)];
    double prev = -eps;
    for (std::int64_t k = 1; k <= N; ++k) {
      const double cur = distance(pts[static_cast<std::size_t>((i + k) % N)], x) - eps;
      // On a convex curve every chord is seen once as an exit crossing.
      const bool crossing = exits_only ? (prev < 0.0 && cur >= 0.0) : ((cur < 0.0) != (prev < 0.0));
      if (crossing) {
        const double a = static_cast<double>(i + k - 1) * dt;
        const double root = bisect_crossing(curve, x, eps, a, a + dt);
        const Candidate c = evaluate_pair(body, curve, static_cast<double>(i) * dt, root, tol);
        if (candidate_less(c, best)) best = c;
      }
      prev = cur;
    }
    return best;
  });

  const auto best_index = argmin(per_x, candidate_less, [](const Candidate&, const Candidate&) {
    return false;
  });
  if (!best_index || per_x[*best_index].delta == kInf) return std::nullopt;
  Candidate best = per_x[*best_index];

  // Refine around the deepest local minima of the per-x profile.
  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < per_x.size(); ++i) {
    const double v = per_x[i].delta;
    if (v == kInf) continue;
    const double l = per_x[(i + per_x.size() - 1) % per_x.size()].delta;
    const double r = per_x[(i + 1) % per_x.size()].delta;
    if (v <= l && v <= r) minima.push_back(i);
  }
  std::stable_sort(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) {
    return candidate_less(per_x[a], per_x[b]);
  });
  if (minima.size() > static_cast<std::size_t>(budget.refine_candidates)) {
    minima.resize(static_cast<std::size_t>(budget.refine_candidates));
  }
  const std::vector<Candidate> refined = map_indices<Candidate>(
      budget.policy, static_cast<std::int64_t>(minima.size()), [&](std::int64_t m) {
        const Candidate& seed = per_x[minima[static_cast<std::size_t>(m)]];
        Candidate local = seed;
        double ty = seed.ty;
        auto f = [&](double tx) {
          Candidate c = local_pair(body, curve, eps, tx, ty, 2.0 * dt, tol);
          if (candidate_less(c, local)) local = c;
          return c.delta;
        };
        double a = seed.tx - dt;
        double b = seed.tx + dt;
        double x1 = b - kGolden * (b - a);
        double x2 = a + kGolden * (b - a);
        double f1 = f(x1);
        double f2 = f(x2);
        for (int it = 0; it < budget.refine_iterations; ++it) {
          ty = local.ty;
          if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
          } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
          }
        }
        return local;
      });
  for (const Candidate& c : refined) {
    if (candidate_less(c, best)) best = c;
  }
  return best;
}

std::vector<std::pair<Point, Point>> section_planes(int dim, int planes) {
  std::vector<std::pair<Point, Point>> out;
  for (int a = 0; a < dim && static_cast<int>(out.size()) < planes; ++a) {
    for (int b = a + 1; b < dim && static_cast<int>(out.size()) < planes; ++b) {
      out.emplace_back(Point::axis(dim, a), Point::axis(dim, b));
    }
  }
  for (std::uint64_t s = 0; static_cast<int>(out.size()) < planes; ++s) {
    const Point e1 = sample_sphere(dim, 0x5ec7, 1, s);
    Point e2 = sample_sphere(dim, 0x5ec7, 2, s);
    e2 -= e1 * e2.dot(e1);
    if (e2.norm() < 1e-3) continue;
    out.emplace_back(e1, e2 / e2.norm());
  }
  return out;
}

ModulusSample finish(const Body& body, double eps, const Candidate& c, const Tolerance& tol) {
  const double res = body_resolution(body, tol);
  if (c.delta < -(res + tol.abs_geom)) {
    ModulusSample s = ModulusSample::minus_infinity(eps);
    s.witness = c.pair;
    s.sampling_error = res;
    return s;
  }
  ModulusSample s;
  s.eps = eps;
  s.delta = std::max(0.0, c.delta);
  s.witness = c.pair;
  s.sampling_error = res;
  return s;
}

}  // namespace

std::optional<double> ModulusSample::ratio() const {
  if (!finite()) return std::nullopt;
  return delta / (eps * eps);
}

ModulusSample ModulusSample::plus_infinity(double eps) {
  ModulusSample s;
  s.eps = eps;
  s.sentinel = Sentinel::plus_infinity;
  return s;
}

ModulusSample ModulusSample::minus_infinity(double eps) {
  ModulusSample s;
  s.eps = eps;
  s.sentinel = Sentinel::minus_infinity;
  return s;
}

void ModulusBudget::validate() const {
  if (boundary_samples < 8 || refine_candidates < 0 || refine_iterations < 0 ||
      circle_samples < 8 || perp_samples < 0 || planes < 1) {
    throw DomainError("invalid modulus budget");
  }
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::certified:
      return "certified";
    case Verdict::refuted:
      return "refuted";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

ModulusSample delta_omega(const Body& body, double eps, const ModulusBudget& budget,
                          const Tolerance& tol) {
  budget.validate();
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("delta_omega: eps must be positive");
  const DiameterBounds diam = diameter_bounds(body, tol);
  if (eps > diam.upper + tol.abs_geom) return ModulusSample::plus_infinity(eps);

  if (const auto* dp = std::get_if<DiskPolygon>(&body);
      budget.closed_form && dp != nullptr && dp->kind() == DiskPolygonKind::disk) {
    const double R = dp->radius();
    if (eps > 2.0 * R) return ModulusSample::plus_infinity(eps);
    const Point& c = dp->centers().front();
    const double h = std::sqrt(std::max(0.0, R * R - eps * eps / 4.0));
    ModulusSample s;
    s.eps = eps;
    s.delta = ball_modulus(R, eps);
    s.witness = std::pair{c + Point{-eps / 2.0, -h}, c + Point{eps / 2.0, -h}};
    s.sampling_error = tol.abs_geom;
    return s;
  }

  const int d = dimension(body);
  std::optional<Candidate> best;
  auto consider = [&](const std::optional<Candidate>& c) {
    if (c && (!best || candidate_less(*c, *best))) best = c;
  };
  auto scan_all = [&](int n) {
    if (d == 2) {
      consider(scan_curve(body, BoundaryCurve(body, tol), eps, n, budget, tol));
      return;
    }
    if (!std::holds_alternative<ImplicitBody>(body)) throw DimensionMismatch("exact bodies are planar");
    for (const auto& [e1, e2] : section_planes(d, budget.planes)) {
      consider(scan_curve(body, BoundaryCurve(body, e1, e2, tol), eps, n, budget, tol));
    }
  };
  scan_all(budget.boundary_samples);
  if (!best && eps <= diam.lower) scan_all(4 * budget.boundary_samples);
  if (!best) return ModulusSample::plus_infinity(eps);
  return finish(body, eps, *best, tol);
}

ModulusSample delta_circ(const Body& body, const Point& x, double eps, const ModulusBudget& budget,
                         const Tolerance& tol) {
  budget.validate();
  if (x.dim() != dimension(body)) throw DimensionMismatch("probe point dimension differs from body");
  if (!contains(body, x, tol)) throw DomainError("delta_circ: x must belong to the body");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("delta_circ: eps must be nonnegative");
  const double res = body_resolution(body, tol);
  if (eps == 0.0) {
    ModulusSample s;
    s.eps = 0.0;
    s.delta = std::max(0.0, boundary_distance(body, x, tol));
    s.sampling_error = res;
    return s;
  }

  struct Eval {
    bool feasible = false;
    bool midpoint_outside = false;
    double value = kInf;
    Point y;
  };
  const int d = x.dim();
  auto eval_y = [&](const Point& y) {
    Eval e;
    if (!contains(body, y, tol)) return e;
    e.feasible = true;
    e.y = y;
    const Point m = midpoint(x, y);
    if (!contains(body, m, tol)) {
      e.midpoint_outside = true;
      e.value = -kInf;
      return e;
    }
    const UnitVector u = UnitVector::normalize(y - x);
    if (d == 2) {
      const Point n = perp_ccw(u.vec());
      e.value = std::min(ray_exit(body, m, n, tol), ray_exit(body, m, -n, tol));
    } else {
      for (const UnitVector& v : perp_directions(u, budget.perp_samples)) {
        e.value = std::min(e.value, ray_exit(body, m, v.vec(), tol));
      }
    }
    return e;
  };
  auto better = [](const Eval& a, const Eval& b) {
    if (!a.feasible) return false;
    if (!b.feasible) return true;
    if (a.value != b.value) return a.value < b.value;
    return lex_less(a.y, b.y);
  };

  Eval best;
  const auto M = static_cast<std::int64_t>(budget.circle_samples);
  if (d == 2) {
    const double dphi = 2.0 * kPi / static_cast<double>(M);
    auto y_at = [&](double phi) { return x + polar(phi) * eps; };
    const std::vector<char> in = map_indices<char>(budget.policy, M, [&](std::int64_t k) {
      return static_cast<char>(contains(body, y_at(static_cast<double>(k) * dphi), tol));
    });
    // Each slot yields the sample itself and, at an in/out change, the boundary crossing.
    const std::vector<Eval> evals = map_indices<Eval>(budget.policy, M, [&](std::int64_t k) {
      const auto ku = static_cast<std::size_t>(k);
      const auto kn = static_cast<std::size_t>((k + 1) % M);
      Eval e = in[ku] ? eval_y(y_at(static_cast<double>(k) * dphi)) : Eval{};
      if (in[ku] != in[kn]) {
        double a = static_cast<double>(k) * dphi;  // inside end
        double b = a + dphi;
        if (!in[ku]) std::swap(a, b);
        for (int it = 0; it < kBisectIterations; ++it) {
          const double mid = 0.5 * (a + b);
          if (contains(body, y_at(mid), tol)) {
            a = mid;
          } else {
            b = mid;
          }
        }
        const Eval c = eval_y(y_at(a));
        if (better(c, e)) e = c;
      }
      return e;
    });
    std::optional<std::size_t> best_k;
    for (std::size_t k = 0; k < evals.size(); ++k) {
      if (better(evals[k], best)) {
        best = evals[k];
        best_k = k;
      }
    }
    if (best.feasible && !best.midpoint_outside && best_k) {
      double a = static_cast<double>(*best_k) * dphi - dphi;
      double b = a + 3.0 * dphi;
      auto f = [&](double phi) {
        const Eval e = eval_y(y_at(phi));
        if (better(e, best) && !e.midpoint_outside) best = e;
        return e.feasible ? e.value : kInf;
      };
      double x1 = b - kGolden * (b - a);
      double x2 = a + kGolden * (b - a);
      double f1 = f(x1);
      double f2 = f(x2);
      for (int it = 0; it < budget.refine_iterations; ++it) {
        if (f1 < f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - kGolden * (b - a);
          f1 = f(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + kGolden * (b - a);
          f2 = f(x2);
        }
      }
    }
  } else {
    std::vector<Point> dirs;
    for (int k = 0; k < d; ++k) {
      dirs.push_back(Point::axis(d, k));
      dirs.push_back(-Point::axis(d, k));
    }
    for (std::int64_t s = 0; s < M; ++s) {
      dirs.push_back(sample_sphere(d, 0xc12c, 5, static_cast<std::uint64_t>(s)));
    }
    const std::vector<Eval> evals = map_indices<Eval>(
        budget.policy, static_cast<std::int64_t>(dirs.size()),
        [&](std::int64_t k) { return eval_y(x + dirs[static_cast<std::size_t>(k)] * eps); });
    for (const Eval& e : evals) {
      if (better(e, best)) best = e;
    }
  }

  if (!best.feasible) return ModulusSample::minus_infinity(eps);
  ModulusSample s = best.midpoint_outside ? ModulusSample::minus_infinity(eps) : ModulusSample{};
  s.eps = eps;
  if (!best.midpoint_outside) s.delta = std::max(0.0, best.value);
  s.witness = std::pair{x, best.y};
  s.sampling_error = res;
  return s;
}

LimitEstimate limit_estimate(const Body& body, double eps0, int k, const ModulusBudget& budget,
                             const Tolerance& tol) {
  if (!(eps0 > 0.0) || !std::isfinite(eps0)) throw DomainError("eps0 must be positive");
  if (k < 1) throw DomainError("k must be at least 1");
  LimitEstimate est;
  est.eps0 = eps0;
  est.k = k;
  std::vector<double> ratios;
  for (int j = 0; j <= k; ++j) {
    const double eps = std::ldexp(eps0, -j);
    ModulusSample s = delta_omega(body, eps, budget, tol);
    if (s.sentinel == Sentinel::plus_infinity) {
      throw ScheduleError("no pair at distance " + std::to_string(eps) + "; eps0 exceeds the diameter");
    }
    if (s.sentinel == Sentinel::minus_infinity) {
      throw ScheduleError("a chord midpoint at distance " + std::to_string(eps) +
                          " lies outside the body; the body is not convex");
    }
    ratios.push_back(*s.ratio());
    est.samples.push_back(std::move(s));
  }
  est.value = ratios.back();
  for (int j = std::max(0, k - 3); j < k; ++j) {
    est.cauchy_residual = std::max(est.cauchy_residual, std::abs(ratios[j + 1] - ratios[j]));
  }
  return est;
}

ThresholdReport threshold_test(const Body& body, double r, double eps0, int k,
                               const ModulusBudget& budget, const Tolerance& tol) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  ThresholdReport rep;
  rep.r = r;
  rep.threshold = 1.0 / (8.0 * r);
  rep.estimate = limit_estimate(body, eps0, k, budget, tol);
  bool all_clear = true;
  std::optional<std::size_t> worst;
  double worst_gap = 0.0;
  for (std::size_t j = 0; j < rep.estimate.samples.size(); ++j) {
    const ModulusSample& s = rep.estimate.samples[j];
    const double margin = 2.0 * s.sampling_error / (s.eps * s.eps);
    rep.margins.push_back(margin);
    const double gap = *s.ratio() - (rep.threshold - margin);
    if (gap < 0.0) {
      all_clear = false;
      if (!worst || gap < worst_gap) {
        worst = j;
        worst_gap = gap;
      }
    }
  }
  if (worst) {
    rep.verdict = Verdict::refuted;
    rep.witness = rep.estimate.samples[*worst].witness;
  } else if (all_clear && rep.estimate.cauchy_residual <= kSettledResidual * rep.threshold) {
    rep.verdict = Verdict::certified;
  } else {
    rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

DirectionalThresholdReport delta_circ_threshold_test(const Body& body,
                                                     const std::vector<Point>& probes, double r,
                                                     const std::vector<double>& eps_schedule,
                                                     const ModulusBudget& budget,
                                                     const Tolerance& tol) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  if (probes.empty()) throw DomainError("at least one probe point is required");
  if (eps_schedule.empty()) throw DomainError("empty eps schedule");
  for (double e : eps_schedule) {
    if (!(e > 0.0)) throw DomainError("eps schedule entries must be positive");
  }
  for (const Point& p : probes) {
    if (!contains(body, p, tol)) throw DomainError("probe point outside the body");
  }
  DirectionalThresholdReport rep;
  rep.r = r;
  rep.threshold = 1.0 / (8.0 * r);
  rep.convexity_asserted = is_convex(body);
  bool all_pass = true;
  for (const Point& p : probes) {
    ProbeReport pr;
    pr.x = p;
    pr.passed = true;
    for (double eps : eps_schedule) {
      ModulusSample s = delta_circ(body, p, eps, budget, tol);
      const std::optional<double> ratio = s.ratio();
      if (!ratio) {
        pr.passed = false;
      } else {
        const double margin = 2.0 * s.sampling_error / (eps * eps);
        if (*ratio < rep.threshold - margin) pr.passed = false;
      }
      pr.samples.push_back(std::move(s));
    }
    const bool any_sentinel = std::any_of(pr.samples.begin(), pr.samples.end(),
                                          [](const ModulusSample& s) { return !s.finite(); });
    if (!any_sentinel) {
      double lo = kInf;
      for (const ModulusSample& s : pr.samples) lo = std::min(lo, *s.ratio());
      pr.liminf_ratio = lo;
    }
    all_pass = all_pass && pr.passed;
    rep.probes.push_back(std::move(pr));
  }
  if (!all_pass) {
    rep.verdict = Verdict::refuted;
  } else {
    rep.verdict = rep.convexity_asserted ? Verdict::certified : Verdict::inconclusive;
  }
  return rep;
}

std::vector<double> default_eps_schedule(const Body& body, int count, const Tolerance& tol) {
  if (count < 1) throw DomainError("schedule length must be positive");
  const double eps0 = std::min(1.0, diameter(body, tol) / 4.0);
  if (!(eps0 > 0.0)) throw DomainError("body has zero diameter");
  std::vector<double> out;
  for (int i = 1; i <= count; ++i) out.push_back(std::ldexp(eps0, -i));
  return out;
}

}  // namespace scg
