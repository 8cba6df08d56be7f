#include "scg/rconvex.hpp"

#include <algorithm>
#include <cmath>

#include "scg/parallel.hpp"

namespace scg {

namespace {

constexpr double kNormalSlack = 1e-6;  // relative to r, covers estimated normals

using PointPair = std::pair<Point, Point>;

struct Violation {
  std::optional<Point> point;
  std::optional<PointPair> pair;
};

bool violation_less(const Violation& a, const Violation& b) {
  if (!a.point) return false;
  if (!b.point) return true;
  return lex_less(*a.point, *b.point);
}

Violation reduce(const std::vector<Violation>& vs) {
  Violation best;
  for (const Violation& v : vs) {
    if (violation_less(v, best)) best = v;
  }
  return best;
}

SupportResult support_against(const Point& x, const Point& v, double r,
                              const std::vector<Point>& candidates, double slack) {
  const Point c = x - v * r;
  SupportResult res;
  for (const Point& p : candidates) {
    const double e = distance(p, c) - r;
    if (e <= slack) continue;
    res.holds = false;
    res.excess = std::max(res.excess, e);
    if (!res.violating_point || lex_less(p, *res.violating_point)) res.violating_point = p;
  }
  return res;
}

std::vector<Point> exact_support_candidates(const Body& body, const Point& c) {
  std::vector<Point> out;
  if (const auto* poly = std::get_if<ConvexPolygon>(&body)) return poly->vertices();
  const auto& dp = std::get<DiskPolygon>(body);
  if (dp.kind() == DiskPolygonKind::point) return {dp.point()};
  for (const CircularArc& arc : dp.arcs()) {
    if (!arc.full_circle()) {
      out.push_back(arc.start());
      out.push_back(arc.end());
    }
    const Point away = arc.center - c;
    const double n = away.norm();
    const double ang = n > 0.0 ? std::atan2(away.y(), away.x()) : 0.0;
    if (arc.full_circle() || arc.covers_angle(ang)) out.push_back(arc.center + polar(ang) * arc.radius);
  }
  return out;
}

double support_slack(const Body& body, double r, const Tolerance& tol) {
  if (is_exact(body)) return tol.abs_geom;
  return body_resolution(body, tol) + tol.abs_geom + kNormalSlack * r;
}

std::vector<Point> all_samples(const RegionSamples& s) {
  std::vector<Point> pts = s.boundary;
  pts.insert(pts.end(), s.interior.begin(), s.interior.end());
  return pts;
}

void require_boundary_point(const Body& body, const Point& x, const Tolerance& tol) {
  if (x.dim() != dimension(body)) throw DimensionMismatch("point dimension differs from body");
  if (is_exact(body)) {
    if (boundary_distance(body, x, tol) != 0.0) throw DomainError("x is not a boundary point");
    return;
  }
  const double slack = std::max(1e-6, body_resolution(body, tol));
  if (!contains(body, x, tol) || signed_distance(body, x, tol) > slack) {
    throw DomainError("x is not a boundary point");
  }
}

// Index pairs (i < j) over n points, the first nb of which are boundary
// points. Boundary pairs come first; the rest are thinned deterministically
// to fit the budget.
std::vector<std::pair<std::uint32_t, std::uint32_t>> select_pairs(std::size_t nb, std::size_t n,
                                                                  std::size_t budget,
                                                                  std::uint64_t seed) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  const std::size_t total = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t bb = nb * (nb - (nb > 0 ? 1 : 0)) / 2;
  double keep_rest = 1.0;
  double keep_bb = 1.0;
  if (total > budget) {
    if (bb >= budget) {
      keep_bb = static_cast<double>(budget) / static_cast<double>(bb);
      keep_rest = 0.0;
    } else {
      keep_rest = static_cast<double>(budget - bb) / static_cast<double>(total - bb);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double keep = j < nb ? keep_bb : keep_rest;
      if (keep < 1.0 && counter_uniform(seed, 0x9a1, i * n + j) >= keep) continue;
      out.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  return out;
}

// First sampled arc point outside `inside` (lexicographically smallest).
template <class Inside>
std::optional<Point> arc_violation(const Point& a, const Point& b, double r, int levels, int planes,
                                   Inside&& inside) {
  const double len = distance(a, b);
  if (len == 0.0 || len > 2.0 * r) return std::nullopt;
  std::optional<Point> worst;
  for (const Point& w : bulge_directions(a, b, planes)) {
    const std::vector<Point> pts = arc_sample(short_arc(a, b, r, w), levels);
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
      if (inside(pts[k])) continue;
      if (!worst || lex_less(pts[k], *worst)) worst = pts[k];
    }
  }
  return worst;
}

template <class Inside>
std::optional<Point> segment_violation(const Point& a, const Point& b, int levels, Inside&& inside) {
  const int count = 1 << levels;
  std::optional<Point> worst;
  for (int k = 1; k < count; ++k) {
    const double s = static_cast<double>(k) / count;
    const Point p = a + (b - a) * s;
    if (inside(p)) continue;
    if (!worst || lex_less(p, *worst)) worst = p;
  }
  return worst;
}

// Chords of length eps between sampled points of the body.
std::vector<PointPair> chords_at(const Body& body, const std::vector<Point>& pts, double eps,
                                 const SampleConfig& cfg, const Tolerance& tol, ExecPolicy policy) {
  const int d = dimension(body);
  std::vector<Point> dirs;
  if (d == 2) {
    for (int k = 0; k < cfg.directions; ++k) dirs.push_back(polar(2.0 * kPi * k / cfg.directions));
  } else {
    for (int k = 0; k < d; ++k) {
      dirs.push_back(Point::axis(d, k));
      dirs.push_back(-Point::axis(d, k));
    }
    for (int k = static_cast<int>(dirs.size()); k < cfg.directions; ++k) {
      dirs.push_back(sample_sphere(d, cfg.seed, 0xd1, static_cast<std::uint64_t>(k)));
    }
  }
  const auto per_point = map_indices<std::vector<PointPair>>(
      policy, static_cast<std::int64_t>(pts.size()), [&](std::int64_t i) {
        std::vector<PointPair> out;
        const Point& x = pts[static_cast<std::size_t>(i)];
        for (const Point& u : dirs) {
          const Point y = x + u * eps;
          if (contains(body, y, tol)) out.emplace_back(x, y);
        }
        return out;
      });
  std::vector<PointPair> chords;
  for (const auto& v : per_point) chords.insert(chords.end(), v.begin(), v.end());

  if (d == 2 && is_convex(body)) {
    // Boundary chords: from each curve sample to the first crossing at distance eps.
    BoundaryCurve curve(body, tol);
    const int m = 4 * std::max(2, cfg.points);
    const auto boundary = map_indices<std::optional<PointPair>>(policy, m, [&](std::int64_t i) {
      const double t0 = static_cast<double>(i) / m;
      const Point x = curve.at(t0);
      constexpr int kScan = 256;
      double prev = t0;
      for (int s = 1; s <= kScan; ++s) {
        const double t = t0 + static_cast<double>(s) / kScan;
        if (distance(curve.at(t), x) >= eps) {
          double a = prev;
          double b = t;
          for (int it = 0; it < 56; ++it) {
            const double mid = 0.5 * (a + b);
            if (distance(curve.at(mid), x) < eps) {
              a = mid;
            } else {
              b = mid;
            }
          }
          return std::optional<PointPair>{PointPair{x, curve.at(a)}};
        }
        prev = t;
      }
      return std::optional<PointPair>{};
    });
    for (const auto& p : boundary) {
      if (p) chords.push_back(*p);
    }
  }

  if (chords.size() > static_cast<std::size_t>(cfg.pairs)) {
    const double keep = static_cast<double>(cfg.pairs) / static_cast<double>(chords.size());
    std::vector<PointPair> thinned;
    for (std::size_t i = 0; i < chords.size(); ++i) {
      if (counter_uniform(cfg.seed, 0xc40, i) < keep) thinned.push_back(chords[i]);
    }
    chords = std::move(thinned);
  }
  return chords;
}

template <class Test>
ConditionResult run_condition(const Body& body, const std::vector<double>& eps_list,
                              const SampleConfig& cfg, const Tolerance& tol, ExecPolicy policy,
                              Test&& test) {
  cfg.validate();
  if (eps_list.empty()) throw DomainError("empty eps list");
  for (double e : eps_list) {
    if (!(e > 0.0) || !std::isfinite(e)) throw DomainError("eps values must be positive");
  }
  const double diam = diameter(body, tol);
  const std::vector<Point> pts = all_samples(region_samples(body, cfg, tol));
  ConditionResult res;
  for (double eps : eps_list) {
    if (eps > diam + tol.abs_geom) {
      res.skipped_eps.push_back(eps);
      continue;
    }
    res.checked_eps.push_back(eps);
    const std::vector<PointPair> chords = chords_at(body, pts, eps, cfg, tol, policy);
    res.pairs_tested += chords.size();
    const auto found = map_indices<Violation>(
        policy, static_cast<std::int64_t>(chords.size()), [&](std::int64_t i) {
          const PointPair& c = chords[static_cast<std::size_t>(i)];
          return Violation{test(c.first, c.second), c};
        });
    const Violation v = reduce(found);
    if (v.point && (!res.witness_point || lex_less(*v.point, *res.witness_point))) {
      res.holds = false;
      res.witness_point = v.point;
      res.witness_pair = v.pair;
    }
  }
  return res;
}

RConvexityReport convexity_probe(const Body& body, double r, const SampleConfig& cfg,
                                 const Tolerance& tol) {
  RConvexityReport rep;
  rep.r = r;
  const double diam = diameter(body, tol);
  std::vector<double> eps = default_eps_schedule(body, 8, tol);
  eps.insert(eps.begin(), {diam / 2.0, diam / 4.0});
  const ConditionResult c = condition_C_check(body, eps, cfg, tol);
  if (c.holds) return rep;
  const PointPair& chord = *c.witness_pair;
  const Point mid = midpoint(chord.first, chord.second);
  rep.verdict = Verdict::refuted;
  rep.method = RConvexMethod::convexity;
  Witness w;
  w.boundary_point = chord.first;
  w.violating_point = contains(body, mid, tol) ? *c.witness_point : mid;
  w.chord = chord;
  w.excess = std::max(0.0, -signed_distance(body, w.violating_point, tol));
  rep.witness = w;
  rep.note = "a chord leaves the body, so it is not convex";
  return rep;
}

}  // namespace

const char* to_string(RConvexMethod m) noexcept {
  switch (m) {
    case RConvexMethod::support_condition:
      return "support_condition";
    case RConvexMethod::disk_polygon_radius:
      return "disk_polygon_radius";
    case RConvexMethod::flat_edge:
      return "flat_edge";
    case RConvexMethod::threshold:
      return "threshold";
    case RConvexMethod::convexity:
      return "convexity";
    case RConvexMethod::degenerate:
      return "degenerate";
  }
  return "support_condition";
}

SupportResult spherical_support_at(const Body& body, const Point& x, const Point& v, double r,
                                   const std::vector<Point>& samples, const Tolerance& tol) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  if (x.dim() != dimension(body) || v.dim() != x.dim()) {
    throw DimensionMismatch("point, normal and body dimensions differ");
  }
  const Point u = UnitVector::normalize(v).vec();
  if (is_exact(body)) {
    require_boundary_point(body, x, tol);
    const auto [lo, hi] = bounding_box(body);
    if (!is_outer_normal(body, x, u, tol.abs_geom * std::max(1.0, distance(lo, hi)))) {
      throw DomainError("v is not an outer normal at x");
    }
    return support_against(x, u, r, exact_support_candidates(body, x - u * r), tol.abs_geom);
  }
  return support_against(x, u, r, samples, support_slack(body, r, tol));
}

SupportResult spherical_support_at(const Body& body, const Point& x, const Point& v, double r,
                                   const SampleConfig& cfg, const Tolerance& tol) {
  if (is_exact(body)) return spherical_support_at(body, x, v, r, std::vector<Point>{}, tol);
  return spherical_support_at(body, x, v, r, region_samples(body, cfg, tol).boundary, tol);
}

RConvexityReport is_r_convex(const Body& body, double r, const SampleConfig& cfg,
                             const Tolerance& tol) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  cfg.validate();
  RConvexityReport rep;
  rep.r = r;

  auto refute_at = [&](const Point& x, const Point& v, RConvexMethod method) {
    const SupportResult s = spherical_support_at(body, x, v, r, std::vector<Point>{}, tol);
    if (s.holds) return false;
    rep.verdict = Verdict::refuted;
    rep.method = method;
    rep.witness = Witness{x, v, *s.violating_point, std::nullopt, s.excess};
    return true;
  };

  if (const auto* poly = std::get_if<ConvexPolygon>(&body)) {
    if (poly->is_point()) {
      rep.verdict = Verdict::certified;
      rep.method = RConvexMethod::degenerate;
      return rep;
    }
    const auto& vs = poly->vertices();
    const std::size_t edges = poly->is_segment() ? 1 : vs.size();
    std::size_t longest = 0;
    for (std::size_t i = 1; i < edges; ++i) {
      if (distance(vs[i], vs[(i + 1) % vs.size()]) >
          distance(vs[longest], vs[(longest + 1) % vs.size()])) {
        longest = i;
      }
    }
    const Point& a = vs[longest];
    const Point& b = vs[(longest + 1) % vs.size()];
    const Point n = poly->edge_normal(longest);
    if (!refute_at(midpoint(a, b), n, RConvexMethod::flat_edge) &&
        !refute_at(a, n, RConvexMethod::flat_edge)) {
      // A flat edge is never r-convex; the violation is below abs_geom at this radius.
      rep.verdict = Verdict::refuted;
      rep.method = RConvexMethod::flat_edge;
      rep.witness = Witness{midpoint(a, b), n, b, std::nullopt, 0.0};
      rep.note = "edge violation below the geometric tolerance";
    }
    return rep;
  }

  if (const auto* dp = std::get_if<DiskPolygon>(&body)) {
    if (dp->kind() == DiskPolygonKind::point) {
      rep.verdict = Verdict::certified;
      rep.method = RConvexMethod::degenerate;
      return rep;
    }
    rep.method = RConvexMethod::disk_polygon_radius;
    if (dp->radius() <= r + tol.abs_geom) {
      rep.verdict = Verdict::certified;
      return rep;
    }
    const auto& arcs = dp->arcs();
    std::size_t widest = 0;
    for (std::size_t i = 1; i < arcs.size(); ++i) {
      if (arcs[i].sweep > arcs[widest].sweep) widest = i;
    }
    const CircularArc& arc = arcs[widest];
    const Point x = arc.at(0.5);
    const Point v = (x - arc.center) / arc.radius;
    if (!refute_at(x, v, RConvexMethod::disk_polygon_radius)) {
      rep.verdict = Verdict::refuted;
      rep.witness = Witness{x, v, arc.start(), std::nullopt, 0.0};
      rep.note = "arc violation below the geometric tolerance";
    }
    return rep;
  }

  const auto& ib = std::get<ImplicitBody>(body);
  if (!ib.convex_claimed()) {
    RConvexityReport probe = convexity_probe(body, r, cfg, tol);
    if (probe.verdict == Verdict::refuted) return probe;
  }
  const std::vector<Point> boundary = region_samples(body, cfg, tol).boundary;
  struct Hit {
    Witness w;
    bool found = false;
  };
  const auto hits = map_indices<Hit>(
      ExecPolicy::parallel, static_cast<std::int64_t>(boundary.size()), [&](std::int64_t i) {
        const Point& b = boundary[static_cast<std::size_t>(i)];
        const Point v = estimate_normal(body, b, tol).vec();
        const SupportResult s = spherical_support_at(body, b, v, r, boundary, tol);
        Hit h;
        if (!s.holds) h = Hit{Witness{b, v, *s.violating_point, std::nullopt, s.excess}, true};
        return h;
      });
  std::optional<Witness> best;
  for (const Hit& h : hits) {
    if (!h.found) continue;
    if (!best || h.w.excess > best->excess ||
        (h.w.excess == best->excess && lex_less(h.w.boundary_point, best->boundary_point))) {
      best = h.w;
    }
  }
  rep.method = RConvexMethod::support_condition;
  if (best) {
    rep.verdict = Verdict::refuted;
    rep.witness = best;
  } else {
    rep.verdict = Verdict::inconclusive;
    rep.note = "no sampled violation; sampling cannot certify an implicit body";
  }
  return rep;
}

RConvexityReport check_r_convexity(const Body& body, double r, CheckMethod method,
                                   const SampleConfig& cfg, const ModulusBudget& budget,
                                   const Tolerance& tol) {
  if (method == CheckMethod::support) return is_r_convex(body, r, cfg, tol);
  if (method == CheckMethod::automatic) {
    RConvexityReport rep = is_r_convex(body, r, cfg, tol);
    if (rep.verdict != Verdict::inconclusive || !is_convex(body)) return rep;
  }
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  if (!is_convex(body)) {
    RConvexityReport probe = convexity_probe(body, r, cfg, tol);
    if (probe.verdict == Verdict::refuted) return probe;
  }
  const double eps0 = std::min(0.5, diameter(body, tol) / 4.0);
  const ThresholdReport t = threshold_test(body, r, eps0, 8, budget, tol);
  RConvexityReport rep;
  rep.r = r;
  rep.verdict = t.verdict;
  rep.method = RConvexMethod::threshold;
  rep.samples = t.estimate.samples;
  if (t.witness) {
    rep.witness = Witness{t.witness->first, std::nullopt, t.witness->second, *t.witness, 0.0};
  }
  return rep;
}

DiskPolygon r_hull(std::span<const Point> points, double r, const Tolerance& tol) {
  if (points.empty()) throw DomainError("r_hull needs at least one point");
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  DiskPolygon centers;
  try {
    centers = intersect_disks(points, r, tol);
  } catch (const Infeasible& e) {
    throw NoContainingBall("no disk of radius " + std::to_string(r) + " contains the points",
                           e.enclosing_radius());
  }
  switch (centers.kind()) {
    case DiskPolygonKind::disk:
      return DiskPolygon::singleton(centers.centers().front(), r);
    case DiskPolygonKind::point: {
      const Point c = centers.point();
      return intersect_disks(std::span<const Point>(&c, 1), r, tol);
    }
    default:
      break;
  }
  const std::vector<Point> vs = centers.vertices();
  return intersect_disks(vs, r, tol);
}

LocalCheckResult local_r_convex_check(const Body& body, const Point& x, double nbhd, double r,
                                      const SampleConfig& cfg, const Tolerance& tol) {
  cfg.validate();
  if (x.dim() != dimension(body)) throw DimensionMismatch("point dimension differs from body");
  if (!(nbhd > 0.0) || !(r > 0.0)) throw DomainError("radii must be positive");
  if (!contains(body, x, tol)) throw DomainError("x must belong to the body");
  const Ball window{x, nbhd};
  const RegionSamples s = region_samples(body, cfg, tol, window);
  const std::vector<Point> pts = all_samples(s);
  const auto pairs = select_pairs(s.boundary.size(), pts.size(),
                                  static_cast<std::size_t>(cfg.pairs), cfg.seed);
  auto inside = [&](const Point& p) {
    return window.contains(p, tol.abs_geom) && contains(body, p, tol);
  };
  const int levels = std::min(cfg.levels, kSweepLevels);
  const auto found = map_indices<Violation>(
      ExecPolicy::parallel, static_cast<std::int64_t>(pairs.size()), [&](std::int64_t i) {
        const auto [a, b] = pairs[static_cast<std::size_t>(i)];
        return Violation{arc_violation(pts[a], pts[b], r, levels, cfg.planes, inside),
                         PointPair{pts[a], pts[b]}};
      });
  const Violation v = reduce(found);
  LocalCheckResult res;
  if (v.point) {
    res.holds = false;
    res.witness = v.point;
    res.pair = v.pair;
  }
  return res;
}

LocalCheckResult spherical_support_local(const Body& body, const Point& x, double nbhd, double r,
                                         const SampleConfig& cfg, const Tolerance& tol) {
  cfg.validate();
  if (!(nbhd > 0.0) || !(r > 0.0)) throw DomainError("radii must be positive");
  require_boundary_point(body, x, tol);
  std::vector<Point> normals;
  if (is_exact(body)) {
    const NormalCone cone = normal_cone(body, x, tol);
    for (const UnitVector& ray : cone.extreme_rays) normals.push_back(ray.vec());
    if (cone.extreme_rays.size() > 1) normals.push_back(cone.bisector().vec());
  } else {
    normals.push_back(estimate_normal(body, x, tol).vec());
  }
  const std::vector<Point> pts = all_samples(region_samples(body, cfg, tol, Ball{x, nbhd}));
  const double slack = support_slack(body, r, tol);
  LocalCheckResult res;
  res.holds = false;
  std::optional<SupportResult> least;
  for (const Point& v : normals) {
    const SupportResult sr = support_against(x, v, r, pts, slack);
    if (sr.holds) {
      res.holds = true;
      res.normal = v;
      res.witness.reset();
      return res;
    }
    if (!least || sr.excess < least->excess) {
      least = sr;
      res.normal = v;
      res.witness = sr.violating_point;
    }
  }
  return res;
}

ConditionResult condition_A_check(const Body& body, double r, const std::vector<double>& eps_list,
                                  const SampleConfig& cfg, const Tolerance& tol, ExecPolicy policy) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  const int levels = std::min(cfg.levels, kSweepLevels);
  return run_condition(body, eps_list, cfg, tol, policy, [&](const Point& a, const Point& b) {
    return arc_violation(a, b, r, levels, cfg.planes,
                         [&](const Point& p) { return contains(body, p, tol); });
  });
}

ConditionResult condition_C_check(const Body& body, const std::vector<double>& eps_list,
                                  const SampleConfig& cfg, const Tolerance& tol, ExecPolicy policy) {
  const int levels = std::min(cfg.levels, kSweepLevels);
  return run_condition(body, eps_list, cfg, tol, policy, [&](const Point& a, const Point& b) {
    return segment_violation(a, b, levels, [&](const Point& p) { return contains(body, p, tol); });
  });
}

RefinementTrace radius_refinement(double R0, double r, int n, const Tolerance& tol) {
  if (!(r > 0.0) || !std::isfinite(R0)) throw DomainError("radius must be positive");
  if (R0 < r) throw DomainError("radius_refinement needs R0 >= r");
  if (n < 0) throw DomainError("step count must be nonnegative");
  RefinementTrace trace;
  trace.r_target = r;
  trace.sequence.push_back(R0);
  for (int i = 0; i < n; ++i) {
    const double R = trace.sequence.back();
    trace.sequence.push_back(2.0 * R / (1.0 + R / r));
  }
  trace.converged = std::abs(trace.sequence.back() - r) < tol.abs_geom;
  return trace;
}

double arc_radius_bound(double r, double R, double eps) {
  if (!(r > 0.0) || !(R > r)) throw DomainError("arc_radius_bound needs R > r > 0");
  if (!(eps > 0.0) || !(eps < 2.0 * r)) throw DomainError("arc_radius_bound needs 0 < eps < 2r");
  const double delta = ball_modulus(r, eps);
  const double q = delta / eps;
  const double radicand = R * R / (q * q + 0.25) - eps * eps / 4.0;
  if (!(radicand > 0.0)) throw DomainError("arc_radius_bound: nonpositive radicand");
  const double D = (delta / (eps * eps)) * std::sqrt(radicand);
  return R / (0.5 + 2.0 * D);
}

}  // namespace scg
