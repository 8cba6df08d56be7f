#include "scg/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scg {

namespace {

constexpr double kFar = 1e20;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower envelope of parabolas (Felzenszwalb-Huttenlocher), one grid line.
void distance_transform_1d(const std::vector<double>& f, std::vector<double>& out,
                           std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  auto meet = [&](int q, int p) {
    const auto qu = static_cast<std::size_t>(q);
    const auto pu = static_cast<std::size_t>(p);
    return ((f[qu] + double(q) * q) - (f[pu] + double(p) * p)) / (2.0 * (q - p));
  };
  for (int q = 1; q < n; ++q) {
    double s = meet(q, v[static_cast<std::size_t>(k)]);
    while (s <= z[static_cast<std::size_t>(k)]) {
      --k;
      s = meet(q, v[static_cast<std::size_t>(k)]);
    }
    ++k;
    v[static_cast<std::size_t>(k)] = q;
    z[static_cast<std::size_t>(k)] = s;
    z[static_cast<std::size_t>(k) + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[static_cast<std::size_t>(k) + 1] < q) ++k;
    const int p = v[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(q)] = double(q - p) * (q - p) + f[static_cast<std::size_t>(p)];
  }
}

std::vector<std::size_t> strides_of(const std::vector<int>& counts) {
  std::vector<std::size_t> s(counts.size());
  std::size_t acc = 1;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    s[k] = acc;
    acc *= static_cast<std::size_t>(counts[k]);
  }
  return s;
}

std::size_t total_of(const std::vector<int>& counts) {
  std::size_t t = 1;
  for (int c : counts) t *= static_cast<std::size_t>(c);
  return t;
}

void unflatten(std::size_t flat, const std::vector<int>& counts, std::vector<int>& idx) {
  for (std::size_t k = 0; k < counts.size(); ++k) {
    idx[k] = static_cast<int>(flat % static_cast<std::size_t>(counts[k]));
    flat /= static_cast<std::size_t>(counts[k]);
  }
}

double max_pair_distance(std::span<const Point> pts) {
  double m = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) m = std::max(m, distance(pts[i], pts[j]));
  }
  return m;
}

std::vector<Point> feasible_centers(std::span<const Point> pts, double r, const BruteConfig& cfg) {
  const int d = pts.front().dim();
  for (const Point& p : pts) require_same_dim(p, pts.front());
  auto feasible = [&](const Point& c) {
    return std::all_of(pts.begin(), pts.end(),
                       [&](const Point& q) { return distance(c, q) <= r * (1.0 + 1e-12); });
  };
  const int n = cfg.circle_samples;
  const auto per_circle = map_indices<std::vector<Point>>(
      cfg.policy, static_cast<std::int64_t>(pts.size()), [&](std::int64_t i) {
        const Point& q = pts[static_cast<std::size_t>(i)];
        std::vector<Point> out;
        if (d != 2) {
          for (int k = 0; k < n; ++k) {
            const Point c = q + sample_sphere(d, cfg.seed, 0x1e5 + static_cast<std::uint64_t>(i),
                                              static_cast<std::uint64_t>(k)) * r;
            if (feasible(c)) out.push_back(c);
          }
          return out;
        }
        auto at = [&](double th) { return q + polar(th) * r; };
        const double step = 2.0 * kPi / n;
        std::vector<char> ok(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) ok[static_cast<std::size_t>(k)] = feasible(at(k * step));
        for (int k = 0; k < n; ++k) {
          const auto ku = static_cast<std::size_t>(k);
          const auto kn = static_cast<std::size_t>((k + 1) % n);
          if (ok[ku]) out.push_back(at(k * step));
          if (ok[ku] == ok[kn]) continue;
          double a = ok[ku] ? k * step : (k + 1) * step;  // feasible end
          double b = ok[ku] ? (k + 1) * step : k * step;
          for (int it = 0; it < 60; ++it) {
            const double m = 0.5 * (a + b);
            if (feasible(at(m))) {
              a = m;
            } else {
              b = m;
            }
          }
          out.push_back(at(a));
        }
        return out;
      });
  std::vector<Point> centers;
  for (const auto& v : per_circle) centers.insert(centers.end(), v.begin(), v.end());

  Point lo = pts.front();
  Point hi = pts.front();
  for (const Point& p : pts) {
    for (int k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  for (int k = 0; k < d; ++k) {
    lo[k] -= r;
    hi[k] += r;
  }
  int kept = 0;
  for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(cfg.interior_samples) * 16 &&
                            kept < cfg.interior_samples;
       ++s) {
    const Point c = sample_box(lo, hi, cfg.seed, 0x1e7, s);
    if (feasible(c)) {
      centers.push_back(c);
      ++kept;
    }
  }
  if (centers.empty()) {
    throw NoContainingBall("no sampled center of radius " + std::to_string(r) + " is feasible",
                           max_pair_distance(pts) / 2.0);
  }
  return centers;
}

}  // namespace

std::vector<double> squared_distance_transform(const std::vector<char>& feature,
                                               const std::vector<int>& counts) {
  const std::size_t total = total_of(counts);
  if (feature.size() != total) throw DimensionMismatch("feature grid size mismatch");
  std::vector<double> g(total);
  for (std::size_t i = 0; i < total; ++i) g[i] = feature[i] ? 0.0 : kFar;
  const std::vector<std::size_t> strides = strides_of(counts);
  for (std::size_t axis = 0; axis < counts.size(); ++axis) {
    const auto n = static_cast<std::size_t>(counts[axis]);
    const std::size_t stride = strides[axis];
    std::vector<double> f(n), out(n), z(n + 1);
    std::vector<int> v(n);
    for (std::size_t base = 0; base < total; ++base) {
      if ((base / stride) % n != 0) continue;
      for (std::size_t q = 0; q < n; ++q) f[q] = g[base + q * stride];
      distance_transform_1d(f, out, v, z);
      for (std::size_t q = 0; q < n; ++q) g[base + q * stride] = out[q];
    }
  }
  for (double& x : g) {
    if (x >= kFar / 2.0) x = kInf;
  }
  return g;
}

Membership raw_membership(const Body& body) {
  if (const auto* poly = std::get_if<ConvexPolygon>(&body)) {
    const std::vector<Point> v = poly->vertices();
    return [v](const Point& p) {
      if (v.size() == 1) return distance(p, v[0]) <= 1e-12;
      if (v.size() == 2) {
        const Point ab = v[1] - v[0];
        const double t = std::clamp((p - v[0]).dot(ab) / ab.dot(ab), 0.0, 1.0);
        return distance(p, v[0] + ab * t) <= 1e-12;
      }
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        if ((b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x()) < 0.0) return false;
      }
      return true;
    };
  }
  if (const auto* dp = std::get_if<DiskPolygon>(&body)) {
    if (dp->kind() == DiskPolygonKind::point) {
      const Point q = dp->point();
      return [q](const Point& p) { return distance(p, q) <= 1e-12; };
    }
    const std::vector<Point> cs = dp->centers();
    const double R = dp->radius();
    return [cs, R](const Point& p) {
      return std::all_of(cs.begin(), cs.end(), [&](const Point& c) { return distance(p, c) <= R; });
    };
  }
  const ImplicitBody ib = std::get<ImplicitBody>(body);
  return [ib](const Point& p) { return ib.member(p); };
}

ModulusSample brute_delta(const Membership& in, const Point& lo, const Point& hi, double eps,
                          const BruteConfig& cfg) {
  require_same_dim(lo, hi);
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("brute_delta: eps must be positive");
  if (!(cfg.h > 0.0)) throw DomainError("brute_delta: h must be positive");
  const int d = lo.dim();
  const double h = cfg.h;
  const double hf = h / 2.0;
  const int pad = 6;  // even, so nodes on box-aligned edges are pair endpoints
  std::vector<int> counts(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    if (!(hi[k] >= lo[k])) throw DomainError("brute_delta: empty box");
    counts[static_cast<std::size_t>(k)] =
        static_cast<int>(std::ceil((hi[k] - lo[k]) / hf - 1e-9)) + 1 + 2 * pad;
  }
  const std::size_t total = total_of(counts);
  if (total > cfg.max_nodes) throw BudgetExceeded("brute_delta grid exceeds the node budget");
  const std::vector<std::size_t> strides = strides_of(counts);
  auto node = [&](const std::vector<int>& idx) {
    Point p(d);
    for (int k = 0; k < d; ++k) p[k] = lo[k] + (idx[static_cast<std::size_t>(k)] - pad) * hf;
    return p;
  };

  const std::vector<char> occ = map_indices<char>(cfg.policy, static_cast<std::int64_t>(total),
                                                  [&](std::int64_t f) {
                                                    std::vector<int> idx(static_cast<std::size_t>(d));
                                                    unflatten(static_cast<std::size_t>(f), counts, idx);
                                                    return static_cast<char>(in(node(idx)));
                                                  });
  if (std::none_of(occ.begin(), occ.end(), [](char c) { return c != 0; })) {
    throw EmptyBody("brute_delta: no grid node is a member");
  }
  std::vector<char> outside(total);
  for (std::size_t i = 0; i < total; ++i) outside[i] = occ[i] ? 0 : 1;
  const std::vector<double> dt_in = squared_distance_transform(outside, counts);
  const std::vector<double> dt_out = squared_distance_transform(occ, counts);
  auto depth = [&](std::size_t f) {
    return occ[f] ? std::sqrt(dt_in[f]) * hf - hf / 2.0 : -(std::sqrt(dt_out[f]) * hf - hf / 2.0);
  };

  // Even offsets (so the midpoint is a node), lexicographically positive.
  const int reach = static_cast<int>(std::ceil((eps + h) / hf)) + 2;
  std::vector<std::vector<int>> offsets;
  std::vector<int> o(static_cast<std::size_t>(d), -reach);
  for (;;) {
    bool even = true;
    double len2 = 0.0;
    for (int v : o) {
      even = even && v % 2 == 0;
      len2 += double(v) * v;
    }
    const auto first = std::find_if(o.begin(), o.end(), [](int v) { return v != 0; });
    const double len = std::sqrt(len2) * hf;
    if (even && first != o.end() && *first > 0 && std::abs(len - eps) <= h) offsets.push_back(o);
    std::size_t k = 0;
    while (k < o.size() && o[k] == reach) o[k++] = -reach;
    if (k == o.size()) break;
    ++o[k];
  }

  std::vector<std::size_t> bases;
  {
    std::vector<int> idx(static_cast<std::size_t>(d));
    for (std::size_t f = 0; f < total; ++f) {
      if (!occ[f]) continue;
      unflatten(f, counts, idx);
      if (std::all_of(idx.begin(), idx.end(), [](int v) { return v % 2 == 0; })) bases.push_back(f);
    }
  }

  struct Best {
    double value = kInf;
    std::size_t a = 0, b = 0;
  };
  const auto per_base = map_indices<Best>(cfg.policy, static_cast<std::int64_t>(bases.size()),
                                          [&](std::int64_t i) {
    Best best;
    const std::size_t f = bases[static_cast<std::size_t>(i)];
    std::vector<int> idx(static_cast<std::size_t>(d));
    unflatten(f, counts, idx);
    for (const auto& off : offsets) {
      std::ptrdiff_t target = 0;
      std::ptrdiff_t mid = 0;
      bool inside_grid = true;
      for (int k = 0; k < d; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        const int t = idx[ku] + off[ku];
        if (t < 0 || t >= counts[ku]) {
          inside_grid = false;
          break;
        }
        target += static_cast<std::ptrdiff_t>(t) * static_cast<std::ptrdiff_t>(strides[ku]);
        mid += static_cast<std::ptrdiff_t>(idx[ku] + off[ku] / 2) * static_cast<std::ptrdiff_t>(strides[ku]);
      }
      if (!inside_grid || !occ[static_cast<std::size_t>(target)]) continue;
      const double v = depth(static_cast<std::size_t>(mid));
      if (v < best.value) best = Best{v, f, static_cast<std::size_t>(target)};
    }
    return best;
  });

  Best best;
  for (const Best& b : per_base) {
    if (b.value < best.value) best = b;
  }
  if (best.value == kInf) return ModulusSample::plus_infinity(eps);
  std::vector<int> ia(static_cast<std::size_t>(d)), ib(static_cast<std::size_t>(d));
  unflatten(best.a, counts, ia);
  unflatten(best.b, counts, ib);
  ModulusSample s = best.value < -hf ? ModulusSample::minus_infinity(eps) : ModulusSample{};
  s.eps = eps;
  if (s.finite()) s.delta = std::max(0.0, best.value);
  s.witness = std::pair{node(ia), node(ib)};
  s.sampling_error = 2.0 * h;
  return s;
}

ModulusSample brute_delta(const Body& body, double eps, const BruteConfig& cfg) {
  const auto [lo, hi] = bounding_box(body);
  return brute_delta(raw_membership(body), lo, hi, eps, cfg);
}

SampledBallIntersection::SampledBallIntersection(std::vector<Point> centers, double r)
    : centers_(std::move(centers)), r_(r) {}

bool SampledBallIntersection::contains(const Point& p, double slack) const {
  return std::all_of(centers_.begin(), centers_.end(),
                     [&](const Point& c) { return distance(p, c) <= r_ + slack; });
}

SampledBallIntersection brute_lens(const Point& x, const Point& y, double r, const BruteConfig& cfg) {
  require_same_dim(x, y);
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  if (distance(x, y) > 2.0 * r) {
    throw NoContainingBall("chord longer than 2r", distance(x, y) / 2.0);
  }
  const std::vector<Point> pts{x, y};
  return {feasible_centers(pts, r, cfg), r};
}

SampledBallIntersection brute_hull(std::span<const Point> points, double r, const BruteConfig& cfg) {
  if (points.empty()) throw DomainError("brute_hull needs at least one point");
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  return {feasible_centers(points, r, cfg), r};
}

bool brute_hull_membership(std::span<const Point> points, double r, const Point& p,
                           const BruteConfig& cfg) {
  return brute_hull(points, r, cfg).contains(p);
}

// --- grid bodies ------------------------------------------------------------------

struct GridBody::Data {
  Point lo;
  double h = 0.0;
  std::vector<int> counts;
  std::vector<std::size_t> strides;
  std::vector<char> occ;
  std::vector<double> dt_in;   // squared, in cells, to the nearest empty cell (outside counts as empty)
  std::vector<double> dt_out;  // squared, in cells, to the nearest occupied cell
  std::size_t occupied = 0;

  std::size_t flat_of(const Point& p, bool clamp, bool* inside) const {
    std::size_t f = 0;
    *inside = true;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      const double t = (p[static_cast<int>(k)] - lo[static_cast<int>(k)]) / h;
      if (t < 0.0 || t > counts[k]) *inside = false;
      long i = static_cast<long>(std::floor(t));
      if (!clamp && (i < 0 || i > counts[k])) return 0;
      i = std::clamp<long>(i, 0, counts[k] - 1);
      f += static_cast<std::size_t>(i) * strides[k];
    }
    return f;
  }
};

GridBody::GridBody(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

std::shared_ptr<const GridBody::Data> GridBody::finish(std::shared_ptr<Data> g) {
  g->strides = strides_of(g->counts);
  g->occupied = static_cast<std::size_t>(std::count(g->occ.begin(), g->occ.end(), 1));
  if (g->occupied == 0) throw EmptyBody("grid body has no occupied cell");
  // Pad by one empty layer so cells on the grid edge see the outside.
  std::vector<int> padded = g->counts;
  for (int& c : padded) c += 2;
  const std::size_t total = total_of(padded);
  std::vector<char> in(total, 0);
  std::vector<int> idx(g->counts.size());
  const std::size_t cells = g->occ.size();
  const std::vector<std::size_t> pstrides = strides_of(padded);
  auto padded_flat = [&](std::size_t f) {
    unflatten(f, g->counts, idx);
    std::size_t pf = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) pf += static_cast<std::size_t>(idx[k] + 1) * pstrides[k];
    return pf;
  };
  for (std::size_t f = 0; f < cells; ++f) in[padded_flat(f)] = g->occ[f];
  std::vector<char> out(total);
  for (std::size_t i = 0; i < total; ++i) out[i] = in[i] ? 0 : 1;
  const std::vector<double> di = squared_distance_transform(out, padded);
  const std::vector<double> dout = squared_distance_transform(in, padded);
  g->dt_in.resize(cells);
  g->dt_out.resize(cells);
  for (std::size_t f = 0; f < cells; ++f) {
    const std::size_t pf = padded_flat(f);
    g->dt_in[f] = di[pf];
    g->dt_out[f] = dout[pf];
  }
  return g;
}

GridBody GridBody::from_bits(const Point& lo, double h, std::vector<int> counts,
                             const std::vector<std::uint32_t>& words) {
  if (!(h > 0.0)) throw DomainError("grid step must be positive");
  if (static_cast<int>(counts.size()) != lo.dim()) throw DimensionMismatch("grid counts dimension");
  for (int c : counts) {
    if (c < 1) throw DomainError("grid counts must be positive");
  }
  auto g = std::make_shared<Data>();
  g->lo = lo;
  g->h = h;
  g->counts = std::move(counts);
  const std::size_t total = total_of(g->counts);
  if (words.size() != (total + 31) / 32) throw ParseError("grid occupancy word count mismatch");
  g->occ.resize(total);
  for (std::size_t f = 0; f < total; ++f) g->occ[f] = (words[f / 32] >> (f % 32)) & 1U;
  return GridBody(GridBody::finish(std::move(g)));
}

int GridBody::dim() const noexcept { return data_->lo.dim(); }
const Point& GridBody::lo() const noexcept { return data_->lo; }
Point GridBody::hi() const {
  Point p = data_->lo;
  for (int k = 0; k < dim(); ++k) p[k] += data_->counts[static_cast<std::size_t>(k)] * data_->h;
  return p;
}
double GridBody::h() const noexcept { return data_->h; }
const std::vector<int>& GridBody::counts() const noexcept { return data_->counts; }
std::size_t GridBody::cell_count() const noexcept { return data_->occ.size(); }
std::size_t GridBody::occupied_count() const noexcept { return data_->occupied; }
bool GridBody::occupied(std::size_t flat) const { return data_->occ.at(flat) != 0; }

Point GridBody::cell_center(std::size_t flat) const {
  std::vector<int> idx(data_->counts.size());
  unflatten(flat, data_->counts, idx);
  Point p(dim());
  for (int k = 0; k < dim(); ++k) p[k] = data_->lo[k] + (idx[static_cast<std::size_t>(k)] + 0.5) * data_->h;
  return p;
}

bool GridBody::contains(const Point& p) const {
  require_same_dim(p, data_->lo);
  bool inside = false;
  const std::size_t f = data_->flat_of(p, true, &inside);
  return inside && data_->occ[f] != 0;
}

double GridBody::boundary_distance(const Point& p) const {
  require_same_dim(p, data_->lo);
  const double h = data_->h;
  bool inside = false;
  const std::size_t f = data_->flat_of(p, true, &inside);
  if (inside && data_->occ[f]) return std::sqrt(data_->dt_in[f]) * h - h / 2.0;
  double gap = 0.0;
  if (!inside) {
    const Point c = cell_center(f);
    gap = std::max(0.0, distance(p, c) - h / 2.0);
  }
  const double cell = data_->occ[f] ? 0.0 : std::sqrt(data_->dt_out[f]) * h - h / 2.0;
  return -(gap + cell);
}

double GridBody::area() const {
  return static_cast<double>(data_->occupied) * std::pow(data_->h, dim());
}

std::vector<std::uint32_t> GridBody::words() const {
  std::vector<std::uint32_t> w((data_->occ.size() + 31) / 32, 0U);
  for (std::size_t f = 0; f < data_->occ.size(); ++f) {
    if (data_->occ[f]) w[f / 32] |= 1U << (f % 32);
  }
  return w;
}

ImplicitBody GridBody::to_body(bool convex) const {
  const GridBody self = *this;
  ImplicitBody::Options opts;
  opts.convex = convex;
  opts.resolution = data_->h;
  return ImplicitBody([self](const Point& p) { return self.contains(p); }, lo(), hi(), opts);
}

GridBody grid_body(const Membership& in, const Point& lo, const Point& hi, double h,
                   std::size_t max_cells) {
  require_same_dim(lo, hi);
  if (!(h > 0.0)) throw DomainError("grid step must be positive");
  auto g = std::make_shared<GridBody::Data>();
  g->lo = lo;
  g->h = h;
  std::size_t total = 1;
  for (int k = 0; k < lo.dim(); ++k) {
    if (!(hi[k] > lo[k])) throw DomainError("grid box must have positive extent");
    const double n = std::ceil((hi[k] - lo[k]) / h - 1e-9);
    if (n > 1e9) throw BudgetExceeded("grid exceeds the cell budget");
    g->counts.push_back(std::max(1, static_cast<int>(n)));
    total *= static_cast<std::size_t>(g->counts.back());
    if (total > max_cells) throw BudgetExceeded("grid exceeds the cell budget");
  }
  g->strides = strides_of(g->counts);
  g->occ.resize(total);
  for (std::size_t f = 0; f < total; ++f) {
    std::vector<int> idx(g->counts.size());
    unflatten(f, g->counts, idx);
    Point p(lo.dim());
    for (int k = 0; k < lo.dim(); ++k) p[k] = lo[k] + (idx[static_cast<std::size_t>(k)] + 0.5) * h;
    g->occ[f] = in(p) ? 1 : 0;
  }
  return GridBody(GridBody::finish(std::move(g)));
}

}  // namespace scg
