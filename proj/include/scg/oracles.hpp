#pragma once

// Brute-force reference implementations. They use only point arithmetic and
// raw membership predicates, never the estimators or exact constructions
// they are compared against.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "scg/bodies.hpp"
#include "scg/modulus.hpp"
#include "scg/parallel.hpp"

namespace scg {

using Membership = std::function<bool(const Point&)>;

struct BruteConfig {
  double h = 0.01;               // grid step for brute_delta
  int circle_samples = 2048;     // center samples per circle for lens and hull classifiers
  int interior_samples = 256;    // rejection samples of the feasible center set
  std::uint64_t seed = 0;
  std::size_t max_nodes = std::size_t{1} << 26;
  ExecPolicy policy = ExecPolicy::parallel;
};

/// Direct formula membership of an exact body (vertex half-planes, generator
/// disks), or the predicate of an implicit body.
Membership raw_membership(const Body& body);

/// Minimum midpoint depth over grid pairs with | |x - y| - eps | <= h. The grid
/// has step h/2 over the padded box; depth comes from an exact Euclidean
/// distance transform of the occupancy, less half a step. Error bound 2h.
/// +infinity when no pair exists; -infinity when a midpoint lies outside.
ModulusSample brute_delta(const Membership& in, const Point& lo, const Point& hi, double eps,
                          const BruteConfig& cfg = {});
ModulusSample brute_delta(const Body& body, double eps, const BruteConfig& cfg = {});

/// Intersection of the closed balls B(c, r) over sampled centers c.
class SampledBallIntersection {
 public:
  SampledBallIntersection(std::vector<Point> centers, double r);
  bool contains(const Point& p, double slack = 1e-12) const;
  const std::vector<Point>& centers() const noexcept { return centers_; }
  double radius() const noexcept { return r_; }

 private:
  std::vector<Point> centers_;
  double r_;
};

/// Feasible centers sampled on the circles of radius r around the inputs
/// (with feasibility transitions located by bisection in 2D) plus rejection
/// samples. Over-approximates the true set. Throws NoContainingBall when no
/// feasible center is found; the diagnostic is half the largest pairwise distance.
SampledBallIntersection brute_lens(const Point& x, const Point& y, double r,
                                   const BruteConfig& cfg = {});
SampledBallIntersection brute_hull(std::span<const Point> points, double r,
                                   const BruteConfig& cfg = {});
bool brute_hull_membership(std::span<const Point> points, double r, const Point& p,
                           const BruteConfig& cfg = {});

/// Occupancy grid sampled at cell centers, with Euclidean distance transforms
/// for boundary distances.
class GridBody {
 public:
  /// Rebuilds a grid from packed occupancy words (axis 0 fastest, LSB first).
  static GridBody from_bits(const Point& lo, double h, std::vector<int> counts,
                            const std::vector<std::uint32_t>& words);

  int dim() const noexcept;
  const Point& lo() const noexcept;
  Point hi() const;
  double h() const noexcept;
  const std::vector<int>& counts() const noexcept;
  std::size_t cell_count() const noexcept;
  std::size_t occupied_count() const noexcept;
  bool occupied(std::size_t flat) const;
  Point cell_center(std::size_t flat) const;

  bool contains(const Point& p) const;
  /// Positive inside, negative outside; accurate to about h.
  double boundary_distance(const Point& p) const;
  /// Occupied volume (cell count times h^d).
  double area() const;
  std::vector<std::uint32_t> words() const;
  /// Implicit body with this occupancy as its predicate and resolution h.
  ImplicitBody to_body(bool convex) const;

 private:
  struct Data;
  friend GridBody grid_body(const Membership&, const Point&, const Point&, double, std::size_t);
  static std::shared_ptr<const Data> finish(std::shared_ptr<Data> g);
  explicit GridBody(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
};

/// Throws BudgetExceeded above max_cells and EmptyBody when nothing is occupied.
GridBody grid_body(const Membership& in, const Point& lo, const Point& hi, double h,
                   std::size_t max_cells = std::size_t{1} << 24);

/// Squared Euclidean distance (in index units) from every node to the nearest
/// feature node, over a row-major grid with axis 0 fastest. Infinity if there
/// is no feature node.
std::vector<double> squared_distance_transform(const std::vector<char>& feature,
                                               const std::vector<int>& counts);

}  // namespace scg
