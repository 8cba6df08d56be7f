#pragma once

// Named test bodies shared by the verification suites, the CLI and the tests.
// Each fixture comes with a raw membership predicate written from its
// defining formula, independent of the body representation.

#include <string>
#include <vector>

#include "scg/bodies.hpp"
#include "scg/oracles.hpp"

namespace scg::fixtures {

struct Fixture {
  std::string name;
  Body body;
  Membership raw;   // formula membership (closed set)
  Point lo, hi;     // bounding box
  bool convex = true;  // whether the set is convex (not just flagged)
};

/// Closed disk of radius r centered at the origin (single-generator disk-polygon).
Fixture disk(double r = 1.0);
/// [0, 1]^2.
Fixture unit_square();
/// (x/2)^2 + y^2 <= 1 as a convex-flagged implicit body.
Fixture ellipse();
/// Union of the closed unit disks centered at (-1, 0) and (1, 0); not convex.
Fixture tangent_disks();
/// Disks of radius 1 centered at (0, 0), (0.6, 0), (0.3, 0.5).
Fixture three_generator();
/// Disks of radius 1 centered on the regular pentagon of circumradius 0.5.
Fixture five_disk();

/// Semi-axes of the ellipse fixture.
inline constexpr double kEllipseA = 2.0;
inline constexpr double kEllipseB = 1.0;

std::vector<Fixture> all();

}  // namespace scg::fixtures
