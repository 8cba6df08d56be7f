#pragma once

// File formats: body JSON (polygon, disk_polygon, implicit_grid), point
// lists, modulus CSV, verdict reports, SVG drawings, and run manifests.

#include "json.hpp"
#include <string>
#include <vector>

#include "scg/bodies.hpp"
#include "scg/lens_arc.hpp"
#include "scg/modulus.hpp"
#include "scg/oracles.hpp"
#include "scg/rconvex.hpp"

namespace scg::io {

using Json = nlohmann::ordered_json;

/// Canonical text with 17 significant digits ("%.17g"); "inf", "-inf", "nan" otherwise.
std::string format_double(double v);

/// Parses a body document. Throws ParseError on malformed input.
Body parse_body(const std::string& text);
Body load_body(const std::string& path);
/// Canonical serialization of polygons and disk-polygons. Implicit bodies can
/// only be serialized from their grid (see serialize_grid).
std::string serialize_body(const Body& body);
std::string serialize_grid(const GridBody& grid, bool convex);

std::vector<Point> parse_points(const std::string& text);
std::vector<Point> load_points(const std::string& path);

/// "epsilon,delta,ratio" rows; sentinels are written as inf / -inf with an empty ratio.
std::string modulus_csv(const std::vector<ModulusSample>& samples);

Json sample_json(const ModulusSample& s);
Json point_json(const Point& p);
Json report_json(const RConvexityReport& report);
Json limit_json(const LimitEstimate& est);
Json threshold_json(const ThresholdReport& report);

struct SvgStyle {
  int decimals = 6;
  double pad_fraction = 0.05;
};
std::string disk_polygon_svg(const DiskPolygon& dp, const std::vector<Point>& marks,
                             const SvgStyle& style = {});
std::string lens_svg(const Lens& lens, const SvgStyle& style = {});

std::string read_file(const std::string& path);
/// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace scg::io
