#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "scg/fixtures.hpp"
#include "scg/io.hpp"

using namespace scg;

TEST_CASE("format_double uses 17 significant digits") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(2.0) == "2");
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("polygon and disk_polygon JSON round-trips byte for byte") {
  const std::string poly = io::serialize_body(fixtures::unit_square().body);
  CHECK(io::serialize_body(io::parse_body(poly)) == poly);
  for (const auto& f : {fixtures::disk(1.0), fixtures::three_generator(), fixtures::five_disk()}) {
    const std::string text = io::serialize_body(f.body);
    CHECK(io::serialize_body(io::parse_body(text)) == text);
  }
  const Body pt = DiskPolygon::singleton(Point{0.25, -1.5}, 1.0);
  const std::string t = io::serialize_body(pt);
  CHECK(io::serialize_body(io::parse_body(t)) == t);
}

TEST_CASE("hand-written body JSON") {
  const Body b = io::parse_body(R"({"kind":"disk_polygon","centers":[[0,0],[0.6,0]],"radius":1})");
  REQUIRE(std::holds_alternative<DiskPolygon>(b));
  CHECK(contains(b, Point{0.3, 0.0}));
  CHECK_FALSE(contains(b, Point{-0.5, 0.0}));
  const Body p = io::parse_body(R"({"kind":"polygon","vertices":[[0,0],[2,0],[0,2]]})");
  CHECK(contains(p, Point{0.5, 0.5}));
  CHECK_FALSE(contains(p, Point{1.5, 1.5}));
}

TEST_CASE("grid JSON preserves occupancy") {
  const auto f = fixtures::ellipse();
  const GridBody g = grid_body(f.raw, f.lo, f.hi, 0.05);
  const std::string text = io::serialize_grid(g, true);
  const Body b = io::parse_body(text);
  CHECK(is_convex(b));
  for (std::size_t i = 0; i < g.cell_count(); i += 7) {
    CHECK(contains(b, g.cell_center(i)) == g.occupied(i));
  }
}

TEST_CASE("malformed bodies raise ParseError") {
  for (const char* text : {"", "{", "[]", R"({"kind":"blob"})", R"({"kind":"polygon"})",
                           R"({"kind":"polygon","vertices":[[0,0],[1]]})",
                           R"({"kind":"disk_polygon","centers":[[0,0]],"radius":-1})",
                           R"({"kind":"disk_polygon","centers":[[0,0],[5,0]],"radius":1})",
                           R"({"kind":"implicit_grid","bbox":[[0,0],[1,1]],"h":0.5,"cells":[1,2],"convex":true})"}) {
    CAPTURE(text);
    CHECK_THROWS_AS(io::parse_body(text), ParseError);
  }
  CHECK_THROWS_AS(io::parse_points("[[0,0],[1,\"a\"]]"), ParseError);
  CHECK(io::parse_points("[[0,0],[1,2]]").size() == 2);
}

TEST_CASE("modulus CSV") {
  ModulusSample a;
  a.eps = 0.5;
  a.delta = 0.25;
  const std::string csv = io::modulus_csv({a, ModulusSample::plus_infinity(3.0), ModulusSample::minus_infinity(1.0)});
  CHECK(csv == "epsilon,delta,ratio\n0.5,0.25,1\n3,inf,\n1,-inf,\n");
}

TEST_CASE("check report JSON fields") {
  const RConvexityReport rep = is_r_convex(fixtures::unit_square().body, 1.0);
  const io::Json j = io::report_json(rep);
  CHECK(j["verdict"] == "refuted");
  CHECK(j["r"] == 1.0);
  CHECK(j["method"] == "flat_edge");
  REQUIRE(j["witness"].is_array());
  CHECK(j["witness"].size() == 2);
}

TEST_CASE("svg output") {
  const DiskPolygon dp = std::get<DiskPolygon>(fixtures::three_generator().body);
  const std::string svg = io::disk_polygon_svg(dp, {Point{0.3, 0.1}});
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("viewBox") != std::string::npos);
  CHECK(svg.find(" A ") != std::string::npos);
  CHECK(svg == io::disk_polygon_svg(dp, {Point{0.3, 0.1}}));
  // Unit disk: bbox [-1,1]^2 padded by 5% of the extent.
  const std::string disk = io::lens_svg(lens(Point{-1.0, 0.0}, Point{1.0, 0.0}, 1.0));
  CHECK(disk.find("viewBox=\"-1.100000 -1.100000 2.200000 2.200000\"") != std::string::npos);
}

TEST_CASE("atomic write replaces the file and leaves no temp file") {
  const std::string path = (std::filesystem::temp_directory_path() / "scg_io_test.txt").string();
  io::write_file_atomic(path, "first");
  io::write_file_atomic(path, "second");
  CHECK(io::read_file(path) == "second");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::read_file(path), ParseError);
}
