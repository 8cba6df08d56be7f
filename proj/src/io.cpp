#include "scg/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace scg::io {

namespace {

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string("expected a number for ") + what);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string("non-finite value for ") + what);
  return v;
}

Point point_of(const Json& j, int dim, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("expected a coordinate list for ") + what);
  if (dim > 0 && static_cast<int>(j.size()) != dim) {
    throw ParseError(std::string("wrong coordinate count for ") + what);
  }
  if (j.size() < 2 || j.size() > static_cast<std::size_t>(kMaxDim)) {
    throw ParseError(std::string("unsupported dimension for ") + what);
  }
  Point p(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) p[static_cast<int>(i)] = number(j[i], what);
  return p;
}

std::vector<Point> point_list(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ParseError(std::string("expected a nonempty list of ") + what);
  std::vector<Point> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(point_of(e, 2, what));
  return out;
}

const Json& field(const Json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

void append_point(std::string& out, const Point& p) {
  out += '[';
  for (int i = 0; i < p.dim(); ++i) {
    if (i) out += ',';
    out += format_double(p[i]);
  }
  out += ']';
}

void append_points(std::string& out, const std::vector<Point>& ps) {
  out += '[';
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ',';
    append_point(out, ps[i]);
  }
  out += ']';
}

Json number_or_text(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  // "-0.000000" prints as zero.
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

struct Frame {
  double x0, y0, x1, y1;
};

Frame padded(double x0, double y0, double x1, double y1, double pad_fraction) {
  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double pad = pad_fraction * span;
  return {x0 - pad, y0 - pad, x1 + pad, y1 + pad};
}

std::string svg_open(const Frame& f, const SvgStyle& s) {
  const int d = s.decimals;
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
  out += fixed(f.x0, d) + " " + fixed(-f.y1, d) + " " + fixed(f.x1 - f.x0, d) + " " +
         fixed(f.y1 - f.y0, d) + "\">\n";
  out += "<g transform=\"scale(1,-1)\" fill=\"none\" stroke=\"black\" stroke-width=\"" +
         fixed(0.004 * std::max(f.x1 - f.x0, f.y1 - f.y0), d) + "\">\n";
  return out;
}

std::string svg_close() { return "</g>\n</svg>\n"; }

std::string arc_path(const CircularArc& a, const SvgStyle& s) {
  const int d = s.decimals;
  const std::string r = fixed(a.radius, d);
  auto xy = [&](const Point& p) { return fixed(p.x(), d) + " " + fixed(p.y(), d); };
  std::string out = "<path d=\"M " + xy(a.start());
  if (a.full_circle()) {
    out += " A " + r + " " + r + " 0 0 1 " + xy(a.at(0.5));
    out += " A " + r + " " + r + " 0 0 1 " + xy(a.start());
  } else {
    out += " A " + r + " " + r + " 0 " + (a.sweep > kPi ? "1" : "0") + " 1 " + xy(a.end());
  }
  return out + "\"/>\n";
}

std::string mark(const Point& p, double size, const SvgStyle& s) {
  const int d = s.decimals;
  return "<circle cx=\"" + fixed(p.x(), d) + "\" cy=\"" + fixed(p.y(), d) + "\" r=\"" +
         fixed(size, d) + "\" fill=\"red\" stroke=\"none\"/>\n";
}

void extend(Frame& f, const Point& p) {
  f.x0 = std::min(f.x0, p.x());
  f.y0 = std::min(f.y0, p.y());
  f.x1 = std::max(f.x1, p.x());
  f.y1 = std::max(f.y1, p.y());
}

Frame arc_frame(const std::vector<CircularArc>& arcs, const std::vector<Point>& extra) {
  Frame f{INFINITY, INFINITY, -INFINITY, -INFINITY};
  for (const CircularArc& a : arcs) {
    extend(f, a.start());
    extend(f, a.end());
    for (int q = 0; q < 4; ++q) {
      const double ang = q * kPi / 2.0;
      if (a.covers_angle(ang)) extend(f, a.center + polar(ang) * a.radius);
    }
  }
  for (const Point& p : extra) extend(f, p);
  return f;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Body parse_body(const std::string& text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("body document must be an object");
  const Json& kind = field(doc, "kind");
  if (!kind.is_string()) throw ParseError("\"kind\" must be a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "polygon") {
      return ConvexPolygon::from_vertices(point_list(field(doc, "vertices"), "vertices"));
    }
    if (k == "disk_polygon") {
      const double r = number(field(doc, "radius"), "radius");
      if (!(r > 0.0)) throw ParseError("radius must be positive");
      auto pt = doc.find("point");
      if (pt != doc.end()) return DiskPolygon::singleton(point_of(*pt, 2, "point"), r);
      const std::vector<Point> cs = point_list(field(doc, "centers"), "centers");
      return intersect_disks(cs, r);
    }
    if (k == "implicit_grid") {
      const Json& bbox = field(doc, "bbox");
      if (!bbox.is_array() || bbox.size() != 2) throw ParseError("\"bbox\" must be [[lo],[hi]]");
      const Point lo = point_of(bbox[0], 0, "bbox");
      const Point hi = point_of(bbox[1], lo.dim(), "bbox");
      const double h = number(field(doc, "h"), "h");
      if (!(h > 0.0)) throw ParseError("h must be positive");
      std::vector<int> counts;
      for (int i = 0; i < lo.dim(); ++i) {
        const double n = (hi[i] - lo[i]) / h;
        const long long c = std::llround(n);
        if (c < 1 || std::abs(n - static_cast<double>(c)) > 1e-6 || c > (1LL << 30)) {
          throw ParseError("bbox extent is not a positive multiple of h");
        }
        counts.push_back(static_cast<int>(c));
      }
      const Json& cells = field(doc, "cells");
      if (!cells.is_array()) throw ParseError("\"cells\" must be a list of words");
      std::vector<std::uint32_t> words;
      words.reserve(cells.size());
      for (const Json& w : cells) {
        if (!w.is_number_unsigned() && !(w.is_number_integer() && w.get<long long>() >= 0)) {
          throw ParseError("cell words must be unsigned integers");
        }
        const auto v = w.get<std::uint64_t>();
        if (v > 0xFFFFFFFFULL) throw ParseError("cell word exceeds 32 bits");
        words.push_back(static_cast<std::uint32_t>(v));
      }
      bool convex = false;
      auto cv = doc.find("convex");
      if (cv != doc.end()) {
        if (!cv->is_boolean()) throw ParseError("\"convex\" must be a boolean");
        convex = cv->get<bool>();
      }
      return GridBody::from_bits(lo, h, std::move(counts), words).to_body(convex);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid ") + k + " body: " + e.what());
  }
  throw ParseError("unknown body kind \"" + k + "\"");
}

Body load_body(const std::string& path) { return parse_body(read_file(path)); }

std::string serialize_body(const Body& body) {
  std::string out;
  if (const auto* poly = std::get_if<ConvexPolygon>(&body)) {
    out = "{\"kind\":\"polygon\",\"vertices\":";
    append_points(out, poly->vertices());
    return out + "}";
  }
  if (const auto* dp = std::get_if<DiskPolygon>(&body)) {
    out = "{\"kind\":\"disk_polygon\",\"centers\":";
    append_points(out, dp->centers());
    out += ",\"radius\":" + format_double(dp->radius());
    if (dp->kind() == DiskPolygonKind::point) {
      out += ",\"point\":";
      append_point(out, dp->point());
    }
    return out + "}";
  }
  throw DomainError("implicit bodies serialize through their occupancy grid");
}

std::string serialize_grid(const GridBody& grid, bool convex) {
  std::string out = "{\"kind\":\"implicit_grid\",\"bbox\":[";
  append_point(out, grid.lo());
  out += ',';
  append_point(out, grid.hi());
  out += "],\"h\":" + format_double(grid.h()) + ",\"cells\":[";
  const std::vector<std::uint32_t> words = grid.words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(words[i]);
  }
  out += "],\"convex\":";
  out += convex ? "true" : "false";
  return out + "}";
}

std::vector<Point> parse_points(const std::string& text) {
  return point_list(parse_json(text), "points");
}

std::vector<Point> load_points(const std::string& path) { return parse_points(read_file(path)); }

std::string modulus_csv(const std::vector<ModulusSample>& samples) {
  std::string out = "epsilon,delta,ratio\n";
  for (const ModulusSample& s : samples) {
    out += format_double(s.eps) + ",";
    switch (s.sentinel) {
      case Sentinel::plus_infinity:
        out += "inf,";
        break;
      case Sentinel::minus_infinity:
        out += "-inf,";
        break;
      case Sentinel::none:
        out += format_double(s.delta) + "," + format_double(*s.ratio());
        break;
    }
    out += "\n";
  }
  return out;
}

Json point_json(const Point& p) {
  Json j = Json::array();
  for (double c : p.coords()) j.push_back(number_or_text(c));
  return j;
}

Json sample_json(const ModulusSample& s) {
  Json j;
  j["epsilon"] = s.eps;
  switch (s.sentinel) {
    case Sentinel::plus_infinity:
      j["delta"] = "inf";
      break;
    case Sentinel::minus_infinity:
      j["delta"] = "-inf";
      break;
    case Sentinel::none:
      j["delta"] = s.delta;
      break;
  }
  j["ratio"] = s.finite() ? Json(*s.ratio()) : Json(nullptr);
  if (s.witness) j["witness"] = Json::array({point_json(s.witness->first), point_json(s.witness->second)});
  return j;
}

Json report_json(const RConvexityReport& report) {
  Json j;
  j["verdict"] = to_string(report.verdict);
  j["r"] = report.r;
  j["method"] = to_string(report.method);
  Json samples = Json::array();
  for (const ModulusSample& s : report.samples) samples.push_back(sample_json(s));
  j["samples"] = samples;
  if (report.witness) {
    const Witness& w = *report.witness;
    j["witness"] = Json::array({point_json(w.boundary_point), point_json(w.violating_point)});
    j["normal"] = w.normal ? point_json(*w.normal) : Json(nullptr);
    if (w.chord) j["chord"] = Json::array({point_json(w.chord->first), point_json(w.chord->second)});
    j["excess"] = w.excess;
  } else {
    j["witness"] = nullptr;
  }
  j["note"] = report.note;
  return j;
}

Json limit_json(const LimitEstimate& est) {
  Json j;
  j["value"] = est.value;
  j["cauchy_residual"] = est.cauchy_residual;
  j["eps0"] = est.eps0;
  j["k"] = est.k;
  Json samples = Json::array();
  for (const ModulusSample& s : est.samples) samples.push_back(sample_json(s));
  j["samples"] = samples;
  return j;
}

Json threshold_json(const ThresholdReport& report) {
  Json j;
  j["verdict"] = to_string(report.verdict);
  j["r"] = report.r;
  j["threshold"] = report.threshold;
  Json samples = Json::array();
  for (const ModulusSample& s : report.estimate.samples) samples.push_back(sample_json(s));
  j["samples"] = samples;
  j["value"] = report.estimate.value;
  j["cauchy_residual"] = report.estimate.cauchy_residual;
  j["margins"] = report.margins;
  j["witness"] = report.witness ? Json::array({point_json(report.witness->first),
                                              point_json(report.witness->second)})
                                : Json(nullptr);
  return j;
}

std::string disk_polygon_svg(const DiskPolygon& dp, const std::vector<Point>& marks,
                             const SvgStyle& style) {
  std::vector<Point> extra = marks;
  if (dp.kind() == DiskPolygonKind::point) extra.push_back(dp.point());
  Frame box = arc_frame(dp.arcs(), extra);
  const Frame f = padded(box.x0, box.y0, box.x1, box.y1, style.pad_fraction);
  const double dot = 0.01 * std::max(f.x1 - f.x0, f.y1 - f.y0);
  std::string out = svg_open(f, style);
  for (const CircularArc& a : dp.arcs()) out += arc_path(a, style);
  if (dp.kind() == DiskPolygonKind::point) out += mark(dp.point(), dot, style);
  for (const Point& p : marks) out += mark(p, dot, style);
  return out + svg_close();
}

std::string lens_svg(const Lens& lens, const SvgStyle& style) {
  if (lens.dim() != 2) throw DimensionMismatch("lens drawing is two-dimensional");
  std::vector<CircularArc> arcs;
  switch (lens.kind()) {
    case LensKind::proper:
      arcs = lens.boundary_arcs();
      break;
    case LensKind::ball: {
      const Ball b = lens.ball();
      arcs = {CircularArc{b.center, b.radius, 0.0, 2.0 * kPi}};
      break;
    }
    case LensKind::point:
    case LensKind::universe:
      break;
  }
  Frame box = arc_frame(arcs, {lens.x(), lens.y()});
  const Frame f = padded(box.x0, box.y0, box.x1, box.y1, style.pad_fraction);
  const double dot = 0.01 * std::max(f.x1 - f.x0, f.y1 - f.y0);
  std::string out = svg_open(f, style);
  if (lens.kind() == LensKind::universe) out += "<!-- universe: no ball of this radius contains both points -->\n";
  for (const CircularArc& a : arcs) out += arc_path(a, style);
  out += mark(lens.x(), dot, style);
  if (!(lens.y() == lens.x())) out += mark(lens.y(), dot, style);
  return out + svg_close();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw DomainError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw DomainError("cannot move output into place: " + path);
  }
}

}  // namespace scg::io
