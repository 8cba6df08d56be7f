// scg: command-line front end for hulls, lenses, moduli, certification and
// the verification suites.
//
// Exit codes: 0 success (check: certified), 1 malformed input or usage,
// 2 infeasible hull, 3 refuted, 4 inconclusive, and for verify 1 when a check fails.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scg/io.hpp"
#include "scg/lens_arc.hpp"
#include "scg/modulus.hpp"
#include "scg/parallel.hpp"
#include "scg/rconvex.hpp"
#include "scg/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using scg::io::Json;

struct Run {
  std::string command;
  Json inputs = Json::object();
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;  // requested output files
  std::vector<std::pair<std::string, std::string>> pending;  // path, content
  Json result;  // embedded in the manifest when set
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void emit(const std::string& path, std::string content) { pending.emplace_back(path, std::move(content)); }

  // Outputs are written only on success; manifests are written regardless.
  int finish(int code) {
    if (code == 0) {
      for (const auto& [path, content] : pending) scg::io::write_file_atomic(path, content);
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json m;
    m["command"] = command;
    m["inputs"] = inputs;
    m["parameters"] = parameters;
    m["seed"] = seed;
    m["tool_version"] = kVersion;
    m["threads"] = scg::worker_count();
    m["wall_time_seconds"] = wall;
    m["exit_code"] = code;
    Json written = Json::array();
    if (code == 0) {
      for (const auto& [path, content] : pending) written.push_back(path);
    }
    m["outputs"] = written;
    if (!result.is_null()) m["result"] = result;
    for (const std::string& out : outputs) {
      scg::io::write_file_atomic(out + ".manifest.json", m.dump(2) + "\n");
    }
    return code;
  }
};

std::vector<double> doubles(const std::string& text, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find(',', pos), text.size());
    const std::string tok = text.substr(pos, next - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw scg::ParseError(std::string("bad number \"") + tok + "\" in " + what);
    }
    pos = next + 1;
  }
  return out;
}

scg::Point point_arg(const std::string& text, const char* what) {
  const std::vector<double> v = doubles(text, what);
  if (v.size() != 2) throw scg::ParseError(std::string(what) + " must be x,y");
  return scg::Point{v[0], v[1]};
}

Json lens_json(const scg::Lens& l) {
  Json j;
  switch (l.kind()) {
    case scg::LensKind::universe: j["kind"] = "universe"; break;
    case scg::LensKind::point: j["kind"] = "point"; break;
    case scg::LensKind::ball: j["kind"] = "ball"; break;
    case scg::LensKind::proper: j["kind"] = "proper"; break;
  }
  j["x"] = scg::io::point_json(l.x());
  j["y"] = scg::io::point_json(l.y());
  j["radius"] = l.radius();
  if (l.kind() == scg::LensKind::ball) {
    j["center"] = scg::io::point_json(l.ball().center);
  }
  Json arcs = Json::array();
  for (const scg::CircularArc& a : l.boundary_arcs()) {
    arcs.push_back(Json{{"center", scg::io::point_json(a.center)},
                        {"start_angle", a.start_angle},
                        {"sweep", a.sweep}});
  }
  j["arcs"] = arcs;
  return j;
}

int exit_for(scg::Verdict v) {
  switch (v) {
    case scg::Verdict::certified: return 0;
    case scg::Verdict::refuted: return 3;
    case scg::Verdict::inconclusive: return 4;
  }
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strongly convex sets: hulls, lenses, moduli of convexity, certification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Run run;

  std::string points_file, body_file, svg_out, json_out, csv_out, eps_text, x_text, y_text;
  std::string method = "support", suite;
  double radius = 0.0, eps0 = 0.0;
  int k = 8;
  std::uint64_t seed = 0;

  CLI::App* hull = app.add_subcommand("hull", "r-hull of a planar point set");
  hull->add_option("--points", points_file, "JSON list of 2D points")->required();
  hull->add_option("--radius", radius, "radius r")->required();
  hull->add_option("--svg", svg_out, "SVG drawing of the hull");
  hull->add_option("--json", json_out, "disk-polygon JSON (stdout when omitted)");

  CLI::App* lens_cmd = app.add_subcommand("lens", "lens of two points");
  lens_cmd->add_option("--x", x_text, "first point x,y")->required();
  lens_cmd->add_option("--y", y_text, "second point x,y")->required();
  lens_cmd->add_option("--radius", radius, "radius r")->required();
  lens_cmd->add_option("--svg", svg_out, "SVG drawing of the lens");
  lens_cmd->add_option("--json", json_out, "lens JSON (stdout when omitted)");

  CLI::App* modulus = app.add_subcommand("modulus", "delta_omega at listed epsilons");
  modulus->add_option("--body", body_file, "body JSON")->required();
  modulus->add_option("--eps-list", eps_text, "comma-separated epsilons")->required();
  modulus->add_option("--csv", csv_out, "CSV output (stdout when omitted)");

  CLI::App* limit = app.add_subcommand("limit", "dyadic estimate of lim delta/eps^2");
  limit->add_option("--body", body_file, "body JSON")->required();
  limit->add_option("--eps0", eps0, "first epsilon")->required();
  limit->add_option("--k", k, "halvings")->required();
  limit->add_option("--json", json_out, "JSON output (stdout when omitted)");

  CLI::App* check = app.add_subcommand("check", "r-convexity verdict");
  check->add_option("--body", body_file, "body JSON")->required();
  check->add_option("--radius", radius, "radius r")->required();
  check->add_option("--method", method, "support, threshold or auto")
      ->check(CLI::IsMember({"support", "threshold", "auto"}));
  check->add_option("--seed", seed, "sampling seed");
  check->add_option("--json", json_out, "report JSON (stdout when omitted)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run a property suite");
  verify_cmd->add_option("--suite", suite, "theorems, lens, oracles or all")->required();
  verify_cmd->add_option("--seed", seed, "seed");
  verify_cmd->add_option("--json", json_out, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  scg::configure_threads_from_env();
  run.seed = seed;
  if (!json_out.empty()) run.outputs.push_back(json_out);
  if (!svg_out.empty()) run.outputs.push_back(svg_out);
  if (!csv_out.empty()) run.outputs.push_back(csv_out);

  auto deliver = [&](const std::string& path, const std::string& content) {
    if (path.empty()) {
      std::cout << content;
    } else {
      run.emit(path, content);
    }
  };

  try {
    if (hull->parsed()) {
      run.command = "hull";
      run.inputs["points"] = points_file;
      run.parameters["radius"] = radius;
      const std::vector<scg::Point> pts = scg::io::load_points(points_file);
      try {
        const scg::DiskPolygon dp = scg::r_hull(pts, radius);
        deliver(json_out, scg::io::serialize_body(dp) + "\n");
        if (!svg_out.empty()) run.emit(svg_out, scg::io::disk_polygon_svg(dp, pts));
      } catch (const scg::NoContainingBall& e) {
        std::cerr << "infeasible: no ball of radius " << scg::io::format_double(radius)
                  << " contains the points; minimal enclosing ball radius "
                  << scg::io::format_double(e.enclosing_radius()) << "\n";
        run.parameters["enclosing_radius"] = e.enclosing_radius();
        return run.finish(2);
      }
      return run.finish(0);
    }
    if (lens_cmd->parsed()) {
      run.command = "lens";
      const scg::Point x = point_arg(x_text, "--x"), y = point_arg(y_text, "--y");
      run.parameters["x"] = scg::io::point_json(x);
      run.parameters["y"] = scg::io::point_json(y);
      run.parameters["radius"] = radius;
      if (!(radius > 0.0)) throw scg::ParseError("radius must be positive");
      const scg::Lens l = scg::lens(x, y, radius);
      deliver(json_out, lens_json(l).dump() + "\n");
      if (!svg_out.empty()) run.emit(svg_out, scg::io::lens_svg(l));
      return run.finish(0);
    }
    if (modulus->parsed()) {
      run.command = "modulus";
      run.inputs["body"] = body_file;
      const std::vector<double> eps = doubles(eps_text, "--eps-list");
      run.parameters["eps_list"] = eps;
      const scg::Body body = scg::io::load_body(body_file);
      std::vector<scg::ModulusSample> samples;
      for (double e : eps) samples.push_back(scg::delta_omega(body, e));
      deliver(csv_out, scg::io::modulus_csv(samples));
      return run.finish(0);
    }
    if (limit->parsed()) {
      run.command = "limit";
      run.inputs["body"] = body_file;
      run.parameters["eps0"] = eps0;
      run.parameters["k"] = k;
      const scg::Body body = scg::io::load_body(body_file);
      const scg::LimitEstimate est = scg::limit_estimate(body, eps0, k);
      deliver(json_out, scg::io::limit_json(est).dump(2) + "\n");
      return run.finish(0);
    }
    if (check->parsed()) {
      run.command = "check";
      run.inputs["body"] = body_file;
      run.parameters["radius"] = radius;
      run.parameters["method"] = method;
      if (!(radius > 0.0)) throw scg::ParseError("radius must be positive");
      const scg::Body body = scg::io::load_body(body_file);
      const scg::CheckMethod m = method == "threshold" ? scg::CheckMethod::threshold
                                 : method == "auto"    ? scg::CheckMethod::automatic
                                                       : scg::CheckMethod::support;
      scg::SampleConfig cfg;
      cfg.seed = seed;
      const scg::RConvexityReport rep = scg::check_r_convexity(body, radius, m, cfg);
      const std::string text = scg::io::report_json(rep).dump(2) + "\n";
      std::cout << text;
      if (!json_out.empty()) run.emit(json_out, text);
      run.result = scg::io::report_json(rep);
      return run.finish(exit_for(rep.verdict));
    }
    if (verify_cmd->parsed()) {
      run.command = "verify";
      run.parameters["suite"] = suite;
      if (!scg::verify::known_suite(suite)) {
        std::cerr << "unknown suite \"" << suite << "\"; expected one of:";
        for (const std::string& s : scg::verify::suite_names()) std::cerr << " " << s;
        std::cerr << "\n";
        return run.finish(1);
      }
      const scg::verify::SuiteReport rep = scg::verify::run_suite(suite, seed);
      std::cout << scg::verify::table(rep);
      if (!json_out.empty()) run.emit(json_out, scg::verify::to_json(rep).dump(2) + "\n");
      if (!rep.passed()) run.result = scg::verify::to_json(rep);
      return run.finish(rep.passed() ? 0 : 1);
    }
  } catch (const scg::Error& e) {
    std::cerr << "error (" << scg::to_string(e.kind()) << "): " << e.what() << "\n";
    return run.finish(1);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return run.finish(1);
  }
  return 1;
}
