#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "scg/io.hpp"
#include "scg/sampling.hpp"

namespace fs = std::filesystem;
using scg::io::Json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(SCG_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("scg_cli_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = "") const {
    const std::string p = (path / name).string();
    if (!content.empty()) scg::io::write_file_atomic(p, content);
    return p;
  }
};

}  // namespace

TEST_CASE("hull of a diameter pair is the unit disk") {
  TempDir t;
  const std::string pts = t.file("p.json", "[[-1,0],[1,0]]");
  const std::string out = t.file("hull.json");
  const Result r = run("hull --points " + pts + " --radius 1 --json " + out);
  CHECK(r.code == 0);
  CHECK(scg::io::read_file(out) == "{\"kind\":\"disk_polygon\",\"centers\":[[0,0]],\"radius\":1}\n");
  const Json m = Json::parse(scg::io::read_file(out + ".manifest.json"));
  CHECK(m["command"] == "hull");
  CHECK(m["exit_code"] == 0);
  CHECK(m["tool_version"] == "0.1.0");
}

TEST_CASE("infeasible hull exits 2 and writes only the manifest") {
  TempDir t;
  const std::string pts = t.file("p.json", "[[-2,0],[2,0]]");
  const std::string out = t.file("hull.json");
  const std::string svg = t.file("hull.svg");
  const Result r = run("hull --points " + pts + " --radius 1 --json " + out + " --svg " + svg);
  CHECK(r.code == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK_FALSE(fs::exists(svg));
  REQUIRE(fs::exists(out + ".manifest.json"));
  const Json m = Json::parse(scg::io::read_file(out + ".manifest.json"));
  CHECK(m["exit_code"] == 2);
  CHECK(m["parameters"]["enclosing_radius"] == 2.0);
  CHECK(m["outputs"].empty());
}

TEST_CASE("seeded hull pipeline certifies at the hull radius") {
  TempDir t;
  Json pts = Json::array();
  for (std::uint64_t i = 0; i < 20; ++i) {
    const scg::Point p = scg::sample_box(scg::Point{0.0, 0.0}, scg::Point{1.0, 1.0}, 42, 0, i);
    pts.push_back(Json::array({p.x(), p.y()}));
  }
  const std::string in = t.file("p.json", pts.dump());
  const std::string hull = t.file("hull.json");
  REQUIRE(run("hull --points " + in + " --radius 2 --json " + hull).code == 0);
  const Result c = run("check --body " + hull + " --radius 2");
  CHECK(c.code == 0);
  CHECK(Json::parse(c.out)["verdict"] == "certified");
}

TEST_CASE("check exit codes") {
  TempDir t;
  const std::string disk = t.file("disk.json", R"({"kind":"disk_polygon","centers":[[0,0]],"radius":1})");
  const std::string sq = t.file("sq.json", R"({"kind":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]]})");
  CHECK(run("check --body " + disk + " --radius 1").code == 0);
  const std::string rep = t.file("rep.json");
  const Result s = run("check --body " + sq + " --radius 1 --json " + rep);
  CHECK(s.code == 3);
  CHECK(Json::parse(s.out)["method"] == "flat_edge");
  CHECK_FALSE(fs::exists(rep));
  CHECK(Json::parse(scg::io::read_file(rep + ".manifest.json"))["result"]["verdict"] == "refuted");
}

TEST_CASE("modulus and limit") {
  TempDir t;
  const std::string sq = t.file("sq.json", R"({"kind":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]]})");
  const Result m = run("modulus --body " + sq + " --eps-list 0.5,3");
  CHECK(m.code == 0);
  CHECK(m.out == "epsilon,delta,ratio\n0.5,0,0\n3,inf,\n");
  const std::string disk = t.file("disk.json", R"({"kind":"disk_polygon","centers":[[0,0]],"radius":1})");
  const Result l = run("limit --body " + disk + " --eps0 0.5 --k 8");
  CHECK(l.code == 0);
  const double v = Json::parse(l.out)["value"].get<double>();
  CHECK(std::abs(v - 0.125) < 0.00125);
  CHECK(run("limit --body " + disk + " --eps0 3 --k 4").code == 1);
}

TEST_CASE("malformed input and usage errors exit 1") {
  TempDir t;
  const std::string bad = t.file("bad.json", "{\"kind\":");
  CHECK(run("check --body " + bad + " --radius 1").code == 1);
  CHECK(run("check --body " + t.file("missing.json") + " --radius 1").code == 1);
  CHECK(run("hull --radius 1").code == 1);
  CHECK(run("verify --suite nonsense").code == 1);
  CHECK(run("lens --x 0 --y 1,0 --radius 1").code == 1);
}

TEST_CASE("lens command") {
  TempDir t;
  const std::string svg = t.file("lens.svg");
  const Result r = run("lens --x -0.5,0 --y 0.5,0 --radius 1 --svg " + svg);
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["kind"] == "proper");
  CHECK(scg::io::read_file(svg).find("<path") != std::string::npos);
  CHECK(Json::parse(run("lens --x -2,0 --y 2,0 --radius 1").out)["kind"] == "universe");
}

TEST_CASE("verify lens suite") {
  TempDir t;
  const std::string out = t.file("v.json");
  const Result r = run("verify --suite lens --seed 3 --json " + out);
  CHECK(r.code == 0);
  const Json j = Json::parse(scg::io::read_file(out));
  CHECK(j["suite"] == "lens");
  CHECK(j["seed"] == 3);
  CHECK(j["passed"] == true);
}
