// Acceptance gate: one line per criterion. Criteria 1-11 come from the
// in-process "theorems" checks run with one worker; criterion 12 reruns the
// full suite through the CLI with three workers and compares the JSON bytes.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "scg/io.hpp"
#include "scg/parallel.hpp"
#include "scg/verify.hpp"

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr int kInProcessThreads = 1;
constexpr int kCliThreads = 3;

int line(int n, bool ok, const std::string& detail) {
  std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << "  " << detail << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main() {
  setenv("SCG_THREADS", std::to_string(kInProcessThreads).c_str(), 1);
  scg::configure_threads_from_env();
  const scg::verify::SuiteReport rep = scg::verify::run_suite("all", kSeed);

  int failed = 0;
  for (int n = 1; n <= 11; ++n) {
    const std::string id = "C" + std::to_string(n);
    const scg::verify::CheckResult* found = nullptr;
    for (const auto& c : rep.checks) {
      if (c.id == id) found = &c;
    }
    if (found == nullptr) {
      failed += line(n, false, "check " + id + " missing from the suite");
      continue;
    }
    failed += line(n, found->passed, found->title + (found->failures.empty() ? "" : ": " + found->failures[0]));
  }

  const std::string local = scg::verify::to_json(rep).dump(2) + "\n";
  const std::filesystem::path out =
      std::filesystem::temp_directory_path() / ("scg_acceptance_" + std::to_string(::getpid()) + ".json");
  const std::string cmd = "SCG_THREADS=" + std::to_string(kCliThreads) + " " + SCG_CLI_PATH +
                          " verify --suite all --seed " + std::to_string(kSeed) + " --json " + out.string() +
                          " > /dev/null";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  bool same = false;
  std::string detail;
  if (code != 0) {
    detail = "cli verify exited " + std::to_string(code);
  } else {
    same = scg::io::read_file(out.string()) == local;
    detail = same ? "threads 1 and 3 give identical reports (" + std::to_string(local.size()) + " bytes)"
                  : "reports differ between thread counts";
  }
  failed += line(12, same, detail);
  std::filesystem::remove(out);
  std::filesystem::remove(out.string() + ".manifest.json");

  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
  return failed == 0 ? 0 : 1;
}
