#pragma once

// Property suites run by `scg verify` and the acceptance binary.
//
// "theorems" holds the twelve-item acceptance list minus the determinism
// item (which needs two processes), "lens" and "oracles" hold supporting
// invariants, and "all" runs the three in order.

#include <cstdint>
#include <string>
#include <vector>

#include "scg/io.hpp"

namespace scg::verify {

struct CheckResult {
  std::string id;
  std::string title;
  bool passed = true;
  std::vector<std::string> failures;
  io::Json metrics = io::Json::object();
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
};

const std::vector<std::string>& suite_names();
bool known_suite(const std::string& name);

/// Throws DomainError for an unknown suite name.
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

/// Deterministic report: no timings, fixed key order.
io::Json to_json(const SuiteReport& report);
/// One line per check: id, PASS/FAIL, title, and the first failure if any.
std::string table(const SuiteReport& report);

}  // namespace scg::verify
