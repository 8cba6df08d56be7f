#include <atomic>
#include <stdexcept>

#include "doctest.h"
#include "scg/fixtures.hpp"
#include "scg/modulus.hpp"
#include "scg/oracles.hpp"
#include "scg/parallel.hpp"
#include "scg/rconvex.hpp"

using namespace scg;

TEST_CASE("map_indices matches the serial loop") {
  auto f = [](std::int64_t i) { return i * i - 3 * i; };
  CHECK(map_indices<std::int64_t>(ExecPolicy::serial, 1000, f) ==
        map_indices<std::int64_t>(ExecPolicy::parallel, 1000, f));
}

TEST_CASE("every index runs exactly once") {
  std::vector<std::atomic<int>> hits(777);
  for_each_index(ExecPolicy::parallel, 777, [&](std::int64_t i) { hits[static_cast<std::size_t>(i)]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("the lowest failing index is rethrown") {
  for (ExecPolicy p : {ExecPolicy::serial, ExecPolicy::parallel}) {
    try {
      for_each_index(p, 500, [](std::int64_t i) {
        if (i % 97 == 13) throw std::runtime_error(std::to_string(i));
      });
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "13");
    }
  }
}

TEST_CASE("argmin breaks ties with the secondary order") {
  const std::vector<std::pair<int, int>> v{{3, 1}, {1, 5}, {1, 2}, {4, 0}};
  const auto i = argmin(v, [](auto& a, auto& b) { return a.first < b.first; },
                        [](auto& a, auto& b) { return a.second < b.second; });
  CHECK(i == std::optional<std::size_t>{2});
  CHECK_FALSE(argmin(std::vector<int>{}, std::less<>{}, std::less<>{}).has_value());
}

TEST_CASE("kernels give identical results for every worker count") {
  const int saved = worker_count();
  const auto f = fixtures::five_disk();
  const auto e = fixtures::ellipse();
  ModulusBudget serial_budget;
  serial_budget.policy = ExecPolicy::serial;
  const ModulusSample ref = delta_omega(e.body, 0.3, serial_budget);
  BruteConfig bc;
  bc.policy = ExecPolicy::serial;
  const ModulusSample bref = brute_delta(f.body, 0.4, bc);
  const ConditionResult cref =
      condition_C_check(fixtures::tangent_disks().body, {0.5, 0.25}, {}, {}, ExecPolicy::serial);
  for (int n : {1, 2, 3, 8}) {
    set_worker_count(n);
    CHECK(worker_count() == n);
    const ModulusSample s = delta_omega(e.body, 0.3);
    CHECK(s.delta == ref.delta);
    CHECK(s.witness == ref.witness);
    const ModulusSample b = brute_delta(f.body, 0.4);
    CHECK(b.delta == bref.delta);
    const ConditionResult c = condition_C_check(fixtures::tangent_disks().body, {0.5, 0.25});
    CHECK(c.witness_pair == cref.witness_pair);
    CHECK(c.pairs_tested == cref.pairs_tested);
  }
  set_worker_count(saved);
}
