#include <doctest.h>

#include "mazeplan/metrics.hpp"
#include "mazeplan/scenario.hpp"
#include "test_support.hpp"

using namespace mazeplan;
using nlohmann::json;

namespace {

// Millisecond fields are machine-dependent; everything else must be
// reproducible bit for bit.
json strip_timings(json j) {
  j.erase("timings_ms");
  return j;
}

}  // namespace

TEST_CASE("path_length: examples and additivity") {
  CHECK(path_length({{0, 0}, {3, 4}}) == doctest::Approx(5.0));
  CHECK(path_length({{7, 7}}) == 0.0);
  CHECK_THROWS_AS(path_length({}), std::invalid_argument);

  SplitMix64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Path a, b;
    for (int i = 0; i < 4; ++i) a.push_back({rng.next_in(-10, 10), rng.next_in(-10, 10)});
    for (int i = 0; i < 3; ++i) b.push_back({rng.next_in(-10, 10), rng.next_in(-10, 10)});
    Path joined = a;
    joined.insert(joined.end(), b.begin(), b.end());
    const double expected = path_length(a) + path_length(b) + distance(a.back(), b.front());
    REQUIRE(path_length(joined) == doctest::Approx(expected));
  }
}

TEST_CASE("smoothness: collinear zero, right angle, bounded range") {
  CHECK(smoothness({{0, 0}, {5, 0}, {10, 0}, {15, 0}}) == 0.0);
  CHECK(smoothness({{0, 0}, {1, 0}, {1, 1}}) == doctest::Approx(std::acos(-1.0) / 2.0));
  CHECK(smoothness({{0, 0}, {1, 1}}) == 0.0);  // fewer than 3 waypoints

  // Zero-length segments are skipped rather than poisoning the angles.
  CHECK(smoothness({{0, 0}, {0, 0}, {1, 0}, {1, 0}, {2, 0}}) == doctest::Approx(0.0));

  SplitMix64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    Path p;
    const int n = 3 + int(rng.next_in(0, 12));
    for (int i = 0; i < n; ++i) p.push_back({rng.next_in(-50, 50), rng.next_in(-50, 50)});
    const double s = smoothness(p);
    REQUIRE(s >= 0.0);
    REQUIRE(s <= std::acos(-1.0) + 1e-12);
  }
}

TEST_CASE("scenario: JSON round trip preserves every field") {
  ScenarioSpec spec = make_benchmark_scenario(2);
  spec.seed = 42;
  spec.rrt.goal_bias = 0.11;
  spec.num_states = 25;
  const ScenarioSpec back = scenario_from_json(scenario_to_json(spec));
  CHECK(back.builtin_maze == 2);
  CHECK(back.start == spec.start);
  CHECK(back.goal == spec.goal);
  CHECK(back.num_states == 25);
  CHECK(back.qc == spec.qc);
  CHECK(back.rrt.goal_bias == doctest::Approx(0.11));
  CHECK(back.seed == 42);
  CHECK(back.clearance == spec.clearance);
  CHECK(scenario_to_json(back) == scenario_to_json(spec));
}

TEST_CASE("scenario: validation rejects out-of-range parameters") {
  ScenarioSpec spec = make_benchmark_scenario(1);
  ScenarioSpec bad = spec;
  bad.goal = bad.start;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.num_states = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.sigma_obs = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.rrt.goal_bias = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.clearance = -0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.builtin_maze = 7;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("scenario_hash: stable under seed changes, sensitive to geometry") {
  ScenarioSpec spec = make_benchmark_scenario(1);
  ScenarioSpec reseeded = spec;
  reseeded.seed = 999;
  CHECK(scenario_hash(spec) == scenario_hash(reseeded));
  ScenarioSpec moved = spec;
  moved.goal = {401, 100};
  CHECK(scenario_hash(spec) != scenario_hash(moved));
}

TEST_CASE("run reports: identical scenario and seed reproduce byte-identical JSON") {
  const ScenarioSpec spec = make_benchmark_scenario(1);
  const Environment env = build_environment(spec);
  for (const char* planner : {"gpmp2", "rrt", "rrt-gpmp2"}) {
    const json first = report_to_json(run_planner(env, spec, planner, 11).report);
    const json second = report_to_json(run_planner(env, spec, planner, 11).report);
    REQUIRE(strip_timings(first).dump() == strip_timings(second).dump());
  }
}

TEST_CASE("run reports: collision audit round-trips through the oracle") {
  const ScenarioSpec spec = make_benchmark_scenario(2);
  const Environment env = build_environment(spec);
  for (std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
    const RunReport report = run_planner(env, spec, "rrt-gpmp2", seed).report;
    REQUIRE(report.success);
    CHECK(report.collision_audit == !oracle::path_collides(env.sdf, report.path, 0.0));
    CHECK(report.path_length >= distance(spec.start, spec.goal));
  }
  // The raw global plan collides on this maze by construction; its report
  // must say so while still counting as a success.
  const RunReport raw = run_planner(env, spec, "gpmp2", 0).report;
  CHECK(raw.success);
  CHECK_FALSE(raw.collision_audit);
  CHECK(oracle::path_collides(env.sdf, raw.path, 0.0));
}

TEST_CASE("compare_planners: aggregate is invariant to planner listing order") {
  ScenarioSpec spec = make_benchmark_scenario(1);
  const Environment env = build_environment(spec);
  const std::vector<std::uint64_t> seeds{0, 1, 2};
  json forward = compare_planners(env, spec, {"rrt", "rrt-gpmp2"}, seeds);
  json backward = compare_planners(env, spec, {"rrt-gpmp2", "rrt"}, seeds);
  for (const char* planner : {"rrt", "rrt-gpmp2"}) {
    CHECK(forward["planners"][planner]["median_path_length"] ==
          backward["planners"][planner]["median_path_length"]);
    CHECK(forward["planners"][planner]["median_smoothness"] ==
          backward["planners"][planner]["median_smoothness"]);
    CHECK(forward["planners"][planner]["successes"] == backward["planners"][planner]["successes"]);
  }
  CHECK(forward["ratios"]["rrt-gpmp2/rrt"]["length_ratio"] ==
        backward["ratios"]["rrt-gpmp2/rrt"]["length_ratio"]);
}

TEST_CASE("compare_planners: concurrent cells reproduce the sequential reports") {
  ScenarioSpec spec = make_benchmark_scenario(1);
  const Environment env = build_environment(spec);
  const std::vector<std::uint64_t> seeds{0, 1, 2, 3};
  json sequential = compare_planners(env, spec, {"rrt"}, seeds, 1);
  json parallel = compare_planners(env, spec, {"rrt"}, seeds, 2);
  auto strip_runs = [](json agg) {
    json runs = json::array();
    for (json r : agg["planners"]["rrt"]["runs"]) runs.push_back(strip_timings(std::move(r)));
    return runs;
  };
  CHECK(strip_runs(sequential).dump() == strip_runs(parallel).dump());
}

TEST_CASE("median: odd, even, and guard cases") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == doctest::Approx(2.5));
  CHECK_THROWS_AS(median({}), std::invalid_argument);
}
