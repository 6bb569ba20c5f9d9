#include <doctest.h>

#include <algorithm>
#include <optional>

#include "mazeplan/hybrid.hpp"
#include "mazeplan/metrics.hpp"
#include "test_support.hpp"

using namespace mazeplan;

namespace {

Path random_path(SplitMix64& rng, int max_waypoints, double extent) {
  const int n = 2 + int(rng.next_in(0, double(max_waypoints - 2)));
  Path path;
  for (int i = 0; i < n; ++i) path.push_back({rng.next_in(1.0, extent - 1.0), rng.next_in(1.0, extent - 1.0)});
  return path;
}

}  // namespace

TEST_CASE("find_collision_windows: collision-free path yields no windows") {
  OccupancyGrid grid(40, 40, 1.0);
  const SignedDistanceField sdf = build_sdf(grid);
  const Path path{{5, 5}, {15, 15}, {25, 25}, {35, 35}};
  CHECK(find_collision_windows(path, sdf, 0.0).empty());
}

TEST_CASE("find_collision_windows: single colliding segment gives the (2,3) window") {
  // Waypoints along y=10 at x = 2, 6, 10, 14, 18; a thin wall between
  // x=11.5 and x=12.5 hits only segment 2->3.
  OccupancyGrid grid(20, 20, 1.0);
  grid.fill_rect(11, 2, 13, 18);
  const SignedDistanceField sdf = build_sdf(grid);
  const Path path{{2, 10}, {6, 10}, {10, 10}, {14.5, 10}, {18, 10}};
  REQUIRE(signed_distance(sdf, path[2]) > 0.0);
  REQUIRE(signed_distance(sdf, path[3]) > 0.0);

  const auto windows = find_collision_windows(path, sdf, 0.0);
  REQUIRE(windows.size() == 1);
  CHECK(windows[0].a_index == 2);
  CHECK(windows[0].b_index == 3);
  CHECK(windows[0].a == path[2]);
  CHECK(windows[0].b == path[3]);
}

TEST_CASE("find_collision_windows: colliding endpoint positions are unrecoverable") {
  OccupancyGrid grid(20, 20, 1.0);
  grid.fill_rect(2, 2, 6, 6);
  const SignedDistanceField sdf = build_sdf(grid);
  const Path starts_inside{{4, 4}, {15, 15}};
  CHECK_THROWS_AS(find_collision_windows(starts_inside, sdf, 0.0), UnrecoverableWindowError);
  const Path ends_inside{{15, 15}, {4, 4}};
  CHECK_THROWS_AS(find_collision_windows(ends_inside, sdf, 0.0), UnrecoverableWindowError);
  const Path too_short{{15, 15}};
  CHECK_THROWS_AS(find_collision_windows(too_short, sdf, 0.0), std::invalid_argument);
}

TEST_CASE("find_collision_windows: matches the exhaustive-pair oracle on random paths") {
  SplitMix64 rng(2024);
  int with_windows = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const OccupancyGrid grid = oracle::random_grid(48, 48, 0.06, 1000 + trial);
    const SignedDistanceField sdf = build_sdf(grid);
    const Path path = random_path(rng, 50, 48.0);

    std::vector<CollisionWindow> got, expected;
    bool got_threw = false, expected_threw = false;
    try {
      got = find_collision_windows(path, sdf, 0.0);
    } catch (const UnrecoverableWindowError&) {
      got_threw = true;
    }
    try {
      expected = oracle::windows(path, sdf, 0.0);
    } catch (const UnrecoverableWindowError&) {
      expected_threw = true;
    }
    REQUIRE(got_threw == expected_threw);
    if (got_threw) continue;
    REQUIRE(got.size() == expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      REQUIRE(got[k].a_index == expected[k].a_index);
      REQUIRE(got[k].b_index == expected[k].b_index);
    }
    if (!got.empty()) ++with_windows;

    // Window invariants.
    for (std::size_t k = 0; k < got.size(); ++k) {
      REQUIRE(got[k].a_index < got[k].b_index);
      REQUIRE(signed_distance(sdf, got[k].a) >= 0.0);
      REQUIRE(signed_distance(sdf, got[k].b) >= 0.0);
      if (k > 0) REQUIRE(got[k - 1].b_index <= got[k].a_index);
    }
  }
  CHECK(with_windows > 50);  // the fixture must actually exercise collisions
}

TEST_CASE("plan_hybrid: collision-free global plan passes through untouched") {
  OccupancyGrid grid(200, 200, 1.0);  // walls only
  const SignedDistanceField sdf = build_sdf(grid);
  const GPPriorParams params = GPPriorParams::from_total_time(50.0, 15, 1.0);
  const RRTConfig rrt;
  const HybridResult result =
      plan_hybrid(sdf, {30, 30}, {170, 170}, params, {8.0, 0.5}, rrt, 0.0);
  REQUIRE(result.success);
  CHECK(result.windows.empty());
  CHECK(result.rrt_ms == 0.0);
  CHECK(result.total_ms == result.gpmp2_ms);
  REQUIRE(result.path.size() == result.gpmp2.path.size());
  for (std::size_t i = 0; i < result.path.size(); ++i) REQUIRE(result.path[i] == result.gpmp2.path[i]);
}

TEST_CASE("plan_hybrid: repairs the benchmark mazes and keeps bookkeeping consistent") {
  for (int maze_id : {1, 2}) {
    const OccupancyGrid maze = gen_benchmark_maze(maze_id);
    const SignedDistanceField sdf = build_sdf(maze);
    const Point2 start = maze_id == 1 ? Point2{400, 400} : Point2{250, 400};
    const Point2 goal{400, 100};
    const GPPriorParams params = GPPriorParams::from_total_time(100.0, 31, 0.05);
    RRTConfig rrt;
    rrt.clearance = 1.0;
    rrt.rng_seed = 7;

    const HybridResult result = plan_hybrid(sdf, start, goal, params, {8.0, 0.5}, rrt, 1.0);
    REQUIRE(result.success);
    REQUIRE_FALSE(result.windows.empty());
    CHECK(result.collision_audit);
    CHECK_FALSE(oracle::path_collides(sdf, result.path, 0.0));  // independent audit
    CHECK(result.path.front() == result.gpmp2.path.front());
    CHECK(result.path.back() == result.gpmp2.path.back());
    CHECK(result.total_ms == doctest::Approx(result.gpmp2_ms + result.rrt_ms));

    // Trim bookkeeping: retained global waypoints appear in order; removed
    // ones lie strictly inside some window.
    std::size_t cursor = 0;
    for (int i = 0; i < static_cast<int>(result.gpmp2.path.size()); ++i) {
      bool removed = false;
      for (const CollisionWindow& w : result.windows)
        if (i > w.a_index && i < w.b_index) removed = true;
      if (removed) continue;
      const Point2 wp = result.gpmp2.path[std::size_t(i)];
      bool found = false;
      while (cursor < result.path.size()) {
        if (result.path[cursor] == wp) {
          found = true;
          ++cursor;
          break;
        }
        ++cursor;
      }
      REQUIRE(found);
    }
  }
}

TEST_CASE("plan_hybrid: local re-plan failure is reported with partial artifacts") {
  const OccupancyGrid maze = gen_benchmark_maze(1);
  const SignedDistanceField sdf = build_sdf(maze);
  const GPPriorParams params = GPPriorParams::from_total_time(100.0, 31, 0.05);
  RRTConfig rrt;
  rrt.clearance = 1.0;
  rrt.max_iters = 10;  // far too few to thread the detour
  const HybridResult result = plan_hybrid(sdf, {400, 400}, {400, 100}, params, {8.0, 0.5}, rrt, 1.0);
  CHECK_FALSE(result.success);
  CHECK(result.failure == "local-replan-failed");
  CHECK_FALSE(result.windows.empty());
  CHECK_FALSE(result.gpmp2.path.empty());
  REQUIRE_FALSE(result.local_plans.empty());
  CHECK_FALSE(result.local_plans.front().tree.vertices.empty());
  CHECK(result.path.empty());
}

TEST_CASE("plan_hybrid: two separated walls produce two windows, both repaired") {
  // Vertical corridor crossed by two full-width walls with left-side gaps;
  // the straight global plan collides at each wall separately.
  OccupancyGrid grid(120, 300, 1.0);
  grid.fill_rect(30, 95, 120, 105);
  grid.fill_rect(30, 195, 120, 205);
  const SignedDistanceField sdf = build_sdf(grid);
  const GPPriorParams params = GPPriorParams::from_total_time(100.0, 31, 0.02);
  RRTConfig rrt;
  rrt.clearance = 1.0;
  rrt.rng_seed = 5;
  const Point2 start{80, 20}, goal{80, 280};

  const HybridResult result = plan_hybrid(sdf, start, goal, params, {6.0, 0.5}, rrt, 1.0);
  REQUIRE(result.success);
  REQUIRE(result.windows.size() == 2);
  REQUIRE(result.local_plans.size() == 2);
  CHECK(result.windows[0].b_index <= result.windows[1].a_index);
  CHECK(result.collision_audit);
  CHECK_FALSE(oracle::path_collides(sdf, result.path, 0.0));
  CHECK(result.path.front() == result.gpmp2.path.front());
  CHECK(result.path.back() == result.gpmp2.path.back());
  CHECK(result.rrt_ms == doctest::Approx(result.local_plans[0].elapsed_ms + result.local_plans[1].elapsed_ms));
  CHECK(result.total_ms == doctest::Approx(result.gpmp2_ms + result.rrt_ms));

  // Waypoints between the windows survive the trim in order.
  for (int i = result.windows[0].b_index; i <= result.windows[1].a_index; ++i) {
    const Point2 wp = result.gpmp2.path[std::size_t(i)];
    CHECK(std::count(result.path.begin(), result.path.end(), wp) == 1);
  }
}

TEST_CASE("plan_hybrid: window junctions are deduplicated") {
  // Straight corridor with one wall across it: exactly one window, and the
  // stitched path must not contain consecutive duplicate waypoints.
  OccupancyGrid grid(100, 100, 1.0);
  grid.fill_rect(1, 48, 80, 52);
  const SignedDistanceField sdf = build_sdf(grid);
  const GPPriorParams params = GPPriorParams::from_total_time(50.0, 21, 0.05);
  RRTConfig rrt;
  rrt.rng_seed = 3;
  const HybridResult result = plan_hybrid(sdf, {50, 20}, {50, 80}, params, {5.0, 0.5}, rrt, 0.5);
  REQUIRE(result.success);
  REQUIRE(result.windows.size() == 1);
  for (std::size_t i = 0; i + 1 < result.path.size(); ++i)
    REQUIRE_FALSE(result.path[i] == result.path[i + 1]);
}
