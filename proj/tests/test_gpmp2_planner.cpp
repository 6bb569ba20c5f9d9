#include <doctest.h>

#include "mazeplan/gpmp2_planner.hpp"
#include "test_support.hpp"

using namespace mazeplan;

TEST_CASE("init_trajectory: linear interpolation with constant velocity") {
  const GPPriorParams params = GPPriorParams::from_total_time(10.0, 3, 1.0);
  const auto states = init_trajectory({0, 0}, {10, 0}, params);
  REQUIRE(states.size() == 3);
  CHECK(states[0].position == Point2{0, 0});
  CHECK(states[1].position.x == doctest::Approx(5.0));
  CHECK(states[1].position.y == doctest::Approx(0.0));
  CHECK(states[2].position == Point2{10, 0});
  for (const auto& s : states) {
    CHECK(s.velocity.x == doctest::Approx(1.0));
    CHECK(s.velocity.y == doctest::Approx(0.0));
  }
}

TEST_CASE("init_trajectory: degenerate start == goal") {
  const GPPriorParams params = GPPriorParams::from_total_time(5.0, 4, 1.0);
  const auto states = init_trajectory({4, 4}, {4, 4}, params);
  for (const auto& s : states) {
    CHECK(s.position == Point2{4, 4});
    CHECK(s.velocity == Point2{0, 0});
  }
}

TEST_CASE("init_trajectory: every consecutive pair is prior-optimal") {
  SplitMix64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Point2 start{rng.next_in(-50, 50), rng.next_in(-50, 50)};
    const Point2 goal{rng.next_in(-50, 50), rng.next_in(-50, 50)};
    const int n = 2 + int(rng.next_in(0, 10));
    const GPPriorParams params = GPPriorParams::from_total_time(rng.next_in(1.0, 50.0), n, 1.0);
    const auto states = init_trajectory(start, goal, params);
    for (std::size_t i = 0; i + 1 < states.size(); ++i) {
      const Vec4 r = gp_prior_error(states[i], states[i + 1], params.dt);
      for (double e : r) REQUIRE(std::fabs(e) < 1e-9);
    }
  }
}

TEST_CASE("plan_gpmp2: stays on the straight seed when no obstacle is near") {
  OccupancyGrid grid(500, 500, 1.0);  // walls only
  const SignedDistanceField sdf = build_sdf(grid);
  const GPPriorParams params = GPPriorParams::from_total_time(100.0, 31, 1.0);
  const ObstacleModel obstacle{8.0, 0.5};
  const Point2 start{100, 100}, goal{400, 400};

  const Gpmp2Result result = plan_gpmp2(sdf, start, goal, params, obstacle, 0.0);
  REQUIRE(result.path.size() == 31);
  for (std::size_t i = 0; i < result.path.size(); ++i) {
    const double t = double(i) / 30.0;
    const Point2 straight = start + t * (goal - start);
    REQUIRE(distance(result.path[i], straight) < 1.0);
  }
  CHECK(result.report.final_cost <= result.report.initial_cost);
  CHECK(result.elapsed_ms > 0.0);
}

TEST_CASE("plan_gpmp2: endpoints pinned, cost non-increasing on the benchmark maze") {
  const OccupancyGrid maze = gen_benchmark_maze(1);
  const SignedDistanceField sdf = build_sdf(maze);
  const GPPriorParams params = GPPriorParams::from_total_time(100.0, 31, 0.05);
  const ObstacleModel obstacle{8.0, 0.5};
  const Point2 start{400, 400}, goal{400, 100};

  const Gpmp2Result result = plan_gpmp2(sdf, start, goal, params, obstacle, 1.0);
  REQUIRE(result.path.size() == 31);
  CHECK(distance(result.path.front(), start) < 1e-3);
  CHECK(distance(result.path.back(), goal) < 1e-3);
  CHECK(result.report.final_cost <= result.report.initial_cost);

  // The global plan is allowed to collide; on this maze it must (the wall
  // spans the whole corridor), which is what the local re-planner repairs.
  CHECK(oracle::path_collides(sdf, result.path, 0.0));
}

TEST_CASE("plan_gpmp2: rejects endpoints violating the clearance") {
  const OccupancyGrid maze = gen_benchmark_maze(1);
  const SignedDistanceField sdf = build_sdf(maze);
  const GPPriorParams params = GPPriorParams::from_total_time(100.0, 11, 1.0);
  CHECK_THROWS_AS(plan_gpmp2(sdf, {5, 5}, {400, 100}, params, {8.0, 0.5}, 1.0), std::invalid_argument);
}
