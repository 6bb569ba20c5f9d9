#pragma once

#include <cstdint>
#include <vector>

#include "mazeplan/geometry.hpp"
#include "mazeplan/sdf.hpp"

namespace mazeplan {

// Rooted tree over sampled points: vertex 0 is the start and has parent -1,
// every other vertex stores the index of its parent.
struct Tree {
  std::vector<Point2> vertices;
  std::vector<int> parent;
};

struct RRTConfig {
  double step_length = 10.0;       // meters per extension
  std::uint64_t max_iters = 100000;
  double goal_tolerance = 10.0;    // connect-to-goal radius
  double goal_bias = 0.05;         // probability of sampling the goal
  double clearance = 0.0;          // meters kept from obstacles
  std::uint64_t rng_seed = 0;
};

// Moves from x_nearest toward x_rand by at most `step`.
Point2 steer(Point2 x_nearest, Point2 x_rand, double step);

// Index of the tree vertex closest to the query; ties break to the lowest
// index. Linear scan — tree sizes here do not justify a spatial index.
std::size_t nearest(const Tree& tree, Point2 x_rand);

struct RrtResult {
  bool success = false;
  Path path;   // start .. goal, goal appended exactly
  Tree tree;   // grown tree, kept for rendering even on failure
  double elapsed_ms = 0.0;
  std::uint64_t iterations = 0;
};

// Sample / Nearest / Steer / CollisionFree loop. Samples uniformly over the
// map extent with rejection to free space; with probability goal_bias the
// goal is sampled instead. Deterministic for a given rng_seed.
RrtResult plan_rrt(const SignedDistanceField& sdf, Point2 start, Point2 goal, const RRTConfig& config);

}  // namespace mazeplan
