#include "mazeplan/rrt.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

#include "mazeplan/rng.hpp"

namespace mazeplan {

Point2 steer(Point2 x_nearest, Point2 x_rand, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("steer: step must be > 0");
  const Point2 delta = x_rand - x_nearest;
  const double len = norm(delta);
  if (len <= step) return x_rand;
  return x_nearest + (step / len) * delta;
}

std::size_t nearest(const Tree& tree, Point2 x_rand) {
  if (tree.vertices.empty()) throw std::invalid_argument("nearest: empty tree");
  std::size_t best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tree.vertices.size(); ++i) {
    const Point2 d = tree.vertices[i] - x_rand;
    const double sq = d.x * d.x + d.y * d.y;
    if (sq < best_sq) {
      best_sq = sq;
      best = i;
    }
  }
  return best;
}

RrtResult plan_rrt(const SignedDistanceField& sdf, Point2 start, Point2 goal, const RRTConfig& config) {
  if (!is_finite(start) || !is_finite(goal)) throw std::invalid_argument("plan_rrt: non-finite endpoint");
  if (signed_distance(sdf, start) < config.clearance || signed_distance(sdf, goal) < config.clearance)
    throw std::invalid_argument("plan_rrt: start or goal violates clearance");
  if (!(config.step_length > 0.0)) throw std::invalid_argument("plan_rrt: step_length must be > 0");
  if (config.goal_bias < 0.0 || config.goal_bias >= 1.0)
    throw std::invalid_argument("plan_rrt: goal_bias must be in [0, 1)");

  const auto t0 = std::chrono::steady_clock::now();
  const double x_max = sdf.width() * sdf.resolution();
  const double y_max = sdf.height() * sdf.resolution();
  SplitMix64 rng(config.rng_seed);

  RrtResult result;
  result.tree.vertices.push_back(start);
  result.tree.parent.push_back(-1);

  int goal_vertex = -1;
  for (std::uint64_t iter = 0; iter < config.max_iters && goal_vertex < 0; ++iter) {
    ++result.iterations;

    Point2 x_rand = goal;
    if (rng.next_double() >= config.goal_bias) {
      // Rejection-sample the free space; the walled boundary guarantees the
      // free region is a strict subset of the extent.
      bool found = false;
      for (int tries = 0; tries < 1000; ++tries) {
        const Point2 candidate{rng.next_in(0.0, x_max), rng.next_in(0.0, y_max)};
        if (signed_distance(sdf, candidate) >= config.clearance) {
          x_rand = candidate;
          found = true;
          break;
        }
      }
      if (!found) continue;
    }

    const std::size_t nearest_index = nearest(result.tree, x_rand);
    const Point2 x_nearest = result.tree.vertices[nearest_index];
    if (x_rand == x_nearest) continue;
    const Point2 x_new = steer(x_nearest, x_rand, config.step_length);
    if (segment_in_collision(sdf, x_nearest, x_new, config.clearance)) continue;

    result.tree.vertices.push_back(x_new);
    result.tree.parent.push_back(static_cast<int>(nearest_index));

    if (distance(x_new, goal) <= config.goal_tolerance &&
        !segment_in_collision(sdf, x_new, goal, config.clearance)) {
      if (x_new == goal) {
        goal_vertex = static_cast<int>(result.tree.vertices.size()) - 1;
      } else {
        result.tree.vertices.push_back(goal);
        result.tree.parent.push_back(static_cast<int>(result.tree.vertices.size()) - 2);
        goal_vertex = static_cast<int>(result.tree.vertices.size()) - 1;
      }
    }
  }

  if (goal_vertex >= 0) {
    for (int v = goal_vertex; v >= 0; v = result.tree.parent[static_cast<std::size_t>(v)])
      result.path.push_back(result.tree.vertices[static_cast<std::size_t>(v)]);
    std::reverse(result.path.begin(), result.path.end());
    result.success = true;
  }

  const auto t1 = std::chrono::steady_clock::now();
  result.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return result;
}

}  // namespace mazeplan
