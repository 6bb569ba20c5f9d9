#pragma once

#include <stdexcept>
#include <string>

#include "mazeplan/gpmp2_planner.hpp"
#include "mazeplan/rrt.hpp"

namespace mazeplan {

// Maximal colliding stretch of a path. Waypoints a_index and b_index are the
// collision-free bounds: a_index is the last free waypoint before the stretch
// and b_index the first free waypoint after it; they become the local
// re-plan's start and goal.
struct CollisionWindow {
  int a_index = 0;
  int b_index = 0;
  Point2 a;
  Point2 b;
};

// A colliding stretch reaches theta_0 or theta_N, which must stay.
class UnrecoverableWindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Walks the waypoints and segments, marks each free or colliding at the
// given clearance, and groups consecutive colliding elements into maximal
// runs. A segment collision marks both bounding waypoints as inside the run.
// Returns disjoint windows in path order; empty iff the path is free.
std::vector<CollisionWindow> find_collision_windows(const Path& path, const SignedDistanceField& sdf,
                                                    double clearance);

struct HybridResult {
  bool success = false;
  std::string failure;  // empty on success
  Path path;            // stitched, duplicate junctions removed
  Gpmp2Result gpmp2;
  std::vector<CollisionWindow> windows;
  std::vector<RrtResult> local_plans;  // one per window, kept for rendering
  double gpmp2_ms = 0.0;
  double rrt_ms = 0.0;    // summed over windows
  double total_ms = 0.0;  // gpmp2_ms + rrt_ms
  bool collision_audit = false;  // final path re-checked segment by segment
};

// The full pipeline: global GPMP2 plan, window detection, one RRT re-plan per
// window (seeded from rrt.rng_seed, one stream per window), trim the colliding
// stretches and integrate the local paths between the retained segments.
HybridResult plan_hybrid(const SignedDistanceField& sdf, Point2 start, Point2 goal,
                         const GPPriorParams& params, const ObstacleModel& obstacle,
                         const RRTConfig& rrt, double clearance, const LMConfig& lm = {});

}  // namespace mazeplan
