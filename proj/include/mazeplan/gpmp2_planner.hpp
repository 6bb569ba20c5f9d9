#pragma once

#include "mazeplan/lm.hpp"

namespace mazeplan {

struct Gpmp2Result {
  Path path;                            // one waypoint per support state
  std::vector<TrajectoryState> states;  // optimized trajectory
  OptimizeReport report;
  double elapsed_ms = 0.0;
};

// Straight constant-velocity seed: positions interpolate start -> goal, all
// velocities (goal - start) / total_time. Prior-optimal by construction.
std::vector<TrajectoryState> init_trajectory(Point2 start, Point2 goal, const GPPriorParams& params);

// Global trajectory optimization: endpoint anchors + pairwise GP priors +
// one obstacle factor per interior state, solved with Levenberg-Marquardt.
// The returned path may collide; repairing it is the caller's business.
Gpmp2Result plan_gpmp2(const SignedDistanceField& sdf, Point2 start, Point2 goal,
                       const GPPriorParams& params, const ObstacleModel& obstacle,
                       double clearance = 0.0, const LMConfig& lm = {});

}  // namespace mazeplan
