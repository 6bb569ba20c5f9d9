#include "mazeplan/gpmp2_planner.hpp"

#include <chrono>
#include <stdexcept>

namespace mazeplan {

namespace {
constexpr double kAnchorWeight = 1e6;
}

std::vector<TrajectoryState> init_trajectory(Point2 start, Point2 goal, const GPPriorParams& params) {
  if (params.num_states < 2) throw std::invalid_argument("init_trajectory: num_states must be >= 2");
  const int n = params.num_states;
  const double total_time = params.dt * (n - 1);
  const Point2 velocity = (1.0 / total_time) * (goal - start);

  std::vector<TrajectoryState> states(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = double(i) / (n - 1);
    states[static_cast<std::size_t>(i)] = {start + t * (goal - start), velocity};
  }
  return states;
}

Gpmp2Result plan_gpmp2(const SignedDistanceField& sdf, Point2 start, Point2 goal,
                       const GPPriorParams& params, const ObstacleModel& obstacle,
                       double clearance, const LMConfig& lm) {
  if (signed_distance(sdf, start) < clearance || signed_distance(sdf, goal) < clearance)
    throw std::invalid_argument("plan_gpmp2: start or goal violates clearance");

  const auto t0 = std::chrono::steady_clock::now();

  FactorGraph graph;
  graph.states = init_trajectory(start, goal, params);
  const int n = params.num_states;
  graph.add(std::make_unique<AnchorFactor>(0, graph.states.front(), kAnchorWeight));
  graph.add(std::make_unique<AnchorFactor>(n - 1, graph.states.back(), kAnchorWeight));
  for (int i = 1; i < n - 1; ++i)
    graph.add(std::make_unique<ObstacleFactor>(i, &sdf, obstacle));
  for (int i = 0; i < n - 1; ++i)
    graph.add(std::make_unique<GpPriorFactor>(i, params.dt, params.qc));

  Gpmp2Result result;
  result.report = lm_optimize(graph, lm);
  result.states = std::move(graph.states);
  result.path.reserve(result.states.size());
  for (const auto& s : result.states) result.path.push_back(s.position);

  const auto t1 = std::chrono::steady_clock::now();
  result.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return result;
}

}  // namespace mazeplan
