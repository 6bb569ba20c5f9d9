#include "mazeplan/hybrid.hpp"

namespace mazeplan {

std::vector<CollisionWindow> find_collision_windows(const Path& path, const SignedDistanceField& sdf,
                                                    double clearance) {
  const int n = static_cast<int>(path.size());
  if (n < 2) throw std::invalid_argument("find_collision_windows: path needs >= 2 waypoints");

  std::vector<bool> wp_free(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    wp_free[static_cast<std::size_t>(i)] = signed_distance(sdf, path[static_cast<std::size_t>(i)]) >= clearance;
  if (!wp_free.front() || !wp_free.back())
    throw UnrecoverableWindowError("find_collision_windows: path endpoint violates clearance");

  std::vector<bool> seg_free(static_cast<std::size_t>(n - 1));
  for (int i = 0; i + 1 < n; ++i)
    seg_free[static_cast<std::size_t>(i)] =
        !segment_in_collision(sdf, path[static_cast<std::size_t>(i)], path[static_cast<std::size_t>(i + 1)], clearance);

  // A segment collision marks both bounding waypoints, so runs stay
  // contiguous across a free waypoint wedged between colliding segments.
  std::vector<bool> in_run(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const bool left_seg_bad = i > 0 && !seg_free[static_cast<std::size_t>(i - 1)];
    const bool right_seg_bad = i + 1 < n && !seg_free[static_cast<std::size_t>(i)];
    in_run[static_cast<std::size_t>(i)] = !wp_free[static_cast<std::size_t>(i)] || left_seg_bad || right_seg_bad;
  }

  // a/b step outward from each run to waypoints whose own positions are
  // free; a run bound that only touches a colliding segment serves itself.
  std::vector<CollisionWindow> windows;
  int i = 0;
  while (i < n) {
    if (!in_run[static_cast<std::size_t>(i)]) {
      ++i;
      continue;
    }
    int run_end = i;
    while (run_end + 1 < n && in_run[static_cast<std::size_t>(run_end + 1)]) ++run_end;
    const int a = wp_free[static_cast<std::size_t>(i)] ? i : i - 1;
    const int b = wp_free[static_cast<std::size_t>(run_end)] ? run_end : run_end + 1;
    if (a < 0 || b > n - 1 || a == b)
      throw UnrecoverableWindowError("find_collision_windows: colliding stretch reaches a path endpoint");
    CollisionWindow w;
    w.a_index = a;
    w.b_index = b;
    w.a = path[static_cast<std::size_t>(a)];
    w.b = path[static_cast<std::size_t>(b)];
    windows.push_back(w);
    i = run_end + 1;
  }
  return windows;
}

HybridResult plan_hybrid(const SignedDistanceField& sdf, Point2 start, Point2 goal,
                         const GPPriorParams& params, const ObstacleModel& obstacle,
                         const RRTConfig& rrt, double clearance, const LMConfig& lm) {
  HybridResult result;
  result.gpmp2 = plan_gpmp2(sdf, start, goal, params, obstacle, clearance, lm);
  result.gpmp2_ms = result.gpmp2.elapsed_ms;

  try {
    result.windows = find_collision_windows(result.gpmp2.path, sdf, clearance);
  } catch (const UnrecoverableWindowError& e) {
    result.failure = std::string("unrecoverable-window: ") + e.what();
    result.total_ms = result.gpmp2_ms;
    return result;
  }

  for (std::size_t k = 0; k < result.windows.size(); ++k) {
    const CollisionWindow& w = result.windows[k];
    RRTConfig local = rrt;
    local.rng_seed = rrt.rng_seed + 0x9e3779b97f4a7c15ULL * k;  // one stream per window
    RrtResult plan = plan_rrt(sdf, w.a, w.b, local);
    result.rrt_ms += plan.elapsed_ms;
    const bool ok = plan.success;
    result.local_plans.push_back(std::move(plan));
    if (!ok) {
      result.failure = "local-replan-failed";
      result.total_ms = result.gpmp2_ms + result.rrt_ms;
      return result;
    }
  }

  // Trim each window's stretch from the global path and splice the local
  // path in its place; junction waypoints appear exactly once.
  const Path& global = result.gpmp2.path;
  Path stitched;
  int cursor = 0;
  for (std::size_t k = 0; k < result.windows.size(); ++k) {
    const CollisionWindow& w = result.windows[k];
    for (int i = cursor; i <= w.a_index; ++i) stitched.push_back(global[static_cast<std::size_t>(i)]);
    const Path& local = result.local_plans[k].path;
    stitched.insert(stitched.end(), local.begin() + 1, local.end());  // local front == position(a)
    cursor = w.b_index + 1;  // local back == position(b)
  }
  for (int i = cursor; i < static_cast<int>(global.size()); ++i)
    stitched.push_back(global[static_cast<std::size_t>(i)]);

  result.path = std::move(stitched);
  result.total_ms = result.gpmp2_ms + result.rrt_ms;

  result.collision_audit = true;
  for (std::size_t i = 0; i + 1 < result.path.size(); ++i)
    if (segment_in_collision(sdf, result.path[i], result.path[i + 1], 0.0)) {
      result.collision_audit = false;
      break;
    }
  result.success = true;
  return result;
}

}  // namespace mazeplan
