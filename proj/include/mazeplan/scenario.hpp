#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "mazeplan/hybrid.hpp"

namespace mazeplan {

// One benchmark problem: the environment plus every planner parameter.
// Serialized as versioned JSON (see README for the schema).
struct ScenarioSpec {
  int builtin_maze = 0;   // 1 or 2; 0 means load map_file instead
  std::string map_file;   // graymap path, used when builtin_maze == 0
  double resolution = 1.0;
  Point2 start;
  Point2 goal;
  int num_states = 31;
  double total_time = 100.0;
  double qc = 1.0;
  double epsilon = 8.0;
  double sigma_obs = 0.5;
  RRTConfig rrt;
  double clearance = 0.0;
  std::uint64_t seed = 0;

  GPPriorParams gp_params() const { return GPPriorParams::from_total_time(total_time, num_states, qc); }
  ObstacleModel obstacle_model() const { return {epsilon, sigma_obs}; }

  // Parameter-range checks that need no map. Throws std::invalid_argument.
  void validate() const;
};

ScenarioSpec scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const ScenarioSpec& spec);
ScenarioSpec load_scenario(const std::string& path);
void save_scenario(const ScenarioSpec& spec, const std::string& path);

// The shipped benchmark problems: builtin maze 1 or 2 with the tuned
// planner parameters (clearance 1 m, RRT step 10 m).
ScenarioSpec make_benchmark_scenario(int maze_id);

// FNV-1a over the canonical scenario JSON (seed excluded), hex encoded.
std::string scenario_hash(const ScenarioSpec& spec);

struct Environment {
  OccupancyGrid grid;
  SignedDistanceField sdf;
};

// Builds or loads the occupancy grid and its distance field.
Environment build_environment(const ScenarioSpec& spec);

// One planner execution, flattened for reporting. Millisecond fields are
// machine-dependent; everything else is deterministic given (scenario, seed).
struct RunReport {
  std::string planner;
  std::uint64_t seed = 0;
  std::string scenario_hash;
  bool success = false;
  std::string failure;
  double gpmp2_ms = 0.0;
  double rrt_ms = 0.0;
  double total_ms = 0.0;
  Path path;
  double path_length = 0.0;
  double smoothness = 0.0;
  bool collision_audit = false;
  std::vector<CollisionWindow> windows;
  OptimizeReport optimizer;
  bool has_optimizer = false;
};

nlohmann::json report_to_json(const RunReport& report);

// Everything a run produces, including what the SVG renderer wants.
struct PlanArtifacts {
  RunReport report;
  Path gpmp2_path;  // global plan, when the planner ran one
  std::vector<RrtResult> local_plans;
  std::optional<RrtResult> rrt_result;
};

// planner is one of "gpmp2", "rrt", "rrt-gpmp2".
PlanArtifacts run_planner(const Environment& env, const ScenarioSpec& spec, const std::string& planner,
                          std::uint64_t seed);

// Seed-sweep comparison. Cells execute sequentially by default so wall-clock
// medians stay honest; jobs > 1 runs cells concurrently with OpenMP (each
// cell owns its RNG stream and report slot). The aggregate carries per-planner
// medians plus time/length ratios for every planner pair, and is invariant to
// planner listing order.
nlohmann::json compare_planners(const Environment& env, const ScenarioSpec& spec,
                                const std::vector<std::string>& planners,
                                const std::vector<std::uint64_t>& seeds, int jobs = 1);

double median(std::vector<double> values);

}  // namespace mazeplan
