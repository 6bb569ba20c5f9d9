#include "mazeplan/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "mazeplan/metrics.hpp"

namespace mazeplan {

using nlohmann::json;

void ScenarioSpec::validate() const {
  if (builtin_maze == 0 && map_file.empty())
    throw std::invalid_argument("scenario: needs builtin_maze or map_file");
  if (builtin_maze != 0 && builtin_maze != 1 && builtin_maze != 2)
    throw std::invalid_argument("scenario: builtin_maze must be 1 or 2");
  if (!(resolution > 0.0)) throw std::invalid_argument("scenario: resolution must be > 0");
  if (start == goal) throw std::invalid_argument("scenario: start must differ from goal");
  if (!is_finite(start) || !is_finite(goal)) throw std::invalid_argument("scenario: non-finite endpoint");
  if (num_states < 2) throw std::invalid_argument("scenario: num_states must be >= 2");
  if (!(total_time > 0.0) || !(qc > 0.0) || !(epsilon > 0.0) || !(sigma_obs > 0.0))
    throw std::invalid_argument("scenario: gpmp2 parameters must be > 0");
  if (!(rrt.step_length > 0.0) || rrt.goal_bias < 0.0 || rrt.goal_bias >= 1.0)
    throw std::invalid_argument("scenario: bad rrt config");
  if (clearance < 0.0 || rrt.clearance < 0.0) throw std::invalid_argument("scenario: clearance must be >= 0");
}

ScenarioSpec scenario_from_json(const json& j) {
  ScenarioSpec s;
  if (j.contains("schema_version") && j.at("schema_version").get<int>() != 1)
    throw std::invalid_argument("scenario: unsupported schema_version");
  const json& map = j.at("map");
  if (map.contains("builtin_maze"))
    s.builtin_maze = map.at("builtin_maze").get<int>();
  else
    s.map_file = map.at("file").get<std::string>();
  s.resolution = j.value("resolution", 1.0);
  s.start = {j.at("start").at(0).get<double>(), j.at("start").at(1).get<double>()};
  s.goal = {j.at("goal").at(0).get<double>(), j.at("goal").at(1).get<double>()};
  if (j.contains("gpmp2")) {
    const json& g = j.at("gpmp2");
    s.num_states = g.value("num_states", s.num_states);
    s.total_time = g.value("total_time", s.total_time);
    s.qc = g.value("qc", s.qc);
    s.epsilon = g.value("epsilon", s.epsilon);
    s.sigma_obs = g.value("sigma_obs", s.sigma_obs);
  }
  if (j.contains("rrt")) {
    const json& r = j.at("rrt");
    s.rrt.step_length = r.value("step_length", s.rrt.step_length);
    s.rrt.max_iters = r.value("max_iters", s.rrt.max_iters);
    s.rrt.goal_tolerance = r.value("goal_tolerance", s.rrt.goal_tolerance);
    s.rrt.goal_bias = r.value("goal_bias", s.rrt.goal_bias);
  }
  s.clearance = j.value("clearance", 0.0);
  s.rrt.clearance = s.clearance;
  s.seed = j.value("seed", std::uint64_t{0});
  s.rrt.rng_seed = s.seed;
  s.validate();
  return s;
}

json scenario_to_json(const ScenarioSpec& s) {
  json map;
  if (s.builtin_maze != 0)
    map = {{"builtin_maze", s.builtin_maze}};
  else
    map = {{"file", s.map_file}};
  return json{{"schema_version", 1},
              {"map", map},
              {"resolution", s.resolution},
              {"start", {s.start.x, s.start.y}},
              {"goal", {s.goal.x, s.goal.y}},
              {"gpmp2",
               {{"num_states", s.num_states},
                {"total_time", s.total_time},
                {"qc", s.qc},
                {"epsilon", s.epsilon},
                {"sigma_obs", s.sigma_obs}}},
              {"rrt",
               {{"step_length", s.rrt.step_length},
                {"max_iters", s.rrt.max_iters},
                {"goal_tolerance", s.rrt.goal_tolerance},
                {"goal_bias", s.rrt.goal_bias}}},
              {"clearance", s.clearance},
              {"seed", s.seed}};
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_scenario: cannot open '" + path + "'");
  json j;
  in >> j;
  return scenario_from_json(j);
}

void save_scenario(const ScenarioSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_scenario: cannot open '" + path + "'");
  out << scenario_to_json(spec).dump(2) << "\n";
}

ScenarioSpec make_benchmark_scenario(int maze_id) {
  ScenarioSpec s;
  s.builtin_maze = maze_id;
  s.resolution = 1.0;
  if (maze_id == 1) {
    s.start = {400.0, 400.0};
    s.goal = {400.0, 100.0};
  } else if (maze_id == 2) {
    s.start = {250.0, 400.0};
    s.goal = {400.0, 100.0};
  } else {
    throw std::invalid_argument("make_benchmark_scenario: id must be 1 or 2");
  }
  // Stiff prior keeps the global plan near the straight seed, so the wall
  // crossing stays a single compact window and LM converges in tens of
  // iterations on both mazes.
  s.qc = 0.05;
  s.clearance = 1.0;
  s.rrt.clearance = 1.0;
  s.validate();
  return s;
}

std::string scenario_hash(const ScenarioSpec& spec) {
  json j = scenario_to_json(spec);
  j.erase("seed");
  const std::string dump = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

Environment build_environment(const ScenarioSpec& spec) {
  OccupancyGrid grid = spec.builtin_maze != 0 ? gen_benchmark_maze(spec.builtin_maze)
                                              : load_map(spec.map_file, spec.resolution);
  SignedDistanceField sdf = build_sdf(grid);
  return {std::move(grid), std::move(sdf)};
}

json report_to_json(const RunReport& r) {
  json j{{"schema_version", 1},
         {"planner", r.planner},
         {"seed", r.seed},
         {"scenario_hash", r.scenario_hash},
         {"success", r.success},
         {"timings_ms", {{"gpmp2", r.gpmp2_ms}, {"rrt", r.rrt_ms}, {"total", r.total_ms}}},
         {"path_length", r.path_length},
         {"smoothness", r.smoothness},
         {"collision_audit", r.collision_audit}};
  if (!r.failure.empty()) j["failure"] = r.failure;
  json path = json::array();
  for (const Point2& p : r.path) path.push_back({p.x, p.y});
  j["path"] = std::move(path);
  if (!r.windows.empty()) {
    json windows = json::array();
    for (const CollisionWindow& w : r.windows)
      windows.push_back({{"a_index", w.a_index},
                         {"b_index", w.b_index},
                         {"a", {w.a.x, w.a.y}},
                         {"b", {w.b.x, w.b.y}}});
    j["windows"] = std::move(windows);
  }
  if (r.has_optimizer)
    j["optimizer"] = {{"iterations", r.optimizer.iterations},
                      {"accepted_steps", r.optimizer.accepted_steps},
                      {"initial_cost", r.optimizer.initial_cost},
                      {"final_cost", r.optimizer.final_cost},
                      {"converged", r.optimizer.converged}};
  return j;
}

namespace {

void finish_metrics(RunReport& report) {
  if (!report.path.empty()) {
    report.path_length = path_length(report.path);
    report.smoothness = smoothness(report.path);
  }
}

}  // namespace

PlanArtifacts run_planner(const Environment& env, const ScenarioSpec& spec, const std::string& planner,
                          std::uint64_t seed) {
  PlanArtifacts out;
  RunReport& report = out.report;
  report.planner = planner;
  report.seed = seed;
  report.scenario_hash = scenario_hash(spec);

  RRTConfig rrt = spec.rrt;
  rrt.rng_seed = seed;
  rrt.clearance = spec.clearance;

  if (planner == "gpmp2") {
    Gpmp2Result g = plan_gpmp2(env.sdf, spec.start, spec.goal, spec.gp_params(), spec.obstacle_model(),
                               spec.clearance);
    report.success = true;  // collisions permitted by design
    report.gpmp2_ms = g.elapsed_ms;
    report.total_ms = g.elapsed_ms;
    report.optimizer = g.report;
    report.has_optimizer = true;
    report.path = g.path;
    bool free = true;
    for (std::size_t i = 0; i + 1 < g.path.size(); ++i)
      if (segment_in_collision(env.sdf, g.path[i], g.path[i + 1], 0.0)) free = false;
    report.collision_audit = free;
    out.gpmp2_path = std::move(g.path);
  } else if (planner == "rrt") {
    RrtResult r = plan_rrt(env.sdf, spec.start, spec.goal, rrt);
    report.success = r.success;
    if (!r.success) report.failure = "no-path";
    report.rrt_ms = r.elapsed_ms;
    report.total_ms = r.elapsed_ms;
    report.path = r.path;
    report.collision_audit = r.success;
    out.rrt_result = std::move(r);
  } else if (planner == "rrt-gpmp2") {
    HybridResult h = plan_hybrid(env.sdf, spec.start, spec.goal, spec.gp_params(), spec.obstacle_model(),
                                 rrt, spec.clearance);
    report.success = h.success;
    report.failure = h.failure;
    report.gpmp2_ms = h.gpmp2_ms;
    report.rrt_ms = h.rrt_ms;
    report.total_ms = h.total_ms;
    report.path = h.path;
    report.collision_audit = h.collision_audit;
    report.windows = h.windows;
    report.optimizer = h.gpmp2.report;
    report.has_optimizer = true;
    out.gpmp2_path = h.gpmp2.path;
    out.local_plans = std::move(h.local_plans);
  } else {
    throw std::invalid_argument("run_planner: unknown planner '" + planner + "'");
  }

  finish_metrics(report);
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

json compare_planners(const Environment& env, const ScenarioSpec& spec,
                      const std::vector<std::string>& planners,
                      const std::vector<std::uint64_t>& seeds, int jobs) {
  struct Cell {
    std::string planner;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const std::string& p : planners)
    for (std::uint64_t s : seeds) cells.push_back({p, s});

  std::vector<RunReport> reports(cells.size());
  const int n = static_cast<int>(cells.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs) if (jobs > 1)
  for (int i = 0; i < n; ++i) {
    const Cell& c = cells[static_cast<std::size_t>(i)];
    reports[static_cast<std::size_t>(i)] = run_planner(env, spec, c.planner, c.seed).report;
  }

  // Aggregate per planner, sorted by name so listing order cannot matter.
  std::vector<std::string> names = planners;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());

  json per_planner = json::object();
  for (const std::string& name : names) {
    std::vector<double> total, length, smooth, gpmp2_share;
    int failures = 0;
    json runs = json::array();
    for (const RunReport& r : reports) {
      if (r.planner != name) continue;
      runs.push_back(report_to_json(r));
      if (!r.success) {
        ++failures;
        continue;
      }
      total.push_back(r.total_ms);
      length.push_back(r.path_length);
      smooth.push_back(r.smoothness);
      if (r.total_ms > 0.0 && r.has_optimizer) gpmp2_share.push_back(r.gpmp2_ms / r.total_ms);
    }
    json agg{{"failures", failures}, {"successes", static_cast<int>(total.size())}, {"runs", std::move(runs)}};
    if (!total.empty()) {
      agg["median_total_ms"] = median(total);
      agg["median_path_length"] = median(length);
      agg["median_smoothness"] = median(smooth);
      if (!gpmp2_share.empty()) agg["median_gpmp2_share"] = median(gpmp2_share);
    }
    per_planner[name] = std::move(agg);
  }

  json ratios = json::object();
  for (const std::string& a : names)
    for (const std::string& b : names) {
      if (a == b) continue;
      if (!per_planner[a].contains("median_total_ms") || !per_planner[b].contains("median_total_ms")) continue;
      json entry{{"time_ratio", per_planner[a]["median_total_ms"].get<double>() /
                                    per_planner[b]["median_total_ms"].get<double>()},
                 {"length_ratio", per_planner[a]["median_path_length"].get<double>() /
                                      per_planner[b]["median_path_length"].get<double>()}};
      ratios[a + "/" + b] = std::move(entry);
    }

  return json{{"schema_version", 1},
              {"scenario_hash", scenario_hash(spec)},
              {"seeds", seeds},
              {"planners", per_planner},
              {"ratios", ratios}};
}

}  // namespace mazeplan
