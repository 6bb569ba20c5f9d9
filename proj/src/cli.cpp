#include "mazeplan/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "mazeplan/follow_sim.hpp"
#include "mazeplan/scenario.hpp"
#include "mazeplan/svg.hpp"

namespace mazeplan {

namespace {

using nlohmann::json;

// "0..19" or "3" -> inclusive seed list.
std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
  const auto sep = text.find("..");
  if (sep == std::string::npos) return {std::stoull(text)};
  const std::uint64_t lo = std::stoull(text.substr(0, sep));
  const std::uint64_t hi = std::stoull(text.substr(sep + 2));
  if (hi < lo) throw std::invalid_argument("seed range: end before start");
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  return seeds;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "'");
  out << j.dump(2) << "\n";
}

void render_plan_svg(const std::string& path, const Environment& env, const ScenarioSpec& spec,
                     const PlanArtifacts& artifacts) {
  SvgScene scene;
  scene.start = spec.start;
  scene.goal = spec.goal;
  if (artifacts.rrt_result) scene.trees.push_back(&artifacts.rrt_result->tree);
  for (const RrtResult& lp : artifacts.local_plans) scene.trees.push_back(&lp.tree);
  if (!artifacts.gpmp2_path.empty()) scene.polylines.push_back({artifacts.gpmp2_path, "#8a2be2", 2.5});
  if (!artifacts.report.path.empty() && artifacts.report.planner != "gpmp2")
    scene.polylines.push_back({artifacts.report.path, "#1e4fd6", 2.5});
  write_svg(path, env.grid, scene);
}

int cmd_plan(const std::string& scenario_path, const std::string& planner,
             std::optional<std::uint64_t> seed, const std::string& out_path, const std::string& svg_path) {
  ScenarioSpec spec = load_scenario(scenario_path);
  const Environment env = build_environment(spec);
  const std::uint64_t run_seed = seed.value_or(spec.seed);

  PlanArtifacts artifacts = run_planner(env, spec, planner, run_seed);
  if (!out_path.empty()) write_json(report_to_json(artifacts.report), out_path);
  if (!svg_path.empty()) render_plan_svg(svg_path, env, spec, artifacts);

  if (!artifacts.report.success) {
    std::cerr << "plan: " << planner << " failed: " << artifacts.report.failure << "\n";
    return 1;
  }
  std::cout << "plan: " << planner << " total " << artifacts.report.total_ms << " ms, length "
            << artifacts.report.path_length << " m\n";
  return 0;
}

int cmd_compare(const std::string& scenario_path, const std::string& planners_csv, const std::string& seeds_text,
                const std::string& out_path, int jobs) {
  ScenarioSpec spec = load_scenario(scenario_path);
  const Environment env = build_environment(spec);
  const auto planners = split_csv(planners_csv);
  const auto seeds = parse_seed_range(seeds_text);
  if (planners.empty() || seeds.empty()) throw std::invalid_argument("compare: empty planner or seed list");

  const json agg = compare_planners(env, spec, planners, seeds, jobs);
  if (!out_path.empty()) write_json(agg, out_path);

  for (const auto& [name, stats] : agg.at("planners").items()) {
    std::cout << name << ": successes " << stats.at("successes").get<int>();
    if (stats.contains("median_total_ms"))
      std::cout << ", median total " << stats.at("median_total_ms").get<double>() << " ms, median length "
                << stats.at("median_path_length").get<double>() << " m";
    std::cout << "\n";
  }
  for (const auto& [pair, r] : agg.at("ratios").items())
    std::cout << pair << ": time " << r.at("time_ratio").get<double>() << ", length "
              << r.at("length_ratio").get<double>() << "\n";
  return 0;
}

int cmd_gen_maze(int id, const std::string& out_path, const std::string& scenario_out) {
  const OccupancyGrid maze = gen_benchmark_maze(id);
  if (!out_path.empty()) save_map(maze, out_path);
  if (!scenario_out.empty()) {
    ScenarioSpec spec = make_benchmark_scenario(id);
    if (!out_path.empty()) {
      spec.builtin_maze = 0;
      spec.map_file = out_path;
    }
    save_scenario(spec, scenario_out);
  }
  std::cout << "gen-maze: maze " << id << " (" << maze.width() << "x" << maze.height() << ")\n";
  return 0;
}

int cmd_follow(const std::string& report_path, const std::string& out_path, const std::string& svg_path,
               const std::string& scenario_path, double lookahead, double cruise) {
  std::ifstream in(report_path);
  if (!in) throw std::runtime_error("follow: cannot open '" + report_path + "'");
  json report;
  in >> report;

  Path desired;
  for (const auto& p : report.at("path")) desired.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  if (desired.size() < 2) throw std::runtime_error("follow: report path has fewer than 2 waypoints");

  FollowConfig config;
  config.lookahead = lookahead;
  config.cruise_speed = cruise;
  VehicleState init;
  init.position = desired.front() + Point2{5.0, 0.0};
  init.heading = 0.0;

  const FollowResult result = simulate_follow(desired, init, config);

  json trace = json::array();
  for (const TraceSample& s : result.trace)
    trace.push_back({{"t", s.t},
                     {"x", s.state.position.x},
                     {"y", s.state.position.y},
                     {"heading", s.state.heading},
                     {"speed", s.state.speed},
                     {"cross_track", s.cross_track}});
  const char* status = result.status == FollowStatus::reached    ? "reached"
                       : result.status == FollowStatus::diverged ? "diverged"
                                                                 : "timeout";
  json out{{"schema_version", 1},
           {"status", status},
           {"max_cross_track", result.max_cross_track},
           {"sim_seconds", result.elapsed_sim_s},
           {"trace", std::move(trace)}};
  if (!out_path.empty()) write_json(out, out_path);

  if (!svg_path.empty()) {
    Path real;
    for (const TraceSample& s : result.trace) real.push_back(s.state.position);
    SvgScene scene;
    scene.start = desired.front();
    scene.goal = desired.back();
    scene.polylines.push_back({desired, "#8a2be2", 2.5});  // desired purple
    scene.polylines.push_back({real, "#1e4fd6", 1.5});     // real blue
    if (!scenario_path.empty()) {
      const Environment env = build_environment(load_scenario(scenario_path));
      write_svg(svg_path, env.grid, scene);
    } else {
      // No map available; render on a plain canvas sized to the trace.
      OccupancyGrid blank(500, 500, 1.0);
      write_svg(svg_path, blank, scene);
    }
  }

  std::cout << "follow: " << status << ", max cross-track " << result.max_cross_track << " m\n";
  return result.status == FollowStatus::reached ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"2-D maze motion planning benchmark toolkit"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, svg_path, planner = "rrt-gpmp2";
  std::optional<std::uint64_t> seed;
  auto* plan = app.add_subcommand("plan", "run one planner on a scenario");
  plan->add_option("--scenario", scenario_path, "scenario JSON")->required();
  plan->add_option("--planner", planner, "gpmp2 | rrt | rrt-gpmp2");
  plan->add_option("--seed", seed, "override the scenario seed");
  plan->add_option("--out", out_path, "write the run report JSON here");
  plan->add_option("--svg", svg_path, "write a rendering here");

  std::string planners_csv = "rrt,rrt-gpmp2", seeds_text = "0..19";
  int jobs = 1;
  std::string cmp_scenario, cmp_out;
  auto* compare = app.add_subcommand("compare", "sweep planners over seeds and aggregate");
  compare->add_option("--scenario", cmp_scenario, "scenario JSON")->required();
  compare->add_option("--planners", planners_csv, "comma-separated planner ids");
  compare->add_option("--seeds", seeds_text, "seed range, e.g. 0..19");
  compare->add_option("--out", cmp_out, "write the aggregate JSON here");
  compare->add_option("--jobs", jobs, "concurrent cells (default 1 for honest timing)");

  int maze_id = 1;
  std::string maze_out, maze_scenario_out;
  auto* gen = app.add_subcommand("gen-maze", "write a built-in benchmark maze");
  gen->add_option("--id", maze_id, "1 or 2")->required();
  gen->add_option("--out", maze_out, "graymap output path");
  gen->add_option("--scenario-out", maze_scenario_out, "also write the matching scenario JSON");

  std::string follow_report, follow_out, follow_svg, follow_scenario;
  double lookahead = 12.0, cruise = 2.0;
  auto* follow = app.add_subcommand("follow", "track a planned path with the PID vehicle");
  follow->add_option("--report", follow_report, "run report JSON with the desired path")->required();
  follow->add_option("--out", follow_out, "trace JSON output");
  follow->add_option("--svg", follow_svg, "desired-vs-real rendering");
  follow->add_option("--scenario", follow_scenario, "scenario JSON, for the map backdrop");
  follow->add_option("--lookahead", lookahead, "target point distance, m");
  follow->add_option("--cruise", cruise, "cruise speed, m/s");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (plan->parsed()) return cmd_plan(scenario_path, planner, seed, out_path, svg_path);
    if (compare->parsed()) return cmd_compare(cmp_scenario, planners_csv, seeds_text, cmp_out, jobs);
    if (gen->parsed()) return cmd_gen_maze(maze_id, maze_out, maze_scenario_out);
    if (follow->parsed()) return cmd_follow(follow_report, follow_out, follow_svg, follow_scenario, lookahead, cruise);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace mazeplan
