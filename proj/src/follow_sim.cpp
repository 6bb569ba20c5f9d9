#include "mazeplan/follow_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mazeplan {

PIDOutput pid_step(double error, double prev_error, double integral, const PIDGains& gains, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("pid_step: dt must be > 0");
  const double clamped =
      std::clamp(integral + error * dt, -gains.integral_clamp, gains.integral_clamp);
  const double command = gains.kp * error + gains.ki * clamped + gains.kd * (error - prev_error) / dt;
  return {command, clamped};
}

double normalize_angle(double a) {
  while (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
  while (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

namespace {

struct Projection {
  double arc = 0.0;   // arc length of the closest point
  double dist = 0.0;  // distance to it
};

Projection project_on_path(const Path& path, Point2 p) {
  Projection best{0.0, std::numeric_limits<double>::infinity()};
  double arc_base = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Point2 a = path[i];
    const Point2 b = path[i + 1];
    const Point2 ab = b - a;
    const double len_sq = dot(ab, ab);
    double t = 0.0;
    if (len_sq > 0.0) t = std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0);
    const Point2 q = a + t * ab;
    const double d = distance(p, q);
    if (d < best.dist) {
      best.dist = d;
      best.arc = arc_base + t * std::sqrt(len_sq);
    }
    arc_base += std::sqrt(len_sq);
  }
  return best;
}

Point2 point_at_arc(const Path& path, double s) {
  if (s <= 0.0) return path.front();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double seg = distance(path[i], path[i + 1]);
    if (s <= seg && seg > 0.0) return path[i] + (s / seg) * (path[i + 1] - path[i]);
    s -= seg;
  }
  return path.back();
}

}  // namespace

double cross_track_distance(const Path& path, Point2 p) { return project_on_path(path, p).dist; }

FollowResult simulate_follow(const Path& path, VehicleState init, const FollowConfig& config) {
  if (path.size() < 2) throw std::invalid_argument("simulate_follow: path needs >= 2 waypoints");
  if (distance(init.position, path.front()) > 20.0)
    throw std::invalid_argument("simulate_follow: vehicle must start within 20 m of the path");

  FollowResult result;
  VehicleState state = init;
  state.heading = normalize_angle(state.heading);

  double heading_integral = 0.0, heading_prev = 0.0;
  double speed_integral = 0.0, speed_prev = 0.0;
  bool first = true;

  const int max_steps = static_cast<int>(config.max_time / config.dt);
  for (int step = 0; step <= max_steps; ++step) {
    const double t = step * config.dt;
    const double cross = cross_track_distance(path, state.position);
    result.trace.push_back({t, state, cross});
    result.max_cross_track = std::max(result.max_cross_track, cross);
    result.elapsed_sim_s = t;

    if (distance(state.position, path.back()) <= config.goal_tolerance) {
      result.status = FollowStatus::reached;
      return result;
    }
    if (cross > config.divergence_cross_track) {
      result.status = FollowStatus::diverged;
      return result;
    }

    const Projection proj = project_on_path(path, state.position);
    const Point2 target = point_at_arc(path, proj.arc + config.lookahead);
    const Point2 to_target = target - state.position;
    const double desired_heading = std::atan2(to_target.y, to_target.x);
    const double heading_error = normalize_angle(desired_heading - state.heading);
    const double speed_error = config.cruise_speed - state.speed;
    if (first) {
      heading_prev = heading_error;
      speed_prev = speed_error;
      first = false;
    }

    const PIDOutput turn = pid_step(heading_error, heading_prev, heading_integral, config.heading_gains, config.dt);
    heading_integral = turn.new_integral;
    heading_prev = heading_error;
    const PIDOutput accel = pid_step(speed_error, speed_prev, speed_integral, config.speed_gains, config.dt);
    speed_integral = accel.new_integral;
    speed_prev = speed_error;

    const double rate = std::clamp(turn.command, -config.heading_rate_max, config.heading_rate_max);
    state.position =
        state.position + (state.speed * config.dt) * Point2{std::cos(state.heading), std::sin(state.heading)};
    state.heading = normalize_angle(state.heading + rate * config.dt);
    state.speed = std::clamp(state.speed + accel.command * config.dt, 0.0, config.max_speed);
  }

  result.status = FollowStatus::timeout;
  return result;
}

}  // namespace mazeplan
