#pragma once

#include <vector>

#include "mazeplan/geometry.hpp"

namespace mazeplan {

// Planar kinematic vehicle tracked by two PID loops (heading rate and
// speed), a desk-scale stand-in for a full vessel dynamics stack.
struct VehicleState {
  Point2 position;
  double heading = 0.0;  // radians, normalized to (-pi, pi]
  double speed = 0.0;    // m/s, >= 0
};

struct PIDGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double integral_clamp = 1e9;
};

struct PIDOutput {
  double command = 0.0;
  double new_integral = 0.0;
};

// command = kp*e + ki*clamp(integral + e*dt) + kd*(e - prev_error)/dt.
PIDOutput pid_step(double error, double prev_error, double integral, const PIDGains& gains, double dt);

struct FollowConfig {
  double dt = 0.1;                     // seconds per step
  double cruise_speed = 2.0;           // m/s commanded along the path
  double max_speed = 3.0;              // hard kinematic limit
  double lookahead = 12.0;             // meters ahead of the path projection
  double heading_rate_max = 0.5;       // rad/s turn clamp
  double goal_tolerance = 5.0;         // meters to the path end
  double max_time = 3000.0;            // seconds before giving up
  double divergence_cross_track = 100.0;
  PIDGains heading_gains{2.0, 0.02, 0.3, 1.0};
  PIDGains speed_gains{1.0, 0.1, 0.0, 2.0};
};

struct TraceSample {
  double t = 0.0;
  VehicleState state;
  double cross_track = 0.0;  // distance from position to the path polyline
};

enum class FollowStatus { reached, timeout, diverged };

struct FollowResult {
  FollowStatus status = FollowStatus::timeout;
  std::vector<TraceSample> trace;
  double max_cross_track = 0.0;
  double elapsed_sim_s = 0.0;
};

double normalize_angle(double a);

// Distance from a point to the path polyline.
double cross_track_distance(const Path& path, Point2 p);

// Tracks the path with lookahead-point targeting: the heading PID steers at
// the point `lookahead` meters along the path from the closest projection,
// the speed PID regulates toward cruise_speed. Stops within goal_tolerance
// of the path end, on timeout, or when cross-track exceeds the divergence
// bound (partial trace kept).
FollowResult simulate_follow(const Path& path, VehicleState init, const FollowConfig& config = {});

}  // namespace mazeplan
