#pragma once

#include "mazeplan/geometry.hpp"
#include "mazeplan/linalg.hpp"
#include "mazeplan/sdf.hpp"

namespace mazeplan {

// One support state: planar position plus velocity, stacked as
// [px, py, vx, vy] wherever a 4-vector is needed.
struct TrajectoryState {
  Point2 position;
  Point2 velocity;
};

inline Vec4 to_vec4(const TrajectoryState& s) {
  return {s.position.x, s.position.y, s.velocity.x, s.velocity.y};
}

inline TrajectoryState from_vec4(const Vec4& v) { return {{v[0], v[1]}, {v[2], v[3]}}; }

// Constant-velocity prior over the support states.
struct GPPriorParams {
  double qc = 1.0;      // white-noise-on-acceleration power spectral density
  double dt = 1.0;      // seconds between consecutive support states
  int num_states = 31;  // N+1

  static GPPriorParams from_total_time(double total_time, int num_states, double qc);
};

// Hinge-loss obstacle cost parameters.
struct ObstacleModel {
  double epsilon = 8.0;    // safety distance, meters
  double sigma_obs = 0.5;  // obstacle-cost standard deviation
};

// State transition of the constant-velocity model: [[I, dt*I], [0, I]].
Mat4 cv_transition(double dt);

// Process noise covariance qc * [[dt^3/3 I, dt^2/2 I], [dt^2/2 I, dt I]].
Mat4 cv_process_noise(double dt, double qc);

// Unwhitened prior residual: transition(dt) * a - b.
Vec4 gp_prior_error(const TrajectoryState& a, const TrajectoryState& b, double dt);

// c(d) = max(epsilon - d, 0).
double hinge_cost(double d, double epsilon);

struct ObstacleEval {
  double residual = 0.0;  // hinge(d) / sigma_obs
  Vec4 gradient{};        // d residual / d [px, py, vx, vy]
};

// Obstacle residual and its state gradient. The distance gradient comes from
// central differences of the interpolated field at step resolution/2; at the
// hinge kink (d == epsilon) the subgradient is taken as zero.
ObstacleEval obstacle_error(const TrajectoryState& state, const SignedDistanceField& sdf,
                            const ObstacleModel& model);

}  // namespace mazeplan
