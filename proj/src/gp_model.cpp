#include "mazeplan/gp_model.hpp"

#include <cmath>
#include <stdexcept>

namespace mazeplan {

GPPriorParams GPPriorParams::from_total_time(double total_time, int num_states, double qc) {
  if (num_states < 2) throw std::invalid_argument("GPPriorParams: num_states must be >= 2");
  if (!(total_time > 0.0) || !(qc > 0.0)) throw std::invalid_argument("GPPriorParams: nonpositive parameter");
  return {qc, total_time / (num_states - 1), num_states};
}

Mat4 cv_transition(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("cv_transition: dt must be > 0");
  Mat4 m = mat4_identity();
  at(m, 0, 2) = dt;
  at(m, 1, 3) = dt;
  return m;
}

Mat4 cv_process_noise(double dt, double qc) {
  if (!(dt > 0.0) || !(qc > 0.0)) throw std::invalid_argument("cv_process_noise: inputs must be > 0");
  const double a = qc * dt * dt * dt / 3.0;
  const double b = qc * dt * dt / 2.0;
  const double c = qc * dt;
  Mat4 m{};
  at(m, 0, 0) = a;
  at(m, 1, 1) = a;
  at(m, 0, 2) = b;
  at(m, 2, 0) = b;
  at(m, 1, 3) = b;
  at(m, 3, 1) = b;
  at(m, 2, 2) = c;
  at(m, 3, 3) = c;
  return m;
}

Vec4 gp_prior_error(const TrajectoryState& a, const TrajectoryState& b, double dt) {
  return mat_vec(cv_transition(dt), to_vec4(a)) - to_vec4(b);
}

double hinge_cost(double d, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("hinge_cost: epsilon must be > 0");
  return d <= epsilon ? epsilon - d : 0.0;
}

ObstacleEval obstacle_error(const TrajectoryState& state, const SignedDistanceField& sdf,
                            const ObstacleModel& model) {
  const double d = signed_distance(sdf, state.position);
  ObstacleEval out;
  out.residual = hinge_cost(d, model.epsilon) / model.sigma_obs;
  if (d < model.epsilon) {  // strictly inside the band; zero subgradient at the kink
    const double h = sdf.resolution() / 2.0;
    const double dx =
        (signed_distance(sdf, {state.position.x + h, state.position.y}) -
         signed_distance(sdf, {state.position.x - h, state.position.y})) /
        (2.0 * h);
    const double dy =
        (signed_distance(sdf, {state.position.x, state.position.y + h}) -
         signed_distance(sdf, {state.position.x, state.position.y - h})) /
        (2.0 * h);
    out.gradient = {-dx / model.sigma_obs, -dy / model.sigma_obs, 0.0, 0.0};
  }
  return out;
}

}  // namespace mazeplan
