#include "mazeplan/lm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mazeplan {

bool solve_block_tridiag(const BlockTridiag& system, double lambda, std::vector<Vec4>& delta) {
  const std::size_t n = system.diag.size();
  delta.assign(n, Vec4{});
  if (n == 0) return true;

  // Damped diagonal blocks: H_ii + lambda * diag(H_ii).
  std::vector<Mat4> chol(n);        // lower factors of the Schur-reduced pivots
  std::vector<Vec4> rhs(n);
  for (std::size_t i = 0; i < n; ++i)
    rhs[i] = -1.0 * system.gradient[i];

  Mat4 pivot;
  for (std::size_t i = 0; i < n; ++i) {
    pivot = system.diag[i];
    for (int k = 0; k < 4; ++k) at(pivot, k, k) += lambda * at(system.diag[i], k, k);
    if (i > 0) {
      // pivot -= upper[i-1]^T * C_{i-1}^-1 * upper[i-1]
      const Mat4 w = forward_subst_mat(chol[i - 1], system.upper[i - 1]);  // L^-1 U
      Mat4 correction{};
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          double s = 0.0;
          for (int k = 0; k < 4; ++k) s += at(w, k, r) * at(w, k, c);
          at(correction, r, c) = s;
        }
      pivot = pivot + (-1.0 * correction);
      // rhs_i -= upper[i-1]^T * C_{i-1}^-1 * rhs_{i-1}
      const Vec4 y = forward_subst(chol[i - 1], rhs[i - 1]);
      for (int r = 0; r < 4; ++r) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += at(w, k, r) * y[static_cast<std::size_t>(k)];
        rhs[i][static_cast<std::size_t>(r)] -= s;
      }
    }
    if (!cholesky_lower(pivot, chol[i])) return false;
  }

  // Back substitution: C_i x_i = rhs_i - upper[i] x_{i+1}.
  for (std::size_t ii = n; ii-- > 0;) {
    Vec4 b = rhs[ii];
    if (ii + 1 < n) {
      const Vec4& xn = delta[ii + 1];
      for (int r = 0; r < 4; ++r) {
        double s = 0.0;
        for (int c = 0; c < 4; ++c) s += at(system.upper[ii], r, c) * xn[static_cast<std::size_t>(c)];
        b[static_cast<std::size_t>(r)] -= s;
      }
    }
    delta[ii] = backward_subst(chol[ii], forward_subst(chol[ii], b));
  }
  return true;
}

namespace {

double gradient_inf_norm(const BlockTridiag& system) {
  double g = 0.0;
  for (const Vec4& v : system.gradient)
    for (double e : v) g = std::max(g, std::abs(e));
  return g;
}

void apply_step(const std::vector<TrajectoryState>& base, const std::vector<Vec4>& delta,
                std::vector<TrajectoryState>& out) {
  out.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    out[i] = from_vec4(to_vec4(base[i]) + delta[i]);
}

}  // namespace

OptimizeReport lm_optimize(FactorGraph& graph, const LMConfig& config) {
  graph.validate();
  if (!graph.has_endpoint_anchors())
    throw std::invalid_argument("lm_optimize: graph must anchor both endpoint states");

  OptimizeReport report;
  report.initial_cost = total_cost(graph);
  report.final_cost = report.initial_cost;
  report.cost_history.push_back(report.initial_cost);

  double lambda = config.lambda_init;
  double cost = report.initial_cost;
  BlockTridiag system;
  LinearizeScratch scratch;
  std::vector<Vec4> delta;
  std::vector<TrajectoryState> candidate;

  for (int iter = 0; iter < config.max_iters; ++iter) {
    ++report.iterations;
    linearize(graph, system, &scratch);
    if (gradient_inf_norm(system) < config.abs_grad_tol) {
      report.converged = true;
      break;
    }

    bool accepted = false;
    while (true) {
      const bool solved = solve_block_tridiag(system, lambda, delta);
      double new_cost = std::numeric_limits<double>::infinity();
      if (solved) {
        apply_step(graph.states, delta, candidate);
        std::swap(graph.states, candidate);
        new_cost = total_cost(graph);
        std::swap(graph.states, candidate);
      }
      if (solved && std::isfinite(new_cost) && new_cost < cost) {
        std::swap(graph.states, candidate);
        const double rel_change = (cost - new_cost) / std::max(cost, 1e-300);
        cost = new_cost;
        lambda = std::max(lambda * config.lambda_down, config.lambda_min);
        ++report.accepted_steps;
        report.cost_history.push_back(cost);
        accepted = true;
        if (rel_change < config.rel_cost_tol) report.converged = true;
        break;
      }
      if (lambda >= config.lambda_max) {
        report.stalled = true;
        break;
      }
      lambda = std::min(lambda * config.lambda_up, config.lambda_max);
    }
    if (report.stalled || (accepted && report.converged)) break;
  }

  report.final_cost = cost;
  report.lambda_final = lambda;
  return report;
}

}  // namespace mazeplan
