#pragma once

#include "mazeplan/factor_graph.hpp"

namespace mazeplan {

struct LMConfig {
  double lambda_init = 1e-4;
  double lambda_up = 10.0;
  double lambda_down = 0.1;
  int max_iters = 100;
  double rel_cost_tol = 1e-6;
  double abs_grad_tol = 1e-8;
  double lambda_min = 1e-12;
  double lambda_max = 1e10;
};

struct OptimizeReport {
  int iterations = 0;      // linearizations performed
  int accepted_steps = 0;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  bool converged = false;
  bool stalled = false;    // damping escalated past lambda_max without descent
  double lambda_final = 0.0;
  std::vector<double> cost_history;  // initial cost, then one entry per accepted step
};

// Batch Levenberg-Marquardt over the graph's states. Damped normal equations
// (JtJ + lambda * diag(JtJ)) delta = -Jtr, solved exactly by block-tridiagonal
// Cholesky; a step is accepted iff the cost decreases. On stall the states
// hold the best accepted iterate.
OptimizeReport lm_optimize(FactorGraph& graph, const LMConfig& config = {});

// Solves the damped system in place of delta. Returns false if a pivot block
// loses positive definiteness.
bool solve_block_tridiag(const BlockTridiag& system, double lambda, std::vector<Vec4>& delta);

}  // namespace mazeplan
