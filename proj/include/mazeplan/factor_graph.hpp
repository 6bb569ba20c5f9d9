#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "mazeplan/gp_model.hpp"
#include "mazeplan/linalg.hpp"

namespace mazeplan {

// Whitened residual and Jacobian blocks of one factor. Residual dimension is
// at most 4; jacobian[k] holds d r / d state(vars[k]) as dim x 4 rows.
struct FactorEval {
  int dim = 0;
  Vec4 residual{};
  Mat4 jacobian[2] = {Mat4{}, Mat4{}};
};

// A factor contributes 0.5 * ||whitened residual||^2 to the graph cost.
// Factors are pure: evaluate() only reads shared state, so independent
// factors may be evaluated concurrently.
class Factor {
 public:
  enum class Kind { anchor, gp_prior, obstacle, custom };

  Factor(Kind kind, std::vector<int> vars) : kind_(kind), vars_(std::move(vars)) {
    if (vars_.empty() || vars_.size() > 2) throw std::invalid_argument("Factor: touches 1 or 2 variables");
  }
  virtual ~Factor() = default;

  Kind kind() const { return kind_; }
  const std::vector<int>& vars() const { return vars_; }

  virtual void evaluate(const std::vector<TrajectoryState>& states, FactorEval& out) const = 0;

 private:
  Kind kind_;
  std::vector<int> vars_;
};

// Pins one state to a target with uniform weight (whitened residual is
// weight * (state - target)).
class AnchorFactor final : public Factor {
 public:
  AnchorFactor(int index, const TrajectoryState& target, double weight);
  void evaluate(const std::vector<TrajectoryState>& states, FactorEval& out) const override;

 private:
  Vec4 target_;
  double weight_;
};

// Constant-velocity prior between adjacent states i and i+1, whitened by the
// inverse Cholesky factor of the process noise.
class GpPriorFactor final : public Factor {
 public:
  GpPriorFactor(int first_index, double dt, double qc);
  void evaluate(const std::vector<TrajectoryState>& states, FactorEval& out) const override;

 private:
  Mat4 transition_;
  Mat4 noise_chol_;    // lower L with Q = L L^T
  Mat4 j_first_;       // L^-1 * transition
  Mat4 j_second_;      // -L^-1
};

// Hinge-loss obstacle residual at one state's position.
class ObstacleFactor final : public Factor {
 public:
  ObstacleFactor(int index, const SignedDistanceField* sdf, const ObstacleModel& model);
  void evaluate(const std::vector<TrajectoryState>& states, FactorEval& out) const override;

 private:
  const SignedDistanceField* sdf_;
  ObstacleModel model_;
};

// Variables Theta = {theta_0 .. theta_N} plus the factors over them; edges
// are implied by each factor's variable list.
struct FactorGraph {
  std::vector<TrajectoryState> states;
  std::vector<std::unique_ptr<Factor>> factors;

  void add(std::unique_ptr<Factor> f) { factors.push_back(std::move(f)); }

  // Index bounds and gp_prior adjacency. Throws std::invalid_argument.
  void validate() const;

  // Planner graphs additionally pin both endpoints.
  bool has_endpoint_anchors() const;
};

// 0.5 * sum of squared whitened residuals.
double total_cost(const FactorGraph& graph);

// Gauss-Newton normal equations over 4*(N+1) unknowns. GP priors couple only
// adjacent states, so the system is block tridiagonal: diag[i] is the 4x4
// block at (i,i) and upper[i] the block at (i,i+1).
struct BlockTridiag {
  std::vector<Mat4> diag;
  std::vector<Mat4> upper;
  std::vector<Vec4> gradient;  // J^T r

  void resize(std::size_t n) {
    diag.assign(n, Mat4{});
    upper.assign(n > 0 ? n - 1 : 0, Mat4{});
    gradient.assign(n, Vec4{});
  }
};

// Reusable buffers for linearize; callers that iterate (the LM loop, the
// benchmark) keep one instance so per-call allocation drops out.
struct LinearizeScratch {
  std::vector<FactorEval> evals;
  std::vector<int> offsets;
  std::vector<int> cursor;
  std::vector<std::pair<int, int>> incidence;
};

// Evaluates factors in parallel (OpenMP) into per-factor slots, then gathers
// per variable; the result is bit-identical to linearize_serial.
void linearize(const FactorGraph& graph, BlockTridiag& system, LinearizeScratch* scratch = nullptr);

// Single-threaded reference.
void linearize_serial(const FactorGraph& graph, BlockTridiag& system);

}  // namespace mazeplan
