#include "mazeplan/factor_graph.hpp"

#include <cmath>

namespace mazeplan {

AnchorFactor::AnchorFactor(int index, const TrajectoryState& target, double weight)
    : Factor(Kind::anchor, {index}), target_(to_vec4(target)), weight_(weight) {
  if (!(weight > 0.0)) throw std::invalid_argument("AnchorFactor: weight must be > 0");
}

void AnchorFactor::evaluate(const std::vector<TrajectoryState>& states, FactorEval& out) const {
  out.dim = 4;
  const Vec4 x = to_vec4(states[static_cast<std::size_t>(vars()[0])]);
  out.residual = weight_ * (x - target_);
  out.jacobian[0] = weight_ * mat4_identity();
}

GpPriorFactor::GpPriorFactor(int first_index, double dt, double qc)
    : Factor(Kind::gp_prior, {first_index, first_index + 1}), transition_(cv_transition(dt)) {
  const Mat4 noise = cv_process_noise(dt, qc);
  if (!cholesky_lower(noise, noise_chol_))
    throw std::invalid_argument("GpPriorFactor: process noise not positive definite");
  j_first_ = forward_subst_mat(noise_chol_, transition_);
  j_second_ = -1.0 * forward_subst_mat(noise_chol_, mat4_identity());
}

void GpPriorFactor::evaluate(const std::vector<TrajectoryState>& states, FactorEval& out) const {
  out.dim = 4;
  const Vec4 xi = to_vec4(states[static_cast<std::size_t>(vars()[0])]);
  const Vec4 xj = to_vec4(states[static_cast<std::size_t>(vars()[1])]);
  out.residual = forward_subst(noise_chol_, mat_vec(transition_, xi) - xj);
  out.jacobian[0] = j_first_;
  out.jacobian[1] = j_second_;
}

ObstacleFactor::ObstacleFactor(int index, const SignedDistanceField* sdf, const ObstacleModel& model)
    : Factor(Kind::obstacle, {index}), sdf_(sdf), model_(model) {
  if (sdf == nullptr) throw std::invalid_argument("ObstacleFactor: null field");
}

void ObstacleFactor::evaluate(const std::vector<TrajectoryState>& states, FactorEval& out) const {
  const ObstacleEval eval = obstacle_error(states[static_cast<std::size_t>(vars()[0])], *sdf_, model_);
  out.dim = 1;
  out.residual = {eval.residual, 0.0, 0.0, 0.0};
  out.jacobian[0] = Mat4{};
  for (int c = 0; c < 4; ++c) at(out.jacobian[0], 0, c) = eval.gradient[static_cast<std::size_t>(c)];
}

void FactorGraph::validate() const {
  const int n = static_cast<int>(states.size());
  for (const auto& f : factors) {
    for (int v : f->vars())
      if (v < 0 || v >= n) throw std::invalid_argument("FactorGraph: factor references invalid variable");
    if (f->kind() == Factor::Kind::gp_prior &&
        (f->vars().size() != 2 || f->vars()[1] != f->vars()[0] + 1))
      throw std::invalid_argument("FactorGraph: gp_prior must touch adjacent variables");
  }
}

bool FactorGraph::has_endpoint_anchors() const {
  if (states.empty()) return false;
  int first = 0, last = 0;
  for (const auto& f : factors) {
    if (f->kind() != Factor::Kind::anchor) continue;
    if (f->vars()[0] == 0) ++first;
    if (f->vars()[0] == static_cast<int>(states.size()) - 1) ++last;
  }
  // A single-variable graph needs just the one anchor.
  return first == 1 && last == 1;
}

double total_cost(const FactorGraph& graph) {
  double cost = 0.0;
  FactorEval eval;
  for (const auto& f : graph.factors) {
    f->evaluate(graph.states, eval);
    for (int i = 0; i < eval.dim; ++i) {
      const double r = eval.residual[static_cast<std::size_t>(i)];
      cost += 0.5 * r * r;
    }
  }
  return cost;
}

namespace {

// J_a^T r into the gradient slot of one variable.
void add_gradient(const FactorEval& eval, std::size_t slot, Vec4& gradient) {
  for (int c = 0; c < 4; ++c) {
    double s = 0.0;
    for (int r = 0; r < eval.dim; ++r)
      s += at(eval.jacobian[slot], r, c) * eval.residual[static_cast<std::size_t>(r)];
    gradient[static_cast<std::size_t>(c)] += s;
  }
}

// J_a^T J_b into a 4x4 block.
void add_block(const FactorEval& eval, std::size_t slot_a, std::size_t slot_b, Mat4& block) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int r = 0; r < eval.dim; ++r)
        s += at(eval.jacobian[slot_a], r, i) * at(eval.jacobian[slot_b], r, j);
      at(block, i, j) += s;
    }
}

}  // namespace

void linearize_serial(const FactorGraph& graph, BlockTridiag& system) {
  system.resize(graph.states.size());
  FactorEval eval;
  for (const auto& f : graph.factors) {
    f->evaluate(graph.states, eval);
    const auto& vars = f->vars();
    for (std::size_t a = 0; a < vars.size(); ++a) {
      const auto va = static_cast<std::size_t>(vars[a]);
      add_gradient(eval, a, system.gradient[va]);
      add_block(eval, a, a, system.diag[va]);
    }
    if (vars.size() == 2) add_block(eval, 0, 1, system.upper[static_cast<std::size_t>(vars[0])]);
  }
}

// Evaluation parallelizes over factors; accumulation gathers per variable so
// each output block has exactly one writer. Contribution order within a
// block follows factor order either way, so the result is bit-identical to
// linearize_serial.
void linearize(const FactorGraph& graph, BlockTridiag& system, LinearizeScratch* scratch) {
  system.resize(graph.states.size());
  const int m = static_cast<int>(graph.factors.size());
  const int n = static_cast<int>(graph.states.size());
  LinearizeScratch local;
  LinearizeScratch& ws = scratch ? *scratch : local;
  ws.evals.resize(static_cast<std::size_t>(m));
  // Fork-join overhead swamps the work on small graphs.
#pragma omp parallel for schedule(static) if (m > 512)
  for (int k = 0; k < m; ++k)
    graph.factors[static_cast<std::size_t>(k)]->evaluate(graph.states, ws.evals[static_cast<std::size_t>(k)]);
  const std::vector<FactorEval>& evals = ws.evals;

  // Variable -> (factor, slot) incidence, in factor order.
  ws.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int>& offsets = ws.offsets;
  for (const auto& f : graph.factors)
    for (int v : f->vars()) ++offsets[static_cast<std::size_t>(v) + 1];
  for (int v = 0; v < n; ++v) offsets[static_cast<std::size_t>(v) + 1] += offsets[static_cast<std::size_t>(v)];
  ws.incidence.resize(static_cast<std::size_t>(offsets.back()));
  std::vector<std::pair<int, int>>& incidence = ws.incidence;
  {
    ws.cursor.assign(offsets.begin(), offsets.end() - 1);
    std::vector<int>& cursor = ws.cursor;
    for (int k = 0; k < m; ++k) {
      const auto& vars = graph.factors[static_cast<std::size_t>(k)]->vars();
      for (std::size_t a = 0; a < vars.size(); ++a)
        incidence[static_cast<std::size_t>(cursor[static_cast<std::size_t>(vars[a])]++)] = {k, static_cast<int>(a)};
    }
  }

#pragma omp parallel for schedule(static) if (n > 256)
  for (int v = 0; v < n; ++v) {
    for (int i = offsets[static_cast<std::size_t>(v)]; i < offsets[static_cast<std::size_t>(v) + 1]; ++i) {
      const auto [k, slot] = incidence[static_cast<std::size_t>(i)];
      const FactorEval& eval = evals[static_cast<std::size_t>(k)];
      add_gradient(eval, static_cast<std::size_t>(slot), system.gradient[static_cast<std::size_t>(v)]);
      add_block(eval, static_cast<std::size_t>(slot), static_cast<std::size_t>(slot),
                system.diag[static_cast<std::size_t>(v)]);
      // The two-variable factor's coupling block belongs to its first slot.
      if (slot == 0 && graph.factors[static_cast<std::size_t>(k)]->vars().size() == 2)
        add_block(eval, 0, 1, system.upper[static_cast<std::size_t>(v)]);
    }
  }
}

}  // namespace mazeplan
