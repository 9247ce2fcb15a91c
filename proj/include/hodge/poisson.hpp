// Copyright 2026 The Hodge Allocation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HODGE_POISSON_HPP
#define HODGE_POISSON_HPP

#include <Eigen/Dense>
#include <vector>

#include "hodge/config.hpp"
#include "hodge/graph.hpp"

namespace hodge {

// Initial condition for one connected component.
struct Anchor {
  StateIndex state;
  double value = 0.0;
};

// Zero at the smallest-index state of each component; the null state anchors
// its own component.
std::vector<Anchor> default_anchors(const CooperationGraph& g);

// max_S |(d*d u - d*f)(S)| * mu(S) / Lambda_S. Independent of mu.
double scaled_residual(const CooperationGraph& g, const VertexFunction& u, const EdgeFlow& f);

// Solves d*d u = d*f with u pinned at the anchors. The system is assembled
// with mu = 1, which leaves the solution unchanged for any positive mu.
//
// The anchored Laplacian is factored once at construction (dense Cholesky) or
// applied matrix-free with Jacobi-preconditioned conjugate gradients,
// depending on SolverConfig. The graph must outlive the solver.
class PoissonSolver {
 public:
  PoissonSolver(const CooperationGraph& g, std::vector<Anchor> anchors, SolverConfig config = {});
  explicit PoissonSolver(const CooperationGraph& g, SolverConfig config = {})
      : PoissonSolver(g, default_anchors(g), config) {}

  VertexFunction solve(const EdgeFlow& f) const;
  // Column j of the result solves for column j of `flows`.
  Eigen::MatrixXd solve_columns(const Eigen::MatrixXd& flows) const;

  bool uses_dense_factorization() const { return dense_; }
  const std::vector<Anchor>& anchors() const { return anchors_; }

 private:
  Eigen::VectorXd anchored_rhs(const EdgeFlow& f) const;
  Eigen::VectorXd solve_dense(const EdgeFlow& f) const;
  Eigen::VectorXd solve_cg(const EdgeFlow& f) const;
  void apply_reduced(const Eigen::VectorXd& p, Eigen::VectorXd& out) const;
  void verify(const Eigen::VectorXd& u, const EdgeFlow& f) const;

  const CooperationGraph& graph_;
  std::vector<Anchor> anchors_;
  SolverConfig config_;
  // Position in the reduced system, or -1 for anchored states.
  std::vector<Eigen::Index> reduced_;
  Eigen::Index reduced_size_ = 0;
  bool dense_ = true;
  Eigen::LLT<Eigen::MatrixXd> factor_;
};

VertexFunction solve_poisson(const CooperationGraph& g, const EdgeFlow& f,
                             const std::vector<Anchor>& anchors, const SolverConfig& config = {});

struct ComponentGameSolution {
  // Column i is player i's component game v_i.
  Eigen::MatrixXd values;
  // Scaled residual per player.
  Eigen::VectorXd residuals;
  std::vector<Anchor> anchors;
};

ComponentGameSolution component_allocation(const CooperationGraph& g,
                                           const ContributionProfile& profile,
                                           const SolverConfig& config = {});
ComponentGameSolution component_allocation(const CooperationGraph& g,
                                           const ContributionProfile& profile,
                                           const std::vector<Anchor>& anchors,
                                           const SolverConfig& config = {});

// Manager's expected surplus when starting at the null state and finishing
// at `target`: v(F) - sum_i v_i(F).
double expected_revenue(const CooperationGraph& g, const GameValues& v,
                        const ContributionProfile& profile, StateIndex target,
                        const SolverConfig& config = {});

// Same, starting mid-project at `current`: v(F) - v(T) - sum_i (v_i(F) - v_i(T)).
double mid_project_revenue(const CooperationGraph& g, const GameValues& v,
                           const ContributionProfile& profile, StateIndex current,
                           StateIndex target, const SolverConfig& config = {});

}  // namespace hodge

#endif  // HODGE_POISSON_HPP
