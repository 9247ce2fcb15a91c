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

#include "hodge/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hodge/calculus.hpp"

namespace hodge {

namespace {

// mu(S) * d*f(S), i.e. the divergence with unit vertex weights.
Eigen::VectorXd unit_divergence(const CooperationGraph& g, const EdgeFlow& f) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(g.num_states());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    b[edge.to] += g.lambda()[e] * f[e];
    b[edge.from] -= g.lambda()[e] * f[e];
  }
  return b;
}

Eigen::VectorXd scaled_residual_vector(const CooperationGraph& g, const VertexFunction& u,
                                       const EdgeFlow& f) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(g.num_states());
  for (StateIndex s = 0; s < g.num_states(); ++s) {
    if (g.degree(s) == 0) continue;
    double acc = 0.0;
    for (const Incidence& inc : g.incident(s)) {
      // f(T, S) for T the neighbor.
      const double inflow = -inc.sign * f[inc.edge];
      acc += g.lambda()[inc.edge] * (u[s] - u[inc.neighbor] - inflow);
    }
    r[s] = acc / g.total_weight(s);
  }
  return r;
}

}  // namespace

std::vector<Anchor> default_anchors(const CooperationGraph& g) {
  const Components comps = connected_components(g);
  std::vector<Anchor> anchors;
  anchors.reserve(comps.size());
  for (const auto& members : comps.members) {
    anchors.push_back(Anchor{members.front(), 0.0});
  }
  return anchors;
}

double scaled_residual(const CooperationGraph& g, const VertexFunction& u, const EdgeFlow& f) {
  if (u.size() != g.num_states() || f.size() != g.num_edges()) {
    throw Error(ErrorCode::kDimensionMismatch, "residual inputs have the wrong size");
  }
  return scaled_residual_vector(g, u, f).lpNorm<Eigen::Infinity>();
}

PoissonSolver::PoissonSolver(const CooperationGraph& g, std::vector<Anchor> anchors,
                             SolverConfig config)
    : graph_(g), anchors_(std::move(anchors)), config_(config) {
  const Components comps = connected_components(g);
  std::vector<int> anchored(comps.size(), 0);
  reduced_.assign(static_cast<std::size_t>(g.num_states()), 0);
  for (const Anchor& a : anchors_) {
    if (a.state < 0 || a.state >= g.num_states()) {
      throw Error(ErrorCode::kUnknownState, "anchor state out of range");
    }
    const auto c = static_cast<std::size_t>(comps.component_of[static_cast<std::size_t>(a.state)]);
    if (anchored[c]++ > 0) {
      throw Error(ErrorCode::kDuplicateAnchor,
                  "component containing '" + g.label(a.state) + "' is anchored twice");
    }
    reduced_[static_cast<std::size_t>(a.state)] = -1;
  }
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (anchored[c] == 0) {
      throw Error(ErrorCode::kMissingAnchor, "component containing '" +
                                                 g.label(comps.members[c].front()) +
                                                 "' has no anchor");
    }
  }
  for (auto& r : reduced_) {
    if (r == 0) {
      r = reduced_size_++;
    }
  }

  switch (config_.method) {
    case SolverMethod::kDense: dense_ = true; break;
    case SolverMethod::kConjugateGradient: dense_ = false; break;
    case SolverMethod::kAuto: dense_ = g.num_states() < config_.dense_threshold; break;
  }
  if (!dense_ || reduced_size_ == 0) return;

  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(reduced_size_, reduced_size_);
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const double w = g.lambda()[e];
    const auto i = reduced_[static_cast<std::size_t>(edge.from)];
    const auto j = reduced_[static_cast<std::size_t>(edge.to)];
    if (i >= 0) k(i, i) += w;
    if (j >= 0) k(j, j) += w;
    if (i >= 0 && j >= 0) {
      k(i, j) -= w;
      k(j, i) -= w;
    }
  }
  factor_.compute(k);
  if (factor_.info() != Eigen::Success) {
    throw Error(ErrorCode::kSolverDidNotConverge, "anchored Laplacian is not positive definite");
  }
}

Eigen::VectorXd PoissonSolver::anchored_rhs(const EdgeFlow& f) const {
  Eigen::VectorXd b = unit_divergence(graph_, f);
  for (const Anchor& a : anchors_) {
    if (a.value == 0.0) continue;
    for (const Incidence& inc : graph_.incident(a.state)) {
      b[inc.neighbor] += graph_.lambda()[inc.edge] * a.value;
    }
  }
  return b;
}

VertexFunction PoissonSolver::solve(const EdgeFlow& f) const {
  if (f.size() != graph_.num_edges()) {
    throw Error(ErrorCode::kDimensionMismatch, "flow size does not match edge count");
  }
  Eigen::VectorXd u = dense_ ? solve_dense(f) : solve_cg(f);
  verify(u, f);
  return u;
}

Eigen::MatrixXd PoissonSolver::solve_columns(const Eigen::MatrixXd& flows) const {
  Eigen::MatrixXd out(graph_.num_states(), flows.cols());
  for (Eigen::Index j = 0; j < flows.cols(); ++j) {
    out.col(j) = solve(flows.col(j));
  }
  return out;
}

Eigen::VectorXd PoissonSolver::solve_dense(const EdgeFlow& f) const {
  const Eigen::VectorXd b = anchored_rhs(f);
  Eigen::VectorXd rhs(reduced_size_);
  for (StateIndex s = 0; s < graph_.num_states(); ++s) {
    const auto r = reduced_[static_cast<std::size_t>(s)];
    if (r >= 0) rhs[r] = b[s];
  }
  Eigen::VectorXd x = reduced_size_ > 0 ? Eigen::VectorXd(factor_.solve(rhs)) : rhs;

  Eigen::VectorXd u(graph_.num_states());
  for (const Anchor& a : anchors_) u[a.state] = a.value;
  for (StateIndex s = 0; s < graph_.num_states(); ++s) {
    const auto r = reduced_[static_cast<std::size_t>(s)];
    if (r >= 0) u[s] = x[r];
  }
  return u;
}

void PoissonSolver::apply_reduced(const Eigen::VectorXd& p, Eigen::VectorXd& out) const {
  for (StateIndex s = 0; s < graph_.num_states(); ++s) {
    if (reduced_[static_cast<std::size_t>(s)] < 0) {
      out[s] = 0.0;
      continue;
    }
    double acc = graph_.total_weight(s) * p[s];
    for (const Incidence& inc : graph_.incident(s)) {
      acc -= graph_.lambda()[inc.edge] * p[inc.neighbor];
    }
    out[s] = acc;
  }
}

Eigen::VectorXd PoissonSolver::solve_cg(const EdgeFlow& f) const {
  const auto n = graph_.num_states();
  Eigen::VectorXd b = anchored_rhs(f);
  Eigen::VectorXd diag = graph_.total_weights();
  for (StateIndex s = 0; s < n; ++s) {
    if (reduced_[static_cast<std::size_t>(s)] < 0) {
      b[s] = 0.0;
      diag[s] = 1.0;
    }
  }
  const double scale = std::max(1.0, (b.array() / diag.array()).abs().maxCoeff());
  const double target = 0.5 * config_.solver_tol * scale;
  const Eigen::Index max_iter = config_.iterations_per_state * n;

  // Iterate is zero on anchored entries; anchor values enter through b.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = b;
  Eigen::VectorXd z = r.cwiseQuotient(diag);
  Eigen::VectorXd p = z;
  Eigen::VectorXd q(n);
  double rz = r.dot(z);

  for (Eigen::Index it = 0; it < max_iter; ++it) {
    if (r.cwiseQuotient(diag).lpNorm<Eigen::Infinity>() <= target) {
      // Confirm against the true residual before stopping.
      apply_reduced(x, q);
      r = b - q;
      if (r.cwiseQuotient(diag).lpNorm<Eigen::Infinity>() <= target) break;
      z = r.cwiseQuotient(diag);
      p = z;
      rz = r.dot(z);
    }
    apply_reduced(p, q);
    const double pq = p.dot(q);
    if (!(pq > 0.0)) break;
    const double alpha = rz / pq;
    x += alpha * p;
    r -= alpha * q;
    z = r.cwiseQuotient(diag);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }

  for (const Anchor& a : anchors_) x[a.state] = a.value;
  return x;
}

void PoissonSolver::verify(const Eigen::VectorXd& u, const EdgeFlow& f) const {
  const Eigen::VectorXd div = unit_divergence(graph_, f);
  double scale = 1.0;
  for (StateIndex s = 0; s < graph_.num_states(); ++s) {
    if (graph_.degree(s) > 0) scale = std::max(scale, std::abs(div[s]) / graph_.total_weight(s));
  }
  const double residual = scaled_residual_vector(graph_, u, f).lpNorm<Eigen::Infinity>();
  if (!(residual <= config_.solver_tol * scale)) {
    throw Error(ErrorCode::kSolverDidNotConverge,
                "Poisson residual " + std::to_string(residual) + " exceeds tolerance");
  }
}

VertexFunction solve_poisson(const CooperationGraph& g, const EdgeFlow& f,
                             const std::vector<Anchor>& anchors, const SolverConfig& config) {
  return PoissonSolver(g, anchors, config).solve(f);
}

ComponentGameSolution component_allocation(const CooperationGraph& g,
                                           const ContributionProfile& profile,
                                           const std::vector<Anchor>& anchors,
                                           const SolverConfig& config) {
  check_profile(g, profile);
  const PoissonSolver solver(g, anchors, config);
  ComponentGameSolution out;
  out.values = solver.solve_columns(profile);
  out.residuals.resize(profile.cols());
  for (Eigen::Index i = 0; i < profile.cols(); ++i) {
    out.residuals[i] = scaled_residual(g, out.values.col(i), profile.col(i));
  }
  out.anchors = anchors;
  return out;
}

ComponentGameSolution component_allocation(const CooperationGraph& g,
                                           const ContributionProfile& profile,
                                           const SolverConfig& config) {
  return component_allocation(g, profile, default_anchors(g), config);
}

namespace {

void require_same_component(const CooperationGraph& g, StateIndex a, StateIndex b) {
  if (a < 0 || a >= g.num_states() || b < 0 || b >= g.num_states()) {
    throw Error(ErrorCode::kUnknownState, "state index out of range");
  }
  const Components comps = connected_components(g);
  if (comps.component_of[static_cast<std::size_t>(a)] !=
      comps.component_of[static_cast<std::size_t>(b)]) {
    throw Error(ErrorCode::kUnreachableTarget,
                "'" + g.label(b) + "' is not reachable from '" + g.label(a) + "'");
  }
}

}  // namespace

double expected_revenue(const CooperationGraph& g, const GameValues& v,
                        const ContributionProfile& profile, StateIndex target,
                        const SolverConfig& config) {
  check_game_values(g, v);
  require_same_component(g, CooperationGraph::null_state(), target);
  const ComponentGameSolution sol = component_allocation(g, profile, config);
  return v[target] - sol.values.row(target).sum();
}

double mid_project_revenue(const CooperationGraph& g, const GameValues& v,
                           const ContributionProfile& profile, StateIndex current,
                           StateIndex target, const SolverConfig& config) {
  check_game_values(g, v);
  require_same_component(g, current, target);
  const ComponentGameSolution sol = component_allocation(g, profile, config);
  return v[target] - v[current] - (sol.values.row(target) - sol.values.row(current)).sum();
}

}  // namespace hodge
