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

#ifndef HODGE_TESTS_TEST_SUPPORT_HPP
#define HODGE_TESTS_TEST_SUPPORT_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hodge/coalition.hpp"
#include "hodge/graph.hpp"
#include "hodge/strategic.hpp"

namespace hodge::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::vector<std::string> state_labels(int n) {
  std::vector<std::string> labels;
  for (int s = 0; s < n; ++s) labels.push_back("s" + std::to_string(s));
  return labels;
}

struct GraphShape {
  int min_states = 2;
  int max_states = 12;
  double min_lambda = 0.1;
  double max_lambda = 10.0;
  // Probability of each extra edge beyond the spanning tree.
  double extra_edge_probability = 0.3;
  bool random_mu = false;
};

// Connected graph: a random spanning tree plus random extra edges, random
// orientations and log-uniform lambda.
inline CooperationGraph random_connected_graph(Rng& rng, const GraphShape& shape = {}) {
  const int n = uniform_int(rng, shape.min_states, shape.max_states);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::set<std::pair<int, int>> present;
  std::vector<Edge> edges;
  auto add = [&](int a, int b) {
    if (a == b || present.count({std::min(a, b), std::max(a, b)})) return;
    present.insert({std::min(a, b), std::max(a, b)});
    if (rng() & 1) std::swap(a, b);
    edges.push_back({a, b});
  };
  for (int k = 1; k < n; ++k) add(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(uniform_int(rng, 0, k - 1))]);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (uniform(rng, 0, 1) < shape.extra_edge_probability) add(a, b);
    }
  }
  Eigen::VectorXd lambda(static_cast<Eigen::Index>(edges.size()));
  const double lo = std::log(shape.min_lambda), hi = std::log(shape.max_lambda);
  for (auto& w : lambda) w = std::exp(uniform(rng, lo, hi));
  Eigen::VectorXd mu = Eigen::VectorXd::Ones(n);
  if (shape.random_mu) {
    for (auto& m : mu) m = uniform(rng, 0.1, 10.0);
  }
  return CooperationGraph::from_indexed(state_labels(n), std::move(edges), std::move(lambda),
                                        std::move(mu));
}

// Several disjoint random components glued into one graph.
inline CooperationGraph random_disconnected_graph(Rng& rng, int components) {
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::vector<double> lambda;
  GraphShape shape;
  shape.max_states = 6;
  for (int c = 0; c < components; ++c) {
    const CooperationGraph part = random_connected_graph(rng, shape);
    const auto offset = static_cast<StateIndex>(labels.size());
    for (StateIndex s = 0; s < part.num_states(); ++s) labels.push_back("c" + std::to_string(c) + "_" + part.label(s));
    for (EdgeIndex e = 0; e < part.num_edges(); ++e) {
      edges.push_back({part.edge(e).from + offset, part.edge(e).to + offset});
      lambda.push_back(part.lambda()[e]);
    }
  }
  const auto n = static_cast<Eigen::Index>(labels.size());
  return CooperationGraph::from_indexed(std::move(labels), std::move(edges),
                                        Eigen::Map<Eigen::VectorXd>(lambda.data(), static_cast<Eigen::Index>(lambda.size())),
                                        Eigen::VectorXd::Ones(n));
}

inline Eigen::MatrixXd random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, double scale = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (auto& x : m.reshaped()) x = uniform(rng, -scale, scale);
  return m;
}

inline EdgeFlow random_flow(Rng& rng, const CooperationGraph& g, double scale = 1.0) {
  return random_matrix(rng, g.num_edges(), 1, scale);
}

inline GameValues random_game_values(Rng& rng, const CooperationGraph& g, double scale = 1.0) {
  GameValues v = random_matrix(rng, g.num_states(), 1, scale);
  v[CooperationGraph::null_state()] = 0.0;
  return v;
}

inline CoalitionGame<double> random_coalition_game(Rng& rng, int n_players) {
  return tabulate_game(n_players, [&](Coalition) { return uniform(rng, -1.0, 1.0); });
}

inline StrategicGame random_strategic_game(Rng& rng, int n_players, int max_strategies) {
  std::vector<int> counts;
  Eigen::Index profiles = 1;
  for (int i = 0; i < n_players; ++i) {
    counts.push_back(uniform_int(rng, 1, max_strategies));
    profiles *= counts.back();
  }
  return StrategicGame(std::move(counts), random_matrix(rng, profiles, n_players, 5.0));
}

// Dense matrices of the calculus on g: D is edges x states (du = D u),
// the divergence is M^-1 D^T L with L = diag(lambda), M = diag(mu).
inline Eigen::MatrixXd incidence_matrix(const CooperationGraph& g) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(g.num_edges(), g.num_states());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    d(e, g.edge(e).from) = -1.0;
    d(e, g.edge(e).to) = 1.0;
  }
  return d;
}

// Weighted least squares: minimize |D u - f|_lambda subject to u = 0 at the
// smallest state of every component, by eliminating the pinned columns.
inline Eigen::VectorXd least_squares_potential(const CooperationGraph& g, const EdgeFlow& f) {
  const Components comps = connected_components(g);
  std::vector<bool> pinned(static_cast<std::size_t>(g.num_states()), false);
  for (const auto& m : comps.members) pinned[static_cast<std::size_t>(m.front())] = true;
  std::vector<Eigen::Index> free;
  for (StateIndex s = 0; s < g.num_states(); ++s) {
    if (!pinned[static_cast<std::size_t>(s)]) free.push_back(s);
  }
  const Eigen::MatrixXd d = incidence_matrix(g);
  const Eigen::VectorXd w = g.lambda().cwiseSqrt();
  Eigen::MatrixXd a(g.num_edges(), static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) a.col(static_cast<Eigen::Index>(k)) = w.cwiseProduct(d.col(free[k]));
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(w.cwiseProduct(f));
  Eigen::VectorXd u = Eigen::VectorXd::Zero(g.num_states());
  for (std::size_t k = 0; k < free.size(); ++k) u[free[k]] = x[static_cast<Eigen::Index>(k)];
  return u;
}

// Dense transition matrix P(S, T) = lambda(S, T) / Lambda_S.
inline Eigen::MatrixXd dense_transition_matrix(const CooperationGraph& g) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(g.num_states(), g.num_states());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    p(g.edge(e).from, g.edge(e).to) += g.lambda()[e];
    p(g.edge(e).to, g.edge(e).from) += g.lambda()[e];
  }
  for (StateIndex s = 0; s < g.num_states(); ++s) p.row(s) /= p.row(s).sum();
  return p;
}

// First-step analysis: E[sum of f along a walk from each state to target],
// from (I - P restricted off target) x = P f-bar, with f-bar(S) the expected
// one-step flow out of S.
inline Eigen::VectorXd expected_path_integral(const CooperationGraph& g, const EdgeFlow& f,
                                              StateIndex target) {
  const Eigen::MatrixXd p = dense_transition_matrix(g);
  const Eigen::Index n = g.num_states();
  Eigen::VectorXd step = Eigen::VectorXd::Zero(n);
  for (StateIndex s = 0; s < n; ++s) {
    for (const Incidence& inc : g.incident(s)) {
      step[s] += p(s, inc.neighbor) * inc.sign * f[inc.edge];
    }
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - p;
  a.row(target).setZero();
  a(target, target) = 1.0;
  step[target] = 0.0;
  return a.partialPivLu().solve(step);
}

}  // namespace hodge::testing

#endif  // HODGE_TESTS_TEST_SUPPORT_HPP
