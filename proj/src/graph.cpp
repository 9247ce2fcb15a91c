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

#include "hodge/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace hodge {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kNonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::kMissingNullState: return "MissingNullState";
    case ErrorCode::kMultipleNullStates: return "MultipleNullStates";
    case ErrorCode::kDuplicateState: return "DuplicateState";
    case ErrorCode::kUnknownState: return "UnknownState";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kNotAnEdge: return "NotAnEdge";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidGame: return "InvalidGame";
    case ErrorCode::kSolverDidNotConverge: return "SolverDidNotConverge";
    case ErrorCode::kMissingAnchor: return "MissingAnchor";
    case ErrorCode::kDuplicateAnchor: return "DuplicateAnchor";
    case ErrorCode::kUnreachableTarget: return "UnreachableTarget";
    case ErrorCode::kIsolatedState: return "IsolatedState";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kNotAWalk: return "NotAWalk";
    case ErrorCode::kTruncatedPath: return "TruncatedPath";
    case ErrorCode::kAllPathsTruncated: return "AllPathsTruncated";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kPlayerOutOfRange: return "PlayerOutOfRange";
    case ErrorCode::kInvalidEdge: return "InvalidEdge";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kLPNumericalFailure: return "LPNumericalFailure";
    case ErrorCode::kAntisymmetryViolated: return "AntisymmetryViolated";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

CooperationGraph CooperationGraph::from_indexed(std::vector<std::string> labels,
                                                std::vector<Edge> edges,
                                                Eigen::VectorXd lambda,
                                                Eigen::VectorXd mu) {
  if (labels.empty()) {
    throw Error(ErrorCode::kMissingNullState, "graph has no states");
  }
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (lambda.size() != static_cast<Eigen::Index>(edges.size())) {
    throw Error(ErrorCode::kDimensionMismatch, "lambda must have one entry per edge");
  }
  if (mu.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "mu must have one entry per state");
  }

  CooperationGraph g;
  g.index_.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!g.index_.emplace(labels[i], static_cast<StateIndex>(i)).second) {
      throw Error(ErrorCode::kDuplicateState, "duplicate state label '" + labels[i] + "'");
    }
  }
  for (Eigen::Index s = 0; s < n; ++s) {
    if (!positive_finite(mu[s])) {
      throw Error(ErrorCode::kNonpositiveWeight,
                  "mu('" + labels[static_cast<std::size_t>(s)] + "') must be positive");
    }
  }

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& edge = edges[e];
    if (edge.from < 0 || edge.from >= n || edge.to < 0 || edge.to >= n) {
      throw Error(ErrorCode::kUnknownState, "edge endpoint out of range");
    }
    const auto& from = labels[static_cast<std::size_t>(edge.from)];
    const auto& to = labels[static_cast<std::size_t>(edge.to)];
    if (edge.from == edge.to) {
      throw Error(ErrorCode::kSelfLoop, "self-loop at '" + from + "'");
    }
    const auto lo = static_cast<std::uint64_t>(std::min(edge.from, edge.to));
    const auto hi = static_cast<std::uint64_t>(std::max(edge.from, edge.to));
    if (!seen.insert(lo * static_cast<std::uint64_t>(n) + hi).second) {
      throw Error(ErrorCode::kDuplicateEdge,
                  "edge between '" + from + "' and '" + to + "' given more than once");
    }
    if (!positive_finite(lambda[static_cast<Eigen::Index>(e)])) {
      throw Error(ErrorCode::kNonpositiveWeight,
                  "lambda('" + from + "', '" + to + "') must be positive");
    }
  }

  g.labels_ = std::move(labels);
  g.edges_ = std::move(edges);
  g.lambda_ = std::move(lambda);
  g.mu_ = std::move(mu);
  g.build_index();
  return g;
}

void CooperationGraph::build_index() {
  const auto n = static_cast<std::size_t>(num_states());
  std::vector<Eigen::Index> degree(n, 0);
  for (const Edge& e : edges_) {
    ++degree[static_cast<std::size_t>(e.from)];
    ++degree[static_cast<std::size_t>(e.to)];
  }
  offsets_.assign(n + 1, 0);
  std::partial_sum(degree.begin(), degree.end(), offsets_.begin() + 1);

  incidence_.resize(static_cast<std::size_t>(offsets_.back()));
  std::vector<Eigen::Index> cursor(offsets_.begin(), offsets_.end() - 1);
  total_weight_ = Eigen::VectorXd::Zero(num_states());
  for (EdgeIndex e = 0; e < num_edges(); ++e) {
    const Edge& edge = edges_[static_cast<std::size_t>(e)];
    incidence_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(edge.from)]++)] =
        Incidence{edge.to, e, +1};
    incidence_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(edge.to)]++)] =
        Incidence{edge.from, e, -1};
    total_weight_[edge.from] += lambda_[e];
    total_weight_[edge.to] += lambda_[e];
  }
}

std::optional<StateIndex> CooperationGraph::find_state(std::string_view label) const {
  const auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

StateIndex CooperationGraph::state(std::string_view label) const {
  if (auto s = find_state(label)) return *s;
  throw Error(ErrorCode::kUnknownState, "unknown state '" + std::string(label) + "'");
}

std::optional<Incidence> CooperationGraph::find_edge(StateIndex s, StateIndex t) const {
  if (s < 0 || s >= num_states()) return std::nullopt;
  for (const Incidence& inc : incident(s)) {
    if (inc.neighbor == t) return inc;
  }
  return std::nullopt;
}

CooperationGraph CooperationGraph::with_mu(Eigen::VectorXd mu) const {
  return from_indexed(labels_, edges_, lambda_, std::move(mu));
}

CooperationGraph validate_graph(std::span<const RawState> states,
                                std::span<const RawEdge> edges,
                                const std::map<std::string, double>& mu) {
  const auto null_count =
      std::count_if(states.begin(), states.end(), [](const RawState& s) { return s.is_null; });
  if (null_count == 0) {
    throw Error(ErrorCode::kMissingNullState, "no state is flagged as the null state");
  }
  if (null_count > 1) {
    throw Error(ErrorCode::kMultipleNullStates, "more than one state is flagged as null");
  }

  std::vector<std::string> labels;
  labels.reserve(states.size());
  for (const RawState& s : states) {
    if (s.is_null) labels.push_back(s.label);
  }
  for (const RawState& s : states) {
    if (!s.is_null) labels.push_back(s.label);
  }

  std::unordered_map<std::string, StateIndex> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!index.emplace(labels[i], static_cast<StateIndex>(i)).second) {
      throw Error(ErrorCode::kDuplicateState, "duplicate state label '" + labels[i] + "'");
    }
  }
  auto lookup = [&](const std::string& label) {
    const auto it = index.find(label);
    if (it == index.end()) {
      throw Error(ErrorCode::kUnknownState, "edge refers to unknown state '" + label + "'");
    }
    return it->second;
  };

  std::vector<Edge> interned;
  interned.reserve(edges.size());
  Eigen::VectorXd lambda(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    interned.push_back(Edge{lookup(edges[e].from), lookup(edges[e].to)});
    lambda[static_cast<Eigen::Index>(e)] = edges[e].lambda;
  }

  Eigen::VectorXd weights = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(labels.size()));
  for (const auto& [label, value] : mu) {
    const auto it = index.find(label);
    if (it == index.end()) {
      throw Error(ErrorCode::kUnknownState, "mu refers to unknown state '" + label + "'");
    }
    weights[it->second] = value;
  }

  return CooperationGraph::from_indexed(std::move(labels), std::move(interned),
                                        std::move(lambda), std::move(weights));
}

double flow_value(const CooperationGraph& g, const EdgeFlow& f, StateIndex s, StateIndex t) {
  if (f.size() != g.num_edges()) {
    throw Error(ErrorCode::kDimensionMismatch, "flow size does not match edge count");
  }
  const auto inc = g.find_edge(s, t);
  if (!inc) {
    throw Error(ErrorCode::kNotAnEdge, "no edge between the given states");
  }
  return inc->sign * f[inc->edge];
}

Components connected_components(const CooperationGraph& g) {
  const auto n = g.num_states();
  Components out;
  out.component_of.assign(static_cast<std::size_t>(n), -1);
  std::vector<StateIndex> stack;
  for (StateIndex root = 0; root < n; ++root) {
    if (out.component_of[static_cast<std::size_t>(root)] >= 0) continue;
    const auto id = static_cast<Eigen::Index>(out.members.size());
    auto& members = out.members.emplace_back();
    out.component_of[static_cast<std::size_t>(root)] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      const StateIndex s = stack.back();
      stack.pop_back();
      members.push_back(s);
      for (const Incidence& inc : g.incident(s)) {
        auto& c = out.component_of[static_cast<std::size_t>(inc.neighbor)];
        if (c < 0) {
          c = id;
          stack.push_back(inc.neighbor);
        }
      }
    }
    std::sort(members.begin(), members.end());
  }
  return out;
}

void check_game_values(const CooperationGraph& g, const GameValues& v) {
  if (v.size() != g.num_states()) {
    throw Error(ErrorCode::kInvalidGame, "game must have one value per state");
  }
  if (v[CooperationGraph::null_state()] != 0.0) {
    throw Error(ErrorCode::kInvalidGame, "game value of the null state must be 0");
  }
}

void check_profile(const CooperationGraph& g, const ContributionProfile& profile) {
  if (profile.rows() != g.num_edges() || profile.cols() < 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "contribution profile must be edges x players with at least one player");
  }
}

}  // namespace hodge
