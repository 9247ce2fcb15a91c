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

#ifndef HODGE_GRAPH_HPP
#define HODGE_GRAPH_HPP

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hodge/error.hpp"

namespace hodge {

using StateIndex = Eigen::Index;
using EdgeIndex = Eigen::Index;

// Functions on states (l2_mu of the state space). Game values are vertex
// functions that vanish on the null state.
using VertexFunction = Eigen::VectorXd;
using GameValues = Eigen::VectorXd;
// Antisymmetric functions on edges, stored on the stored orientation only.
using EdgeFlow = Eigen::VectorXd;
// One column per player, one row per stored edge.
using ContributionProfile = Eigen::MatrixXd;

struct Edge {
  StateIndex from;
  StateIndex to;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// One entry of a state's adjacency list. `sign` is +1 when the stored edge
// leaves this state and -1 when it enters it, so that the flow along
// (state -> neighbor) is sign * f[edge].
struct Incidence {
  StateIndex neighbor;
  EdgeIndex edge;
  int sign;
};

struct RawState {
  std::string label;
  bool is_null = false;
};

struct RawEdge {
  std::string from;
  std::string to;
  double lambda = 1.0;
};

// Weighted, oriented cooperation graph. The null state is always interned at
// index 0; the remaining states keep their input order. Immutable once built.
class CooperationGraph {
 public:
  // Builds from already-interned data. labels[0] is the null state. Throws
  // Error on any violated invariant.
  static CooperationGraph from_indexed(std::vector<std::string> labels,
                                       std::vector<Edge> edges,
                                       Eigen::VectorXd lambda,
                                       Eigen::VectorXd mu);

  Eigen::Index num_states() const { return static_cast<Eigen::Index>(labels_.size()); }
  Eigen::Index num_edges() const { return static_cast<Eigen::Index>(edges_.size()); }

  static constexpr StateIndex null_state() { return 0; }

  const std::string& label(StateIndex s) const { return labels_.at(static_cast<std::size_t>(s)); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<StateIndex> find_state(std::string_view label) const;
  // Like find_state, but throws UnknownState.
  StateIndex state(std::string_view label) const;

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const Eigen::VectorXd& lambda() const { return lambda_; }
  const Eigen::VectorXd& mu() const { return mu_; }

  std::span<const Incidence> incident(StateIndex s) const {
    const auto begin = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(s)]);
    const auto end = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(s) + 1]);
    return std::span<const Incidence>(incidence_).subspan(begin, end - begin);
  }
  Eigen::Index degree(StateIndex s) const { return static_cast<Eigen::Index>(incident(s).size()); }

  // Sum of lambda over edges incident to s.
  double total_weight(StateIndex s) const { return total_weight_[s]; }
  const Eigen::VectorXd& total_weights() const { return total_weight_; }

  // The incidence of t in s's adjacency list, if s and t are adjacent.
  std::optional<Incidence> find_edge(StateIndex s, StateIndex t) const;

  // Same graph with different vertex weights.
  CooperationGraph with_mu(Eigen::VectorXd mu) const;

  friend bool operator==(const CooperationGraph& a, const CooperationGraph& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_ && a.lambda_ == b.lambda_ &&
           a.mu_ == b.mu_;
  }

 private:
  CooperationGraph() = default;
  void build_index();

  std::vector<std::string> labels_;
  std::unordered_map<std::string, StateIndex> index_;
  std::vector<Edge> edges_;
  Eigen::VectorXd lambda_;
  Eigen::VectorXd mu_;
  Eigen::VectorXd total_weight_;
  std::vector<Eigen::Index> offsets_;
  std::vector<Incidence> incidence_;
};

// Validates string-labelled input and interns it. States absent from `mu`
// get weight 1.
CooperationGraph validate_graph(std::span<const RawState> states,
                                std::span<const RawEdge> edges,
                                const std::map<std::string, double>& mu = {});

// f(s, t) with the reverse-orientation convention f(t, s) = -f(s, t).
double flow_value(const CooperationGraph& g, const EdgeFlow& f, StateIndex s, StateIndex t);

struct Components {
  // Members of each component in increasing state order; components are
  // ordered by their smallest member.
  std::vector<std::vector<StateIndex>> members;
  // component_of[s] indexes into members.
  std::vector<Eigen::Index> component_of;

  std::size_t size() const { return members.size(); }
};

Components connected_components(const CooperationGraph& g);

// Throws InvalidGame unless v has one entry per state and v(null) == 0.
void check_game_values(const CooperationGraph& g, const GameValues& v);
// Throws DimensionMismatch unless the profile has one row per edge and at
// least one player column.
void check_profile(const CooperationGraph& g, const ContributionProfile& profile);

}  // namespace hodge

#endif  // HODGE_GRAPH_HPP
