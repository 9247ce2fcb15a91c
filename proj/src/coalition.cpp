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

#include "hodge/coalition.hpp"

#include <cctype>

#include "hodge/calculus.hpp"

namespace hodge {

std::string coalition_label(Coalition s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; s >> i; ++i) {
    if (!(s & player_bit(i))) continue;
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  }
  out += '}';
  return out;
}

std::optional<Coalition> parse_coalition_label(std::string_view label) {
  auto skip = [&](std::size_t& pos) {
    while (pos < label.size() && std::isspace(static_cast<unsigned char>(label[pos]))) ++pos;
  };
  std::size_t pos = 0;
  skip(pos);
  if (pos >= label.size() || label[pos] != '{') return std::nullopt;
  ++pos;
  skip(pos);
  Coalition s = 0;
  if (pos < label.size() && label[pos] == '}') {
    ++pos;
  } else {
    while (true) {
      skip(pos);
      int player = 0;
      std::size_t digits = 0;
      while (pos < label.size() && std::isdigit(static_cast<unsigned char>(label[pos]))) {
        player = player * 10 + (label[pos] - '0');
        if (player > 32) return std::nullopt;
        ++pos;
        ++digits;
      }
      if (digits == 0 || player < 1) return std::nullopt;
      const Coalition bit = player_bit(player - 1);
      if (s & bit) return std::nullopt;
      s |= bit;
      skip(pos);
      if (pos < label.size() && label[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < label.size() && label[pos] == '}') {
        ++pos;
        break;
      }
      return std::nullopt;
    }
  }
  skip(pos);
  if (pos != label.size()) return std::nullopt;
  return s;
}

std::vector<Coalition> state_coalitions(const CooperationGraph& g, int n_players) {
  detail::require_players(n_players, kMaxHypercubePlayers);
  std::vector<Coalition> out;
  out.reserve(static_cast<std::size_t>(g.num_states()));
  for (const std::string& label : g.labels()) {
    const auto s = parse_coalition_label(label);
    if (!s || *s > grand_coalition(n_players)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "state '" + label + "' is not a coalition of " + std::to_string(n_players) +
                      " players");
    }
    out.push_back(*s);
  }
  if (out.front() != 0) {
    throw Error(ErrorCode::kInvalidArgument, "the null state must be the empty coalition");
  }
  return out;
}

namespace {

std::vector<std::string> coalition_labels(int n_players) {
  std::vector<std::string> labels;
  labels.reserve(std::size_t{1} << n_players);
  for (Coalition s = 0; s <= grand_coalition(n_players); ++s) labels.push_back(coalition_label(s));
  return labels;
}

}  // namespace

CooperationGraph build_hypercube(int n_players, const HypercubeWeight& lambda) {
  detail::require_players(n_players, kMaxHypercubePlayers);
  const auto n_edges = static_cast<std::size_t>(n_players) << (n_players - 1);
  std::vector<Edge> edges;
  edges.reserve(n_edges);
  Eigen::VectorXd weights(static_cast<Eigen::Index>(n_edges));
  for (Coalition s = 0; s <= grand_coalition(n_players); ++s) {
    for (int i = 0; i < n_players; ++i) {
      if (s & player_bit(i)) continue;
      weights[static_cast<Eigen::Index>(edges.size())] = lambda ? lambda(s, i) : 1.0;
      edges.push_back(Edge{static_cast<StateIndex>(s), static_cast<StateIndex>(s | player_bit(i))});
    }
  }
  return CooperationGraph::from_indexed(coalition_labels(n_players), std::move(edges),
                                        std::move(weights),
                                        Eigen::VectorXd::Ones(Eigen::Index{1} << n_players));
}

CooperationGraph build_inclusion_graph(int n_players, const InclusionPredicate& include,
                                       const InclusionWeight& lambda) {
  detail::require_players(n_players, kMaxHypercubePlayers);
  std::vector<Edge> edges;
  std::vector<double> weights;
  const Coalition grand = grand_coalition(n_players);
  for (Coalition s = 0; s <= grand; ++s) {
    // Proper supersets of s, in increasing order.
    for (Coalition t = s + 1; t <= grand; ++t) {
      if ((t & s) != s) continue;
      if (include && !include(s, t)) continue;
      edges.push_back(Edge{static_cast<StateIndex>(s), static_cast<StateIndex>(t)});
      weights.push_back(lambda ? lambda(s, t) : 1.0);
    }
  }
  return CooperationGraph::from_indexed(
      coalition_labels(n_players), std::move(edges),
      Eigen::Map<const Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size())),
      Eigen::VectorXd::Ones(Eigen::Index{1} << n_players));
}

CoalitionGame<double> coalition_game_from_graph(const CooperationGraph& g, const GameValues& v,
                                                int n_players) {
  check_game_values(g, v);
  const auto coalitions = state_coalitions(g, n_players);
  CoalitionGame<double>::Vector values =
      CoalitionGame<double>::Vector::Zero(Eigen::Index{1} << n_players);
  for (StateIndex s = 0; s < g.num_states(); ++s) {
    values[coalitions[static_cast<std::size_t>(s)]] = v[s];
  }
  return make_coalition_game(n_players, std::move(values));
}

GameValues game_on_graph(const CooperationGraph& g, const CoalitionGame<double>& v) {
  const auto coalitions = state_coalitions(g, v.n_players);
  GameValues out(g.num_states());
  for (StateIndex s = 0; s < g.num_states(); ++s) {
    out[s] = v(coalitions[static_cast<std::size_t>(s)]);
  }
  return out;
}

namespace {

template <typename Rule>
EdgeFlow build_flow(const CooperationGraph& g, const CoalitionGame<double>& v, int player,
                    Rule rule) {
  detail::require_player(v.n_players, player);
  const auto coalitions = state_coalitions(g, v.n_players);
  EdgeFlow f(g.num_edges());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const Coalition s = coalitions[static_cast<std::size_t>(edge.from)];
    const Coalition t = coalitions[static_cast<std::size_t>(edge.to)];
    if ((s & t) == s && s != t) {
      f[e] = rule(s, t);
    } else if ((s & t) == t && s != t) {
      f[e] = -rule(t, s);
    } else {
      throw Error(ErrorCode::kInvalidEdge, "edge ('" + g.label(edge.from) + "', '" +
                                               g.label(edge.to) +
                                               "') does not join nested coalitions");
    }
  }
  return f;
}

}  // namespace

EdgeFlow partial_flow_classic(const CooperationGraph& g, const CoalitionGame<double>& v,
                              int player) {
  const Coalition bit = player_bit(player);
  return build_flow(g, v, player, [&](Coalition smaller, Coalition larger) {
    const Coalition added = larger & ~smaller;
    if (coalition_size(added) != 1) {
      throw Error(ErrorCode::kInvalidEdge, "classic partials need single-player hypercube edges");
    }
    return added == bit ? v(larger) - v(smaller) : 0.0;
  });
}

EdgeFlow partial_flow_extended(const CooperationGraph& g, const CoalitionGame<double>& v,
                               int player) {
  const Coalition bit = player_bit(player);
  return build_flow(g, v, player, [&](Coalition smaller, Coalition larger) {
    const Coalition added = larger & ~smaller;
    if (!(added & bit)) return 0.0;
    return (v(larger) - v(smaller)) / coalition_size(added);
  });
}

ContributionProfile classic_profile(const CooperationGraph& g, const CoalitionGame<double>& v) {
  ContributionProfile out(g.num_edges(), v.n_players);
  for (int i = 0; i < v.n_players; ++i) out.col(i) = partial_flow_classic(g, v, i);
  return out;
}

ContributionProfile extended_profile(const CooperationGraph& g, const CoalitionGame<double>& v) {
  ContributionProfile out(g.num_edges(), v.n_players);
  for (int i = 0; i < v.n_players; ++i) out.col(i) = partial_flow_extended(g, v, i);
  return out;
}

ContributionProfile equal_split_flow(const CooperationGraph& g, const GameValues& v,
                                     int n_players) {
  check_game_values(g, v);
  if (n_players < 1) {
    throw Error(ErrorCode::kInvalidArgument, "equal split needs at least one player");
  }
  const EdgeFlow share = gradient(g, v) / static_cast<double>(n_players);
  return share.replicate(1, n_players);
}

}  // namespace hodge
