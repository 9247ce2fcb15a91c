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

#ifndef HODGE_COALITION_HPP
#define HODGE_COALITION_HPP

// Coalition games on 2^[N]: hypercube and inclusion graphs, the per-player
// contribution schemes built from a game, and the classical Shapley value in
// closed form and as an average over join orders.
//
// Players are 0-based in the API (player i is bit i of a Coalition). State
// labels are 1-based, e.g. "{1,3}" for players 0 and 2; "{}" is the null
// coalition.

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "hodge/error.hpp"
#include "hodge/graph.hpp"

namespace hodge {

using Coalition = std::uint32_t;

inline constexpr int kMaxHypercubePlayers = 20;
inline constexpr int kMaxPermutationPlayers = 10;

constexpr Coalition player_bit(int player) { return Coalition{1} << player; }
constexpr Coalition grand_coalition(int n_players) { return (Coalition{1} << n_players) - 1; }
constexpr int coalition_size(Coalition s) { return std::popcount(s); }

template <typename Scalar = double>
struct CoalitionGame {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  int n_players = 0;
  // Indexed by bitmask; values[0] == 0.
  Vector values;

  const Scalar& operator()(Coalition s) const { return values[static_cast<Eigen::Index>(s)]; }
  Coalition grand() const { return grand_coalition(n_players); }
};

namespace detail {

inline void require_players(int n_players, int limit) {
  if (n_players < 1 || n_players > limit) {
    throw Error(ErrorCode::kTooLarge,
                "player count " + std::to_string(n_players) + " outside [1, " +
                    std::to_string(limit) + "]");
  }
}

inline void require_player(int n_players, int player) {
  if (player < 0 || player >= n_players) {
    throw Error(ErrorCode::kPlayerOutOfRange, "player " + std::to_string(player) +
                                                  " out of range for " +
                                                  std::to_string(n_players) + " players");
  }
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

// Converts the exact fraction num/den once.
template <typename Scalar>
Scalar fraction(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if constexpr (std::is_floating_point_v<Scalar>) {
    return static_cast<Scalar>(static_cast<long double>(num) / static_cast<long double>(den));
  } else {
    return Scalar(num) / Scalar(den);
  }
}

}  // namespace detail

template <typename Scalar>
CoalitionGame<Scalar> make_coalition_game(int n_players,
                                          Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values) {
  detail::require_players(n_players, kMaxHypercubePlayers);
  if (values.size() != (Eigen::Index{1} << n_players)) {
    throw Error(ErrorCode::kInvalidGame, "a coalition game needs 2^N values");
  }
  if (values[0] != Scalar(0)) {
    throw Error(ErrorCode::kInvalidGame, "the empty coalition must have value 0");
  }
  return CoalitionGame<Scalar>{n_players, std::move(values)};
}

// Builds a game from fn(Coalition) -> Scalar; fn(0) is ignored and set to 0.
template <typename Scalar = double, typename Fn>
CoalitionGame<Scalar> tabulate_game(int n_players, Fn&& fn) {
  detail::require_players(n_players, kMaxHypercubePlayers);
  typename CoalitionGame<Scalar>::Vector values(Eigen::Index{1} << n_players);
  values[0] = Scalar(0);
  for (Coalition s = 1; s <= grand_coalition(n_players); ++s) {
    values[static_cast<Eigen::Index>(s)] = Scalar(fn(s));
  }
  return CoalitionGame<Scalar>{n_players, std::move(values)};
}

// |S|! (N - 1 - |S|)! / N!
template <typename Scalar = double>
Scalar shapley_weight(int coalition_size, int n_players) {
  return detail::fraction<Scalar>(
      detail::factorial(coalition_size) * detail::factorial(n_players - 1 - coalition_size),
      detail::factorial(n_players));
}

template <typename Scalar>
Scalar shapley_closed_form(const CoalitionGame<Scalar>& v, int player) {
  detail::require_players(v.n_players, kMaxHypercubePlayers);
  detail::require_player(v.n_players, player);
  std::vector<Scalar> weight;
  weight.reserve(static_cast<std::size_t>(v.n_players));
  for (int s = 0; s < v.n_players; ++s) weight.push_back(shapley_weight<Scalar>(s, v.n_players));

  const Coalition bit = player_bit(player);
  Scalar phi(0);
  for (Coalition s = 0; s <= v.grand(); ++s) {
    if (s & bit) continue;
    phi += weight[static_cast<std::size_t>(coalition_size(s))] * (v(s | bit) - v(s));
  }
  return phi;
}

// Average marginal contribution over all N! join orders.
template <typename Scalar>
Scalar shapley_permutation(const CoalitionGame<Scalar>& v, int player) {
  detail::require_players(v.n_players, kMaxPermutationPlayers);
  detail::require_player(v.n_players, player);
  std::vector<int> order(static_cast<std::size_t>(v.n_players));
  std::iota(order.begin(), order.end(), 0);
  Scalar total(0);
  do {
    Coalition before = 0;
    for (int p : order) {
      if (p == player) {
        total += v(before | player_bit(player)) - v(before);
        break;
      }
      before |= player_bit(p);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return total / Scalar(detail::factorial(v.n_players));
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> shapley_values(const CoalitionGame<Scalar>& v) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> phi(v.n_players);
  for (int i = 0; i < v.n_players; ++i) phi[i] = shapley_closed_form(v, i);
  return phi;
}

std::string coalition_label(Coalition s);
// Accepts "{}", "{1,3}", "{ 1, 3 }". Returns nullopt on malformed input.
std::optional<Coalition> parse_coalition_label(std::string_view label);
// Coalition of every state, parsed from the labels. Throws InvalidArgument if
// a label is not a coalition of [n_players].
std::vector<Coalition> state_coalitions(const CooperationGraph& g, int n_players);

using HypercubeWeight = std::function<double(Coalition from, int player)>;
using InclusionPredicate = std::function<bool(Coalition from, Coalition to)>;
using InclusionWeight = std::function<double(Coalition from, Coalition to)>;

// 2^N states (state index == bitmask) and edges (S, S + {i}) for i not in S,
// enumerated lowest bitmask first. Lambda defaults to 1.
CooperationGraph build_hypercube(int n_players, const HypercubeWeight& lambda = {});

// Edges (S, T) for every S strictly contained in T accepted by `include`
// (default: all of them).
CooperationGraph build_inclusion_graph(int n_players, const InclusionPredicate& include = {},
                                       const InclusionWeight& lambda = {});

// Reads a coalition game off a coalition-labelled graph; coalitions that are
// not states of the graph get value 0.
CoalitionGame<double> coalition_game_from_graph(const CooperationGraph& g, const GameValues& v,
                                                int n_players);

// The game as a vertex function on a coalition-labelled graph.
GameValues game_on_graph(const CooperationGraph& g, const CoalitionGame<double>& v);

// d_i v: the marginal v(S + {i}) - v(S) on player i's hypercube edges, 0 on
// the other players' edges. Throws InvalidEdge on a non-hypercube edge.
EdgeFlow partial_flow_classic(const CooperationGraph& g, const CoalitionGame<double>& v,
                              int player);

// On an inclusion edge S -> T the surplus v(T) - v(S) is split equally among
// T \ S; players already in S (or not in T) get 0. Throws InvalidEdge if the
// endpoints are not nested.
EdgeFlow partial_flow_extended(const CooperationGraph& g, const CoalitionGame<double>& v,
                               int player);

ContributionProfile classic_profile(const CooperationGraph& g, const CoalitionGame<double>& v);
ContributionProfile extended_profile(const CooperationGraph& g, const CoalitionGame<double>& v);

// f_i = dv / N for every player.
ContributionProfile equal_split_flow(const CooperationGraph& g, const GameValues& v,
                                     int n_players);

}  // namespace hodge

#endif  // HODGE_COALITION_HPP
