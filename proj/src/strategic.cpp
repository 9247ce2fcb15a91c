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

#include "hodge/strategic.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "hodge/poisson.hpp"

namespace hodge {

StrategicGame::StrategicGame(std::vector<int> strategy_counts, Eigen::MatrixXd payoffs)
    : strategy_counts_(std::move(strategy_counts)), payoffs_(std::move(payoffs)) {
  detail::require_players(n_players(), kMaxStrategicPlayers);
  Eigen::Index profiles = 1;
  for (int count : strategy_counts_) {
    if (count < 1) {
      throw Error(ErrorCode::kInvalidGame, "every player needs at least one strategy");
    }
    profiles *= count;
  }
  if (payoffs_.rows() != profiles || payoffs_.cols() != n_players()) {
    throw Error(ErrorCode::kInvalidGame, "payoff table must be (product of strategy counts) x N");
  }
  if (!payoffs_.allFinite()) {
    throw Error(ErrorCode::kInvalidGame, "payoffs must be finite");
  }
}

Eigen::Index StrategicGame::profile_index(std::span<const int> strategies) const {
  if (static_cast<int>(strategies.size()) != n_players()) {
    throw Error(ErrorCode::kDimensionMismatch, "profile needs one strategy per player");
  }
  Eigen::Index index = 0;
  for (int i = 0; i < n_players(); ++i) {
    const int a = strategies[static_cast<std::size_t>(i)];
    if (a < 0 || a >= strategy_counts_[static_cast<std::size_t>(i)]) {
      throw Error(ErrorCode::kInvalidArgument, "strategy out of range");
    }
    index = index * strategy_counts_[static_cast<std::size_t>(i)] + a;
  }
  return index;
}

std::vector<int> StrategicGame::profile(Eigen::Index index) const {
  std::vector<int> out(strategy_counts_.size());
  for (int i = n_players() - 1; i >= 0; --i) {
    const int count = strategy_counts_[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = static_cast<int>(index % count);
    index /= count;
  }
  return out;
}

Eigen::MatrixXd threat_matrix(const StrategicGame& game, Coalition s) {
  const int n = game.n_players();
  if (s > grand_coalition(n)) {
    throw Error(ErrorCode::kPlayerOutOfRange, "coalition refers to players beyond N");
  }
  Eigen::Index rows = 1;
  Eigen::Index cols = 1;
  for (int i = 0; i < n; ++i) {
    (s & player_bit(i) ? rows : cols) *= game.strategy_counts()[static_cast<std::size_t>(i)];
  }
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index p = 0; p < game.num_profiles(); ++p) {
    const std::vector<int> a = game.profile(p);
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    double entry = 0.0;
    for (int i = 0; i < n; ++i) {
      const int count = game.strategy_counts()[static_cast<std::size_t>(i)];
      const int choice = a[static_cast<std::size_t>(i)];
      if (s & player_bit(i)) {
        r = r * count + choice;
        entry += game.payoff(i, p);
      } else {
        c = c * count + choice;
        entry -= game.payoff(i, p);
      }
    }
    m(r, c) = entry;
  }
  return m;
}

double threat_power(const StrategicGame& game, Coalition s) {
  return zero_sum_value(threat_matrix(game, s)).value;
}

ThreatProfile compute_threats(const StrategicGame& game, bool share_complements) {
  const int n = game.n_players();
  const Coalition grand = grand_coalition(n);
  ThreatProfile out;
  out.n_players = n;
  out.threat.resize(Eigen::Index{1} << n);
  for (Coalition s = 0; s <= grand; ++s) {
    const Coalition complement = grand & ~s;
    if (share_complements && complement < s) {
      out.threat[s] = -out.threat[complement];
    } else {
      out.threat[s] = threat_power(game, s);
    }
  }
  return out;
}

CoalitionGame<double> coalition_game_from_threats(const ThreatProfile& threats,
                                                  double tolerance) {
  const int n = threats.n_players;
  detail::require_players(n, kMaxHypercubePlayers);
  if (threats.threat.size() != (Eigen::Index{1} << n)) {
    throw Error(ErrorCode::kDimensionMismatch, "threat profile needs 2^N entries");
  }
  const Coalition grand = grand_coalition(n);
  for (Coalition s = 0; s <= grand; ++s) {
    const double gap = threats(s) + threats(grand & ~s);
    if (!(std::abs(gap) <= tolerance)) {
      throw Error(ErrorCode::kAntisymmetryViolated,
                  "threat of " + coalition_label(s) + " and its complement differ by " +
                      std::to_string(gap));
    }
  }
  return tabulate_game<double>(
      n, [&](Coalition s) { return 0.5 * (threats(s) + threats(grand)); });
}

Eigen::VectorXd kn_value(const ThreatProfile& threats) {
  const int n = threats.n_players;
  detail::require_players(n, kMaxStrategicPlayers);
  std::vector<double> weight;
  for (int k = 0; k < n; ++k) weight.push_back(shapley_weight<double>(k, n));
  Eigen::VectorXd gamma = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    const Coalition bit = player_bit(i);
    for (Coalition s = 0; s <= grand_coalition(n); ++s) {
      if (s & bit) continue;
      gamma[i] += weight[static_cast<std::size_t>(coalition_size(s))] * threats(s | bit);
    }
  }
  return gamma;
}

Eigen::VectorXd kn_value(const StrategicGame& game) { return kn_value(compute_threats(game)); }

Eigen::VectorXd kn_value_permutation(const ThreatProfile& threats) {
  const int n = threats.n_players;
  detail::require_players(n, kMaxKnPermutationPlayers);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd gamma = Eigen::VectorXd::Zero(n);
  do {
    Coalition before = 0;
    for (int p : order) {
      before |= player_bit(p);
      gamma[p] += threats(before);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return gamma / static_cast<double>(detail::factorial(n));
}

Eigen::MatrixXd kn_dynamic_extension(const StrategicGame& game, const SolverConfig& config) {
  const CoalitionGame<double> v = coalition_game_from_threats(compute_threats(game));
  const CooperationGraph cube = build_hypercube(v.n_players);
  return component_allocation(cube, classic_profile(cube, v), config).values;
}

}  // namespace hodge
