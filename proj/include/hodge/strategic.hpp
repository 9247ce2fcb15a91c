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

#ifndef HODGE_STRATEGIC_HPP
#define HODGE_STRATEGIC_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "hodge/coalition.hpp"
#include "hodge/config.hpp"

namespace hodge {

inline constexpr int kMaxStrategicPlayers = 8;
inline constexpr int kMaxKnPermutationPlayers = 6;

struct ZeroSumSolution {
  // max_x min_y x^T M y
  double value;
  Eigen::VectorXd row_strategy;
  Eigen::VectorXd column_strategy;
  // min_j (x^T M)_j and max_i (M y)_i for the returned strategies.
  double row_guarantee;
  double column_guarantee;
};

// Value and optimal mixed strategies of the matrix game in which the row
// player maximizes. Solved with a dense simplex (Bland's rule) on a shifted,
// strictly positive copy of the matrix. Throws LPNumericalFailure if the
// strategies are not mutual best responses to within 1e-8.
ZeroSumSolution zero_sum_value(const Eigen::MatrixXd& payoff);

// N-player game in strategic form. Joint pure profiles are numbered in
// row-major order with player 0 varying slowest.
class StrategicGame {
 public:
  // payoffs: one row per joint profile, one column per player.
  StrategicGame(std::vector<int> strategy_counts, Eigen::MatrixXd payoffs);

  int n_players() const { return static_cast<int>(strategy_counts_.size()); }
  const std::vector<int>& strategy_counts() const { return strategy_counts_; }
  Eigen::Index num_profiles() const { return payoffs_.rows(); }
  const Eigen::MatrixXd& payoffs() const { return payoffs_; }
  double payoff(int player, Eigen::Index profile) const { return payoffs_(profile, player); }

  Eigen::Index profile_index(std::span<const int> strategies) const;
  std::vector<int> profile(Eigen::Index index) const;

  friend bool operator==(const StrategicGame& a, const StrategicGame& b) {
    return a.strategy_counts_ == b.strategy_counts_ && a.payoffs_ == b.payoffs_;
  }

 private:
  std::vector<int> strategy_counts_;
  Eigen::MatrixXd payoffs_;
};

// Rows: joint pure strategies of S; columns: those of the complement; entry:
// sum of S's payoffs minus the complement's. An empty side has one profile.
Eigen::MatrixXd threat_matrix(const StrategicGame& game, Coalition s);

// delta G(S): value of threat_matrix(game, S).
double threat_power(const StrategicGame& game, Coalition s);

struct ThreatProfile {
  int n_players = 0;
  // Indexed by bitmask.
  Eigen::VectorXd threat;

  double operator()(Coalition s) const { return threat[static_cast<Eigen::Index>(s)]; }
};

// delta G for every coalition. With `share_complements`, one LP serves both S
// and its complement through delta G([N] \ S) = -delta G(S).
ThreatProfile compute_threats(const StrategicGame& game, bool share_complements = true);

// v(S) = (delta G(S) + delta G([N])) / 2, with v(empty) = 0 exactly. Throws
// AntisymmetryViolated if |delta G(S) + delta G([N] \ S)| > tolerance.
CoalitionGame<double> coalition_game_from_threats(const ThreatProfile& threats,
                                                  double tolerance = 1e-7);

// Kohlberg-Neyman value: average of delta G over the coalitions formed by
// each player together with its predecessors, summed by coalition size.
Eigen::VectorXd kn_value(const ThreatProfile& threats);
Eigen::VectorXd kn_value(const StrategicGame& game);
// Same sum taken literally over all N! orders. N <= 6.
Eigen::VectorXd kn_value_permutation(const ThreatProfile& threats);

// Component games of the threat-induced coalition game on the unit-weight
// hypercube, one column per player, rows indexed by bitmask.
Eigen::MatrixXd kn_dynamic_extension(const StrategicGame& game, const SolverConfig& config = {});

}  // namespace hodge

#endif  // HODGE_STRATEGIC_HPP
