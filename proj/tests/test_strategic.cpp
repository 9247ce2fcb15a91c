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

#include <gtest/gtest.h>

#include <limits>
#include <vector>

#include "hodge/coalition.hpp"
#include "hodge/markov.hpp"
#include "hodge/strategic.hpp"
#include "test_support.hpp"

namespace hodge {
namespace {

// Value of a 2 x n game: the row player mixes (p, 1 - p), and the minimum of
// the column lines is concave in p, so the maximum sits at an endpoint or at
// a crossing of two lines.
double two_row_value(const Eigen::MatrixXd& m) {
  auto lower = [&](double p) {
    return (p * m.row(0) + (1 - p) * m.row(1)).minCoeff();
  };
  double best = std::max(lower(0.0), lower(1.0));
  for (Eigen::Index a = 0; a < m.cols(); ++a) {
    for (Eigen::Index b = a + 1; b < m.cols(); ++b) {
      const double da = m(0, a) - m(1, a), db = m(0, b) - m(1, b);
      if (da == db) continue;
      const double p = (m(1, b) - m(1, a)) / (da - db);
      if (p > 0 && p < 1) best = std::max(best, lower(p));
    }
  }
  return best;
}

// Common-interest game: both players get half of the total, maximal 10.
StrategicGame common_interest() {
  Eigen::MatrixXd payoffs(4, 2);
  payoffs << 5, 5, 1, 1, 0, 0, 3, 3;
  return StrategicGame({2, 2}, payoffs);
}

StrategicGame matching_pennies() {
  Eigen::MatrixXd payoffs(4, 2);
  payoffs << 1, -1, -1, 1, -1, 1, 1, -1;
  return StrategicGame({2, 2}, payoffs);
}

TEST(ZeroSumTest, KnownValues) {
  Eigen::Matrix2d pennies;
  pennies << 1, -1, -1, 1;
  const ZeroSumSolution p = zero_sum_value(pennies);
  EXPECT_NEAR(p.value, 0.0, 1e-12);
  EXPECT_NEAR(p.row_strategy[0], 0.5, 1e-12);
  EXPECT_NEAR(p.column_strategy[0], 0.5, 1e-12);

  EXPECT_NEAR(zero_sum_value(Eigen::MatrixXd::Constant(3, 4, -2.5)).value, -2.5, 1e-12);

  Eigen::Matrix2d dominated;
  dominated << 2, 1, 0, 0;
  EXPECT_NEAR(zero_sum_value(dominated).value, 1.0, 1e-12);
  EXPECT_NEAR(two_row_value(dominated), 1.0, 1e-15);

  // Single row or column: pure min or max.
  Eigen::MatrixXd row(1, 3);
  row << 4, -1, 2;
  EXPECT_NEAR(zero_sum_value(row).value, -1.0, 1e-12);
  EXPECT_NEAR(zero_sum_value(row.transpose()).value, 4.0, 1e-12);
}

TEST(ZeroSumTest, MatchesTwoRowOracle) {
  testing::Rng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::MatrixXd m = testing::random_matrix(rng, 2, testing::uniform_int(rng, 1, 6), 10.0);
    EXPECT_NEAR(zero_sum_value(m).value, two_row_value(m), 1e-9);
    EXPECT_NEAR(zero_sum_value(-m.transpose()).value, -two_row_value(m), 1e-9);
  }
}

TEST(ZeroSumTest, StrategiesCertifyTheValue) {
  testing::Rng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::MatrixXd m = testing::random_matrix(rng, testing::uniform_int(rng, 1, 9),
                                                     testing::uniform_int(rng, 1, 9), 100.0);
    const ZeroSumSolution s = zero_sum_value(m);
    EXPECT_NEAR(s.row_strategy.sum(), 1.0, 1e-12);
    EXPECT_NEAR(s.column_strategy.sum(), 1.0, 1e-12);
    EXPECT_GE(s.row_strategy.minCoeff(), 0.0);
    EXPECT_GE(s.column_strategy.minCoeff(), 0.0);
    const double low = (s.row_strategy.transpose() * m).minCoeff();
    const double high = (m * s.column_strategy).maxCoeff();
    EXPECT_NEAR(low, high, 1e-8 * 100);
    EXPECT_LE(low, s.value + 1e-8);
    EXPECT_GE(high, s.value - 1e-8);
  }
}

TEST(ZeroSumTest, DegenerateMatrices) {
  // Ties everywhere exercise the anti-cycling rule.
  Eigen::MatrixXd m(4, 4);
  m << 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1;
  EXPECT_NEAR(zero_sum_value(m).value, 0.5, 1e-12);
  testing::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd d(5, 5);
    for (auto& x : d.reshaped()) x = testing::uniform_int(rng, -1, 1);
    const ZeroSumSolution s = zero_sum_value(d);
    EXPECT_NEAR(s.row_guarantee, s.column_guarantee, 1e-8);
  }
}

TEST(StrategicGameTest, ProfileIndexing) {
  const StrategicGame g({2, 3, 2}, Eigen::MatrixXd::Zero(12, 3));
  for (Eigen::Index k = 0; k < g.num_profiles(); ++k) {
    EXPECT_EQ(g.profile_index(g.profile(k)), k);
  }
  const std::vector<int> last{1, 2, 1};
  EXPECT_EQ(g.profile_index(last), 11);
  const std::vector<int> second{0, 0, 1};
  EXPECT_EQ(g.profile_index(second), 1);
  EXPECT_THROW(StrategicGame({2, 2}, Eigen::MatrixXd::Zero(3, 2)), Error);
  EXPECT_THROW(StrategicGame({2, 0}, Eigen::MatrixXd::Zero(0, 2)), Error);
  EXPECT_THROW(StrategicGame({2, 2}, Eigen::MatrixXd::Zero(4, 3)), Error);
}

TEST(ThreatTest, MatrixEntries) {
  const StrategicGame g = common_interest();
  const Eigen::MatrixXd m = threat_matrix(g, 0b01);
  EXPECT_TRUE(m.isZero(0.0));
  const Eigen::MatrixXd all = threat_matrix(g, 0b11);
  ASSERT_EQ(all.rows(), 4);
  ASSERT_EQ(all.cols(), 1);
  EXPECT_EQ(all(0, 0), 10.0);
  const Eigen::MatrixXd none = threat_matrix(g, 0);
  EXPECT_EQ(none.rows(), 1);
  EXPECT_EQ(none(0, 3), -6.0);

  const StrategicGame p = matching_pennies();
  const Eigen::MatrixXd mp = threat_matrix(p, 0b01);
  Eigen::Matrix2d expected;
  expected << 2, -2, -2, 2;
  EXPECT_EQ(mp, Eigen::MatrixXd(expected));
}

TEST(ThreatTest, CommonInterest) {
  const StrategicGame g = common_interest();
  EXPECT_NEAR(threat_power(g, 0b11), 10.0, 1e-12);
  EXPECT_NEAR(threat_power(g, 0b01), 0.0, 1e-12);
  EXPECT_NEAR(threat_power(g, 0), -10.0, 1e-12);
  const Eigen::VectorXd gamma = kn_value(g);
  EXPECT_NEAR(gamma[0], 5.0, 1e-9);
  EXPECT_NEAR(gamma[1], 5.0, 1e-9);
}

TEST(ThreatTest, AntisymmetryOnRandomGames) {
  testing::Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const StrategicGame g = testing::random_strategic_game(rng, testing::uniform_int(rng, 2, 4), 3);
    const ThreatProfile shared = compute_threats(g);
    const ThreatProfile separate = compute_threats(g, false);
    const Coalition all = grand_coalition(g.n_players());
    for (Coalition s = 0; s <= all; ++s) {
      EXPECT_NEAR(separate(s) + separate(all & ~s), 0.0, 1e-7);
      EXPECT_NEAR(shared(s), separate(s), 1e-7);
    }
  }
}

TEST(CoalitionFromThreatsTest, Basics) {
  const StrategicGame g = common_interest();
  const ThreatProfile t = compute_threats(g);
  const CoalitionGame<double> v = coalition_game_from_threats(t);
  EXPECT_EQ(v(0), 0.0);
  EXPECT_NEAR(v(0b11), t(0b11), 1e-12);
  EXPECT_NEAR(v(0b01), 5.0, 1e-9);

  const ThreatProfile zero{3, Eigen::VectorXd::Zero(8)};
  EXPECT_TRUE(coalition_game_from_threats(zero).values.isZero(0.0));
  EXPECT_TRUE(kn_value(zero).isZero(0.0));

  ThreatProfile broken{2, Eigen::Vector4d(-1, 0.5, 0, 1)};
  try {
    coalition_game_from_threats(broken);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAntisymmetryViolated);
  }
}

TEST(KnValueTest, BalancedThreats) {
  const StrategicGame p = matching_pennies();
  const ThreatProfile t = compute_threats(p);
  EXPECT_LT(t.threat.cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT(kn_value(t).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT(kn_dynamic_extension(p).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(KnValueTest, TwoPlayerFormula) {
  testing::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const StrategicGame g = testing::random_strategic_game(rng, 2, 3);
    const ThreatProfile t = compute_threats(g);
    const Eigen::VectorXd gamma = kn_value(t);
    EXPECT_NEAR(gamma[0], (t(0b01) + t(0b11)) / 2, 1e-12);
    EXPECT_NEAR(gamma[1], (t(0b10) + t(0b11)) / 2, 1e-12);
  }
}

TEST(KnValueTest, FormulaMatchesPermutationsAndShapley) {
  testing::Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const StrategicGame g = testing::random_strategic_game(rng, testing::uniform_int(rng, 2, 4), 2);
    const ThreatProfile t = compute_threats(g);
    const Eigen::VectorXd gamma = kn_value(t);
    EXPECT_LT((gamma - kn_value_permutation(t)).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((gamma - shapley_values(coalition_game_from_threats(t))).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_NEAR(gamma.sum(), t(grand_coalition(g.n_players())), 1e-7);
  }
}

TEST(KnValueTest, DynamicExtensionAtGrandCoalition) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = testing::uniform_int(rng, 2, 3);
    const StrategicGame g = testing::random_strategic_game(rng, n, 3);
    const Eigen::MatrixXd ext = kn_dynamic_extension(g);
    ASSERT_EQ(ext.rows(), Eigen::Index{1} << n);
    ASSERT_EQ(ext.cols(), n);
    EXPECT_LT((ext.row(grand_coalition(n)).transpose() - kn_value(g)).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_TRUE(ext.row(0).isZero(0.0));
  }
}

TEST(KnValueTest, CommonInterestExtensionMatchesSimulation) {
  const StrategicGame g = common_interest();
  const Eigen::MatrixXd ext = kn_dynamic_extension(g);
  const CoalitionGame<double> v = coalition_game_from_threats(compute_threats(g));
  const CooperationGraph cube = build_hypercube(2);
  const TransitionKernel k = build_kernel(cube);
  EstimatorOptions opts;
  opts.n_paths = 50000;
  opts.seed = 3;
  const auto est = estimate_values(k, classic_profile(cube, v), 0, 0b01, opts);
  for (int i = 0; i < 2; ++i) {
    EXPECT_LE(std::abs(est[static_cast<std::size_t>(i)].mean - ext(0b01, i)),
              3 * est[static_cast<std::size_t>(i)].standard_error + 1e-12);
  }
}

TEST(KnValueTest, Limits) {
  testing::Rng rng(8);
  const StrategicGame big = testing::random_strategic_game(rng, kMaxKnPermutationPlayers + 1, 1);
  EXPECT_THROW(kn_value_permutation(compute_threats(big)), Error);
}

}  // namespace
}  // namespace hodge
