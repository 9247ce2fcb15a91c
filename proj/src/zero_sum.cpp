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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hodge/strategic.hpp"

namespace hodge {

namespace {

constexpr double kPivotEps = 1e-12;
constexpr double kCertificateTol = 1e-8;

// Maximizes sum(w) subject to A w <= 1, w >= 0, for A with entries >= 1.
// Returns the tableau at optimum; basis[i] is the variable of row i.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<Eigen::Index> basis;
};

Tableau solve_packing_lp(const Eigen::MatrixXd& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  const Eigen::Index rhs = n + m;
  Tableau tab;
  tab.t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  tab.t.topLeftCorner(m, n) = a;
  tab.t.block(0, n, m, m).setIdentity();
  tab.t.col(rhs).head(m).setOnes();
  tab.t.row(m).head(n).setConstant(-1.0);
  tab.basis.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) tab.basis[static_cast<std::size_t>(i)] = n + i;

  const Eigen::Index max_pivots = 50 * (m + n) + 1000;
  for (Eigen::Index iter = 0;; ++iter) {
    if (iter > max_pivots) {
      throw Error(ErrorCode::kLPNumericalFailure, "simplex did not terminate");
    }
    // Bland: lowest-index improving column.
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (tab.t(m, j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double coef = tab.t(i, enter);
      if (coef <= kPivotEps) continue;
      const double ratio = tab.t(i, rhs) / coef;
      const double slack = kPivotEps * std::max(1.0, std::abs(ratio));
      if (leave < 0 || ratio < best - slack) {
        best = ratio;
        leave = i;
      } else if (ratio <= best + slack && tab.basis[static_cast<std::size_t>(i)] <
                                              tab.basis[static_cast<std::size_t>(leave)]) {
        leave = i;
      }
    }
    if (leave < 0) {
      throw Error(ErrorCode::kLPNumericalFailure, "simplex found an unbounded direction");
    }

    tab.t.row(leave) /= tab.t(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = tab.t(i, enter);
      if (factor != 0.0) tab.t.row(i) -= factor * tab.t.row(leave);
    }
    tab.basis[static_cast<std::size_t>(leave)] = enter;
  }
  return tab;
}

Eigen::VectorXd normalized(Eigen::VectorXd p) {
  p = p.cwiseMax(0.0);
  const double total = p.sum();
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kLPNumericalFailure, "degenerate mixed strategy");
  }
  return p / total;
}

}  // namespace

ZeroSumSolution zero_sum_value(const Eigen::MatrixXd& payoff) {
  if (payoff.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "payoff matrix is empty");
  }
  if (!payoff.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "payoff matrix has non-finite entries");
  }
  const Eigen::Index m = payoff.rows();
  const Eigen::Index n = payoff.cols();
  const double shift = 1.0 - payoff.minCoeff();
  const Tableau tab = solve_packing_lp(payoff.array() + shift);

  const double objective = tab.t(m, n + m);
  if (!(objective > 0.0)) {
    throw Error(ErrorCode::kLPNumericalFailure, "simplex returned a non-positive objective");
  }
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index var = tab.basis[static_cast<std::size_t>(i)];
    if (var < n) w[var] = tab.t(i, n + m);
  }

  ZeroSumSolution out;
  out.column_strategy = normalized(w);
  out.row_strategy = normalized(tab.t.row(m).segment(n, m).transpose());
  out.value = 1.0 / objective - shift;
  out.row_guarantee = (out.row_strategy.transpose() * payoff).minCoeff();
  out.column_guarantee = (payoff * out.column_strategy).maxCoeff();

  const double tol = kCertificateTol * std::max(1.0, payoff.cwiseAbs().maxCoeff());
  if (out.row_guarantee < out.value - tol || out.column_guarantee > out.value + tol) {
    throw Error(ErrorCode::kLPNumericalFailure,
                "strategies are not mutual best responses (gap " +
                    std::to_string(out.column_guarantee - out.row_guarantee) + ")");
  }
  return out;
}

}  // namespace hodge
