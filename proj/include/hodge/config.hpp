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

#ifndef HODGE_CONFIG_HPP
#define HODGE_CONFIG_HPP

#include <Eigen/Core>

namespace hodge {

enum class SolverMethod { kAuto, kDense, kConjugateGradient };

// Numerical tolerances shared by every module.
struct SolverConfig {
  // Bound on the diagonally scaled residual max_S |(Lu - b)(S)| / Lambda_S.
  double solver_tol = 1e-10;
  // Tolerance for exactness checks (decomposition, efficiency flags).
  double check_tol = 1e-9;
  // kAuto factors densely below this many states and uses CG otherwise.
  Eigen::Index dense_threshold = 2000;
  // CG iteration cap is this times the number of states.
  Eigen::Index iterations_per_state = 50;
  SolverMethod method = SolverMethod::kAuto;
};

}  // namespace hodge

#endif  // HODGE_CONFIG_HPP
