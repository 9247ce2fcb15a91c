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

#include "hodge/calculus.hpp"
#include "hodge/poisson.hpp"

namespace hodge {

HodgeDecomposition hodge_decompose(const CooperationGraph& g, const EdgeFlow& f,
                                   const SolverConfig& config) {
  detail::require_rows(f.size(), g.num_edges(), "edge flow");
  HodgeDecomposition out;
  out.potential = PoissonSolver(g, config).solve(f);
  out.gradient_part = gradient(g, out.potential);
  out.divergence_free = f - out.gradient_part;
  return out;
}

}  // namespace hodge
