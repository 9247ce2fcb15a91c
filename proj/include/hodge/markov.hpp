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

#ifndef HODGE_MARKOV_HPP
#define HODGE_MARKOV_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "hodge/graph.hpp"
#include "hodge/random.hpp"

namespace hodge {

struct Transition {
  StateIndex target;
  EdgeIndex edge;
  // +1 if the move follows the stored orientation of `edge`.
  int sign;
  double probability;
  double cumulative;
};

// Canonical random walk p(S, T) = lambda(S, T) / Lambda_S on a cooperation
// graph. Immutable; safe to share between sampling threads.
class TransitionKernel {
 public:
  // Rows with more neighbors than this draw through an alias table.
  static constexpr Eigen::Index kLinearScanDegree = 8;

  Eigen::Index num_states() const { return total_weight_.size(); }
  Eigen::Index num_edges() const { return num_edges_; }
  std::span<const Transition> row(StateIndex s) const {
    const auto begin = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(s)]);
    const auto end = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(s) + 1]);
    return std::span<const Transition>(transitions_).subspan(begin, end - begin);
  }
  // Lambda_S, the total weight of edges at S.
  const Eigen::VectorXd& total_weights() const { return total_weight_; }
  // p(S, T); zero when S and T are not adjacent.
  double probability(StateIndex s, StateIndex t) const;

  Eigen::Index component(StateIndex s) const { return component_[static_cast<std::size_t>(s)]; }
  Eigen::Index num_components() const { return num_components_; }

  const Transition& step(StateIndex s, StreamRng& rng) const;

 private:
  friend TransitionKernel build_kernel(const CooperationGraph& g);

  std::vector<Eigen::Index> offsets_;
  std::vector<Transition> transitions_;
  std::vector<AliasTable> alias_;
  Eigen::VectorXd total_weight_;
  std::vector<Eigen::Index> component_;
  Eigen::Index num_components_ = 0;
  Eigen::Index num_edges_ = 0;
};

// Throws IsolatedState if some state has no neighbor.
TransitionKernel build_kernel(const CooperationGraph& g);

// pi_S = Lambda_S / sum_U Lambda_U. Throws Disconnected.
VertexFunction stationary_distribution(const TransitionKernel& k);

struct LoopProbability {
  double forward;
  double backward;
};

// Probability of a closed walk (first state == last state) and of its
// reversal. Throws NotAWalk.
LoopProbability loop_probability(const TransitionKernel& k, std::span<const StateIndex> walk);

struct SignedEdge {
  EdgeIndex edge;
  int sign;
};

struct SampledPath {
  std::vector<StateIndex> states;
  // moves[n] carries states[n] -> states[n + 1].
  std::vector<SignedEdge> moves;
  bool truncated = false;

  std::int64_t hitting_time() const { return static_cast<std::int64_t>(moves.size()); }
};

SampledPath sample_path(const TransitionKernel& k, StateIndex start, StateIndex target,
                        StreamRng& rng, std::int64_t max_steps = 1'000'000);
SampledPath sample_path(const TransitionKernel& k, StateIndex start, StateIndex target,
                        std::uint64_t seed, std::int64_t max_steps = 1'000'000);

// Walks from `start` until it first comes back. The result is a closed walk.
SampledPath sample_return_loop(const TransitionKernel& k, StateIndex start, StreamRng& rng,
                               std::int64_t max_steps = 1'000'000);

// The same walk traversed backwards.
SampledPath reversed(const SampledPath& path);

// Sum of f along the path. Throws TruncatedPath.
double path_integral(const SampledPath& path, const EdgeFlow& f);

struct EstimatorOptions {
  std::int64_t n_paths = 10'000;
  std::uint64_t seed = 0;
  std::int64_t max_steps = 1'000'000;
  // Score only the part of each path after its last visit to the start.
  // Reversing the excursions before that point is measure-preserving and
  // negates their contribution, so this is the antithetic pair average.
  bool antithetic_loops = false;
  // 0 picks the hardware concurrency; HODGE_ALLOC_THREADS caps either way.
  int threads = 0;
};

struct ValueEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t path_count = 0;
  std::int64_t truncated_count = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo estimate of E[sum of f along a path from start to the first
// visit of target]. Replicate r draws from StreamRng(seed, r), so results are
// identical for any thread count.
ValueEstimate estimate_value(const TransitionKernel& k, const EdgeFlow& f, StateIndex start,
                             StateIndex target, const EstimatorOptions& options = {});

// One estimate per column of `flows`, all scored on the same paths.
std::vector<ValueEstimate> estimate_values(const TransitionKernel& k, const Eigen::MatrixXd& flows,
                                           StateIndex start, StateIndex target,
                                           const EstimatorOptions& options = {});

// Worker count after applying the HODGE_ALLOC_THREADS cap.
int resolve_thread_count(int requested);

}  // namespace hodge

#endif  // HODGE_MARKOV_HPP
