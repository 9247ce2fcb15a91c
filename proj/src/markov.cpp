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

#include "hodge/markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>

namespace hodge {

AliasTable::AliasTable(std::span<const double> probabilities) {
  const std::size_t n = probabilities.size();
  threshold_.assign(n, 1.0);
  alias_.resize(n);
  std::vector<double> scaled(n);
  std::vector<std::size_t> small, large;
  const double total = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    alias_[i] = i;
    scaled[i] = probabilities[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    threshold_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (std::size_t i : small) threshold_[i] = 1.0;
  for (std::size_t i : large) threshold_[i] = 1.0;
}

TransitionKernel build_kernel(const CooperationGraph& g) {
  TransitionKernel k;
  const auto n = g.num_states();
  k.num_edges_ = g.num_edges();
  k.total_weight_ = g.total_weights();
  k.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  k.transitions_.reserve(2 * static_cast<std::size_t>(g.num_edges()));
  k.alias_.resize(static_cast<std::size_t>(n));

  std::vector<double> probs;
  for (StateIndex s = 0; s < n; ++s) {
    const auto row = g.incident(s);
    if (row.empty()) {
      throw Error(ErrorCode::kIsolatedState, "state '" + g.label(s) + "' has no neighbors");
    }
    const double total = g.total_weight(s);
    double cumulative = 0.0;
    probs.clear();
    for (const Incidence& inc : row) {
      const double p = g.lambda()[inc.edge] / total;
      cumulative += p;
      k.transitions_.push_back(Transition{inc.neighbor, inc.edge, inc.sign, p, cumulative});
      probs.push_back(p);
    }
    k.transitions_.back().cumulative = 1.0;
    k.offsets_[static_cast<std::size_t>(s) + 1] = static_cast<Eigen::Index>(k.transitions_.size());
    if (static_cast<Eigen::Index>(row.size()) > TransitionKernel::kLinearScanDegree) {
      k.alias_[static_cast<std::size_t>(s)] = AliasTable(probs);
    }
  }

  const Components comps = connected_components(g);
  k.component_ = comps.component_of;
  k.num_components_ = static_cast<Eigen::Index>(comps.size());
  return k;
}

double TransitionKernel::probability(StateIndex s, StateIndex t) const {
  for (const Transition& tr : row(s)) {
    if (tr.target == t) return tr.probability;
  }
  return 0.0;
}

const Transition& TransitionKernel::step(StateIndex s, StreamRng& rng) const {
  const auto transitions = row(s);
  const double u = rng.uniform();
  const AliasTable& alias = alias_[static_cast<std::size_t>(s)];
  if (!alias.empty()) return transitions[alias.sample(u)];
  for (const Transition& tr : transitions) {
    if (u < tr.cumulative) return tr;
  }
  return transitions.back();
}

VertexFunction stationary_distribution(const TransitionKernel& k) {
  if (k.num_components() > 1) {
    throw Error(ErrorCode::kDisconnected, "stationary distribution needs a connected graph");
  }
  return k.total_weights() / k.total_weights().sum();
}

LoopProbability loop_probability(const TransitionKernel& k, std::span<const StateIndex> walk) {
  if (walk.size() < 2 || walk.front() != walk.back()) {
    throw Error(ErrorCode::kNotAWalk, "a loop must start and end at the same state");
  }
  for (StateIndex s : walk) {
    if (s < 0 || s >= k.num_states()) throw Error(ErrorCode::kNotAWalk, "state out of range");
  }
  LoopProbability out{1.0, 1.0};
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    const double p = k.probability(walk[i], walk[i + 1]);
    if (p == 0.0) {
      throw Error(ErrorCode::kNotAWalk, "consecutive loop states are not adjacent");
    }
    out.forward *= p;
  }
  for (std::size_t i = walk.size() - 1; i > 0; --i) {
    out.backward *= k.probability(walk[i], walk[i - 1]);
  }
  return out;
}

namespace {

void require_state(const TransitionKernel& k, StateIndex s) {
  if (s < 0 || s >= k.num_states()) {
    throw Error(ErrorCode::kUnknownState, "state index out of range");
  }
}

void require_reachable(const TransitionKernel& k, StateIndex start, StateIndex target) {
  require_state(k, start);
  require_state(k, target);
  if (k.component(start) != k.component(target)) {
    throw Error(ErrorCode::kUnreachableTarget, "target lies in a different component");
  }
}

}  // namespace

SampledPath sample_path(const TransitionKernel& k, StateIndex start, StateIndex target,
                        StreamRng& rng, std::int64_t max_steps) {
  require_reachable(k, start, target);
  SampledPath path;
  path.states.push_back(start);
  StateIndex s = start;
  for (std::int64_t n = 0; s != target; ++n) {
    if (n >= max_steps) {
      path.truncated = true;
      break;
    }
    const Transition& tr = k.step(s, rng);
    path.moves.push_back(SignedEdge{tr.edge, tr.sign});
    path.states.push_back(tr.target);
    s = tr.target;
  }
  return path;
}

SampledPath sample_path(const TransitionKernel& k, StateIndex start, StateIndex target,
                        std::uint64_t seed, std::int64_t max_steps) {
  StreamRng rng(seed, 0);
  return sample_path(k, start, target, rng, max_steps);
}

SampledPath sample_return_loop(const TransitionKernel& k, StateIndex start, StreamRng& rng,
                               std::int64_t max_steps) {
  require_state(k, start);
  SampledPath path;
  path.states.push_back(start);
  StateIndex s = start;
  for (std::int64_t n = 0; n == 0 || s != start; ++n) {
    if (n >= max_steps) {
      path.truncated = true;
      break;
    }
    const Transition& tr = k.step(s, rng);
    path.moves.push_back(SignedEdge{tr.edge, tr.sign});
    path.states.push_back(tr.target);
    s = tr.target;
  }
  return path;
}

SampledPath reversed(const SampledPath& path) {
  SampledPath out;
  out.truncated = path.truncated;
  out.states.assign(path.states.rbegin(), path.states.rend());
  out.moves.reserve(path.moves.size());
  for (auto it = path.moves.rbegin(); it != path.moves.rend(); ++it) {
    out.moves.push_back(SignedEdge{it->edge, -it->sign});
  }
  return out;
}

double path_integral(const SampledPath& path, const EdgeFlow& f) {
  if (path.truncated) {
    throw Error(ErrorCode::kTruncatedPath, "path did not reach its target");
  }
  double acc = 0.0;
  for (const SignedEdge& m : path.moves) {
    if (m.edge < 0 || m.edge >= f.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "path uses an edge outside the flow");
    }
    acc += m.sign * f[m.edge];
  }
  return acc;
}

int resolve_thread_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("HODGE_ALLOC_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min<long>(n, cap);
  }
  return n;
}

namespace {

// Neumaier's variant of compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Scores one replicate into `out` (one entry per flow column). Returns false
// if the walk was truncated.
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

bool run_replicate(const TransitionKernel& k, const RowMajorMatrix& flows, StateIndex start,
                   StateIndex target, const EstimatorOptions& options, std::uint64_t replicate,
                   Eigen::Ref<Eigen::RowVectorXd> out) {
  StreamRng rng(options.seed, replicate);
  out.setZero();
  StateIndex s = start;
  for (std::int64_t n = 0; s != target; ++n) {
    if (n >= options.max_steps) return false;
    const Transition& tr = k.step(s, rng);
    out += tr.sign * flows.row(tr.edge);
    s = tr.target;
    if (options.antithetic_loops && s == start) out.setZero();
  }
  return true;
}

}  // namespace

std::vector<ValueEstimate> estimate_values(const TransitionKernel& k, const Eigen::MatrixXd& flows,
                                           StateIndex start, StateIndex target,
                                           const EstimatorOptions& options) {
  require_reachable(k, start, target);
  if (flows.rows() != k.num_edges() || flows.cols() < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "flows must have one row per edge");
  }
  if (options.n_paths < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_paths must be at least 1");
  }

  const auto n_paths = options.n_paths;
  const RowMajorMatrix by_edge = flows;
  RowMajorMatrix samples(n_paths, flows.cols());
  std::vector<char> ok(static_cast<std::size_t>(n_paths), 0);

  auto work = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t r = begin; r < end; ++r) {
      ok[static_cast<std::size_t>(r)] = run_replicate(k, by_edge, start, target, options,
                                                      static_cast<std::uint64_t>(r),
                                                      samples.row(r));
    }
  };
  const auto threads =
      static_cast<std::int64_t>(std::min<std::int64_t>(resolve_thread_count(options.threads), n_paths));
  if (threads <= 1) {
    work(0, n_paths);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (std::int64_t t = 0; t < threads; ++t) {
      pool.emplace_back(work, n_paths * t / threads, n_paths * (t + 1) / threads);
    }
  }

  const auto valid = static_cast<std::int64_t>(std::count(ok.begin(), ok.end(), char{1}));
  if (valid == 0) {
    throw Error(ErrorCode::kAllPathsTruncated,
                "every path exceeded max_steps=" + std::to_string(options.max_steps));
  }

  // Reduction runs in replicate order so the result does not depend on the
  // thread count.
  std::vector<ValueEstimate> out;
  out.reserve(static_cast<std::size_t>(flows.cols()));
  for (Eigen::Index j = 0; j < flows.cols(); ++j) {
    CompensatedSum sum;
    for (std::int64_t r = 0; r < n_paths; ++r) {
      if (ok[static_cast<std::size_t>(r)]) sum.add(samples(r, j));
    }
    const double mean = sum.value() / static_cast<double>(valid);
    CompensatedSum squares;
    for (std::int64_t r = 0; r < n_paths; ++r) {
      if (!ok[static_cast<std::size_t>(r)]) continue;
      const double d = samples(r, j) - mean;
      squares.add(d * d);
    }
    ValueEstimate est;
    est.mean = mean;
    est.standard_error =
        valid > 1 ? std::sqrt(squares.value() / static_cast<double>(valid - 1) /
                              static_cast<double>(valid))
                  : 0.0;
    est.path_count = valid;
    est.truncated_count = n_paths - valid;
    est.seed = options.seed;
    out.push_back(est);
  }
  return out;
}

ValueEstimate estimate_value(const TransitionKernel& k, const EdgeFlow& f, StateIndex start,
                             StateIndex target, const EstimatorOptions& options) {
  return estimate_values(k, Eigen::MatrixXd(f), start, target, options).front();
}

}  // namespace hodge
