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

#ifndef HODGE_CALCULUS_HPP
#define HODGE_CALCULUS_HPP

// Weighted discrete exterior calculus on a cooperation graph: the mu- and
// lambda-weighted inner products, the gradient d, its adjoint d* and the
// Laplacian d*d. Every operator accepts a single column or a block of columns
// (one per player) and any Eigen expression.

#include <Eigen/Dense>

#include "hodge/config.hpp"
#include "hodge/error.hpp"
#include "hodge/graph.hpp"

namespace hodge {

template <typename Derived>
using ColumnsOf =
    Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Derived::ColsAtCompileTime>;

namespace detail {

inline void require_rows(Eigen::Index rows, Eigen::Index expected, const char* what) {
  if (rows != expected) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(what) + " has the wrong size");
  }
}

}  // namespace detail

// <u, v>_mu = sum_S mu(S) u(S) v(S)
template <typename DerivedU, typename DerivedV>
typename DerivedU::Scalar inner_product_states(const CooperationGraph& g,
                                               const Eigen::MatrixBase<DerivedU>& u,
                                               const Eigen::MatrixBase<DerivedV>& v) {
  using Scalar = typename DerivedU::Scalar;
  detail::require_rows(u.size(), g.num_states(), "vertex function");
  detail::require_rows(v.size(), g.num_states(), "vertex function");
  Scalar acc(0);
  for (Eigen::Index s = 0; s < g.num_states(); ++s) {
    acc += Scalar(g.mu()[s]) * u(s) * v(s);
  }
  return acc;
}

// <f, h>_lambda = sum over stored edges of lambda(e) f(e) h(e)
template <typename DerivedF, typename DerivedH>
typename DerivedF::Scalar inner_product_flows(const CooperationGraph& g,
                                              const Eigen::MatrixBase<DerivedF>& f,
                                              const Eigen::MatrixBase<DerivedH>& h) {
  using Scalar = typename DerivedF::Scalar;
  detail::require_rows(f.size(), g.num_edges(), "edge flow");
  detail::require_rows(h.size(), g.num_edges(), "edge flow");
  Scalar acc(0);
  for (Eigen::Index e = 0; e < g.num_edges(); ++e) {
    acc += Scalar(g.lambda()[e]) * f(e) * h(e);
  }
  return acc;
}

// du(S, T) = u(T) - u(S) on every stored edge (S, T).
template <typename Derived>
ColumnsOf<Derived> gradient(const CooperationGraph& g, const Eigen::MatrixBase<Derived>& u) {
  detail::require_rows(u.rows(), g.num_states(), "vertex function");
  ColumnsOf<Derived> out(g.num_edges(), u.cols());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    out.row(e) = u.row(edge.to) - u.row(edge.from);
  }
  return out;
}

// d*f(S) = sum_{T ~ S} lambda(T, S) / mu(S) * f(T, S)
template <typename Derived>
ColumnsOf<Derived> divergence(const CooperationGraph& g, const Eigen::MatrixBase<Derived>& f) {
  using Scalar = typename Derived::Scalar;
  detail::require_rows(f.rows(), g.num_edges(), "edge flow");
  ColumnsOf<Derived> out = ColumnsOf<Derived>::Zero(g.num_states(), f.cols());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const Scalar w(g.lambda()[e]);
    out.row(edge.to) += w * f.row(e);
    out.row(edge.from) -= w * f.row(e);
  }
  for (StateIndex s = 0; s < g.num_states(); ++s) {
    out.row(s) /= Scalar(g.mu()[s]);
  }
  return out;
}

// d*d u, evaluated directly from the adjacency lists.
template <typename Derived>
ColumnsOf<Derived> laplacian_apply(const CooperationGraph& g, const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  detail::require_rows(u.rows(), g.num_states(), "vertex function");
  ColumnsOf<Derived> out = ColumnsOf<Derived>::Zero(g.num_states(), u.cols());
  for (StateIndex s = 0; s < g.num_states(); ++s) {
    for (const Incidence& inc : g.incident(s)) {
      out.row(s) += Scalar(g.lambda()[inc.edge]) * (u.row(s) - u.row(inc.neighbor));
    }
    out.row(s) /= Scalar(g.mu()[s]);
  }
  return out;
}

// f = du + h with h divergence-free and orthogonal to du. The potential is
// zero at the smallest-index state of every connected component.
struct HodgeDecomposition {
  VertexFunction potential;
  EdgeFlow gradient_part;
  EdgeFlow divergence_free;
};

HodgeDecomposition hodge_decompose(const CooperationGraph& g, const EdgeFlow& f,
                                   const SolverConfig& config = {});

}  // namespace hodge

#endif  // HODGE_CALCULUS_HPP
