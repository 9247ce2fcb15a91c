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

#ifndef HODGE_RANDOM_HPP
#define HODGE_RANDOM_HPP

#include <bit>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace hodge {

// Splittable counter-style generator (the SplittableRandom construction).
// Stream r of master seed s is a fixed function of (s, r), so any replicate
// can be regenerated independently of how work is scheduled.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t stream) {
    const std::uint64_t key = mix64(seed + kGolden * (stream + 1));
    state_ = mix64(key ^ mix64(stream));
    gamma_ = mix_gamma(key + kGolden);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += gamma_;
    return mix64(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t mix_gamma(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
    z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    z = (z ^ (z >> 33)) | 1ULL;
    if (std::popcount(z ^ (z >> 1)) < 24) z ^= 0xaaaaaaaaaaaaaaaaULL;
    return z;
  }

  std::uint64_t state_;
  std::uint64_t gamma_;
};

// Walker/Vose alias table: O(1) draws from a fixed discrete distribution.
class AliasTable {
 public:
  AliasTable() = default;
  // Weights need not be normalized.
  explicit AliasTable(std::span<const double> probabilities);

  // u uniform on [0, 1).
  std::size_t sample(double u) const {
    const double scaled = u * static_cast<double>(threshold_.size());
    auto column = static_cast<std::size_t>(scaled);
    if (column >= threshold_.size()) column = threshold_.size() - 1;
    return scaled - static_cast<double>(column) < threshold_[column] ? column : alias_[column];
  }

  std::size_t size() const { return threshold_.size(); }
  bool empty() const { return threshold_.empty(); }

 private:
  std::vector<double> threshold_;
  std::vector<std::size_t> alias_;
};

}  // namespace hodge

#endif  // HODGE_RANDOM_HPP
