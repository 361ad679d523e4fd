// Copyright 2026 The bilevel-kge Authors
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


#ifndef BILEVEL_SAMPLING_HPP_
#define BILEVEL_SAMPLING_HPP_

#include <cstddef>
#include <random>
#include <vector>

#include "bilevel/graph.hpp"

namespace bilevel::embed {

using Rng = std::mt19937_64;

/// Filtered resamples attempted before an unfiltered corruption is accepted.
inline constexpr int kMaxResamples = 100;

struct CorruptionCounts {
  std::size_t lhs = 0;  // head (base) or Ti (higher) replaced
  std::size_t rhs = 0;  // tail (base) or Tj (higher) replaced
  std::size_t unfiltered = 0;
};

/// `k` corruptions of `positive`: a fair coin picks head or tail, which is
/// replaced by a uniform entity. Corruptions equal to a train triple or to the
/// positive itself are redrawn.
std::vector<BaseTriplet> SampleNegativesBase(const BiLevelKG& kg, const BaseTriplet& positive, std::size_t k,
                                             Rng& rng, CorruptionCounts* counts = nullptr);

/// Same scheme over higher triplets: Ti or Tj is replaced by a uniform train
/// triplet, redrawn while the result is a train higher triplet.
std::vector<HigherTriplet> SampleNegativesHigher(const BiLevelKG& kg, const HigherTriplet& positive,
                                                 std::size_t k, Rng& rng, CorruptionCounts* counts = nullptr);

}  // namespace bilevel::embed

#endif  // BILEVEL_SAMPLING_HPP_
