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


#ifndef BILEVEL_RANKING_HPP_
#define BILEVEL_RANKING_HPP_

#include <cstddef>
#include <span>

namespace bilevel::eval {

/// Filtered mid-rank of `target` among `scores` (higher is better):
///   1 + #{x : s(x) > s(target)} + #{x != target : s(x) = s(target)} / 2
/// counted over candidates not in `filtered`. Duplicate filter entries are
/// ignored. Throws ContractError if `target` is filtered or out of range.
double FilteredRank(std::span<const double> scores, std::size_t target,
                    std::span<const std::size_t> filtered);

struct Metrics {
  double mean_rank = 0.0;
  double mean_reciprocal_rank = 0.0;
  double hits_at_10 = 0.0;
  std::size_t count = 0;
};

/// Throws ContractError on an empty input.
Metrics Aggregate(std::span<const double> ranks);

}  // namespace bilevel::eval

#endif  // BILEVEL_RANKING_HPP_
