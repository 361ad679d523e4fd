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


#include "bilevel/ranking.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "bilevel/errors.hpp"

namespace bilevel::eval {

double FilteredRank(std::span<const double> scores, std::size_t target,
                    std::span<const std::size_t> filtered) {
  if (target >= scores.size()) {
    throw ContractError("target " + std::to_string(target) + " outside " +
                        std::to_string(scores.size()) + " candidates");
  }
  const double s = scores[target];
  std::size_t greater = 0, ties = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > s) {
      ++greater;
    } else if (scores[i] == s && i != target) {
      ++ties;
    }
  }

  std::vector<std::size_t> drop(filtered.begin(), filtered.end());
  std::sort(drop.begin(), drop.end());
  drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
  for (std::size_t i : drop) {
    if (i == target) throw ContractError("target " + std::to_string(target) + " is in its own filter set");
    if (i >= scores.size()) continue;
    if (scores[i] > s) {
      --greater;
    } else if (scores[i] == s) {
      --ties;
    }
  }
  return 1.0 + static_cast<double>(greater) + static_cast<double>(ties) / 2.0;
}

Metrics Aggregate(std::span<const double> ranks) {
  if (ranks.empty()) throw ContractError("cannot aggregate an empty rank list");
  Metrics m;
  m.count = ranks.size();
  for (double r : ranks) {
    m.mean_rank += r;
    m.mean_reciprocal_rank += 1.0 / r;
    if (r <= 10.0) m.hits_at_10 += 1.0;
  }
  const double n = static_cast<double>(ranks.size());
  m.mean_rank /= n;
  m.mean_reciprocal_rank /= n;
  m.hits_at_10 /= n;
  return m;
}

}  // namespace bilevel::eval
