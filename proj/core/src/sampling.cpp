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


#include "bilevel/sampling.hpp"

#include "bilevel/errors.hpp"

namespace bilevel::embed {

std::vector<BaseTriplet> SampleNegativesBase(const BiLevelKG& kg, const BaseTriplet& positive, std::size_t k,
                                             Rng& rng, CorruptionCounts* counts) {
  if (k == 0) throw ContractError("negative ratio must be at least 1");
  if (kg.num_entities() == 0) throw ContractError("cannot corrupt over an empty entity set");
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(kg.num_entities() - 1));
  std::vector<BaseTriplet> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    BaseTriplet neg = positive;
    bool head = false;
    for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
      head = (rng() & 1u) != 0;
      neg = positive;
      (head ? neg.head : neg.tail) = EntityId(pick(rng));
      if (neg != positive && !kg.in_train(neg)) break;
      if (attempt == kMaxResamples && counts) ++counts->unfiltered;
    }
    if (counts) ++(head ? counts->lhs : counts->rhs);
    out.push_back(neg);
  }
  return out;
}

std::vector<HigherTriplet> SampleNegativesHigher(const BiLevelKG& kg, const HigherTriplet& positive,
                                                 std::size_t k, Rng& rng, CorruptionCounts* counts) {
  if (k == 0) throw ContractError("negative ratio must be at least 1");
  const std::size_t n_train = kg.num_train_triplets();
  if (n_train == 0) throw ContractError("cannot corrupt higher triplets without train triplets");
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n_train - 1));
  std::vector<HigherTriplet> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    HigherTriplet neg = positive;
    bool lhs = false;
    for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
      lhs = (rng() & 1u) != 0;
      neg = positive;
      (lhs ? neg.lhs : neg.rhs) = TripletId(pick(rng));
      if (neg != positive && !kg.in_higher_train(neg)) break;
      if (attempt == kMaxResamples && counts) ++counts->unfiltered;
    }
    if (counts) ++(lhs ? counts->lhs : counts->rhs);
    out.push_back(neg);
  }
  return out;
}

}  // namespace bilevel::embed
