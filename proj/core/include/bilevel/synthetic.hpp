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


#ifndef BILEVEL_SYNTHETIC_HPP_
#define BILEVEL_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>

#include "bilevel/graph.hpp"

namespace bilevel::synthetic {

/// Small bi-level graph with planted higher-level regularities:
///   <(x, sub, y), implies, (x, super, y)>        for every sub fact
///   <(x, fwd, y), equivalent_to, (y, bwd, x)>    for every fwd fact
/// plus filler relations. Every base relation is a union of modular maps
/// x -> (a x + b) mod |V|, so the base level is learnable as well.
struct Options {
  std::size_t num_entities = 60;
  std::size_t implication_facts = 60;  // sub triples, each with an implies edge
  std::size_t implication_extra = 20;  // super triples without a sub counterpart
  std::size_t equivalence_facts = 60;  // fwd triples, each with an equivalent_to edge
  std::size_t filler_relations = 4;
  std::size_t filler_facts = 85;       // per filler relation
  double base_holdout = 0.05;          // fraction of filler facts sent to valid and to test, each
  double higher_valid = 0.1;
  double higher_test = 0.2;
  std::uint64_t seed = 7;
};

DatasetText Generate(const Options& options = {});

}  // namespace bilevel::synthetic

#endif  // BILEVEL_SYNTHETIC_HPP_
