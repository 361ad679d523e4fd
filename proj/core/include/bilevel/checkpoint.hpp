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


#ifndef BILEVEL_CHECKPOINT_HPP_
#define BILEVEL_CHECKPOINT_HPP_

#include <string>
#include <string_view>

#include "bilevel/graph.hpp"
#include "bilevel/model.hpp"

namespace bilevel::embed {

// Layout (all integers u64, all reals f64, little-endian):
//   magic "BIVECKPT", format version,
//   |V|, |R|, |R^|, d, d^, tag length, tag bytes, seed,
//   entities, relations, higher relations, W (row-major).
// Optimizer accumulators are not stored.
inline constexpr std::string_view kCheckpointMagic = "BIVECKPT";
inline constexpr std::uint64_t kCheckpointVersion = 1;

std::string SerializeCheckpoint(const ModelParams& params, std::string_view backbone_tag = "quate");

/// Throws ParseError on a truncated, foreign or unsupported-backbone blob.
/// Accumulators come back zeroed.
ModelParams ParseCheckpoint(std::string_view blob);

/// Throws ValidationError when the checkpoint shape disagrees with the graph.
void CheckShape(const ModelParams& params, const BiLevelKG& kg);

/// "id,x0,...,x{4d-1}" rows, one per entity.
std::string EntityCsv(const ModelParams& params);

/// Same layout for W [h; r; t] of every train triplet.
std::string TripletCsv(const ModelParams& params, const BiLevelKG& kg);

}  // namespace bilevel::embed

#endif  // BILEVEL_CHECKPOINT_HPP_
