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


#ifndef BILEVEL_AUG_VIEW_HPP_
#define BILEVEL_AUG_VIEW_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bilevel/graph.hpp"
#include "bilevel/types.hpp"

namespace bilevel {

enum class TokenKind : std::uint8_t { kBase = 0, kHigher = 1 };

/// A (possibly inverted) base or higher-level relation, packed in 32 bits:
/// bit 31 = higher, bit 30 = inverse, low 30 bits = id.
class RelationToken {
 public:
  constexpr RelationToken() = default;

  static constexpr RelationToken Base(RelationId r, bool inverse = false) {
    return RelationToken(r.value | (inverse ? kInverseBit : 0u));
  }
  static constexpr RelationToken Higher(HigherRelationId r, bool inverse = false) {
    return RelationToken(r.value | kHigherBit | (inverse ? kInverseBit : 0u));
  }
  static constexpr RelationToken FromBits(std::uint32_t bits) { return RelationToken(bits); }

  constexpr TokenKind kind() const { return (bits_ & kHigherBit) ? TokenKind::kHigher : TokenKind::kBase; }
  constexpr bool inverse() const { return (bits_ & kInverseBit) != 0; }
  constexpr std::uint32_t id() const { return bits_ & kIdMask; }
  constexpr std::uint32_t bits() const { return bits_; }
  constexpr RelationToken Inverted() const { return RelationToken(bits_ ^ kInverseBit); }

  friend constexpr auto operator<=>(RelationToken, RelationToken) = default;

 private:
  static constexpr std::uint32_t kHigherBit = 1u << 31;
  static constexpr std::uint32_t kInverseBit = 1u << 30;
  static constexpr std::uint32_t kIdMask = kInverseBit - 1;

  constexpr explicit RelationToken(std::uint32_t bits) : bits_(bits) {}
  std::uint32_t bits_ = 0;
};

/// Label form used in TSV output: `Rel`, `Rel^-1`, `<HRel>`, `<HRel>^-1`.
std::string TokenLabel(const Vocabulary& vocab, RelationToken token);
std::string TokensLabel(const Vocabulary& vocab, std::span<const RelationToken> tokens);

struct ViewEdge {
  RelationToken token;
  EntityId neighbor;
};

struct ViewHigherEdge {
  RelationToken token;
  TripletId other;
};

/// Read-only reverse-closed overlay of the train graph: every base train edge
/// (h, r, t) also appears as (t, r^-1, h) and every train higher edge
/// <Ti, r^, Tj> also appears as <Tj, r^-1, Ti>. The underlying graph is not
/// modified and the reversed facts never reach the train/eval triple sets.
class AugView {
 public:
  explicit AugView(const BiLevelKG& kg);

  const BiLevelKG& graph() const { return *kg_; }
  std::size_t num_entities() const { return kg_->num_entities(); }
  std::size_t num_relation_tokens() const { return 2 * kg_->num_relations(); }
  std::size_t num_higher_tokens() const { return 2 * kg_->num_higher_relations(); }
  std::size_t num_base_edges() const { return edges_.size(); }
  std::size_t num_higher_edges() const { return higher_edges_.size(); }

  std::span<const ViewEdge> edges(EntityId e) const;
  std::span<const ViewHigherEdge> higher_edges(TripletId t) const;
  std::span<const TripletId> membership(EntityId e) const { return kg_->membership(e); }

 private:
  const BiLevelKG* kg_;
  std::vector<std::uint32_t> edge_offsets_;
  std::vector<ViewEdge> edges_;
  std::vector<std::uint32_t> higher_offsets_;
  std::vector<ViewHigherEdge> higher_edges_;
};

inline AugView ReverseClosure(const BiLevelKG& kg) { return AugView(kg); }

}  // namespace bilevel

#endif  // BILEVEL_AUG_VIEW_HPP_
