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


#include "bilevel/aug_view.hpp"

#include <algorithm>

namespace bilevel {

std::string TokenLabel(const Vocabulary& vocab, RelationToken token) {
  std::string out;
  if (token.kind() == TokenKind::kBase) {
    out = vocab.relations.Label(RelationId(token.id()));
  } else {
    out = "<" + vocab.higher_relations.Label(HigherRelationId(token.id())) + ">";
  }
  if (token.inverse()) out += "^-1";
  return out;
}

std::string TokensLabel(const Vocabulary& vocab, std::span<const RelationToken> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += TokenLabel(vocab, tokens[i]);
  }
  return out;
}

AugView::AugView(const BiLevelKG& kg) : kg_(&kg) {
  const std::size_t n = kg.num_entities();
  std::vector<std::uint32_t> degree(n + 1, 0);
  for (TripletId id : kg.base_split(Split::kTrain)) {
    const auto& t = kg.triplet(id);
    ++degree[t.head.index() + 1];
    ++degree[t.tail.index() + 1];
  }
  for (std::size_t i = 0; i < n; ++i) degree[i + 1] += degree[i];
  edge_offsets_ = degree;
  edges_.resize(edge_offsets_.back());
  std::vector<std::uint32_t> cursor(edge_offsets_.begin(), edge_offsets_.end() - 1);
  for (TripletId id : kg.base_split(Split::kTrain)) {
    const auto& t = kg.triplet(id);
    edges_[cursor[t.head.index()]++] = {RelationToken::Base(t.relation), t.tail};
    edges_[cursor[t.tail.index()]++] = {RelationToken::Base(t.relation, true), t.head};
  }

  const std::size_t m = kg.triplets().size();
  std::vector<std::uint32_t> hdeg(m + 1, 0);
  auto higher = kg.higher_split(Split::kTrain);
  for (const auto& h : higher) {
    ++hdeg[h.lhs.index() + 1];
    ++hdeg[h.rhs.index() + 1];
  }
  for (std::size_t i = 0; i < m; ++i) hdeg[i + 1] += hdeg[i];
  higher_offsets_ = hdeg;
  higher_edges_.resize(higher_offsets_.back());
  std::vector<std::uint32_t> hcur(higher_offsets_.begin(), higher_offsets_.end() - 1);
  for (const auto& h : higher) {
    higher_edges_[hcur[h.lhs.index()]++] = {RelationToken::Higher(h.relation), h.rhs};
    higher_edges_[hcur[h.rhs.index()]++] = {RelationToken::Higher(h.relation, true), h.lhs};
  }
}

std::span<const ViewEdge> AugView::edges(EntityId e) const {
  return std::span(edges_).subspan(edge_offsets_[e.index()],
                                   edge_offsets_[e.index() + 1] - edge_offsets_[e.index()]);
}

std::span<const ViewHigherEdge> AugView::higher_edges(TripletId t) const {
  return std::span(higher_edges_).subspan(higher_offsets_[t.index()],
                                          higher_offsets_[t.index() + 1] - higher_offsets_[t.index()]);
}

}  // namespace bilevel
