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


#include "bilevel/confidence.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "bilevel/errors.hpp"

namespace bilevel::augment {
namespace {

std::uint64_t PairKey(EntityId h, EntityId t) {
  return (static_cast<std::uint64_t>(h.value) << 32) | t.value;
}

// Train relations linking h -> t.
std::unordered_map<std::uint64_t, std::vector<RelationId>> TrainRelationsByPair(const BiLevelKG& kg) {
  std::unordered_map<std::uint64_t, std::vector<RelationId>> out;
  for (TripletId id : kg.base_split(Split::kTrain)) {
    const auto& t = kg.triplet(id);
    out[PairKey(t.head, t.tail)].push_back(t.relation);
  }
  return out;
}

}  // namespace

ConfidenceEntry ConfidenceTable::Get(PathId path, RelationId relation) const {
  ConfidenceEntry e;
  e.total = total(path);
  auto it = support_.find(Key(path, relation));
  if (it != support_.end()) e.support = it->second;
  e.confidence = e.total ? static_cast<double>(e.support) / static_cast<double>(e.total) : 0.0;
  return e;
}

void ConfidenceTable::ForEach(
    const std::function<void(PathId, RelationId, const ConfidenceEntry&)>& fn) const {
  std::vector<std::uint64_t> keys;
  keys.reserve(support_.size());
  for (const auto& [k, v] : support_) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (std::uint64_t k : keys) {
    PathId p = static_cast<PathId>(k >> 32);
    RelationId r(static_cast<std::uint32_t>(k & 0xffffffffu));
    fn(p, r, Get(p, r));
  }
}

ConfidenceTable BuildConfidenceTable(const WalkSet& walks, const BiLevelKG& kg) {
  ConfidenceTable table;
  table.totals_.assign(walks.num_paths(), 0);
  const auto by_pair = TrainRelationsByPair(kg);
  for (const WalkRecord& rec : walks.records()) {
    ++table.totals_[rec.path];
    auto it = by_pair.find(PairKey(rec.start, rec.end));
    if (it == by_pair.end()) continue;
    for (RelationId r : it->second) ++table.support_[ConfidenceTable::Key(rec.path, r)];
  }
  return table;
}

std::vector<BaseTriplet> MineAugmented(const ConfidenceTable& table, const WalkSet& walks,
                                       const BiLevelKG& kg, double tau) {
  // tau above 1 is tolerated and simply selects nothing.
  if (!(tau > 0.0)) throw ContractError("tau must be positive, got " + std::to_string(tau));
  std::unordered_set<BaseTriplet> mined;
  table.ForEach([&](PathId p, RelationId r, const ConfidenceEntry& e) {
    if (e.confidence < tau) return;
    for (const WalkRecord& rec : walks.records_of(p)) {
      BaseTriplet cand{rec.start, r, rec.end};
      if (!kg.in_train(cand)) mined.insert(cand);
    }
  });
  std::vector<BaseTriplet> out(mined.begin(), mined.end());
  std::sort(out.begin(), out.end());
  return out;
}

AugmentReport MakeAugmentReport(const ConfidenceTable& table, const std::vector<BaseTriplet>& augmented,
                                const BiLevelKG& kg, double tau) {
  AugmentReport report;
  report.unique_pairs = table.num_pairs();
  table.ForEach([&](PathId, RelationId, const ConfidenceEntry& e) {
    if (e.confidence >= tau) ++report.pairs_above_tau;
  });
  report.augmented = augmented.size();
  for (const auto& t : augmented) {
    auto id = kg.triplets().Find(t);
    if (!id) continue;
    auto split = kg.split_of(*id);
    if (split == Split::kValid || split == Split::kTest) ++report.valid_test_overlap;
  }
  return report;
}

std::string FormatConfidenceTable(const ConfidenceTable& table, const WalkSet& walks,
                                  const Vocabulary& vocab) {
  std::string out;
  char buf[64];
  table.ForEach([&](PathId p, RelationId r, const ConfidenceEntry& e) {
    std::snprintf(buf, sizeof(buf), "%.17g", e.confidence);
    out += TokensLabel(vocab, walks.path(p)) + '\t' + vocab.relations.Label(r) + '\t' +
           std::to_string(e.support) + '\t' + std::to_string(e.total) + '\t' + buf + '\n';
  });
  return out;
}

}  // namespace bilevel::augment
