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


#ifndef BILEVEL_GRAPH_HPP_
#define BILEVEL_GRAPH_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bilevel/types.hpp"

namespace bilevel {

/// Bijection between string labels and dense ids, in first-occurrence order.
template <typename Id>
class Interner {
 public:
  Id Intern(std::string_view label) {
    auto it = index_.find(std::string(label));
    if (it != index_.end()) return it->second;
    Id id(labels_.size());
    labels_.emplace_back(label);
    index_.emplace(labels_.back(), id);
    return id;
  }

  std::optional<Id> Find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& Label(Id id) const { return labels_.at(id.index()); }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Id> index_;
};

struct Vocabulary {
  Interner<EntityId> entities;
  Interner<RelationId> relations;
  Interner<HigherRelationId> higher_relations;
};

/// Assigns one TripletId per distinct base triplet, in insertion order.
class TripletIndex {
 public:
  TripletId Insert(const BaseTriplet& t);
  std::optional<TripletId> Find(const BaseTriplet& t) const;
  const BaseTriplet& Get(TripletId id) const { return triplets_.at(id.index()); }
  std::size_t size() const { return triplets_.size(); }
  std::span<const BaseTriplet> triplets() const { return triplets_; }

  /// Ids assigned by first occurrence over train, valid, test in that order,
  /// so the train triplets always occupy the leading id range.
  static TripletIndex FromSplits(std::span<const std::vector<BaseTriplet>, 3> splits);

 private:
  std::vector<BaseTriplet> triplets_;
  std::unordered_map<BaseTriplet, TripletId> index_;
};

using BaseSplits = std::array<std::vector<BaseTriplet>, 3>;
using HigherSplits = std::array<std::vector<HigherTriplet>, 3>;

/// Reads `head<TAB>relation<TAB>tail` lines, interning labels as they appear.
std::vector<BaseTriplet> LoadBaseTriples(const std::filesystem::path& path, Vocabulary& vocab);
std::vector<BaseTriplet> ParseBaseTriples(std::string_view text, Vocabulary& vocab,
                                          std::string_view source = "<memory>");

/// Reads `h1 r1 t1 rhat h2 r2 t2` (tab separated). Both embedded base
/// triplets must already exist in `index`; higher relation labels are interned.
std::vector<HigherTriplet> LoadHigherTriples(const std::filesystem::path& path, Vocabulary& vocab,
                                             const TripletIndex& index);
std::vector<HigherTriplet> ParseHigherTriples(std::string_view text, Vocabulary& vocab,
                                              const TripletIndex& index,
                                              std::string_view source = "<memory>");

struct StatsReport {
  std::size_t num_entities = 0;          // |V|
  std::size_t num_relations = 0;         // |R|
  std::size_t num_triplets = 0;          // |E|
  std::size_t num_higher_relations = 0;  // |R^|
  std::size_t num_higher_triplets = 0;   // |H|
  std::size_t num_involved_triplets = 0; // |E^|

  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

/// Higher triplets whose sides fall outside the base train split, per split.
/// Reported alongside the stats rather than rejected.
struct CrossSplitReport {
  std::array<std::size_t, 3> higher_with_non_train_side{};
  std::array<std::array<std::size_t, 3>, 3> side_split_counts{};  // [higher split][base split]
};

/// Immutable bi-level knowledge graph. Base triplets of all splits share one
/// TripletId universe; train ids come first.
class BiLevelKG {
 public:
  BiLevelKG() = default;

  const Vocabulary& vocab() const { return vocab_; }
  std::size_t num_entities() const { return vocab_.entities.size(); }
  std::size_t num_relations() const { return vocab_.relations.size(); }
  std::size_t num_higher_relations() const { return vocab_.higher_relations.size(); }

  const TripletIndex& triplets() const { return triplets_; }
  const BaseTriplet& triplet(TripletId id) const { return triplets_.Get(id); }

  std::span<const TripletId> base_split(Split s) const { return base_splits_[Index(s)]; }
  std::span<const HigherTriplet> higher_split(Split s) const { return higher_splits_[Index(s)]; }
  std::size_t num_train_triplets() const { return base_splits_[0].size(); }
  std::optional<Split> split_of(TripletId id) const;

  bool in_train(const BaseTriplet& t) const { return train_set_.contains(t); }
  bool in_train(TripletId id) const { return id.index() < base_splits_[0].size(); }
  bool known_base(const BaseTriplet& t) const { return triplets_.Find(t).has_value(); }
  bool known_higher(const HigherTriplet& t) const { return higher_all_.contains(t); }
  bool in_higher_train(const HigherTriplet& t) const { return higher_train_.contains(t); }

  /// Out-edges of train base triplets, CSR over entities: (relation, tail).
  std::span<const std::pair<RelationId, EntityId>> train_out_edges(EntityId e) const;
  /// Train-relevant triplets (train split plus sides of train higher triplets)
  /// containing entity e as head or tail.
  std::span<const TripletId> membership(EntityId e) const;
  /// Indices into higher_split(kTrain) of triplets with `id` on either side.
  std::span<const std::uint32_t> higher_incidence(TripletId id) const;

  StatsReport Stats() const;
  CrossSplitReport CrossSplit() const;

  /// Serializes every split back to TSV (labels), base then higher.
  std::string SerializeBase(Split s) const;
  std::string SerializeHigher(Split s) const;

  friend BiLevelKG BuildGraph(Vocabulary vocab, const BaseSplits& base, const HigherSplits& higher,
                              std::vector<std::string>* warnings);

 private:
  static std::size_t Index(Split s) { return static_cast<std::size_t>(s); }
  void BuildIndices();

  Vocabulary vocab_;
  TripletIndex triplets_;
  std::array<std::vector<TripletId>, 3> base_splits_;
  std::array<std::vector<HigherTriplet>, 3> higher_splits_;
  std::unordered_set<BaseTriplet> train_set_;
  std::unordered_set<HigherTriplet> higher_all_;
  std::unordered_set<HigherTriplet> higher_train_;

  std::vector<std::uint32_t> out_offsets_;
  std::vector<std::pair<RelationId, EntityId>> out_edges_;
  std::vector<std::uint32_t> member_offsets_;
  std::vector<TripletId> members_;
  std::vector<std::uint32_t> incidence_offsets_;
  std::vector<std::uint32_t> incidence_;
};

/// Collapses duplicates inside a split (one warning each) and rejects any
/// triplet shared between splits. Higher triplets must reference ids of
/// TripletIndex::FromSplits(base).
BiLevelKG BuildGraph(Vocabulary vocab, const BaseSplits& base, const HigherSplits& higher,
                     std::vector<std::string>* warnings = nullptr);

struct DatasetPaths {
  std::array<std::filesystem::path, 3> base;
  std::array<std::filesystem::path, 3> higher;

  /// `<dir>/base_{train,valid,test}.tsv` and `<dir>/higher_{train,valid,test}.tsv`.
  static DatasetPaths FromDirectory(const std::filesystem::path& dir);
};

BiLevelKG LoadDataset(const DatasetPaths& paths, std::vector<std::string>* warnings = nullptr);

/// In-memory counterpart of the six TSV files.
struct DatasetText {
  std::array<std::string, 3> base;
  std::array<std::string, 3> higher;
};

BiLevelKG ParseDataset(const DatasetText& text, std::vector<std::string>* warnings = nullptr);

}  // namespace bilevel

#endif  // BILEVEL_GRAPH_HPP_
