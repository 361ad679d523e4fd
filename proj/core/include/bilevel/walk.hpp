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


#ifndef BILEVEL_WALK_HPP_
#define BILEVEL_WALK_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bilevel/aug_view.hpp"

namespace bilevel::augment {

using Rng = std::mt19937_64;

/// A simple path: `start`, then one entity per step. length() counts the
/// entities after the start; a higher-level move is one step with 3 tokens.
struct WalkPath {
  EntityId start;
  std::vector<EntityId> visited;
  std::vector<RelationToken> tokens;

  std::size_t length() const { return visited.size(); }
  EntityId end() const { return visited.empty() ? start : visited.back(); }
};

/// One admissible move: 1 token for a base edge, 3 for a higher-level hop.
struct StepCandidate {
  std::array<RelationToken, 3> tokens{};
  std::uint8_t num_tokens = 0;
  EntityId next;

  std::span<const RelationToken> token_span() const { return {tokens.data(), num_tokens}; }
};

/// Moves from `current` to entities outside `visited`. `out` is cleared first.
///
/// Base moves follow every view edge. Higher moves go from a triplet T that
/// contains `current` across a higher edge to T' and land on an endpoint y of
/// T'; the tokens are (orient(T from current), r^ or r^-1, orient(T' toward y)),
/// where orient is r when walking head->tail and r^-1 otherwise. Only y is
/// marked visited by the caller.
void StepCandidates(const AugView& view, EntityId current, std::span<const EntityId> visited,
                    std::vector<StepCandidate>& out);

std::vector<StepCandidate> StepCandidates(const AugView& view, EntityId current,
                                          std::span<const EntityId> visited);

/// Uniform start over all entities, uniform move among StepCandidates.
/// Returns nullopt when the walk dead-ends before `length_target` steps.
std::optional<WalkPath> SampleWalk(const AugView& view, std::size_t length_target, Rng& rng);

/// Same as SampleWalk from a fixed start entity.
std::optional<WalkPath> SampleWalkFrom(const AugView& view, EntityId start,
                                       std::size_t length_target, Rng& rng);

using PathId = std::uint32_t;

struct WalkRecord {
  EntityId start;
  PathId path;
  EntityId end;

  friend constexpr auto operator<=>(const WalkRecord&, const WalkRecord&) = default;
};

/// Deduplicated (start, relation sequence, end) records. Relation sequences
/// are interned; ids follow lexicographic order of the token bits so the set
/// is canonical regardless of how it was produced.
class WalkSet {
 public:
  WalkSet() = default;

  std::span<const RelationToken> path(PathId id) const { return paths_.at(id); }
  std::size_t num_paths() const { return paths_.size(); }
  std::span<const WalkRecord> records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  /// The contiguous run of records whose relation sequence is `id`.
  std::span<const WalkRecord> records_of(PathId id) const;

  friend bool operator==(const WalkSet&, const WalkSet&) = default;

  class Builder;

 private:
  std::vector<std::vector<RelationToken>> paths_;
  std::vector<WalkRecord> records_;  // sorted by (path, start, end)
  std::vector<std::uint32_t> path_offsets_;
};

/// Accumulates raw (start, tokens, end) records; Finish() dedups and
/// canonicalizes. Builders can be merged (set union).
class WalkSet::Builder {
 public:
  void Add(EntityId start, std::span<const RelationToken> tokens, EntityId end);
  void Add(const WalkPath& walk) { Add(walk.start, walk.tokens, walk.end()); }
  void Merge(Builder&& other);
  std::size_t size() const { return records_.size(); }
  WalkSet Finish() &&;

 private:
  struct VecHash {
    std::size_t operator()(const std::vector<RelationToken>& v) const noexcept;
  };
  struct RawHash {
    std::size_t operator()(const std::array<std::uint32_t, 3>& r) const noexcept;
  };
  std::uint32_t InternPath(std::span<const RelationToken> tokens);

  std::vector<std::vector<RelationToken>> paths_;
  std::unordered_map<std::vector<RelationToken>, std::uint32_t, VecHash> path_index_;
  std::unordered_set<std::array<std::uint32_t, 3>, RawHash> records_;
};

struct WalkOptions {
  std::size_t max_length = 3;    // L
  std::uint64_t attempts = 0;    // n, per length
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

/// For every l in 2..L makes n walk attempts and collects the successful ones.
/// Worker w draws from its own stream seeded by (seed, w); workers = 1 is the
/// reference for determinism.
WalkSet RunWalks(const AugView& view, const WalkOptions& options);

/// Every simple path of length 2..L from every start entity.
WalkSet EnumerateWalks(const AugView& view, std::size_t max_length);

}  // namespace bilevel::augment

#endif  // BILEVEL_WALK_HPP_
