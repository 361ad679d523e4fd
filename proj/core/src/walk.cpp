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


#include "bilevel/walk.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <thread>
#include <tuple>

namespace bilevel::augment {
namespace {

bool Contains(std::span<const EntityId> visited, EntityId e) {
  return std::find(visited.begin(), visited.end(), e) != visited.end();
}

// Token for walking along `t` starting at `from` (head->tail is forward).
RelationToken OrientFrom(const BaseTriplet& t, EntityId from) {
  return RelationToken::Base(t.relation, from != t.head);
}

// Token for walking along `t` and arriving at `to`.
RelationToken OrientToward(const BaseTriplet& t, EntityId to) {
  return RelationToken::Base(t.relation, to != t.tail);
}

std::optional<WalkPath> Extend(const AugView& view, WalkPath walk, std::size_t length_target,
                               Rng& rng, std::vector<StepCandidate>& buffer,
                               std::vector<EntityId>& seen) {
  seen.assign(1, walk.start);
  while (walk.visited.size() < length_target) {
    EntityId current = walk.visited.empty() ? walk.start : walk.visited.back();
    StepCandidates(view, current, seen, buffer);
    if (buffer.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, buffer.size() - 1);
    const StepCandidate& c = buffer[pick(rng)];
    walk.tokens.insert(walk.tokens.end(), c.tokens.begin(), c.tokens.begin() + c.num_tokens);
    walk.visited.push_back(c.next);
    seen.push_back(c.next);
  }
  return walk;
}

void Enumerate(const AugView& view, std::size_t max_length, std::vector<EntityId>& seen,
               std::vector<RelationToken>& tokens, WalkSet::Builder& builder) {
  std::vector<StepCandidate> cands;
  StepCandidates(view, seen.back(), seen, cands);
  for (const auto& c : cands) {
    seen.push_back(c.next);
    tokens.insert(tokens.end(), c.tokens.begin(), c.tokens.begin() + c.num_tokens);
    std::size_t length = seen.size() - 1;
    if (length >= 2) builder.Add(seen.front(), tokens, c.next);
    if (length < max_length) Enumerate(view, max_length, seen, tokens, builder);
    tokens.resize(tokens.size() - c.num_tokens);
    seen.pop_back();
  }
}

}  // namespace

void StepCandidates(const AugView& view, EntityId current, std::span<const EntityId> visited,
                    std::vector<StepCandidate>& out) {
  out.clear();
  for (const ViewEdge& e : view.edges(current)) {
    if (Contains(visited, e.neighbor) || e.neighbor == current) continue;
    StepCandidate c;
    c.tokens[0] = e.token;
    c.num_tokens = 1;
    c.next = e.neighbor;
    out.push_back(c);
  }
  const BiLevelKG& kg = view.graph();
  for (TripletId tid : view.membership(current)) {
    const BaseTriplet& t = kg.triplet(tid);
    const RelationToken first = OrientFrom(t, current);
    for (const ViewHigherEdge& he : view.higher_edges(tid)) {
      const BaseTriplet& other = kg.triplet(he.other);
      // A self-loop offers only its tail.
      const std::size_t ends = other.head == other.tail ? 1 : 2;
      const std::array<EntityId, 2> targets{other.tail, other.head};
      for (std::size_t k = 0; k < ends; ++k) {
        const EntityId y = targets[k];
        if (y == current || Contains(visited, y)) continue;
        StepCandidate c;
        c.tokens = {first, he.token, OrientToward(other, y)};
        c.num_tokens = 3;
        c.next = y;
        out.push_back(c);
      }
    }
  }
}

std::vector<StepCandidate> StepCandidates(const AugView& view, EntityId current,
                                          std::span<const EntityId> visited) {
  std::vector<StepCandidate> out;
  StepCandidates(view, current, visited, out);
  return out;
}

std::optional<WalkPath> SampleWalkFrom(const AugView& view, EntityId start,
                                       std::size_t length_target, Rng& rng) {
  std::vector<StepCandidate> buffer;
  std::vector<EntityId> seen;
  WalkPath walk;
  walk.start = start;
  return Extend(view, std::move(walk), length_target, rng, buffer, seen);
}

std::optional<WalkPath> SampleWalk(const AugView& view, std::size_t length_target, Rng& rng) {
  if (view.num_entities() == 0) return std::nullopt;
  std::uniform_int_distribution<std::size_t> start(0, view.num_entities() - 1);
  return SampleWalkFrom(view, EntityId(start(rng)), length_target, rng);
}

std::span<const WalkRecord> WalkSet::records_of(PathId id) const {
  return std::span(records_).subspan(path_offsets_.at(id), path_offsets_.at(id + 1) - path_offsets_[id]);
}

std::size_t WalkSet::Builder::VecHash::operator()(const std::vector<RelationToken>& v) const noexcept {
  std::uint64_t h = v.size();
  for (RelationToken t : v) h = HashCombine(h, t.bits());
  return static_cast<std::size_t>(h);
}

std::size_t WalkSet::Builder::RawHash::operator()(const std::array<std::uint32_t, 3>& r) const noexcept {
  return static_cast<std::size_t>(HashCombine(HashCombine(r[0], r[1]), r[2]));
}

std::uint32_t WalkSet::Builder::InternPath(std::span<const RelationToken> tokens) {
  std::vector<RelationToken> key(tokens.begin(), tokens.end());
  auto it = path_index_.find(key);
  if (it != path_index_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(paths_.size());
  paths_.push_back(key);
  path_index_.emplace(std::move(key), id);
  return id;
}

void WalkSet::Builder::Add(EntityId start, std::span<const RelationToken> tokens, EntityId end) {
  records_.insert({start.value, InternPath(tokens), end.value});
}

void WalkSet::Builder::Merge(Builder&& other) {
  std::vector<std::uint32_t> remap(other.paths_.size());
  for (std::size_t i = 0; i < other.paths_.size(); ++i) remap[i] = InternPath(other.paths_[i]);
  for (const auto& r : other.records_) records_.insert({r[0], remap[r[1]], r[2]});
  other = Builder();
}

WalkSet WalkSet::Builder::Finish() && {
  std::vector<std::uint32_t> order(paths_.size());
  std::iota(order.begin(), order.end(), 0u);
  auto bits_less = [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(
        paths_[a].begin(), paths_[a].end(), paths_[b].begin(), paths_[b].end(),
        [](RelationToken x, RelationToken y) { return x.bits() < y.bits(); });
  };
  std::sort(order.begin(), order.end(), bits_less);

  std::vector<std::uint32_t> rank(paths_.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<std::uint32_t>(i);

  WalkSet out;
  out.paths_.reserve(order.size());
  for (std::uint32_t old : order) out.paths_.push_back(std::move(paths_[old]));
  out.records_.reserve(records_.size());
  for (const auto& r : records_) out.records_.push_back({EntityId(r[0]), rank[r[1]], EntityId(r[2])});
  std::sort(out.records_.begin(), out.records_.end(), [](const WalkRecord& a, const WalkRecord& b) {
    return std::tie(a.path, a.start, a.end) < std::tie(b.path, b.start, b.end);
  });
  out.path_offsets_.assign(out.paths_.size() + 1, 0);
  for (const auto& r : out.records_) ++out.path_offsets_[r.path + 1];
  for (std::size_t i = 0; i < out.paths_.size(); ++i) out.path_offsets_[i + 1] += out.path_offsets_[i];
  return out;
}

WalkSet RunWalks(const AugView& view, const WalkOptions& options) {
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  std::vector<WalkSet::Builder> builders(workers);

  auto work = [&](std::size_t w) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(w)};
    Rng rng(seq);
    std::vector<StepCandidate> buffer;
    std::vector<EntityId> seen;
    const std::uint64_t begin = options.attempts * w / workers;
    const std::uint64_t end = options.attempts * (w + 1) / workers;
    if (view.num_entities() == 0) return;
    std::uniform_int_distribution<std::size_t> start(0, view.num_entities() - 1);
    for (std::size_t l = 2; l <= options.max_length; ++l) {
      for (std::uint64_t i = begin; i < end; ++i) {
        WalkPath walk;
        walk.start = EntityId(start(rng));
        auto done = Extend(view, std::move(walk), l, rng, buffer, seen);
        if (done) builders[w].Add(*done);
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }
  for (std::size_t w = 1; w < workers; ++w) builders[0].Merge(std::move(builders[w]));
  return std::move(builders[0]).Finish();
}

WalkSet EnumerateWalks(const AugView& view, std::size_t max_length) {
  WalkSet::Builder builder;
  std::vector<EntityId> seen;
  std::vector<RelationToken> tokens;
  for (std::size_t e = 0; e < view.num_entities(); ++e) {
    seen.assign(1, EntityId(e));
    tokens.clear();
    if (max_length >= 1) Enumerate(view, max_length, seen, tokens, builder);
  }
  return std::move(builder).Finish();
}

}  // namespace bilevel::augment
