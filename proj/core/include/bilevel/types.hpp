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

#ifndef BILEVEL_TYPES_HPP_
#define BILEVEL_TYPES_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>

namespace bilevel {

/// Dense index into one interner namespace. The tag keeps entity, relation,
/// higher-relation and triplet ids from being mixed up.
template <typename Tag>
struct StrongId {
  std::uint32_t value = 0;

  constexpr StrongId() = default;
  constexpr explicit StrongId(std::uint32_t v) : value(v) {}
  constexpr explicit StrongId(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit StrongId(int v) : value(static_cast<std::uint32_t>(v)) {}

  constexpr std::size_t index() const { return value; }
  friend constexpr auto operator<=>(StrongId, StrongId) = default;
};

struct EntityTag {};
struct RelationTag {};
struct HigherRelationTag {};
struct TripletTag {};

using EntityId = StrongId<EntityTag>;
using RelationId = StrongId<RelationTag>;
using HigherRelationId = StrongId<HigherRelationTag>;
using TripletId = StrongId<TripletTag>;

struct BaseTriplet {
  EntityId head;
  RelationId relation;
  EntityId tail;

  friend constexpr auto operator<=>(const BaseTriplet&, const BaseTriplet&) = default;
};

struct HigherTriplet {
  TripletId lhs;
  HigherRelationId relation;
  TripletId rhs;

  friend constexpr auto operator<=>(const HigherTriplet&, const HigherTriplet&) = default;
};

enum class Split { kTrain = 0, kValid = 1, kTest = 2 };

inline constexpr Split kAllSplits[] = {Split::kTrain, Split::kValid, Split::kTest};

constexpr std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValid:
      return "valid";
    case Split::kTest:
      return "test";
  }
  return "?";
}

inline std::uint64_t HashCombine(std::uint64_t seed, std::uint64_t v) {
  // splitmix64 finalizer over the running value.
  std::uint64_t x = seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace bilevel

template <typename Tag>
struct std::hash<bilevel::StrongId<Tag>> {
  std::size_t operator()(bilevel::StrongId<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

template <>
struct std::hash<bilevel::BaseTriplet> {
  std::size_t operator()(const bilevel::BaseTriplet& t) const noexcept {
    std::uint64_t h = bilevel::HashCombine(t.head.value, t.relation.value);
    return static_cast<std::size_t>(bilevel::HashCombine(h, t.tail.value));
  }
};

template <>
struct std::hash<bilevel::HigherTriplet> {
  std::size_t operator()(const bilevel::HigherTriplet& t) const noexcept {
    std::uint64_t h = bilevel::HashCombine(t.lhs.value, t.relation.value);
    return static_cast<std::size_t>(bilevel::HashCombine(h, t.rhs.value));
  }
};

#endif  // BILEVEL_TYPES_HPP_
