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


#ifndef BILEVEL_CONFIDENCE_HPP_
#define BILEVEL_CONFIDENCE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bilevel/graph.hpp"
#include "bilevel/walk.hpp"

namespace bilevel::augment {

struct ConfidenceEntry {
  std::uint64_t support = 0;  // records (h, p, t) with (h, r, t) in train
  std::uint64_t total = 0;    // records (h, p, t)
  double confidence = 0.0;    // support / total

  friend bool operator==(const ConfidenceEntry&, const ConfidenceEntry&) = default;
};

/// c(p, r) over forward base relations r. Only pairs with support >= 1 are
/// stored; every other pair has confidence 0.
class ConfidenceTable {
 public:
  ConfidenceTable() = default;

  std::uint64_t total(PathId path) const { return path < totals_.size() ? totals_[path] : 0; }
  ConfidenceEntry Get(PathId path, RelationId relation) const;
  std::size_t num_pairs() const { return support_.size(); }
  std::size_t num_paths() const { return totals_.size(); }

  /// Visits stored pairs ordered by (path, relation).
  void ForEach(const std::function<void(PathId, RelationId, const ConfidenceEntry&)>& fn) const;

  friend ConfidenceTable BuildConfidenceTable(const WalkSet& walks, const BiLevelKG& kg);

 private:
  static std::uint64_t Key(PathId p, RelationId r) {
    return (static_cast<std::uint64_t>(p) << 32) | r.value;
  }
  std::vector<std::uint64_t> totals_;
  std::unordered_map<std::uint64_t, std::uint64_t> support_;
};

ConfidenceTable BuildConfidenceTable(const WalkSet& walks, const BiLevelKG& kg);

/// S: every (h, r, t) outside train such that some record (h, p, t) has
/// c(p, r) >= tau. Sorted, no duplicates.
std::vector<BaseTriplet> MineAugmented(const ConfidenceTable& table, const WalkSet& walks,
                                       const BiLevelKG& kg, double tau);

struct AugmentReport {
  std::size_t unique_pairs = 0;        // distinct (p, r) with support >= 1
  std::size_t pairs_above_tau = 0;     // ... with c(p, r) >= tau
  std::size_t augmented = 0;           // |S|
  std::size_t valid_test_overlap = 0;  // |S n E_valid| + |S n E_test|

  friend bool operator==(const AugmentReport&, const AugmentReport&) = default;
};

AugmentReport MakeAugmentReport(const ConfidenceTable& table, const std::vector<BaseTriplet>& augmented,
                                const BiLevelKG& kg, double tau);

/// TSV rows `tokens<TAB>r<TAB>support<TAB>total<TAB>confidence`.
std::string FormatConfidenceTable(const ConfidenceTable& table, const WalkSet& walks,
                                  const Vocabulary& vocab);

}  // namespace bilevel::augment

#endif  // BILEVEL_CONFIDENCE_HPP_
