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


#ifndef BILEVEL_TESTS_TEST_SUPPORT_HPP_
#define BILEVEL_TESTS_TEST_SUPPORT_HPP_

// Fixture builders and from-scratch oracles shared by the unit and acceptance
// tests. Nothing here calls into the indices or fast paths under test.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bilevel/graph.hpp"
#include "bilevel/model.hpp"
#include "bilevel/quaternion.hpp"
#include "bilevel/tasks.hpp"

namespace bilevel::testing {

BiLevelKG MakeKg(std::string base_train, std::string higher_train = "", std::string base_valid = "",
                 std::string base_test = "", std::string higher_valid = "", std::string higher_test = "");

/// Random text dataset with at most the given vocabulary sizes.
DatasetText RandomSmallDataset(std::mt19937_64& rng, std::size_t max_entities, std::size_t max_relations,
                               std::size_t max_higher_relations);

// ---- walks -------------------------------------------------------------

struct OracleRecord {
  std::uint32_t start;
  std::vector<std::uint32_t> tokens;  // RelationToken bits
  std::uint32_t end;
  friend auto operator<=>(const OracleRecord&, const OracleRecord&) = default;
};

/// Every simple path of length 2..max_length, by re-deriving the moves from
/// the raw train triples on each step.
std::set<OracleRecord> BruteForceWalks(const BiLevelKG& kg, std::size_t max_length);

struct OracleConfidence {
  std::map<std::vector<std::uint32_t>, std::uint64_t> totals;
  std::map<std::pair<std::vector<std::uint32_t>, std::uint32_t>, std::uint64_t> support;  // support >= 1 only
};

OracleConfidence BruteForceConfidence(const BiLevelKG& kg, const std::set<OracleRecord>& records);

// ---- quaternion algebra ------------------------------------------------

/// p (x) q as the 4x4 left-multiplication matrix of p applied to q.
embed::Quaternion HamiltonMatrix(const embed::Quaternion& p, const embed::Quaternion& q);

double OracleScore(const std::vector<double>& h, const std::vector<double>& r, const std::vector<double>& t);

/// Dense per-plane W x with x the concatenation [h; r; t].
std::vector<double> OracleProject(const embed::Projection& w, const std::vector<double>& h,
                                  const std::vector<double>& r, const std::vector<double>& t);

std::vector<double> Row(const embed::EmbeddingTable& table, std::size_t i);

// ---- ranking -----------------------------------------------------------

/// Sorts the unfiltered scores and scans for the target's mid-rank.
double SortScanRank(const std::vector<double>& scores, std::size_t target, const std::vector<std::size_t>& filtered);

/// Direct recomputation of each harness: score every candidate with the
/// oracles above, build the filter from truth-set lookups, sort and scan.
/// Ranks come back in harness order.
std::vector<double> OracleTpRanks(const embed::ModelParams& params, const BiLevelKG& kg, Split split);
std::vector<double> OracleClpRanks(const embed::ModelParams& params, const BiLevelKG& kg, Split split,
                                   double lambda_high);
std::vector<double> OracleBlpRanks(const embed::ModelParams& params, const BiLevelKG& kg, Split split);

/// Parameters with every entry uniform in [-1, 1].
embed::ModelParams RandomParams(const embed::ModelShape& shape, std::mt19937_64& rng);

}  // namespace bilevel::testing

#endif  // BILEVEL_TESTS_TEST_SUPPORT_HPP_
