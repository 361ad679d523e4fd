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


#ifndef BILEVEL_TASKS_HPP_
#define BILEVEL_TASKS_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "bilevel/graph.hpp"
#include "bilevel/model.hpp"
#include "bilevel/ranking.hpp"

namespace bilevel::eval {

enum class Task { kTripletPrediction, kConditionalLinkPrediction, kBaseLinkPrediction };

std::string_view TaskName(Task task);  // "tp", "clp", "blp"
std::optional<Task> ParseTask(std::string_view name);

/// Which slot of the query is missing.
enum class QueryForm : std::uint8_t {
  kTail,     // TP <Ti, r^, ?>;   BLP (h, r, ?)
  kHead,     // TP <?, r^, Tj>;   BLP (?, r, t)
  kRhsTail,  // CLP <Ti, r^, (hj, rj, ?)>
  kRhsHead,  // CLP <Ti, r^, (?, rj, tj)>
  kLhsTail,  // CLP <(hi, ri, ?), r^, Tj>
  kLhsHead,  // CLP <(?, ri, ti), r^, Tj>
};

std::string_view QueryFormName(QueryForm form);

struct QueryResult {
  QueryForm form;
  std::uint32_t source;  // index into the evaluated split
  std::optional<HigherRelationId> relation;
  double rank = 0.0;
};

struct RankReport {
  Task task = Task::kTripletPrediction;
  Split split = Split::kTest;
  std::vector<QueryResult> queries;
  Metrics metrics;          // all-zero when no query was ranked
  std::size_t skipped = 0;  // TP queries whose gold triplet is not a train triplet
  std::size_t num_candidates = 0;
};

struct EvalOptions {
  double lambda_high = 1.0;  // weight of the higher-level term in CLP scoring
  std::size_t workers = 1;
};

/// Ranks every train base triplet X by f(Ti, r^, X) (resp. f(X, r^, Tj)),
/// filtering other X with a known higher triplet in any split.
RankReport EvalTripletPrediction(const embed::ModelParams& params, const BiLevelKG& kg, Split split,
                                 const EvalOptions& options = {});

/// Ranks every entity x by f(hj, rj, x) + lambda1 f(Ti, r^, W[hj; rj; x]) and
/// the three other slot positions.
RankReport EvalConditionalLinkPrediction(const embed::ModelParams& params, const BiLevelKG& kg,
                                         Split split, const EvalOptions& options = {});

/// Standard filtered head/tail entity ranking over base triplets.
RankReport EvalBaseLinkPrediction(const embed::ModelParams& params, const BiLevelKG& kg, Split split,
                                  const EvalOptions& options = {});

RankReport Evaluate(Task task, const embed::ModelParams& params, const BiLevelKG& kg, Split split,
                    const EvalOptions& options = {});

struct RelationBreakdownRow {
  HigherRelationId relation;
  std::size_t frequency = 0;  // higher triplets of the split with this relation
  Metrics metrics;
};

/// TP/CLP metrics grouped by the query's higher relation. Relations with no
/// ranked query keep zero metrics.
std::vector<RelationBreakdownRow> PerRelationBreakdown(const RankReport& report, const BiLevelKG& kg);

}  // namespace bilevel::eval

#endif  // BILEVEL_TASKS_HPP_
