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


#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "bilevel/errors.hpp"
#include "bilevel/quaternion.hpp"
#include "bilevel/ranking.hpp"
#include "bilevel/tasks.hpp"
#include "test_support.hpp"

using namespace bilevel;
using namespace bilevel::eval;
using bilevel::testing::MakeKg;

namespace {

// Random graph whose higher triples are spread over all three splits.
BiLevelKG RandomEvalKg(std::mt19937_64& rng) {
  for (;;) {
    auto text = bilevel::testing::RandomSmallDataset(rng, 8, 3, 2);
    std::istringstream all(text.higher[0] + text.higher[1]);
    text.higher = {};
    std::string line;
    while (std::getline(all, line)) text.higher[rng() % 3] += line + "\n";
    try {
      return ParseDataset(text);
    } catch (const ValidationError&) {
      // the same line landed in two splits of the base text; redraw
    }
  }
}

std::vector<double> Ranks(const RankReport& r) {
  std::vector<double> out;
  for (const auto& q : r.queries) out.push_back(q.rank);
  return out;
}

embed::Quaternion UnitQuat(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return embed::Normalize({n(rng), n(rng), n(rng), n(rng)});
}

void SetQuat(std::span<double> row, const embed::Quaternion& q) {
  row[0] = q.a;
  row[1] = q.b;
  row[2] = q.c;
  row[3] = q.d;
}

}  // namespace

TEST_CASE("filtered mid-rank") {
  const std::vector<double> s{3, 1, 2};
  CHECK(FilteredRank(s, 0, {}) == 1.0);
  CHECK(FilteredRank(s, 1, {}) == 3.0);
  const std::vector<double> ties{1, 1, 1, 1};
  CHECK(FilteredRank(ties, 2, {}) == 2.5);
  const std::vector<double> d{5, 4, 3};
  const std::vector<std::size_t> f{0, 0};
  CHECK(FilteredRank(d, 2, f) == 2.0);
  const std::vector<std::size_t> self{2};
  CHECK_THROWS_AS(FilteredRank(d, 2, self), ContractError);
  CHECK_THROWS_AS(FilteredRank(d, 3, {}), ContractError);
}

TEST_CASE("metric aggregation") {
  const std::vector<double> ranks{1, 2, 20};
  const auto m = Aggregate(ranks);
  CHECK(m.mean_rank == doctest::Approx(23.0 / 3));
  CHECK(m.mean_reciprocal_rank == doctest::Approx((1 + 0.5 + 0.05) / 3));
  CHECK(m.hits_at_10 == doctest::Approx(2.0 / 3));
  CHECK(m.count == 3);
  const std::vector<double> edge{10.0, 10.5};
  CHECK(Aggregate(edge).hits_at_10 == 0.5);
  CHECK_THROWS_AS(Aggregate(std::vector<double>{}), ContractError);
}

TEST_CASE("filtered rank agrees with sort and scan") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 2000; ++n) {
    const std::size_t size = 1 + rng() % 30;
    std::vector<double> scores(size);
    for (double& x : scores) x = static_cast<double>(rng() % 6);  // frequent ties
    const std::size_t target = rng() % size;
    std::vector<std::size_t> filter;
    for (std::size_t i = 0; i < size; ++i) {
      if (i != target && rng() % 3 == 0) filter.push_back(i);
    }
    if (!filter.empty() && rng() % 2) filter.push_back(filter.front());
    const double r = FilteredRank(scores, target, filter);
    CHECK(r == bilevel::testing::SortScanRank(scores, target, filter));

    auto shifted = scores;
    for (double& x : shifted) x += 7.0;
    CHECK(FilteredRank(shifted, target, filter) == r);
    auto raised = scores;
    raised[target] += 1.0;
    CHECK(FilteredRank(raised, target, filter) <= r);
  }
}

TEST_CASE("TP with a zero projection ranks at the middle") {
  auto kg = MakeKg("a\tr\tb\nb\tr\tc\nc\tr\td\nd\tr\te\ne\tr\ta\n", "", "", "", "",
                   "a\tr\tb\th\tc\tr\td\n");
  auto params = embed::ModelParams::Initialize({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 2, 2}, 1);
  for (double& x : params.projection.data()) x = 0.0;
  const auto report = EvalTripletPrediction(params, kg, Split::kTest);
  REQUIRE(report.queries.size() == 2);
  for (const auto& q : report.queries) CHECK(q.rank == 3.0);  // (5 + 1) / 2
  CHECK(report.num_candidates == 5);
}

TEST_CASE("TP recovers a planted rotation") {
  auto kg = MakeKg("x0\tr\ty0\nx1\tr\ty1\nx2\tr\ty2\nx3\tr\ty3\nx0\ts\ty2\n", "", "", "", "",
                   "x0\tr\ty0\th\tx3\tr\ty3\n");
  std::mt19937_64 rng(12);
  auto params = bilevel::testing::RandomParams({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 1, 1}, rng);
  for (double& x : params.projection.data()) x = 0.0;
  params.projection.at(0, 2) = 1.0;  // T = t
  std::vector<embed::Quaternion> q(kg.num_entities());
  for (std::size_t e = 0; e < q.size(); ++e) {
    q[e] = UnitQuat(rng);
    SetQuat(params.entities.row(e), q[e]);
  }
  const auto y0 = kg.vocab().entities.Find("y0")->index(), y3 = kg.vocab().entities.Find("y3")->index();
  SetQuat(params.higher_relations.row(0), embed::Hamilton(embed::Conjugate(q[y0]), q[y3]));
  const auto report = EvalTripletPrediction(params, kg, Split::kTest);
  REQUIRE(report.queries.size() == 2);
  CHECK(report.metrics.mean_reciprocal_rank == 1.0);
  CHECK(report.metrics.hits_at_10 == 1.0);
}

TEST_CASE("TP skips gold triplets outside train") {
  auto kg = MakeKg("a\tr\tb\nb\tr\tc\n", "", "", "c\tr\ta\n", "", "a\tr\tb\th\tc\tr\ta\n");
  auto params = embed::ModelParams::Initialize({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 1, 1}, 1);
  const auto report = EvalTripletPrediction(params, kg, Split::kTest);
  CHECK(report.queries.size() == 1);
  CHECK(report.skipped == 1);
  CHECK(report.queries[0].form == QueryForm::kHead);
}

TEST_CASE("CLP with lambda zero ignores the higher level") {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 10; ++n) {
    auto kg = RandomEvalKg(rng);
    auto params = bilevel::testing::RandomParams({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 2, 2}, rng);
    auto other = params;
    for (double& x : other.projection.data()) x = -x;
    for (double& x : other.higher_relations.data()) x = 2 * x + 1;
    const EvalOptions opts{0.0, 1};
    CHECK(Ranks(EvalConditionalLinkPrediction(params, kg, Split::kTest, opts)) ==
          Ranks(EvalConditionalLinkPrediction(other, kg, Split::kTest, opts)));
  }
}

TEST_CASE("CLP answers depend on the condition") {
  auto kg = MakeKg("a\tr\tb\nc\tr\tb\na\tr\td\nc\tr\td\ne\tr\tf\n", "", "", "", "",
                   "a\tr\tb\tsame\tc\tr\tb\na\tr\td\tsame\tc\tr\td\n");
  std::mt19937_64 rng(14);
  auto params = bilevel::testing::RandomParams({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 1, 1}, rng);
  for (double& x : params.projection.data()) x = 0.0;
  params.projection.at(0, 2) = 1.0;
  for (std::size_t e = 0; e < kg.num_entities(); ++e) SetQuat(params.entities.row(e), UnitQuat(rng));
  SetQuat(params.higher_relations.row(0), {1, 0, 0, 0});
  const auto report = EvalConditionalLinkPrediction(params, kg, Split::kTest, {1000.0, 1});
  REQUIRE(report.queries.size() == 8);
  std::size_t checked = 0;
  for (const auto& q : report.queries) {
    if (q.form == QueryForm::kRhsTail || q.form == QueryForm::kLhsTail) {
      CHECK(q.rank == 1.0);
      ++checked;
    }
  }
  CHECK(checked == 4);
}

TEST_CASE("BLP filtering removes known answers") {
  auto kg = MakeKg("a\tr\tb\na\tr\tc\nb\tr\tc\ne\ts\tf\n", "", "", "a\tr\td\n");
  auto params = embed::ModelParams::Initialize({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 1, 1}, 1);
  for (double& x : params.entities.data()) x = 0.0;
  const auto report = EvalBaseLinkPrediction(params, kg, Split::kTest);
  REQUIRE(report.queries.size() == 2);
  CHECK(report.queries[0].form == QueryForm::kTail);
  CHECK(report.queries[0].rank == 1.0 + (6 - 1 - 2) / 2.0);  // b and c filtered
  CHECK(report.queries[1].rank == 1.0 + (6 - 1) / 2.0);
  CHECK(report.num_candidates == 6);
}

TEST_CASE("harness ranks match the brute-force oracles") {
  std::mt19937_64 rng(15);
  std::size_t queries = 0;
  for (int n = 0; n < 40; ++n) {
    auto kg = RandomEvalKg(rng);
    auto params = bilevel::testing::RandomParams(
        {kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), static_cast<std::size_t>(1 + n % 2), static_cast<std::size_t>(1 + n % 3)}, rng);
    for (Split split : {Split::kValid, Split::kTest}) {
      const auto tp = EvalTripletPrediction(params, kg, split);
      const auto clp = EvalConditionalLinkPrediction(params, kg, split, {0.7, 1});
      const auto blp = EvalBaseLinkPrediction(params, kg, split);
      CHECK(Ranks(tp) == bilevel::testing::OracleTpRanks(params, kg, split));
      CHECK(Ranks(clp) == bilevel::testing::OracleClpRanks(params, kg, split, 0.7));
      CHECK(Ranks(blp) == bilevel::testing::OracleBlpRanks(params, kg, split));

      const std::size_t nh = kg.higher_split(split).size();
      CHECK(tp.queries.size() + tp.skipped == 2 * nh);
      CHECK(clp.queries.size() == 4 * nh);
      CHECK(blp.queries.size() == 2 * kg.base_split(split).size());
      queries += tp.queries.size() + clp.queries.size() + blp.queries.size();

      for (std::size_t workers : {2u, 5u}) {
        CHECK(Ranks(EvalConditionalLinkPrediction(params, kg, split, {0.7, workers})) == Ranks(clp));
        CHECK(Ranks(EvalTripletPrediction(params, kg, split, {1.0, workers})) == Ranks(tp));
        CHECK(Ranks(EvalBaseLinkPrediction(params, kg, split, {1.0, workers})) == Ranks(blp));
      }
    }
  }
  CHECK(queries > 200);
}

TEST_CASE("per-relation breakdown") {
  auto kg = MakeKg("a\tr\tb\nb\tr\tc\nc\tr\ta\n", "", "", "", "",
                   "a\tr\tb\tp\tb\tr\tc\nb\tr\tc\tp\tc\tr\ta\nc\tr\ta\tq\ta\tr\tb\n");
  auto params = embed::ModelParams::Initialize({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 2, 2}, 3);
  const auto report = EvalConditionalLinkPrediction(params, kg, Split::kTest);
  const auto rows = PerRelationBreakdown(report, kg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].frequency == 2);
  CHECK(rows[1].frequency == 1);
  CHECK(rows[0].metrics.count == 8);
  CHECK(rows[1].metrics.count == 4);
  CHECK_THROWS_AS(PerRelationBreakdown(EvalBaseLinkPrediction(params, kg, Split::kTest), kg), ContractError);
}

TEST_CASE("empty splits give zero metrics") {
  auto kg = MakeKg("a\tr\tb\n");
  auto params = embed::ModelParams::Initialize({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 1, 1}, 1);
  const auto report = Evaluate(Task::kTripletPrediction, params, kg, Split::kTest);
  CHECK(report.queries.empty());
  CHECK(report.metrics.count == 0);
  CHECK(ParseTask("clp") == Task::kConditionalLinkPrediction);
  CHECK_FALSE(ParseTask("xyz").has_value());
  CHECK(TaskName(Task::kBaseLinkPrediction) == "blp");
}
