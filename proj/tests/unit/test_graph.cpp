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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "bilevel/errors.hpp"
#include "bilevel/graph.hpp"
#include "test_support.hpp"

using namespace bilevel;
using bilevel::testing::MakeKg;

namespace {

std::multiset<std::string> Lines(const std::string& text) {
  std::multiset<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (!l.empty()) out.insert(l);
  }
  return out;
}

}  // namespace

TEST_CASE("base line resolves to interned ids") {
  Vocabulary vocab;
  auto triples = ParseBaseTriples("Sweden\tContains\tStockholm\n", vocab);
  REQUIRE(triples.size() == 1);
  CHECK(vocab.entities.Label(triples[0].head) == "Sweden");
  CHECK(vocab.relations.Label(triples[0].relation) == "Contains");
  CHECK(vocab.entities.Label(triples[0].tail) == "Stockholm");
  CHECK(ParseBaseTriples("", vocab).empty());
}

TEST_CASE("duplicate lines survive parsing and collapse at build") {
  Vocabulary vocab;
  auto triples = ParseBaseTriples("a\tr\tb\na\tr\tb\nb\tr\tc\n", vocab);
  CHECK(triples.size() == 3);
  CHECK(std::set<BaseTriplet>(triples.begin(), triples.end()).size() == 2);

  std::vector<std::string> warnings;
  BaseSplits base{triples, {}, {}};
  auto kg = BuildGraph(vocab, base, {}, &warnings);
  CHECK(kg.base_split(Split::kTrain).size() == 2);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("(a, r, b)") != std::string::npos);
}

TEST_CASE("malformed lines report their line number") {
  Vocabulary vocab;
  try {
    ParseBaseTriples("a\tr\tb\nbroken line\n", vocab, "f.tsv");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("f.tsv:2") != std::string::npos);
    CHECK(e.kind() == "parse_error");
  }
  CHECK_THROWS_AS(ParseBaseTriples("a\t\tb\n", vocab), ParseError);
  CHECK_THROWS_AS(ParseBaseTriples("a\tr\tb\tc\n", vocab), ParseError);
}

TEST_CASE("higher line with an unknown side is an integrity error naming the line") {
  try {
    MakeKg("a\tr\tb\nb\tr\tc\n", "a\tr\tb\thr\tb\tr\tc\nx\tr\ty\thr\ta\tr\tb\n");
    FAIL("expected an integrity error");
  } catch (const IntegrityError& e) {
    CHECK(std::string(e.what()).find("higher_train:2") != std::string::npos);
    CHECK(e.kind() == "referential_integrity_error");
  }
}

TEST_CASE("higher triplet with the same triplet on both sides is kept") {
  auto kg = MakeKg("a\tr\tb\n", "a\tr\tb\tsame\ta\tr\tb\n");
  REQUIRE(kg.higher_split(Split::kTrain).size() == 1);
  const auto& h = kg.higher_split(Split::kTrain)[0];
  CHECK(h.lhs == h.rhs);
  CHECK(kg.Stats().num_involved_triplets == 1);
}

TEST_CASE("overlap between splits is rejected with the offending triples") {
  try {
    MakeKg("a\tr\tb\nb\tr\tc\n", "", "a\tr\tb\n");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(a, r, b) in train and valid") != std::string::npos);
  }
  CHECK_THROWS_AS(MakeKg("a\tr\tb\nb\tr\tc\n", "a\tr\tb\th\tb\tr\tc\n", "", "", "a\tr\tb\th\tb\tr\tc\n"),
                  ValidationError);
}

TEST_CASE("stats") {
  SUBCASE("empty graph is all zeros") { CHECK(MakeKg("").Stats() == StatsReport{}); }
  SUBCASE("two triples joined by one higher triplet") {
    auto s = MakeKg("a\tr\tb\nc\ts\td\n", "a\tr\tb\th\tc\ts\td\n").Stats();
    CHECK(s == StatsReport{4, 2, 2, 1, 1, 2});
  }
  SUBCASE("counts span all splits") {
    auto s = MakeKg("a\tr\tb\n", "a\tr\tb\th\tb\ts\tc\n", "b\ts\tc\n", "c\tt\td\n", "", "c\tt\td\tg\ta\tr\tb\n").Stats();
    CHECK(s == StatsReport{4, 3, 3, 2, 2, 3});
  }
}

TEST_CASE("interning follows first occurrence over train, valid, test") {
  auto kg = MakeKg("b\tr2\tc\n", "", "z\tr1\ta\n", "c\tr0\tb\n");
  CHECK(kg.vocab().entities.labels() == std::vector<std::string>{"b", "c", "z", "a"});
  CHECK(kg.vocab().relations.labels() == std::vector<std::string>{"r2", "r1", "r0"});
  // train ids come first
  CHECK(kg.in_train(TripletId(0u)));
  CHECK_FALSE(kg.in_train(TripletId(1u)));
  CHECK(kg.split_of(TripletId(2u)) == Split::kTest);
}

TEST_CASE("serialize round-trips the input sets") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto text = bilevel::testing::RandomSmallDataset(rng, 8, 4, 2);
    auto kg = ParseDataset(text);
    for (Split s : kAllSplits) {
      const auto idx = static_cast<std::size_t>(s);
      auto in_base = Lines(text.base[idx]);
      auto in_higher = Lines(text.higher[idx]);
      CHECK(Lines(kg.SerializeBase(s)) == in_base);
      CHECK(Lines(kg.SerializeHigher(s)) == in_higher);
    }
  }
}

TEST_CASE("every higher triplet resolves in all fixtures") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    auto kg = ParseDataset(bilevel::testing::RandomSmallDataset(rng, 8, 4, 2));
    for (Split s : kAllSplits) {
      for (const auto& h : kg.higher_split(s)) {
        CHECK(h.lhs.index() < kg.triplets().size());
        CHECK(h.rhs.index() < kg.triplets().size());
        CHECK(kg.known_base(kg.triplet(h.lhs)));
      }
    }
  }
}

TEST_CASE("indices") {
  auto kg = MakeKg("a\tr\tb\nb\tr\tc\nc\ts\ta\n", "a\tr\tb\th\tb\tr\tc\n", "a\ts\tc\n", "", "", "a\ts\tc\th\tc\ts\ta\n");
  const EntityId a = *kg.vocab().entities.Find("a");
  const EntityId b = *kg.vocab().entities.Find("b");
  auto out = kg.train_out_edges(a);
  REQUIRE(out.size() == 1);
  CHECK(out[0].second == b);
  // train triplets touching a: (a r b), (c s a)
  CHECK(kg.membership(a).size() == 2);
  CHECK(kg.higher_incidence(TripletId(0u)).size() == 1);
  CHECK(kg.higher_incidence(TripletId(2u)).empty());
  CHECK(kg.known_base(BaseTriplet{a, *kg.vocab().relations.Find("s"), *kg.vocab().entities.Find("c")}));
  CHECK_FALSE(kg.in_train(BaseTriplet{a, *kg.vocab().relations.Find("s"), *kg.vocab().entities.Find("c")}));
}

TEST_CASE("cross-split references are counted, not rejected") {
  auto kg = MakeKg("a\tr\tb\n", "", "b\tr\tc\n", "", "", "a\tr\tb\th\tb\tr\tc\n");
  auto report = kg.CrossSplit();
  CHECK(report.higher_with_non_train_side[2] == 1);
  CHECK(report.side_split_counts[2][0] == 1);
  CHECK(report.side_split_counts[2][1] == 1);
}

TEST_CASE("dataset directory loader") {
  const auto dir = std::filesystem::temp_directory_path() / "bilevel_graph_test";
  std::filesystem::create_directories(dir);
  auto write = [&](const char* name, const char* text) { std::ofstream(dir / name) << text; };
  write("base_train.tsv", "a\tr\tb\nb\tr\tc\n");
  write("base_valid.tsv", "");
  write("base_test.tsv", "c\tr\ta\n");
  write("higher_train.tsv", "a\tr\tb\th\tb\tr\tc\n");
  write("higher_valid.tsv", "");
  write("higher_test.tsv", "");
  auto kg = LoadDataset(DatasetPaths::FromDirectory(dir));
  CHECK(kg.Stats() == StatsReport{3, 1, 3, 1, 1, 2});
  std::filesystem::remove(dir / "base_valid.tsv");
  CHECK_THROWS_AS(LoadDataset(DatasetPaths::FromDirectory(dir)), IoError);
  std::filesystem::remove_all(dir);
}
