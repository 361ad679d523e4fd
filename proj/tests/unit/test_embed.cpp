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
#include <numbers>
#include <random>

#include "bilevel/checkpoint.hpp"
#include "bilevel/errors.hpp"
#include "bilevel/grad_check.hpp"
#include "bilevel/loss.hpp"
#include "bilevel/model.hpp"
#include "bilevel/optimizer.hpp"
#include "bilevel/presets.hpp"
#include "bilevel/quaternion.hpp"
#include "bilevel/sampling.hpp"
#include "bilevel/synthetic.hpp"
#include "bilevel/trainer.hpp"
#include "test_support.hpp"

using namespace bilevel;
using namespace bilevel::embed;
using bilevel::testing::MakeKg;
using bilevel::testing::Row;

namespace {

Quaternion RandomQuat(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(rng), u(rng), u(rng), u(rng)};
}

void CheckClose(const Quaternion& p, const Quaternion& q, double tol) {
  CHECK(std::abs(p.a - q.a) <= tol);
  CHECK(std::abs(p.b - q.b) <= tol);
  CHECK(std::abs(p.c - q.c) <= tol);
  CHECK(std::abs(p.d - q.d) <= tol);
}

std::vector<double> RandomVec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

const char* kSmallGraph =
    "a\tr\tb\nb\tr\tc\nc\ts\td\nd\ts\ta\na\tt\tc\nb\tt\td\n";
const char* kSmallHigher = "a\tr\tb\th\tb\tr\tc\nc\ts\td\tg\td\ts\ta\na\tt\tc\th\tb\tt\td\n";

}  // namespace

TEST_CASE("Hamilton product identities") {
  const Quaternion one{1, 0, 0, 0}, i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
  CHECK(Hamilton(i, j) == k);
  CHECK(Hamilton(j, k) == i);
  CHECK(Hamilton(k, i) == j);
  CHECK(Hamilton(j, i) == -1.0 * k);
  CHECK(Hamilton(i, i) == -1.0 * one);
  CHECK(Hamilton(Hamilton(i, j), k) == -1.0 * one);

  std::mt19937_64 rng(2);
  for (int n = 0; n < 200; ++n) {
    const auto p = RandomQuat(rng), q = RandomQuat(rng), s = RandomQuat(rng);
    CHECK(Hamilton(q, one) == q);
    CHECK(Hamilton(one, q) == q);
    CheckClose(Hamilton(p, q), bilevel::testing::HamiltonMatrix(p, q), 1e-12);
    CHECK(std::abs(Norm(Hamilton(p, q)) - Norm(p) * Norm(q)) <= 1e-12 * std::max(1.0, Norm(p) * Norm(q)));
    CheckClose(Hamilton(Hamilton(p, q), s), Hamilton(p, Hamilton(q, s)), 1e-12);
    CheckClose(Hamilton(p, q + s), Hamilton(p, q) + Hamilton(p, s), 1e-12);
  }
}

TEST_CASE("QuatE score") {
  std::mt19937_64 rng(3);
  SUBCASE("identity relation with h = t gives the squared norm") {
    auto h = RandomVec(8, rng);
    std::vector<double> r{1, 0, 0, 0, 1, 0, 0, 0};
    double sq = 0;
    for (double x : h) sq += x * x;
    CHECK(ScoreBase(h, r, h) == doctest::Approx(sq).epsilon(1e-14));
    CHECK(ScoreBase(h, r, h) >= 0.0);
  }
  SUBCASE("relation scaling is absorbed") {
    for (int n = 0; n < 100; ++n) {
      auto h = RandomVec(8, rng), r = RandomVec(8, rng), t = RandomVec(8, rng);
      const double s = std::exp(std::uniform_real_distribution<double>(-5, 5)(rng));
      auto r2 = r;
      for (double& x : r2) x *= s;
      CHECK(std::abs(ScoreBase(h, r2, t) - ScoreBase(h, r, t)) <= 1e-10);
    }
  }
  SUBCASE("zero relation component acts as the identity") {
    auto h = RandomVec(4, rng), t = RandomVec(4, rng);
    std::vector<double> zero(4, 0.0), ident{1, 0, 0, 0};
    const double f = ScoreBase(h, zero, t);
    CHECK(std::isfinite(f));
    CHECK(f == ScoreBase(h, ident, t));
  }
  SUBCASE("matches the matrix-form oracle") {
    for (int n = 0; n < 100; ++n) {
      auto h = RandomVec(8, rng), r = RandomVec(8, rng), t = RandomVec(8, rng);
      CHECK(std::abs(ScoreBase(h, r, t) - bilevel::testing::OracleScore(h, r, t)) <= 1e-12);
    }
  }
  SUBCASE("query vectors reproduce the score") {
    const Scorer& s = DefaultScorer();
    for (int n = 0; n < 50; ++n) {
      auto h = RandomVec(12, rng), r = RandomVec(12, rng), t = RandomVec(12, rng);
      std::vector<double> q(12);
      s.TailQuery(h, r, q);
      double dot = 0;
      for (int m = 0; m < 12; ++m) dot += q[m] * t[m];
      CHECK(std::abs(dot - s.Score(h, r, t)) <= 1e-12);
      s.HeadQuery(r, t, q);
      dot = 0;
      for (int m = 0; m < 12; ++m) dot += q[m] * h[m];
      CHECK(std::abs(dot - s.Score(h, r, t)) <= 1e-12);
    }
  }
}

TEST_CASE("triplet embedding") {
  std::mt19937_64 rng(4);
  auto h = RandomVec(8, rng), r = RandomVec(8, rng), t = RandomVec(8, rng);
  SUBCASE("zero projection") {
    Projection w(3, 6);
    std::vector<double> out(12, 1.0);
    ProjectTriplet(w, h, r, t, out);
    for (double x : out) CHECK(x == 0.0);
  }
  SUBCASE("head selector") {
    Projection w(2, 6);
    w.at(0, 0) = 1.0;
    w.at(1, 1) = 1.0;
    std::vector<double> out(8);
    ProjectTriplet(w, h, r, t, out);
    CHECK(out == h);
  }
  SUBCASE("dense oracle, d = 2 and d^ = 3") {
    for (int n = 0; n < 50; ++n) {
      Projection w(3, 6);
      for (double& x : w.data()) x = std::uniform_real_distribution<double>(-1, 1)(rng);
      std::vector<double> out(12);
      ProjectTriplet(w, h, r, t, out);
      const auto expected = bilevel::testing::OracleProject(w, h, r, t);
      for (std::size_t m = 0; m < out.size(); ++m) CHECK(std::abs(out[m] - expected[m]) <= 1e-12);
    }
  }
}

TEST_CASE("higher score") {
  auto kg = MakeKg(kSmallGraph, kSmallHigher);
  std::mt19937_64 rng(5);
  auto params = bilevel::testing::RandomParams({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 2, 3}, rng);
  const BaseTriplet ti = kg.triplet(TripletId(0u)), tj = kg.triplet(TripletId(1u));
  SUBCASE("random instance matches composed oracles") {
    const auto a = bilevel::testing::OracleProject(params.projection, Row(params.entities, ti.head.index()),
                                                   Row(params.relations, ti.relation.index()), Row(params.entities, ti.tail.index()));
    const auto b = bilevel::testing::OracleProject(params.projection, Row(params.entities, tj.head.index()),
                                                   Row(params.relations, tj.relation.index()), Row(params.entities, tj.tail.index()));
    const double expected = bilevel::testing::OracleScore(a, Row(params.higher_relations, 0), b);
    CHECK(std::abs(ScoreHigher(params, ti, HigherRelationId(0u), tj) - expected) <= 1e-12);
  }
  SUBCASE("zero projection scores zero") {
    for (double& x : params.projection.data()) x = 0.0;
    CHECK(ScoreHigher(params, ti, HigherRelationId(0u), tj) == 0.0);
  }
  SUBCASE("same triplet under an identity relation is non-negative") {
    auto rel = params.higher_relations.row(0);
    for (std::size_t c = 0; c < 3; ++c) {
      rel[4 * c] = 2.5;
      rel[4 * c + 1] = rel[4 * c + 2] = rel[4 * c + 3] = 0.0;
    }
    const auto te = TripletEmbedding(params, ti);
    double sq = 0;
    for (double x : te) sq += x * x;
    CHECK(ScoreHigher(params, ti, HigherRelationId(0u), ti) == doctest::Approx(sq).epsilon(1e-13));
  }
}

TEST_CASE("softplus") {
  CHECK(Softplus(0.0) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
  CHECK(std::abs(Softplus(100.0) - 100.0) <= 1e-12);
  CHECK(std::isfinite(Softplus(-40.0)));
  CHECK(Softplus(-40.0) >= 0.0);
  CHECK(Softplus(-40.0) == doctest::Approx(std::exp(-40.0)).epsilon(1e-10));
  CHECK(std::isfinite(Softplus(1e6)));
  CHECK(Sigmoid(0.0) == 0.5);
  CHECK(Sigmoid(-800.0) >= 0.0);
}

TEST_CASE("base negative sampling") {
  SUBCASE("single-entity graph falls back to the unfiltered corruption") {
    auto kg = MakeKg("a\tr\ta\n");
    Rng rng(1);
    CorruptionCounts counts;
    auto neg = SampleNegativesBase(kg, kg.triplet(TripletId(0u)), 3, rng, &counts);
    CHECK(neg.size() == 3);
    CHECK(counts.unfiltered == 3);
  }
  SUBCASE("filtered corruptions avoid train triples and the positive") {
    auto kg = MakeKg(kSmallGraph);
    Rng rng(2);
    for (TripletId id : kg.base_split(Split::kTrain)) {
      const auto pos = kg.triplet(id);
      for (const auto& n : SampleNegativesBase(kg, pos, 20, rng)) {
        CHECK(n != pos);
        CHECK_FALSE(kg.in_train(n));
        CHECK(n.relation == pos.relation);
        CHECK((n.head == pos.head || n.tail == pos.tail));
      }
    }
    CHECK_THROWS_AS(SampleNegativesBase(kg, kg.triplet(TripletId(0u)), 0, rng), ContractError);
  }
  SUBCASE("head and tail corruption are balanced") {
    std::string text;
    for (int e = 0; e < 100; ++e) text += "n" + std::to_string(e) + "\tr\tn" + std::to_string((e + 1) % 100) + "\n";
    auto kg = MakeKg(text);
    Rng rng(3);
    CorruptionCounts counts;
    const std::size_t draws = 100000;
    SampleNegativesBase(kg, kg.triplet(TripletId(0u)), draws, rng, &counts);
    const double sigma = std::sqrt(draws * 0.25);
    CHECK(std::abs(static_cast<double>(counts.lhs) - draws / 2.0) <= 3 * sigma);
    CHECK(counts.lhs + counts.rhs == draws);
  }
}

TEST_CASE("higher negative sampling") {
  auto kg = MakeKg(kSmallGraph, kSmallHigher, "", "b\ts\ta\n");
  Rng rng(4);
  CorruptionCounts counts;
  const std::size_t draws = 20000;
  for (const auto& pos : kg.higher_split(Split::kTrain)) {
    for (const auto& n : SampleNegativesHigher(kg, pos, draws, rng, &counts)) {
      CHECK(kg.in_train(n.lhs));
      CHECK(kg.in_train(n.rhs));
      CHECK(n != pos);
      CHECK_FALSE(kg.in_higher_train(n));
    }
  }
  const double total = 3.0 * draws, sigma = std::sqrt(total * 0.25);
  CHECK(std::abs(static_cast<double>(counts.lhs) - total / 2.0) <= 3 * sigma);
}

TEST_CASE("loss values") {
  auto kg = MakeKg(kSmallGraph, kSmallHigher);
  const ModelShape shape{kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 2, 2};
  auto params = ModelParams::Initialize(shape, 9);
  const auto universe = kg.triplets().triplets();
  std::vector<BaseTriplet> pos{kg.triplet(TripletId(0u)), kg.triplet(TripletId(1u))};
  Rng rng(5);
  std::vector<BaseTriplet> neg;
  for (const auto& p : pos) neg.push_back(SampleNegativesBase(kg, p, 1, rng)[0]);
  std::vector<HigherTriplet> hpos(kg.higher_split(Split::kTrain).begin(), kg.higher_split(Split::kTrain).end());
  std::vector<HigherTriplet> hneg;
  for (const auto& p : hpos) hneg.push_back(SampleNegativesHigher(kg, p, 1, rng)[0]);

  SUBCASE("all-zero scores") {
    auto zero = params;
    for (double& x : zero.entities.data()) x = 0.0;
    for (double& x : zero.projection.data()) x = 0.0;
    const LossOptions sep{LossVariant::kSeparate, 0.0}, joint{LossVariant::kJoint, 0.0};
    CHECK(BaseLoss(zero, pos, neg, sep).total() == doctest::Approx(2 * std::numbers::ln2).epsilon(1e-15));
    CHECK(BaseLoss(zero, pos, neg, joint).total() == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
    CHECK(HigherLoss(zero, universe, hpos, hneg, sep).total() == doctest::Approx(2 * std::numbers::ln2).epsilon(1e-15));
    CHECK(HigherLoss(zero, universe, hpos, hneg, joint).total() == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
  }
  SUBCASE("joint is half of separate with equal counts") {
    std::mt19937_64 g(6);
    for (int n = 0; n < 50; ++n) {
      auto p = bilevel::testing::RandomParams(shape, g);
      const LossOptions sep{LossVariant::kSeparate, 0.0}, joint{LossVariant::kJoint, 0.0};
      CHECK(BaseLoss(p, pos, neg, joint).data == BaseLoss(p, pos, neg, sep).data / 2);
      CHECK(HigherLoss(p, universe, hpos, hneg, joint).data == HigherLoss(p, universe, hpos, hneg, sep).data / 2);
      CHECK(BaseLoss(p, std::span(pos).first(1), std::span(neg).first(1), joint).data ==
            BaseLoss(p, std::span(pos).first(1), std::span(neg).first(1), sep).data / 2);
    }
  }
  SUBCASE("empty augmented set contributes nothing") {
    Gradients g;
    const auto v = BaseLoss(params, {}, {}, LossOptions{LossVariant::kSeparate, 0.5}, &g, 0.2);
    CHECK(v.total() == 0.0);
    CHECK(g.entities.empty());
    CHECK(g.relations.empty());
  }
  SUBCASE("regularization counts each touched row once") {
    const LossOptions with{LossVariant::kSeparate, 0.1}, without{LossVariant::kSeparate, 0.0};
    const double reg = BaseLoss(params, pos, pos, with).total() - BaseLoss(params, pos, pos, without).total();
    double sq = 0;
    for (std::uint32_t e : {0u, 1u, 2u}) {
      for (double x : params.entities.row(e)) sq += x * x;
    }
    for (double x : params.relations.row(0)) sq += x * x;
    CHECK(reg == doctest::Approx(0.1 * sq).epsilon(1e-12));
  }
}

TEST_CASE("total loss") {
  const LossParts parts{1.25, 3.5, 7.0};
  CHECK(TotalLoss(parts, 0.0, 0.0, {}) == 1.25);
  CHECK(TotalLoss(parts, 1.0, 0.2, {false, false}) == TotalLoss(parts, 0.0, 0.0, {}));
  CHECK(TotalLoss(parts, 1.0, 0.2, {}) == 1.25 + 3.5 + 0.2 * 7.0);
  CHECK(TotalLoss(parts, 1.0, 0.2, {true, false}) == 1.25 + 3.5);
}

TEST_CASE("gradient check on random small models") {
  auto kg = MakeKg(kSmallGraph, kSmallHigher);
  std::mt19937_64 g(8);
  Rng rng(9);
  for (int n = 0; n < 5; ++n) {
    auto params = bilevel::testing::RandomParams({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 2, 2}, g);
    GradCheckSample s;
    s.base_pos = {kg.triplet(TripletId(0u)), kg.triplet(TripletId(3u))};
    for (const auto& p : s.base_pos) {
      auto ns = SampleNegativesBase(kg, p, 2, rng);
      s.base_neg.insert(s.base_neg.end(), ns.begin(), ns.end());
    }
    s.high_pos = {kg.higher_split(Split::kTrain)[n % 3]};
    s.high_neg = SampleNegativesHigher(kg, s.high_pos[0], 2, rng);
    s.aug_pos = {BaseTriplet{EntityId(0u), RelationId(1u), EntityId(3u)}};
    s.aug_neg = SampleNegativesBase(kg, s.aug_pos[0], 3, rng);
    GradCheckOptions o;
    o.loss = {n % 2 ? LossVariant::kJoint : LossVariant::kSeparate, 0.05, true};
    o.lambda_high = 0.7;
    o.lambda_aug = 0.3;
    const auto report = GradCheck(params, kg.triplets().triplets(), s, o);
    INFO(report.Describe());
    CHECK(report.ok);
    CHECK(report.checked == params.entities.data().size() + params.relations.data().size() +
                                params.higher_relations.data().size() + params.projection.data().size());
  }
}

TEST_CASE("Adagrad step") {
  ModelParams p = ModelParams::Initialize({2, 1, 1, 1, 1}, 1);
  auto before = p;
  Gradients g;
  auto row = g.Entity(1, 4);
  row[0] = 2.0;
  row[2] = -0.5;
  Adagrad opt(0.1);
  opt.Apply(p, g);
  CHECK(p.entities.row(0)[0] == before.entities.row(0)[0]);
  CHECK(p.entities.row(1)[0] == doctest::Approx(before.entities.row(1)[0] - 0.1 * 2.0 / (2.0 + 1e-10)));
  CHECK(p.entities.row(1)[1] == before.entities.row(1)[1]);
  CHECK(p.accum.entities.row(1)[2] == 0.25);
  opt.Apply(p, g);
  CHECK(p.accum.entities.row(1)[0] == 8.0);
  CHECK(p.projection == before.projection);
}

TEST_CASE("fixed batch loss does not increase under small steps") {
  auto kg = MakeKg(kSmallGraph, kSmallHigher);
  auto params = ModelParams::Initialize({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 4, 4}, 3);
  Rng rng(2);
  GradCheckSample s;
  for (TripletId id : kg.base_split(Split::kTrain)) s.base_pos.push_back(kg.triplet(id));
  for (const auto& p : s.base_pos) s.base_neg.push_back(SampleNegativesBase(kg, p, 1, rng)[0]);
  s.high_pos.assign(kg.higher_split(Split::kTrain).begin(), kg.higher_split(Split::kTrain).end());
  for (const auto& p : s.high_pos) s.high_neg.push_back(SampleNegativesHigher(kg, p, 1, rng)[0]);
  GradCheckOptions o;
  o.loss = {LossVariant::kSeparate, 0.01, true};
  Adagrad opt(0.01);
  double prev = CombinedObjective(params, kg.triplets().triplets(), s, o);
  for (int step = 0; step < 10; ++step) {
    Gradients g;
    CombinedObjective(params, kg.triplets().triplets(), s, o, &g);
    opt.Apply(params, g);
    const double cur = CombinedObjective(params, kg.triplets().triplets(), s, o);
    CHECK(cur <= prev);
    prev = cur;
  }
}

TEST_CASE("training loop") {
  auto kg = ParseDataset(synthetic::Generate({.num_entities = 20,
                                              .implication_facts = 15,
                                              .implication_extra = 5,
                                              .equivalence_facts = 15,
                                              .filler_relations = 2,
                                              .filler_facts = 20}));
  TrainConfig c;
  c.dim = c.higher_dim = 4;
  c.epochs = 3;
  c.valid_every = 2;
  c.batch_size = 16;
  c.neg_ratio = 2;
  c.seed = 5;
  const std::vector<BaseTriplet> S{BaseTriplet{EntityId(0u), RelationId(0u), EntityId(1u)},
                                   BaseTriplet{EntityId(2u), RelationId(1u), EntityId(3u)}};

  SUBCASE("zero epochs returns the initialization") {
    c.epochs = 0;
    auto r = Train(kg, S, c);
    CHECK(r.params.SameParameters(ModelParams::Initialize(r.params.shape, c.seed)));
    CHECK(r.log.epochs.empty());
  }
  SUBCASE("fixed seed is bit-reproducible") {
    auto a = Train(kg, S, c), b = Train(kg, S, c);
    CHECK(a.params.SameParameters(b.params));
    CHECK(a.log.epochs.size() == 3);
    CHECK(a.log.validations.size() == 3);  // epochs 0, 2 and the last
    c.seed = 6;
    CHECK_FALSE(Train(kg, S, c).params.SameParameters(a.params));
  }
  SUBCASE("ablation switches match zero weights bit for bit") {
    c.valid_every = 0;
    auto off = c;
    off.use_aug = false;
    auto zero = c;
    zero.lambda_aug = 0.0;
    CHECK(Train(kg, S, off).params.SameParameters(Train(kg, S, zero).params));
    CHECK_FALSE(Train(kg, S, c).params.SameParameters(Train(kg, S, zero).params));
    off = c;
    off.use_high = false;
    zero = c;
    zero.lambda_high = 0.0;
    CHECK(Train(kg, S, off).params.SameParameters(Train(kg, S, zero).params));
  }
  SUBCASE("non-finite loss aborts naming the batch") {
    c.learning_rate = 1e300;
    c.epochs = 50;
    c.valid_every = 0;
    try {
      Train(kg, S, c);
      FAIL("expected a training error");
    } catch (const TrainingError& e) {
      CHECK(std::string(e.what()).find("batch") != std::string::npos);
    }
  }
  SUBCASE("invalid configs are rejected") {
    c.neg_ratio = 0;
    CHECK_THROWS_AS(Train(kg, S, c), ContractError);
    c.neg_ratio = 1;
    c.lambda_high = -1;
    CHECK_THROWS_AS(Train(kg, S, c), ContractError);
  }
}

TEST_CASE("checkpoint") {
  auto kg = MakeKg(kSmallGraph, kSmallHigher);
  std::mt19937_64 g(10);
  auto params = bilevel::testing::RandomParams({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 3, 2}, g);
  const auto blob = SerializeCheckpoint(params);
  CHECK(blob.substr(0, 8) == "BIVECKPT");
  CHECK(blob.size() == 8 + 8 * 6 + 8 + 5 + 8 + 8 * (params.entities.data().size() + params.relations.data().size() +
                                                     params.higher_relations.data().size() + params.projection.data().size()));
  auto back = ParseCheckpoint(blob);
  CHECK(back.SameParameters(params));
  CHECK(back.seed == params.seed);
  CHECK_NOTHROW(CheckShape(back, kg));

  CHECK_THROWS_AS(ParseCheckpoint(blob.substr(0, blob.size() - 1)), ParseError);
  CHECK_THROWS_AS(ParseCheckpoint(blob + "x"), ParseError);
  CHECK_THROWS_AS(ParseCheckpoint("NOTACKPT" + blob.substr(8)), ParseError);
  CHECK_THROWS_AS(ParseCheckpoint(SerializeCheckpoint(params, "bique")), ParseError);

  auto other = MakeKg("a\tr\tb\n");
  CHECK_THROWS_AS(CheckShape(back, other), ValidationError);

  const auto csv = EntityCsv(params);
  CHECK(csv.rfind("id,x0,x1,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(kg.num_entities() + 1));
  const auto tcsv = TripletCsv(params, kg);
  CHECK(std::count(tcsv.begin(), tcsv.end(), '\n') == static_cast<long>(kg.num_train_triplets() + 1));
  CHECK(tcsv.find(",x7\n") != std::string::npos);
}

TEST_CASE("presets carry the published hyperparameters") {
  struct Row4 {
    const char* name;
    double a, b, l1, l2;
  };
  const Row4 rows[] = {
      {"fbh-q-tp", 0.1, 0.01, 0.5, 1.0},  {"fbh-q-clp", 0.1, 0.01, 1.0, 0.2},  {"fbh-q-blp", 0.1, 0.05, 1.0, 0.2},
      {"fbhe-q-tp", 0.1, 0.01, 1.0, 0.2}, {"fbhe-q-clp", 0.1, 0.01, 1.0, 0.2}, {"fbhe-q-blp", 0.1, 0.05, 0.5, 0.2},
      {"dbhe-q-tp", 0.5, 0.05, 0.2, 1.0}, {"dbhe-q-clp", 0.5, 0.01, 1.0, 0.2}, {"dbhe-q-blp", 0.5, 0.1, 0.5, 0.2},
  };
  for (const auto& r : rows) {
    const Preset* p = FindPreset(r.name);
    REQUIRE(p != nullptr);
    const auto c = ApplyPreset(*p);
    CHECK(c.learning_rate == r.a);
    CHECK(c.reg_rate == r.b);
    CHECK(c.lambda_high == r.l1);
    CHECK(c.lambda_aug == r.l2);
    CHECK(c.epochs == 500);
    CHECK(c.valid_every == 50);
    CHECK(c.dim == 200);
    CHECK(c.higher_dim == 200);
    CHECK(c.use_high);
    CHECK(c.use_aug);
  }
  CHECK(ApplyPreset(*FindPreset("fbhe-q-clp")).valid_task == eval::Task::kConditionalLinkPrediction);
  CHECK_FALSE(ApplyPreset(*FindPreset("fbh-quate-tp")).use_high);
  CHECK(FindPreset("nope") == nullptr);
}
