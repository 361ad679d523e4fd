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


#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bilevel/aug_view.hpp"
#include "bilevel/confidence.hpp"
#include "bilevel/loss.hpp"
#include "bilevel/model.hpp"
#include "bilevel/ranking.hpp"
#include "bilevel/sampling.hpp"
#include "bilevel/synthetic.hpp"
#include "bilevel/tasks.hpp"
#include "bilevel/trainer.hpp"
#include "bilevel/walk.hpp"

using namespace bilevel;
using namespace bilevel::embed;

namespace {

const BiLevelKG& Synthetic() {
  static const BiLevelKG kg = ParseDataset(synthetic::Generate());
  return kg;
}

std::vector<double> RandomVec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

void BM_ScoreBase(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const auto h = RandomVec(4 * dim, rng), r = RandomVec(4 * dim, rng), t = RandomVec(4 * dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ScoreBase(h, r, t));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ScoreBase)->Arg(16)->Arg(200);

void BM_ProjectTriplet(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  const auto h = RandomVec(4 * dim, rng), r = RandomVec(4 * dim, rng), t = RandomVec(4 * dim, rng);
  Projection w(dim, 3 * dim);
  for (double& x : w.data()) x = std::uniform_real_distribution<double>(-1, 1)(rng);
  std::vector<double> out(4 * dim);
  for (auto _ : state) {
    ProjectTriplet(w, h, r, t, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_ProjectTriplet)->Arg(16)->Arg(200);

void BM_HigherLossBatch(benchmark::State& state) {
  const auto& kg = Synthetic();
  const auto dim = static_cast<std::size_t>(state.range(0));
  auto params = ModelParams::Initialize({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), dim, dim}, 1);
  std::vector<HigherTriplet> pos(kg.higher_split(Split::kTrain).begin(), kg.higher_split(Split::kTrain).end());
  Rng rng(3);
  std::vector<HigherTriplet> neg;
  for (const auto& p : pos) {
    for (const auto& n : SampleNegativesHigher(kg, p, 10, rng)) neg.push_back(n);
  }
  for (auto _ : state) {
    Gradients g;
    benchmark::DoNotOptimize(HigherLoss(params, kg.triplets().triplets(), pos, neg, {LossVariant::kSeparate, 0.01}, &g));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pos.size() + neg.size()));
}
BENCHMARK(BM_HigherLossBatch)->Arg(16)->Arg(64);

void BM_SampleWalk(benchmark::State& state) {
  const auto& kg = Synthetic();
  const AugView view(kg);
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(augment::SampleWalk(view, 3, rng));
}
BENCHMARK(BM_SampleWalk);

void BM_RunWalksAndMine(benchmark::State& state) {
  const auto& kg = Synthetic();
  const AugView view(kg);
  const auto attempts = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    const auto walks = augment::RunWalks(view, {3, attempts, 5, static_cast<std::size_t>(state.range(1))});
    const auto table = augment::BuildConfidenceTable(walks, kg);
    benchmark::DoNotOptimize(augment::MineAugmented(table, walks, kg, 0.7));
  }
}
BENCHMARK(BM_RunWalksAndMine)->Args({20000, 1})->Args({20000, 4})->Unit(benchmark::kMillisecond);

void BM_FilteredRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(6);
  const auto scores = RandomVec(n, rng);
  std::vector<std::size_t> filter;
  for (std::size_t i = 1; i < n; i += 17) filter.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(eval::FilteredRank(scores, 0, filter));
}
BENCHMARK(BM_FilteredRank)->Arg(1000)->Arg(15000);

void BM_Evaluate(benchmark::State& state) {
  const auto& kg = Synthetic();
  const auto params = ModelParams::Initialize({kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), 16, 16}, 1);
  const auto task = static_cast<eval::Task>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eval::Evaluate(task, params, kg, Split::kTest, {1.0, 1}));
  state.SetLabel(std::string(eval::TaskName(task)));
}
BENCHMARK(BM_Evaluate)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_TrainEpoch(benchmark::State& state) {
  const auto& kg = Synthetic();
  TrainConfig c;
  c.dim = c.higher_dim = static_cast<std::size_t>(state.range(0));
  c.epochs = 1;
  c.valid_every = 0;
  c.batch_size = 128;
  c.use_aug = false;
  for (auto _ : state) benchmark::DoNotOptimize(Train(kg, {}, c));
}
BENCHMARK(BM_TrainEpoch)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
