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


#include "commands.hpp"

#include <cstdio>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "bilevel/aug_view.hpp"
#include "bilevel/checkpoint.hpp"
#include "bilevel/confidence.hpp"
#include "bilevel/errors.hpp"
#include "bilevel/walk.hpp"
#include "io.hpp"

#ifndef BIVE_VERSION
#define BIVE_VERSION "unknown"
#endif

namespace bive {

using namespace bilevel;
using namespace bilevel::embed;

namespace {

constexpr const char* kSplitNames[] = {"train", "valid", "test"};

void Log(const std::string& line) { std::fprintf(stderr, "%s\n", line.c_str()); }

std::string Json(const json& j) { return j.dump(2) + "\n"; }

BiLevelKG LoadGraph(const RunConfig& c) {
  for (const auto& p : c.dataset.base) {
    if (p.empty()) throw IoError("no dataset configured (set dataset.dir or the six dataset paths)");
  }
  std::vector<std::string> warnings;
  BiLevelKG kg = LoadDataset(c.dataset, &warnings);
  for (const auto& w : warnings) Log("warning: " + w);
  return kg;
}

json DatasetHashes(const RunConfig& c) {
  json out = json::object();
  for (std::size_t s = 0; s < 3; ++s) {
    out[std::string("base_") + kSplitNames[s]] = Sha256File(c.dataset.base[s]);
    out[std::string("higher_") + kSplitNames[s]] = Sha256File(c.dataset.higher[s]);
  }
  return out;
}

void WriteManifest(const RunConfig& c, const std::string& command, const std::vector<std::string>& outputs,
                   json inputs = json::object()) {
  json m{{"command", command},
         {"version", BIVE_VERSION},
         {"config", c.resolved},
         {"seeds", {{"run", c.seed}, {"augment", c.augment.seed}, {"train", c.train.seed}}},
         {"dataset_sha256", DatasetHashes(c)},
         {"inputs_sha256", std::move(inputs)},
         {"outputs", outputs}};
  WriteFileAtomic(c.output_dir / ("manifest_" + command + ".json"), Json(m));
}

json MetricsJson(const eval::Metrics& m) {
  return {{"mr", m.mean_rank}, {"mrr", m.mean_reciprocal_rank}, {"hits_at_10", m.hits_at_10}, {"count", m.count}};
}

std::vector<BaseTriplet> LoadAugmented(const fs::path& path, const BiLevelKG& kg) {
  const std::string text = ReadFile(path);
  const auto& v = kg.vocab();
  std::vector<BaseTriplet> out;
  std::size_t line_no = 0, start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto t1 = line.find('\t'), t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw ParseError(fmt::format("{}:{}: expected 3 tab-separated fields", path.string(), line_no));
    }
    const auto h = v.entities.Find(line.substr(0, t1));
    const auto r = v.relations.Find(line.substr(t1 + 1, t2 - t1 - 1));
    const auto t = v.entities.Find(line.substr(t2 + 1));
    if (!h || !r || !t) {
      throw ValidationError(fmt::format("{}:{}: label not present in the dataset", path.string(), line_no));
    }
    out.push_back({*h, *r, *t});
  }
  return out;
}

embed::ModelParams LoadCheckpoint(const fs::path& path, const BiLevelKG& kg) {
  auto params = ParseCheckpoint(ReadFile(path));
  CheckShape(params, kg);
  return params;
}

}  // namespace

int CmdStats(const RunConfig& c) {
  EnsureWritableDir(c.output_dir);
  const BiLevelKG kg = LoadGraph(c);
  const StatsReport s = kg.Stats();
  const json stats{{"V", s.num_entities},          {"R", s.num_relations},       {"E", s.num_triplets},
                   {"R_hat", s.num_higher_relations}, {"H", s.num_higher_triplets}, {"E_hat", s.num_involved_triplets}};
  const CrossSplitReport x = kg.CrossSplit();
  json cross = json::object();
  for (std::size_t h = 0; h < 3; ++h) {
    json sides = json::object();
    for (std::size_t b = 0; b < 3; ++b) sides[kSplitNames[b]] = x.side_split_counts[h][b];
    cross[kSplitNames[h]] = {{"higher_with_non_train_side", x.higher_with_non_train_side[h]},
                             {"side_split_counts", sides}};
  }
  WriteFileAtomic(c.output_dir / "stats.json", Json(stats));
  WriteFileAtomic(c.output_dir / "stats_cross_split.json", Json(cross));
  WriteManifest(c, "stats", {"stats.json", "stats_cross_split.json"});
  std::printf("%s", Json(stats).c_str());
  return 0;
}

int CmdAugment(const RunConfig& c) {
  EnsureWritableDir(c.output_dir);
  const BiLevelKG kg = LoadGraph(c);
  const AugView view(kg);
  const augment::WalkSet walks =
      augment::RunWalks(view, {c.augment.max_length, c.augment.attempts, c.augment.seed, c.augment.workers});
  const auto table = augment::BuildConfidenceTable(walks, kg);
  const auto S = augment::MineAugmented(table, walks, kg, c.augment.tau);
  const auto report = augment::MakeAugmentReport(table, S, kg, c.augment.tau);

  const auto& v = kg.vocab();
  std::string tsv;
  for (const auto& t : S) {
    tsv += fmt::format("{}\t{}\t{}\n", v.entities.Label(t.head), v.relations.Label(t.relation), v.entities.Label(t.tail));
  }
  const json rep{{"walk_records", walks.size()},
                 {"relation_sequences", walks.num_paths()},
                 {"unique_pairs", report.unique_pairs},
                 {"pairs_above_tau", report.pairs_above_tau},
                 {"augmented", report.augmented},
                 {"valid_test_overlap", report.valid_test_overlap}};
  WriteFileAtomic(c.output_dir / "augmented.tsv", tsv);
  WriteFileAtomic(c.output_dir / "augment_report.json", Json(rep));
  WriteFileAtomic(c.output_dir / "confidence.tsv", augment::FormatConfidenceTable(table, walks, v));
  WriteManifest(c, "augment", {"augmented.tsv", "augment_report.json", "confidence.tsv"});
  std::printf("%s", Json(rep).c_str());
  return 0;
}

int CmdTrain(const RunConfig& c) {
  EnsureWritableDir(c.output_dir);
  const BiLevelKG kg = LoadGraph(c);
  std::vector<BaseTriplet> S;
  json inputs = json::object();
  if (c.train.use_aug && c.train.lambda_aug != 0.0) {
    if (!fs::exists(c.augmented)) {
      throw IoError("augmented set " + c.augmented.string() + " not found (run augment first, or set train.use_aug=false)");
    }
    S = LoadAugmented(c.augmented, kg);
    inputs["augmented"] = Sha256File(c.augmented);
  }

  embed::TrainHooks hooks;
  hooks.on_epoch = [&](const embed::EpochLog& e) {
    if (e.epoch == 1 || e.epoch % 10 == 0 || e.epoch == c.train.epochs) {
      Log(fmt::format("epoch {:>4}  loss {:.5f} (base {:.5f} high {:.5f} aug {:.5f})", e.epoch, e.total, e.base, e.high,
                      e.aug));
    }
  };
  hooks.on_validation = [&](const embed::ValidationLog& v) {
    Log(fmt::format("epoch {:>4}  valid {} MRR {:.4f} Hit@10 {:.4f} MR {:.2f}", v.epoch,
                    eval::TaskName(c.train.valid_task), v.metrics.mean_reciprocal_rank, v.metrics.hits_at_10,
                    v.metrics.mean_rank));
  };
  const auto result = embed::Train(kg, S, c.train, hooks);

  json epochs = json::array(), validations = json::array();
  for (const auto& e : result.log.epochs) {
    epochs.push_back({{"epoch", e.epoch}, {"base", e.base}, {"high", e.high}, {"aug", e.aug}, {"total", e.total}});
  }
  for (const auto& v : result.log.validations) {
    json row = MetricsJson(v.metrics);
    row["epoch"] = v.epoch;
    validations.push_back(row);
  }
  const json log{{"augmented_triplets", S.size()},
                 {"valid_task", eval::TaskName(c.train.valid_task)},
                 {"best_epoch", result.log.best_epoch},
                 {"best_mrr", result.log.best_mrr},
                 {"epochs", epochs},
                 {"validations", validations}};
  WriteFileAtomic(c.output_dir / "checkpoint.bin", SerializeCheckpoint(result.params));
  WriteFileAtomic(c.output_dir / "train_log.json", Json(log));
  WriteManifest(c, "train", {"checkpoint.bin", "train_log.json"}, inputs);
  Log(fmt::format("best epoch {} (valid MRR {:.4f})", result.log.best_epoch, result.log.best_mrr));
  return 0;
}

int CmdEval(const RunConfig& c) {
  EnsureWritableDir(c.output_dir);
  const BiLevelKG kg = LoadGraph(c);
  const auto params = LoadCheckpoint(c.eval.checkpoint, kg);
  const std::string split = kSplitNames[static_cast<std::size_t>(c.eval.split)];
  std::vector<std::string> outputs;
  json summary = json::object();
  for (eval::Task task : c.eval.tasks) {
    const auto report = eval::Evaluate(task, params, kg, c.eval.split, {c.eval.lambda_high, c.eval.workers});
    const std::string stem = fmt::format("eval_{}_{}", eval::TaskName(task), split);

    json queries = json::array();
    for (const auto& q : report.queries) {
      json row{{"form", eval::QueryFormName(q.form)}, {"source", q.source}, {"rank", q.rank}};
      row["relation"] = q.relation ? json(kg.vocab().higher_relations.Label(*q.relation)) : json(nullptr);
      queries.push_back(std::move(row));
    }
    const json out{{"task", eval::TaskName(task)},
                   {"split", split},
                   {"metrics", MetricsJson(report.metrics)},
                   {"skipped", report.skipped},
                   {"num_candidates", report.num_candidates},
                   {"queries", queries}};
    WriteFileAtomic(c.output_dir / (stem + ".json"), Json(out));
    outputs.push_back(stem + ".json");
    summary[std::string(eval::TaskName(task))] = MetricsJson(report.metrics);

    if (task != eval::Task::kBaseLinkPrediction) {
      std::string csv = "relation,frequency,count,mr,mrr,hits_at_10\n";
      for (const auto& row : eval::PerRelationBreakdown(report, kg)) {
        csv += fmt::format("{},{},{},{:.17g},{:.17g},{:.17g}\n", kg.vocab().higher_relations.Label(row.relation),
                           row.frequency, row.metrics.count, row.metrics.mean_rank,
                           row.metrics.mean_reciprocal_rank, row.metrics.hits_at_10);
      }
      WriteFileAtomic(c.output_dir / (stem + "_relations.csv"), csv);
      outputs.push_back(stem + "_relations.csv");
    }
  }
  WriteManifest(c, "eval", outputs, {{"checkpoint", Sha256File(c.eval.checkpoint)}});
  std::printf("%s", Json(summary).c_str());
  return 0;
}

int CmdExport(const RunConfig& c) {
  EnsureWritableDir(c.output_dir);
  const BiLevelKG kg = LoadGraph(c);
  const auto params = LoadCheckpoint(c.eval.checkpoint, kg);
  std::string labels = "id\tlabel\n";
  for (std::size_t e = 0; e < kg.num_entities(); ++e) {
    labels += fmt::format("{}\t{}\n", e, kg.vocab().entities.Label(EntityId(e)));
  }
  WriteFileAtomic(c.output_dir / "entity_embeddings.csv", EntityCsv(params));
  WriteFileAtomic(c.output_dir / "triplet_embeddings.csv", TripletCsv(params, kg));
  WriteFileAtomic(c.output_dir / "entity_labels.tsv", labels);
  WriteManifest(c, "export", {"entity_embeddings.csv", "triplet_embeddings.csv", "entity_labels.tsv"},
                {{"checkpoint", Sha256File(c.eval.checkpoint)}});
  return 0;
}

int CmdSynth(const synthetic::Options& options, const fs::path& dir) {
  EnsureWritableDir(dir);
  const DatasetText text = synthetic::Generate(options);
  for (std::size_t s = 0; s < 3; ++s) {
    WriteFileAtomic(dir / (std::string("base_") + kSplitNames[s] + ".tsv"), text.base[s]);
    WriteFileAtomic(dir / (std::string("higher_") + kSplitNames[s] + ".tsv"), text.higher[s]);
  }
  return 0;
}

}  // namespace bive
