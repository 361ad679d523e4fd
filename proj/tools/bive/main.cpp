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


// bive: stats | augment | train | eval | export over a bi-level KG, plus
// synth to write the generated fixture dataset.
//
// Configuration resolves as defaults <- preset <- --config file <- flags.
// On failure a JSON object {"error": {"kind", "message"}} goes to stderr and
// the exit status is nonzero.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bilevel/errors.hpp"
#include "bilevel/presets.hpp"
#include "commands.hpp"
#include "run_config.hpp"

namespace {

using bive::json;

struct CommonFlags {
  std::string config;
  std::string data_dir;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sets;
};

void AddCommon(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("-c,--config", f.config, "JSON config file, or a manifest written by an earlier run");
  cmd->add_option("-d,--data-dir", f.data_dir, "dataset directory with base_/higher_{train,valid,test}.tsv");
  cmd->add_option("-o,--out", f.out, "output directory");
  cmd->add_option("--seed", f.seed, "top-level seed");
  cmd->add_option("--set", f.sets, "override a config key, e.g. --set train.epochs=10")->allow_extra_args(false);
}

int ExitCodeFor(const std::string& kind) {
  if (kind == "contract_violation" || kind == "usage") return 2;
  if (kind == "io_error") return 3;
  if (kind == "training_error") return 5;
  return 4;  // parse, integrity and validation errors in the inputs
}

int ReportError(const std::string& kind, const std::string& message) {
  const json err{{"error", {{"kind", kind}, {"message", message}}}};
  std::fprintf(stderr, "%s\n", err.dump().c_str());
  return ExitCodeFor(kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-level knowledge graph embedding pipeline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", BIVE_VERSION);

  CommonFlags flags;
  std::string preset, task, split, checkpoint;
  std::optional<std::size_t> epochs, dim, workers;
  bool list_presets = false;

  auto* stats = app.add_subcommand("stats", "dataset statistics as JSON");
  auto* augment = app.add_subcommand("augment", "random walks, confidence table and the augmented set");
  auto* train = app.add_subcommand("train", "train embeddings and write a checkpoint");
  auto* evaluate = app.add_subcommand("eval", "filtered ranking for TP, CLP and BLP");
  auto* exportc = app.add_subcommand("export", "entity and triplet embeddings as CSV");
  auto* presets = app.add_subcommand("presets", "list the built-in hyperparameter presets");
  for (auto* cmd : {stats, augment, train, evaluate, exportc}) AddCommon(cmd, flags);

  augment->add_option("-w,--workers", workers, "walk workers");
  train->add_option("-p,--preset", preset, "hyperparameter preset, e.g. fbhe-q-tp");
  train->add_option("--epochs", epochs, "training epochs");
  train->add_option("--dim", dim, "embedding dimension (sets d and d^)");
  train->add_option("-w,--workers", workers, "validation workers");
  evaluate->add_option("-t,--task", task, "tp, clp, blp or all")->check(CLI::IsMember({"tp", "clp", "blp", "all"}));
  evaluate->add_option("--split", split, "valid or test")->check(CLI::IsMember({"valid", "test"}));
  evaluate->add_option("--checkpoint", checkpoint, "checkpoint file (default <out>/checkpoint.bin)");
  evaluate->add_option("-w,--workers", workers, "ranking workers");
  exportc->add_option("--checkpoint", checkpoint, "checkpoint file (default <out>/checkpoint.bin)");
  presets->add_flag("--json", list_presets, "print as JSON");

  bilevel::synthetic::Options synth_opts;
  std::string synth_dir;
  auto* synth = app.add_subcommand("synth", "write the synthetic fixture dataset");
  synth->add_option("-o,--out", synth_dir, "dataset directory to create")->required();
  synth->add_option("--entities", synth_opts.num_entities, "entity count");
  synth->add_option("--seed", synth_opts.seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return ReportError("usage", e.what());
  }

  try {
    if (synth->parsed()) return bive::CmdSynth(synth_opts, synth_dir);
    if (presets->parsed()) {
      json all = json::array();
      for (const auto& p : bilevel::AllPresets()) {
        all.push_back({{"name", p.name},
                       {"task", bilevel::eval::TaskName(p.task)},
                       {"learning_rate", p.learning_rate},
                       {"reg_rate", p.reg_rate},
                       {"lambda_high", p.lambda_high},
                       {"lambda_aug", p.lambda_aug},
                       {"use_high", p.use_high},
                       {"use_aug", p.use_aug}});
      }
      if (list_presets) {
        std::printf("%s\n", all.dump(2).c_str());
      } else {
        for (const auto& p : all) {
          std::printf("%-16s alpha %-4g beta %-5g lambda1 %-4g lambda2 %-4g%s\n",
                      p["name"].get<std::string>().c_str(), p["learning_rate"].get<double>(),
                      p["reg_rate"].get<double>(), p["lambda_high"].get<double>(), p["lambda_aug"].get<double>(),
                      p["use_high"].get<bool>() ? "" : "  (base model only)");
        }
      }
      return 0;
    }

    json user = flags.config.empty() ? json::object() : bive::LoadConfigFile(flags.config);
    if (!flags.data_dir.empty()) bive::ApplyOverride(user, "dataset.dir=" + json(flags.data_dir).dump());
    if (!flags.out.empty()) bive::ApplyOverride(user, "output_dir=" + json(flags.out).dump());
    if (flags.seed) bive::ApplyOverride(user, "seed=" + std::to_string(*flags.seed));
    if (!preset.empty()) bive::ApplyOverride(user, "train.preset=" + json(preset).dump());
    if (epochs) bive::ApplyOverride(user, "train.epochs=" + std::to_string(*epochs));
    if (dim) {
      bive::ApplyOverride(user, "train.dim=" + std::to_string(*dim));
      bive::ApplyOverride(user, "train.higher_dim=" + std::to_string(*dim));
    }
    if (workers) {
      const std::string w = std::to_string(*workers);
      if (augment->parsed()) bive::ApplyOverride(user, "augment.workers=" + w);
      if (train->parsed()) bive::ApplyOverride(user, "train.eval_workers=" + w);
      if (evaluate->parsed()) bive::ApplyOverride(user, "eval.workers=" + w);
    }
    if (!task.empty()) {
      bive::ApplyOverride(user, task == "all" ? R"(eval.tasks=["tp","clp","blp"])" : "eval.tasks=[\"" + task + "\"]");
    }
    if (!split.empty()) bive::ApplyOverride(user, "eval.split=" + json(split).dump());
    if (!checkpoint.empty()) bive::ApplyOverride(user, "eval.checkpoint=" + json(checkpoint).dump());
    for (const auto& s : flags.sets) bive::ApplyOverride(user, s);

    const bive::RunConfig config = bive::ResolveConfig(user);
    if (stats->parsed()) return bive::CmdStats(config);
    if (augment->parsed()) return bive::CmdAugment(config);
    if (train->parsed()) return bive::CmdTrain(config);
    if (evaluate->parsed()) return bive::CmdEval(config);
    return bive::CmdExport(config);
  } catch (const bilevel::Error& e) {
    return ReportError(e.kind(), e.what());
  } catch (const json::exception& e) {
    return ReportError("contract_violation", std::string("config: ") + e.what());
  } catch (const std::exception& e) {
    return ReportError("internal_error", e.what());
  }
}
