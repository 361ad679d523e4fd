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


#include "run_config.hpp"

#include "bilevel/errors.hpp"
#include "bilevel/presets.hpp"
#include "io.hpp"

namespace bive {

using bilevel::ContractError;
namespace eval = bilevel::eval;

namespace {

void CheckKeys(const json& user, const json& schema, const std::string& where) {
  if (!user.is_object()) throw ContractError("config" + where + " must be an object");
  for (const auto& [key, value] : user.items()) {
    const std::string path = where + "." + key;
    if (!schema.contains(key)) throw ContractError("unknown config key " + path.substr(1));
    if (schema[key].is_object() && !value.is_null()) CheckKeys(value, schema[key], path);
  }
}

json TrainJson(const bilevel::embed::TrainConfig& c) {
  return {{"learning_rate", c.learning_rate},
          {"reg_rate", c.reg_rate},
          {"lambda_high", c.lambda_high},
          {"lambda_aug", c.lambda_aug},
          {"neg_ratio", c.neg_ratio},
          {"epochs", c.epochs},
          {"valid_every", c.valid_every},
          {"batch_size", c.batch_size},
          {"variant", c.variant == bilevel::embed::LossVariant::kJoint ? "joint" : "separate"},
          {"use_high", c.use_high},
          {"use_aug", c.use_aug},
          {"regularize_projection", c.regularize_projection},
          {"dim", c.dim},
          {"higher_dim", c.higher_dim},
          {"valid_task", std::string(eval::TaskName(c.valid_task))},
          {"eval_workers", c.eval_workers}};
}

eval::Task TaskFrom(const json& j, const std::string& key) {
  const auto name = j.get<std::string>();
  const auto task = eval::ParseTask(name);
  if (!task) throw ContractError(key + ": unknown task '" + name + "' (expected tp, clp or blp)");
  return *task;
}

template <typename T>
T Get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ContractError(where + "." + key + " has the wrong type: " + obj.at(key).dump());
  }
}

std::uint64_t Positive(std::uint64_t v, const std::string& key) {
  if (v == 0) throw ContractError(key + " must be positive");
  return v;
}

}  // namespace

json DefaultConfigJson() {
  json train = TrainJson({});
  train["preset"] = nullptr;
  train["augmented"] = nullptr;
  train["seed"] = nullptr;
  return {
      {"seed", 0},
      {"output_dir", "out"},
      {"dataset",
       {{"dir", nullptr},
        {"base_train", nullptr},
        {"base_valid", nullptr},
        {"base_test", nullptr},
        {"higher_train", nullptr},
        {"higher_valid", nullptr},
        {"higher_test", nullptr}}},
      {"augment", {{"max_length", 3}, {"attempts", 50'000'000}, {"tau", 0.7}, {"seed", nullptr}, {"workers", 1}}},
      {"train", train},
      {"eval",
       {{"tasks", {"tp", "clp", "blp"}},
        {"split", "test"},
        {"workers", 1},
        {"lambda_high", nullptr},
        {"checkpoint", nullptr}}},
  };
}

json LoadConfigFile(const fs::path& path) {
  json j;
  try {
    j = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw bilevel::ParseError(path.string() + ": " + e.what());
  }
  if (j.is_object() && j.contains("config") && j.contains("command")) return j["config"];
  return j;
}

void ApplyOverride(json& user, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ContractError("override '" + assignment + "' is not key=value");
  const std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  json::json_pointer ptr("/" + [&] {
    std::string p = key;
    for (char& c : p) c = c == '.' ? '/' : c;
    return p;
  }());
  user[ptr] = value;
}

RunConfig ResolveConfig(const json& user) {
  const json defaults = DefaultConfigJson();
  CheckKeys(user, defaults, "");

  json resolved = defaults;
  const json* preset_name = user.contains("train") ? &user["train"] : nullptr;
  if (preset_name && preset_name->contains("preset") && !(*preset_name)["preset"].is_null()) {
    const auto name = Get<std::string>(*preset_name, "preset", "train");
    const bilevel::Preset* preset = bilevel::FindPreset(name);
    if (!preset) throw ContractError("unknown preset '" + name + "'");
    resolved["train"].merge_patch(TrainJson(bilevel::ApplyPreset(*preset)));
  }
  // merge_patch drops keys set to null, so restore the schema afterwards.
  resolved.merge_patch(user);
  for (const auto& [section, fields] : defaults.items()) {
    if (!fields.is_object()) continue;
    for (const auto& [key, value] : fields.items()) {
      if (!resolved[section].contains(key)) resolved[section][key] = value;
    }
  }

  RunConfig c;
  c.seed = Get<std::uint64_t>(resolved, "seed", "");
  c.output_dir = Get<std::string>(resolved, "output_dir", "");

  // Dataset: a directory, any of whose files may be overridden one by one.
  const json& ds = resolved["dataset"];
  if (!ds["dir"].is_null()) c.dataset = bilevel::DatasetPaths::FromDirectory(Get<std::string>(ds, "dir", "dataset"));
  static constexpr const char* kBase[] = {"base_train", "base_valid", "base_test"};
  static constexpr const char* kHigher[] = {"higher_train", "higher_valid", "higher_test"};
  for (std::size_t s = 0; s < 3; ++s) {
    if (!ds[kBase[s]].is_null()) c.dataset.base[s] = Get<std::string>(ds, kBase[s], "dataset");
    if (!ds[kHigher[s]].is_null()) c.dataset.higher[s] = Get<std::string>(ds, kHigher[s], "dataset");
    resolved["dataset"][kBase[s]] = c.dataset.base[s].string();
    resolved["dataset"][kHigher[s]] = c.dataset.higher[s].string();
  }

  json& au = resolved["augment"];
  if (au["seed"].is_null()) au["seed"] = c.seed;
  c.augment.max_length = Get<std::size_t>(au, "max_length", "augment");
  c.augment.attempts = Get<std::uint64_t>(au, "attempts", "augment");
  c.augment.tau = Get<double>(au, "tau", "augment");
  c.augment.seed = Get<std::uint64_t>(au, "seed", "augment");
  c.augment.workers = Positive(Get<std::size_t>(au, "workers", "augment"), "augment.workers");
  if (c.augment.max_length < 2) throw ContractError("augment.max_length must be at least 2");
  if (!(c.augment.tau > 0.0)) throw ContractError("augment.tau must be positive");

  json& tr = resolved["train"];
  if (tr["seed"].is_null()) tr["seed"] = c.seed;
  if (tr["augmented"].is_null()) tr["augmented"] = (c.output_dir / "augmented.tsv").string();
  auto& t = c.train;
  t.learning_rate = Get<double>(tr, "learning_rate", "train");
  t.reg_rate = Get<double>(tr, "reg_rate", "train");
  t.lambda_high = Get<double>(tr, "lambda_high", "train");
  t.lambda_aug = Get<double>(tr, "lambda_aug", "train");
  t.neg_ratio = Get<std::size_t>(tr, "neg_ratio", "train");
  t.epochs = Get<std::size_t>(tr, "epochs", "train");
  t.valid_every = Get<std::size_t>(tr, "valid_every", "train");
  t.batch_size = Get<std::size_t>(tr, "batch_size", "train");
  t.seed = Get<std::uint64_t>(tr, "seed", "train");
  const auto variant = Get<std::string>(tr, "variant", "train");
  if (variant != "separate" && variant != "joint") {
    throw ContractError("train.variant must be 'separate' or 'joint', got '" + variant + "'");
  }
  t.variant = variant == "joint" ? bilevel::embed::LossVariant::kJoint : bilevel::embed::LossVariant::kSeparate;
  t.use_high = Get<bool>(tr, "use_high", "train");
  t.use_aug = Get<bool>(tr, "use_aug", "train");
  t.regularize_projection = Get<bool>(tr, "regularize_projection", "train");
  t.dim = Get<std::size_t>(tr, "dim", "train");
  t.higher_dim = Get<std::size_t>(tr, "higher_dim", "train");
  t.valid_task = TaskFrom(tr["valid_task"], "train.valid_task");
  t.eval_workers = Get<std::size_t>(tr, "eval_workers", "train");
  t.Validate();
  c.augmented = Get<std::string>(tr, "augmented", "train");

  json& ev = resolved["eval"];
  if (!ev["tasks"].is_array() || ev["tasks"].empty()) throw ContractError("eval.tasks must be a non-empty list");
  for (const auto& task : ev["tasks"]) c.eval.tasks.push_back(TaskFrom(task, "eval.tasks"));
  const auto split = Get<std::string>(ev, "split", "eval");
  if (split != "valid" && split != "test") throw ContractError("eval.split must be 'valid' or 'test'");
  c.eval.split = split == "valid" ? bilevel::Split::kValid : bilevel::Split::kTest;
  c.eval.workers = Positive(Get<std::size_t>(ev, "workers", "eval"), "eval.workers");
  if (ev["lambda_high"].is_null()) ev["lambda_high"] = bilevel::embed::HighWeight(t.lambda_high, t.switches());
  c.eval.lambda_high = Get<double>(ev, "lambda_high", "eval");
  if (ev["checkpoint"].is_null()) ev["checkpoint"] = (c.output_dir / "checkpoint.bin").string();
  c.eval.checkpoint = Get<std::string>(ev, "checkpoint", "eval");

  c.resolved = std::move(resolved);
  return c;
}

}  // namespace bive
