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


#ifndef BIVE_RUN_CONFIG_HPP_
#define BIVE_RUN_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "bilevel/graph.hpp"
#include "bilevel/tasks.hpp"
#include "bilevel/trainer.hpp"

namespace bive {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct AugmentParams {
  std::size_t max_length = 3;
  std::uint64_t attempts = 50'000'000;
  double tau = 0.7;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

struct EvalParams {
  std::vector<bilevel::eval::Task> tasks;
  bilevel::Split split = bilevel::Split::kTest;
  std::size_t workers = 1;
  double lambda_high = 1.0;
  fs::path checkpoint;
};

/// Fully resolved run configuration. `resolved` is the JSON it was built
/// from, with every derived value (seeds, default paths) filled in.
struct RunConfig {
  bilevel::DatasetPaths dataset;
  fs::path output_dir;
  std::uint64_t seed = 0;
  AugmentParams augment;
  bilevel::embed::TrainConfig train;
  fs::path augmented;  // S, read by train
  EvalParams eval;
  json resolved;
};

/// Every accepted key with its default; unknown keys are rejected.
json DefaultConfigJson();

/// Reads a config file, or the "config" object of a manifest.
json LoadConfigFile(const fs::path& path);

/// Applies `dotted.key=value`; the value is parsed as JSON when it parses,
/// otherwise taken as a string.
void ApplyOverride(json& user, const std::string& assignment);

/// defaults <- preset (train.preset) <- user. Throws ContractError on unknown
/// keys, wrong types or out-of-range values.
RunConfig ResolveConfig(const json& user);

}  // namespace bive

#endif  // BIVE_RUN_CONFIG_HPP_
