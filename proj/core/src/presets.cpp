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


#include "bilevel/presets.hpp"

#include <array>

namespace bilevel {
namespace {

using eval::Task;
constexpr Task kTP = Task::kTripletPrediction;
constexpr Task kCLP = Task::kConditionalLinkPrediction;
constexpr Task kBLP = Task::kBaseLinkPrediction;

constexpr std::array kPresets = {
    Preset{"fbh-q-tp", "fbh", kTP, 0.1, 0.01, 0.5, 1.0},
    Preset{"fbh-q-clp", "fbh", kCLP, 0.1, 0.01, 1.0, 0.2},
    Preset{"fbh-q-blp", "fbh", kBLP, 0.1, 0.05, 1.0, 0.2},
    Preset{"fbhe-q-tp", "fbhe", kTP, 0.1, 0.01, 1.0, 0.2},
    Preset{"fbhe-q-clp", "fbhe", kCLP, 0.1, 0.01, 1.0, 0.2},
    Preset{"fbhe-q-blp", "fbhe", kBLP, 0.1, 0.05, 0.5, 0.2},
    Preset{"dbhe-q-tp", "dbhe", kTP, 0.5, 0.05, 0.2, 1.0},
    Preset{"dbhe-q-clp", "dbhe", kCLP, 0.5, 0.01, 1.0, 0.2},
    Preset{"dbhe-q-blp", "dbhe", kBLP, 0.5, 0.1, 0.5, 0.2},
    // Base model alone. Lambdas are irrelevant with both terms off.
    Preset{"fbh-quate-tp", "fbh", kTP, 1.0, 0.05, 0.0, 0.0, false, false},
    Preset{"fbh-quate-blp", "fbh", kBLP, 0.1, 0.05, 0.0, 0.0, false, false},
    Preset{"fbhe-quate-tp", "fbhe", kTP, 1.0, 0.01, 0.0, 0.0, false, false},
    Preset{"fbhe-quate-blp", "fbhe", kBLP, 0.1, 0.05, 0.0, 0.0, false, false},
    Preset{"dbhe-quate-tp", "dbhe", kTP, 0.5, 0.05, 0.0, 0.0, false, false},
    Preset{"dbhe-quate-blp", "dbhe", kBLP, 0.5, 0.1, 0.0, 0.0, false, false},
};

}  // namespace

std::span<const Preset> AllPresets() { return kPresets; }

const Preset* FindPreset(std::string_view name) {
  for (const Preset& p : kPresets) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

embed::TrainConfig ApplyPreset(const Preset& preset, embed::TrainConfig base) {
  base.learning_rate = preset.learning_rate;
  base.reg_rate = preset.reg_rate;
  base.lambda_high = preset.lambda_high;
  base.lambda_aug = preset.lambda_aug;
  base.use_high = preset.use_high;
  base.use_aug = preset.use_aug;
  base.valid_task = preset.task;
  base.epochs = 500;
  base.valid_every = 50;
  base.dim = 200;
  base.higher_dim = 200;
  return base;
}

}  // namespace bilevel
