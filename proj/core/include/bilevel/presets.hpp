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


#ifndef BILEVEL_PRESETS_HPP_
#define BILEVEL_PRESETS_HPP_

#include <span>
#include <string_view>

#include "bilevel/tasks.hpp"
#include "bilevel/trainer.hpp"

namespace bilevel {

/// Published best hyperparameters, keyed "<dataset>-<model>-<task>".
/// Model "q" is the full quaternion objective; "quate" is the plain base
/// model with both extra loss terms switched off.
struct Preset {
  std::string_view name;
  std::string_view dataset;  // "fbh", "fbhe", "dbhe"
  eval::Task task;
  double learning_rate;
  double reg_rate;
  double lambda_high;
  double lambda_aug;
  bool use_high = true;
  bool use_aug = true;
};

std::span<const Preset> AllPresets();

/// nullptr when unknown.
const Preset* FindPreset(std::string_view name);

/// Overlays the preset on `base` together with the shared schedule
/// (500 epochs, validation every 50, d = d^ = 200).
embed::TrainConfig ApplyPreset(const Preset& preset, embed::TrainConfig base = {});

}  // namespace bilevel

#endif  // BILEVEL_PRESETS_HPP_
