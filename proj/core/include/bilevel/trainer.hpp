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


#ifndef BILEVEL_TRAINER_HPP_
#define BILEVEL_TRAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bilevel/graph.hpp"
#include "bilevel/loss.hpp"
#include "bilevel/model.hpp"
#include "bilevel/tasks.hpp"

namespace bilevel::embed {

struct TrainConfig {
  double learning_rate = 0.1;  // alpha
  double reg_rate = 0.01;      // beta
  double lambda_high = 1.0;
  double lambda_aug = 0.2;
  std::size_t neg_ratio = 10;
  std::size_t epochs = 500;
  std::size_t valid_every = 50;  // 0 disables validation
  std::size_t batch_size = 1024;
  std::uint64_t seed = 0;
  LossVariant variant = LossVariant::kSeparate;
  bool use_high = true;
  bool use_aug = true;
  bool regularize_projection = true;
  std::size_t dim = 200;
  std::size_t higher_dim = 200;
  eval::Task valid_task = eval::Task::kTripletPrediction;
  std::size_t eval_workers = 1;

  /// Throws ContractError naming the first bad field.
  void Validate() const;
  LossSwitches switches() const { return {use_high, use_aug}; }
};

struct EpochLog {
  std::size_t epoch = 0;  // 1-based
  double base = 0.0;      // mean over steps, regularization included
  double high = 0.0;
  double aug = 0.0;
  double total = 0.0;
};

struct ValidationLog {
  std::size_t epoch = 0;
  eval::Metrics metrics;
};

struct TrainLog {
  std::vector<EpochLog> epochs;
  std::vector<ValidationLog> validations;
  std::size_t best_epoch = 0;
  double best_mrr = 0.0;
};

struct TrainResult {
  ModelParams params;  // best validation snapshot, or the final state without validation
  TrainLog log;
};

struct TrainHooks {
  std::function<void(const EpochLog&)> on_epoch;
  std::function<void(const ValidationLog&)> on_validation;
};

/// Mini-batch training of the combined objective. Each step draws one chunk
/// from each of the three streams (train triplets, train higher triplets and
/// `augmented`), so every stream is visited once per epoch. Streams whose
/// weight is zero are never touched, so they consume no randomness.
TrainResult Train(const BiLevelKG& kg, std::span<const BaseTriplet> augmented, const TrainConfig& config,
                  const TrainHooks& hooks = {});

}  // namespace bilevel::embed

#endif  // BILEVEL_TRAINER_HPP_
