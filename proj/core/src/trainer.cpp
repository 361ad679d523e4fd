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


#include "bilevel/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "bilevel/errors.hpp"
#include "bilevel/optimizer.hpp"
#include "bilevel/sampling.hpp"

namespace bilevel::embed {
namespace {

// Independent stream per loss term keeps the ablations bit-compatible.
enum Stream : std::uint32_t { kBaseStream = 1, kHighStream = 2, kAugStream = 3 };

Rng StreamRng(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

template <typename T>
std::span<const T> Chunk(const std::vector<T>& v, std::size_t step, std::size_t steps) {
  const std::size_t begin = v.size() * step / steps, end = v.size() * (step + 1) / steps;
  return std::span<const T>(v).subspan(begin, end - begin);
}

}  // namespace

void TrainConfig::Validate() const {
  auto fail = [](const std::string& what) { throw ContractError("invalid train config: " + what); };
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail("learning_rate must be positive");
  if (!(reg_rate >= 0.0) || !std::isfinite(reg_rate)) fail("reg_rate must be >= 0");
  if (!(lambda_high >= 0.0) || !std::isfinite(lambda_high)) fail("lambda_high must be >= 0");
  if (!(lambda_aug >= 0.0) || !std::isfinite(lambda_aug)) fail("lambda_aug must be >= 0");
  if (neg_ratio < 1) fail("neg_ratio must be >= 1");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (dim < 1 || higher_dim < 1) fail("dimensions must be >= 1");
  if (eval_workers < 1) fail("eval_workers must be >= 1");
}

TrainResult Train(const BiLevelKG& kg, std::span<const BaseTriplet> augmented, const TrainConfig& config,
                  const TrainHooks& hooks) {
  config.Validate();
  const ModelShape shape{kg.num_entities(), kg.num_relations(), kg.num_higher_relations(), config.dim,
                         config.higher_dim};
  TrainResult result{ModelParams::Initialize(shape, config.seed), {}};
  ModelParams& params = result.params;

  const LossSwitches sw = config.switches();
  const double w_high = HighWeight(config.lambda_high, sw);
  const double w_aug = AugWeight(config.lambda_aug, sw);
  const LossOptions opts{config.variant, config.reg_rate, config.regularize_projection};
  const Adagrad optimizer(config.learning_rate);
  const auto universe = kg.triplets().triplets();

  std::vector<BaseTriplet> base;
  for (TripletId id : kg.base_split(Split::kTrain)) base.push_back(kg.triplet(id));
  const auto higher_span = kg.higher_split(Split::kTrain);
  std::vector<HigherTriplet> higher(higher_span.begin(), higher_span.end());
  std::vector<BaseTriplet> aug(augmented.begin(), augmented.end());
  const bool do_high = w_high != 0.0 && !higher.empty();
  const bool do_aug = w_aug != 0.0 && !aug.empty();

  Rng base_rng = StreamRng(config.seed, kBaseStream);
  Rng high_rng = StreamRng(config.seed, kHighStream);
  Rng aug_rng = StreamRng(config.seed, kAugStream);

  std::optional<ModelParams> best;
  auto validate = [&](std::size_t epoch) {
    eval::EvalOptions eo;
    eo.lambda_high = w_high;
    eo.workers = config.eval_workers;
    const auto report = eval::Evaluate(config.valid_task, params, kg, Split::kValid, eo);
    ValidationLog entry{epoch, report.metrics};
    result.log.validations.push_back(entry);
    if (hooks.on_validation) hooks.on_validation(entry);
    if (report.metrics.count > 0 && (!best || report.metrics.mean_reciprocal_rank > result.log.best_mrr)) {
      best = params;
      result.log.best_epoch = epoch;
      result.log.best_mrr = report.metrics.mean_reciprocal_rank;
    }
  };

  if (config.valid_every > 0) validate(0);

  const std::size_t steps = std::max<std::size_t>(1, (base.size() + config.batch_size - 1) / config.batch_size);
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(base.begin(), base.end(), base_rng);
    if (do_high) std::shuffle(higher.begin(), higher.end(), high_rng);
    if (do_aug) std::shuffle(aug.begin(), aug.end(), aug_rng);

    EpochLog log{epoch, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t step = 0; step < steps; ++step) {
      Gradients grads;
      LossParts parts;

      const auto base_pos = Chunk(base, step, steps);
      if (!base_pos.empty()) {
        std::vector<BaseTriplet> neg;
        for (const auto& t : base_pos) {
          auto n = SampleNegativesBase(kg, t, config.neg_ratio, base_rng);
          neg.insert(neg.end(), n.begin(), n.end());
        }
        parts.base = BaseLoss(params, base_pos, neg, opts, &grads).total();
      }
      if (do_high) {
        const auto pos = Chunk(higher, step, steps);
        if (!pos.empty()) {
          std::vector<HigherTriplet> neg;
          for (const auto& t : pos) {
            auto n = SampleNegativesHigher(kg, t, config.neg_ratio, high_rng);
            neg.insert(neg.end(), n.begin(), n.end());
          }
          parts.high = HigherLoss(params, universe, pos, neg, opts, &grads, w_high).total();
        }
      }
      if (do_aug) {
        const auto pos = Chunk(aug, step, steps);
        if (!pos.empty()) {
          std::vector<BaseTriplet> neg;
          for (const auto& t : pos) {
            auto n = SampleNegativesBase(kg, t, config.neg_ratio, aug_rng);
            neg.insert(neg.end(), n.begin(), n.end());
          }
          parts.aug = BaseLoss(params, pos, neg, opts, &grads, w_aug).total();
        }
      }

      const double total = TotalLoss(parts, config.lambda_high, config.lambda_aug, sw);
      if (!std::isfinite(total)) {
        throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                            std::to_string(step) + " (base=" + std::to_string(parts.base) +
                            ", high=" + std::to_string(parts.high) + ", aug=" + std::to_string(parts.aug) + ")");
      }
      optimizer.Apply(params, grads);
      log.base += parts.base;
      log.high += parts.high;
      log.aug += parts.aug;
      log.total += total;
    }
    const double n = static_cast<double>(steps);
    log.base /= n;
    log.high /= n;
    log.aug /= n;
    log.total /= n;
    result.log.epochs.push_back(log);
    if (hooks.on_epoch) hooks.on_epoch(log);

    if (config.valid_every > 0 && (epoch % config.valid_every == 0 || epoch == config.epochs)) validate(epoch);
  }

  if (best) {
    params = std::move(*best);
  } else {
    result.log.best_epoch = config.epochs;
  }
  return result;
}

}  // namespace bilevel::embed
