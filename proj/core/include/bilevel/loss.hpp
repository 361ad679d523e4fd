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


#ifndef BILEVEL_LOSS_HPP_
#define BILEVEL_LOSS_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "bilevel/model.hpp"
#include "bilevel/types.hpp"

namespace bilevel::embed {

/// log(1 + exp(x)) without overflow or premature underflow.
inline double Softplus(double x) {
  if (x > 0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

/// d/dx softplus(x)
inline double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// kSeparate: mean over positives plus mean over negatives.
/// kJoint: one mean over positives and negatives together.
enum class LossVariant { kSeparate, kJoint };

struct LossOptions {
  LossVariant variant = LossVariant::kSeparate;
  double reg_rate = 0.0;  // beta, times the squared L2 norm of every touched row
  bool regularize_projection = true;
};

/// Sparse gradient: only rows touched by the batch are present. Ordered maps
/// keep the update order (and so the float results) deterministic.
struct Gradients {
  std::map<std::uint32_t, std::vector<double>> entities;
  std::map<std::uint32_t, std::vector<double>> relations;
  std::map<std::uint32_t, std::vector<double>> higher_relations;
  std::vector<double> projection;  // empty when W is untouched

  std::span<double> Entity(std::uint32_t id, std::size_t width);
  std::span<double> Relation(std::uint32_t id, std::size_t width);
  std::span<double> HigherRelation(std::uint32_t id, std::size_t width);
  std::span<double> Projection(std::size_t size);
};

struct LossValue {
  double data = 0.0;            // softplus part
  double regularization = 0.0;  // beta * sum ||row||^2
  double total() const { return data + regularization; }
};

/// Softplus loss over base triplets (used for both the train split and the
/// augmented set). When `grads` is set, adds weight * dLoss/dparams.
LossValue BaseLoss(const ModelParams& params, std::span<const BaseTriplet> positives,
                   std::span<const BaseTriplet> negatives, const LossOptions& options,
                   Gradients* grads = nullptr, double weight = 1.0);

/// Softplus loss over higher triplets, scored on W-projected triplet
/// embeddings. `universe` maps TripletId -> BaseTriplet.
LossValue HigherLoss(const ModelParams& params, std::span<const BaseTriplet> universe,
                     std::span<const HigherTriplet> positives, std::span<const HigherTriplet> negatives,
                     const LossOptions& options, Gradients* grads = nullptr, double weight = 1.0);

struct LossSwitches {
  bool use_high = true;
  bool use_aug = true;
};

struct LossParts {
  double base = 0.0;
  double high = 0.0;
  double aug = 0.0;
};

/// L_base + lambda1 L_high + lambda2 L_aug with disabled terms dropped.
double TotalLoss(const LossParts& parts, double lambda_high, double lambda_aug,
                 const LossSwitches& switches);

/// Effective term weights after applying the switches.
inline double HighWeight(double lambda_high, const LossSwitches& s) { return s.use_high ? lambda_high : 0.0; }
inline double AugWeight(double lambda_aug, const LossSwitches& s) { return s.use_aug ? lambda_aug : 0.0; }

}  // namespace bilevel::embed

#endif  // BILEVEL_LOSS_HPP_
