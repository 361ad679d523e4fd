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


#ifndef BILEVEL_GRAD_CHECK_HPP_
#define BILEVEL_GRAD_CHECK_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bilevel/loss.hpp"
#include "bilevel/model.hpp"

namespace bilevel::embed {

/// One batch of every loss term. Empty lists drop the term.
struct GradCheckSample {
  std::vector<BaseTriplet> base_pos, base_neg;
  std::vector<HigherTriplet> high_pos, high_neg;
  std::vector<BaseTriplet> aug_pos, aug_neg;
};

struct GradCheckOptions {
  LossOptions loss;
  double lambda_high = 1.0;
  double lambda_aug = 1.0;
  double epsilon = 1e-5;
  double tolerance = 1e-4;
  // Denominator floor of the relative error, so coordinates whose true
  // partial is zero are judged on absolute error.
  double scale_floor = 1e-6;
};

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  std::string worst_family;  // "entity", "relation", "higher_relation", "projection"
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  bool ok = true;

  std::string Describe() const;
};

/// The combined objective base + lambda_high * high + lambda_aug * aug,
/// regularization included.
double CombinedObjective(const ModelParams& params, std::span<const BaseTriplet> universe,
                         const GradCheckSample& sample, const GradCheckOptions& options,
                         Gradients* grads = nullptr);

/// Compares every analytic partial with a central difference.
GradCheckReport GradCheck(const ModelParams& params, std::span<const BaseTriplet> universe,
                          const GradCheckSample& sample, const GradCheckOptions& options = {});

}  // namespace bilevel::embed

#endif  // BILEVEL_GRAD_CHECK_HPP_
