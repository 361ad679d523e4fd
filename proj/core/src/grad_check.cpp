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


#include "bilevel/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bilevel::embed {
namespace {

double Analytic(const std::map<std::uint32_t, std::vector<double>>& rows, std::size_t width, std::size_t flat) {
  auto it = rows.find(static_cast<std::uint32_t>(flat / width));
  return it == rows.end() ? 0.0 : it->second[flat % width];
}

}  // namespace

std::string GradCheckReport::Describe() const {
  std::ostringstream os;
  os << "max relative error " << max_relative_error << " over " << checked << " partials";
  if (checked) {
    os << "; worst " << worst_family << "[" << worst_index << "] analytic " << worst_analytic << " numeric "
       << worst_numeric;
  }
  return os.str();
}

double CombinedObjective(const ModelParams& params, std::span<const BaseTriplet> universe,
                         const GradCheckSample& s, const GradCheckOptions& o, Gradients* grads) {
  double total = 0.0;
  if (!s.base_pos.empty() || !s.base_neg.empty()) {
    total += BaseLoss(params, s.base_pos, s.base_neg, o.loss, grads).total();
  }
  if (o.lambda_high != 0.0 && (!s.high_pos.empty() || !s.high_neg.empty())) {
    total += o.lambda_high * HigherLoss(params, universe, s.high_pos, s.high_neg, o.loss, grads, o.lambda_high).total();
  }
  if (o.lambda_aug != 0.0 && (!s.aug_pos.empty() || !s.aug_neg.empty())) {
    total += o.lambda_aug * BaseLoss(params, s.aug_pos, s.aug_neg, o.loss, grads, o.lambda_aug).total();
  }
  return total;
}

GradCheckReport GradCheck(const ModelParams& params, std::span<const BaseTriplet> universe,
                          const GradCheckSample& sample, const GradCheckOptions& options) {
  Gradients grads;
  CombinedObjective(params, universe, sample, options, &grads);

  GradCheckReport report;
  ModelParams probe = params;
  auto visit = [&](const char* family, std::span<double> values, auto analytic_of) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + options.epsilon;
      const double up = CombinedObjective(probe, universe, sample, options);
      values[i] = saved - options.epsilon;
      const double down = CombinedObjective(probe, universe, sample, options);
      values[i] = saved;
      const double numeric = (up - down) / (2.0 * options.epsilon);
      const double analytic = analytic_of(i);
      const double scale = std::max({std::abs(analytic), std::abs(numeric), options.scale_floor});
      const double err = std::abs(analytic - numeric) / scale;
      ++report.checked;
      if (err > report.max_relative_error || report.checked == 1) {
        report.max_relative_error = err;
        report.worst_family = family;
        report.worst_index = i;
        report.worst_analytic = analytic;
        report.worst_numeric = numeric;
      }
    }
  };
  const std::size_t width = probe.entities.width();
  const std::size_t hwidth = probe.higher_relations.width();
  visit("entity", probe.entities.data(), [&](std::size_t i) { return Analytic(grads.entities, width, i); });
  visit("relation", probe.relations.data(), [&](std::size_t i) { return Analytic(grads.relations, width, i); });
  visit("higher_relation", probe.higher_relations.data(),
        [&](std::size_t i) { return Analytic(grads.higher_relations, hwidth, i); });
  visit("projection", probe.projection.data(),
        [&](std::size_t i) { return grads.projection.empty() ? 0.0 : grads.projection[i]; });
  report.ok = report.max_relative_error <= options.tolerance;
  return report;
}

}  // namespace bilevel::embed
