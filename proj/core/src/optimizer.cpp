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


#include "bilevel/optimizer.hpp"

#include <cmath>

namespace bilevel::embed {
namespace {

void Step(std::span<double> param, std::span<double> accum, std::span<const double> grad, double lr,
          double eps) {
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const double g = grad[i];
    accum[i] += g * g;
    param[i] -= lr * g / (std::sqrt(accum[i]) + eps);
  }
}

void StepRows(EmbeddingTable& table, EmbeddingTable& accum,
              const std::map<std::uint32_t, std::vector<double>>& rows, double lr, double eps) {
  for (const auto& [id, g] : rows) Step(table.row(id), accum.row(id), g, lr, eps);
}

}  // namespace

void Adagrad::Apply(ModelParams& params, const Gradients& grads) const {
  StepRows(params.entities, params.accum.entities, grads.entities, lr_, eps_);
  StepRows(params.relations, params.accum.relations, grads.relations, lr_, eps_);
  StepRows(params.higher_relations, params.accum.higher_relations, grads.higher_relations, lr_, eps_);
  if (!grads.projection.empty()) {
    Step(params.projection.data(), params.accum.projection.data(), grads.projection, lr_, eps_);
  }
}

}  // namespace bilevel::embed
