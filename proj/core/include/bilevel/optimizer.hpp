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


#ifndef BILEVEL_OPTIMIZER_HPP_
#define BILEVEL_OPTIMIZER_HPP_

#include "bilevel/loss.hpp"
#include "bilevel/model.hpp"

namespace bilevel::embed {

/// Sparse Adagrad: only rows present in `grads` (and W, when its gradient is
/// non-empty) are touched.
///   accum += g * g
///   param -= lr * g / (sqrt(accum) + eps)
class Adagrad {
 public:
  explicit Adagrad(double learning_rate, double eps = 1e-10) : lr_(learning_rate), eps_(eps) {}

  void Apply(ModelParams& params, const Gradients& grads) const;

  double learning_rate() const { return lr_; }

 private:
  double lr_;
  double eps_;
};

}  // namespace bilevel::embed

#endif  // BILEVEL_OPTIMIZER_HPP_
