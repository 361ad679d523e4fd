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


#include "bilevel/loss.hpp"

#include <set>
#include <unordered_map>

#include <Eigen/Core>

namespace bilevel::embed {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::span<double> Slot(std::map<std::uint32_t, std::vector<double>>& m, std::uint32_t id, std::size_t width) {
  auto& v = m[id];
  if (v.empty()) v.assign(width, 0.0);
  return v;
}

double SquaredNorm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void AddScaled(std::span<double> dst, std::span<const double> src, double scale) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += scale * src[i];
}

// Per-example weights of the positive and negative softplus terms.
struct TermWeights {
  double positive = 0.0;
  double negative = 0.0;
};

// For kSeparate the negative mean is written as (P/N) * sum / P so that with
// P == N the result is exactly twice the kJoint value.
TermWeights Weights(LossVariant variant, std::size_t num_pos, std::size_t num_neg) {
  TermWeights w;
  const double p = static_cast<double>(num_pos), n = static_cast<double>(num_neg);
  if (variant == LossVariant::kJoint) {
    if (num_pos + num_neg) w.positive = w.negative = 1.0 / (p + n);
    return w;
  }
  if (num_pos) w.positive = 1.0 / p;
  if (num_neg) w.negative = num_pos ? (p / n) / p : 1.0 / n;
  return w;
}

double Combine(LossVariant variant, double pos_sum, double neg_sum, std::size_t num_pos,
               std::size_t num_neg) {
  const double p = static_cast<double>(num_pos), n = static_cast<double>(num_neg);
  if (variant == LossVariant::kJoint) {
    return (num_pos + num_neg) ? (pos_sum + neg_sum) / (p + n) : 0.0;
  }
  if (num_pos == 0) return num_neg ? neg_sum / n : 0.0;
  if (num_neg == 0) return pos_sum / p;
  return (pos_sum + neg_sum * (p / n)) / p;
}

}  // namespace

std::span<double> Gradients::Entity(std::uint32_t id, std::size_t width) { return Slot(entities, id, width); }
std::span<double> Gradients::Relation(std::uint32_t id, std::size_t width) { return Slot(relations, id, width); }
std::span<double> Gradients::HigherRelation(std::uint32_t id, std::size_t width) {
  return Slot(higher_relations, id, width);
}
std::span<double> Gradients::Projection(std::size_t size) {
  if (projection.empty()) projection.assign(size, 0.0);
  return projection;
}

LossValue BaseLoss(const ModelParams& params, std::span<const BaseTriplet> positives,
                   std::span<const BaseTriplet> negatives, const LossOptions& options,
                   Gradients* grads, double weight) {
  LossValue value;
  const Scorer& scorer = DefaultScorer();
  const std::size_t width = params.entities.width();
  const TermWeights w = Weights(options.variant, positives.size(), negatives.size());

  auto run = [&](std::span<const BaseTriplet> batch, bool positive, double term_weight) {
    double sum = 0.0;
    for (const auto& t : batch) {
      auto h = params.entities.row(t.head.index());
      auto r = params.relations.row(t.relation.index());
      auto tl = params.entities.row(t.tail.index());
      const double f = scorer.Score(h, r, tl);
      sum += Softplus(positive ? -f : f);
      if (grads) {
        const double df = positive ? -Sigmoid(-f) : Sigmoid(f);
        scorer.Backward(h, r, tl, weight * term_weight * df, grads->Entity(t.head.value, width),
                        grads->Relation(t.relation.value, width), grads->Entity(t.tail.value, width));
      }
    }
    return sum;
  };
  const double pos_sum = run(positives, true, w.positive);
  const double neg_sum = run(negatives, false, w.negative);
  value.data = Combine(options.variant, pos_sum, neg_sum, positives.size(), negatives.size());

  if (options.reg_rate != 0.0) {
    std::set<std::uint32_t> ents, rels;
    for (auto batch : {positives, negatives}) {
      for (const auto& t : batch) {
        ents.insert(t.head.value);
        ents.insert(t.tail.value);
        rels.insert(t.relation.value);
      }
    }
    double reg = 0.0;
    for (std::uint32_t e : ents) {
      reg += SquaredNorm(params.entities.row(e));
      if (grads) AddScaled(grads->Entity(e, width), params.entities.row(e), weight * 2.0 * options.reg_rate);
    }
    for (std::uint32_t r : rels) {
      reg += SquaredNorm(params.relations.row(r));
      if (grads) AddScaled(grads->Relation(r, width), params.relations.row(r), weight * 2.0 * options.reg_rate);
    }
    value.regularization = options.reg_rate * reg;
  }
  return value;
}

LossValue HigherLoss(const ModelParams& params, std::span<const BaseTriplet> universe,
                     std::span<const HigherTriplet> positives, std::span<const HigherTriplet> negatives,
                     const LossOptions& options, Gradients* grads, double weight) {
  LossValue value;
  const Scorer& scorer = DefaultScorer();
  const std::size_t dim = params.shape.dim;
  const std::size_t hdim = params.shape.higher_dim;
  const std::size_t width = 4 * dim, hwidth = 4 * hdim;
  const Projection& W = params.projection;
  const TermWeights w = Weights(options.variant, positives.size(), negatives.size());

  // Every distinct triplet of the batch is projected once, as a GEMM: column
  // 4j+c of X holds plane c of [h; r; t] for the j-th distinct triplet.
  std::vector<std::uint32_t> ids;
  std::unordered_map<std::uint32_t, std::uint32_t> column;
  for (auto batch : {positives, negatives}) {
    for (const auto& ht : batch) {
      for (TripletId id : {ht.lhs, ht.rhs}) {
        if (column.emplace(id.value, static_cast<std::uint32_t>(ids.size())).second) ids.push_back(id.value);
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(ids.size());
  const auto d = static_cast<Eigen::Index>(dim), dh = static_cast<Eigen::Index>(hdim);
  Eigen::MatrixXd X(3 * d, 4 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const BaseTriplet& t = universe[ids[static_cast<std::size_t>(j)]];
    const std::span<const double> blocks[3] = {params.entities.row(t.head.index()),
                                               params.relations.row(t.relation.index()),
                                               params.entities.row(t.tail.index())};
    for (Eigen::Index b = 0; b < 3; ++b) {
      for (Eigen::Index m = 0; m < d; ++m) {
        for (Eigen::Index c = 0; c < 4; ++c) X(b * d + m, 4 * j + c) = blocks[b][static_cast<std::size_t>(4 * m + c)];
      }
    }
  }
  const Eigen::Map<const RowMatrix> Wm(W.data().data(), dh, 3 * d);
  const Eigen::MatrixXd T = Wm * X;

  // Interleaved per-triplet copies (the quaternion layout the scorer expects)
  // and their gradients.
  std::vector<double> emb(ids.size() * hwidth), gemb;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < dh; ++k) {
      for (Eigen::Index c = 0; c < 4; ++c) emb[static_cast<std::size_t>(j * 4 * dh + 4 * k + c)] = T(k, 4 * j + c);
    }
  }
  if (grads) gemb.assign(emb.size(), 0.0);
  auto slice = [&](std::vector<double>& v, TripletId id) {
    return std::span(v).subspan(column.at(id.value) * hwidth, hwidth);
  };

  auto run = [&](std::span<const HigherTriplet> batch, bool positive, double term_weight) {
    double sum = 0.0;
    for (const auto& ht : batch) {
      const std::span<const double> lhs = slice(emb, ht.lhs), rhs = slice(emb, ht.rhs);
      auto rel = params.higher_relations.row(ht.relation.index());
      const double f = scorer.Score(lhs, rel, rhs);
      sum += Softplus(positive ? -f : f);
      if (grads) {
        const double df = positive ? -Sigmoid(-f) : Sigmoid(f);
        scorer.Backward(lhs, rel, rhs, weight * term_weight * df, slice(gemb, ht.lhs),
                        grads->HigherRelation(ht.relation.value, hwidth), slice(gemb, ht.rhs));
      }
    }
    return sum;
  };
  const double pos_sum = run(positives, true, w.positive);
  const double neg_sum = run(negatives, false, w.negative);
  value.data = Combine(options.variant, pos_sum, neg_sum, positives.size(), negatives.size());

  // Back through T = W X: dW += G X^T and dX = W^T G.
  if (grads && n > 0) {
    Eigen::MatrixXd G(dh, 4 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < dh; ++k) {
        for (Eigen::Index c = 0; c < 4; ++c) G(k, 4 * j + c) = gemb[static_cast<std::size_t>(j * 4 * dh + 4 * k + c)];
      }
    }
    Eigen::Map<RowMatrix> gW(grads->Projection(W.rows() * W.cols()).data(), dh, 3 * d);
    gW.noalias() += G * X.transpose();
    const Eigen::MatrixXd dX = Wm.transpose() * G;
    for (Eigen::Index j = 0; j < n; ++j) {
      const BaseTriplet& t = universe[ids[static_cast<std::size_t>(j)]];
      const std::span<double> gblocks[3] = {grads->Entity(t.head.value, width),
                                            grads->Relation(t.relation.value, width),
                                            grads->Entity(t.tail.value, width)};
      for (Eigen::Index b = 0; b < 3; ++b) {
        for (Eigen::Index m = 0; m < d; ++m) {
          for (Eigen::Index c = 0; c < 4; ++c) gblocks[b][static_cast<std::size_t>(4 * m + c)] += dX(b * d + m, 4 * j + c);
        }
      }
    }
  }

  if (options.reg_rate != 0.0 && (!positives.empty() || !negatives.empty())) {
    std::set<std::uint32_t> ents, rels, hrels;
    for (auto batch : {positives, negatives}) {
      for (const auto& ht : batch) {
        hrels.insert(ht.relation.value);
        for (TripletId id : {ht.lhs, ht.rhs}) {
          const BaseTriplet& t = universe[id.index()];
          ents.insert(t.head.value);
          ents.insert(t.tail.value);
          rels.insert(t.relation.value);
        }
      }
    }
    const double scale = weight * 2.0 * options.reg_rate;
    double reg = 0.0;
    for (std::uint32_t e : ents) {
      reg += SquaredNorm(params.entities.row(e));
      if (grads) AddScaled(grads->Entity(e, width), params.entities.row(e), scale);
    }
    for (std::uint32_t r : rels) {
      reg += SquaredNorm(params.relations.row(r));
      if (grads) AddScaled(grads->Relation(r, width), params.relations.row(r), scale);
    }
    for (std::uint32_t r : hrels) {
      reg += SquaredNorm(params.higher_relations.row(r));
      if (grads) AddScaled(grads->HigherRelation(r, hwidth), params.higher_relations.row(r), scale);
    }
    if (options.regularize_projection) {
      reg += SquaredNorm(W.data());
      if (grads) AddScaled(grads->Projection(W.rows() * W.cols()), W.data(), scale);
    }
    value.regularization = options.reg_rate * reg;
  }
  return value;
}

double TotalLoss(const LossParts& parts, double lambda_high, double lambda_aug,
                 const LossSwitches& switches) {
  double total = parts.base;
  if (switches.use_high && lambda_high != 0.0) total += lambda_high * parts.high;
  if (switches.use_aug && lambda_aug != 0.0) total += lambda_aug * parts.aug;
  return total;
}

}  // namespace bilevel::embed
