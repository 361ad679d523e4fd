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


#include "bilevel/model.hpp"

#include <algorithm>
#include <random>

namespace bilevel::embed {
namespace {

void InitUniform(std::span<double> values, double bound, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (double& v : values) v = dist(rng);
}

bool Finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

double QuatEScorer::Score(std::span<const double> lhs, std::span<const double> rel,
                          std::span<const double> rhs) const {
  const std::size_t dim = lhs.size() / 4;
  double s = 0.0;
  for (std::size_t c = 0; c < dim; ++c) {
    s += Dot(Hamilton(QuatAt(lhs, c), Normalize(QuatAt(rel, c))), QuatAt(rhs, c));
  }
  return s;
}

void QuatEScorer::Backward(std::span<const double> lhs, std::span<const double> rel,
                           std::span<const double> rhs, double scale, std::span<double> grad_lhs,
                           std::span<double> grad_rel, std::span<double> grad_rhs) const {
  const std::size_t dim = lhs.size() / 4;
  for (std::size_t c = 0; c < dim; ++c) {
    const Quaternion h = QuatAt(lhs, c), r = QuatAt(rel, c), t = QuatAt(rhs, c);
    const double norm = Norm(r);
    const Quaternion n = Normalize(r);
    if (!grad_rhs.empty()) AddQuatAt(grad_rhs, c, scale * Hamilton(h, n));
    if (!grad_lhs.empty()) AddQuatAt(grad_lhs, c, scale * Hamilton(t, Conjugate(n)));
    if (!grad_rel.empty() && norm >= kMinRelationNorm) {
      // d/dr of n = r/|r| projects out the radial component.
      const Quaternion g = Hamilton(Conjugate(h), t);
      const double radial = Dot(n, g);
      const Quaternion tangent{g.a - radial * n.a, g.b - radial * n.b, g.c - radial * n.c,
                               g.d - radial * n.d};
      AddQuatAt(grad_rel, c, (scale / norm) * tangent);
    }
  }
}

void QuatEScorer::TailQuery(std::span<const double> lhs, std::span<const double> rel,
                            std::span<double> out) const {
  const std::size_t dim = lhs.size() / 4;
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t c = 0; c < dim; ++c) {
    AddQuatAt(out, c, Hamilton(QuatAt(lhs, c), Normalize(QuatAt(rel, c))));
  }
}

void QuatEScorer::HeadQuery(std::span<const double> rel, std::span<const double> rhs,
                            std::span<double> out) const {
  const std::size_t dim = rhs.size() / 4;
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t c = 0; c < dim; ++c) {
    AddQuatAt(out, c, Hamilton(QuatAt(rhs, c), Conjugate(Normalize(QuatAt(rel, c)))));
  }
}

const Scorer& DefaultScorer() {
  static const QuatEScorer scorer;
  return scorer;
}

double ScoreBase(std::span<const double> h, std::span<const double> r, std::span<const double> t) {
  return DefaultScorer().Score(h, r, t);
}

ModelParams ModelParams::Initialize(const ModelShape& shape, std::uint64_t seed) {
  ModelParams p;
  p.shape = shape;
  p.seed = seed;
  p.entities = EmbeddingTable(shape.num_entities, shape.dim);
  p.relations = EmbeddingTable(shape.num_relations, shape.dim);
  p.higher_relations = EmbeddingTable(shape.num_higher_relations, shape.higher_dim);
  p.projection = Projection(shape.higher_dim, 3 * shape.dim);

  std::mt19937_64 rng(seed);
  const double base_bound = shape.dim ? 1.0 / std::sqrt(4.0 * static_cast<double>(shape.dim)) : 0.0;
  const double higher_bound =
      shape.higher_dim ? 1.0 / std::sqrt(4.0 * static_cast<double>(shape.higher_dim)) : 0.0;
  const double proj_bound = shape.dim ? 1.0 / std::sqrt(3.0 * static_cast<double>(shape.dim)) : 0.0;
  InitUniform(p.entities.data(), base_bound, rng);
  InitUniform(p.relations.data(), base_bound, rng);
  InitUniform(p.higher_relations.data(), higher_bound, rng);
  InitUniform(p.projection.data(), proj_bound, rng);

  p.accum.entities = EmbeddingTable(shape.num_entities, shape.dim);
  p.accum.relations = EmbeddingTable(shape.num_relations, shape.dim);
  p.accum.higher_relations = EmbeddingTable(shape.num_higher_relations, shape.higher_dim);
  p.accum.projection = Projection(shape.higher_dim, 3 * shape.dim);
  return p;
}

bool ModelParams::SameParameters(const ModelParams& other) const {
  return shape == other.shape && entities == other.entities && relations == other.relations &&
         higher_relations == other.higher_relations && projection == other.projection;
}

bool ModelParams::AllFinite() const {
  return Finite(entities.data()) && Finite(relations.data()) && Finite(higher_relations.data()) &&
         Finite(projection.data());
}

void ProjectTriplet(const Projection& w, std::span<const double> h, std::span<const double> r,
                    std::span<const double> t, std::span<double> out) {
  const std::size_t dim = h.size() / 4;
  std::fill(out.begin(), out.end(), 0.0);
  const std::span<const double> blocks[3] = {h, r, t};
  for (std::size_t k = 0; k < w.rows(); ++k) {
    double* o = &out[4 * k];
    for (std::size_t b = 0; b < 3; ++b) {
      const double* x = blocks[b].data();
      const std::size_t col0 = b * dim;
      for (std::size_t m = 0; m < dim; ++m) {
        const double wk = w.at(k, col0 + m);
        o[0] += wk * x[4 * m];
        o[1] += wk * x[4 * m + 1];
        o[2] += wk * x[4 * m + 2];
        o[3] += wk * x[4 * m + 3];
      }
    }
  }
}

std::vector<double> TripletEmbedding(const ModelParams& params, const BaseTriplet& t) {
  std::vector<double> out(4 * params.shape.higher_dim);
  ProjectTriplet(params.projection, params.entities.row(t.head.index()),
                 params.relations.row(t.relation.index()), params.entities.row(t.tail.index()), out);
  return out;
}

double ScoreTriplet(const ModelParams& params, const BaseTriplet& t) {
  return ScoreBase(params.entities.row(t.head.index()), params.relations.row(t.relation.index()),
                   params.entities.row(t.tail.index()));
}

double ScoreHigher(const ModelParams& params, const BaseTriplet& lhs, HigherRelationId rel,
                   const BaseTriplet& rhs) {
  auto a = TripletEmbedding(params, lhs);
  auto b = TripletEmbedding(params, rhs);
  return ScoreBase(a, params.higher_relations.row(rel.index()), b);
}

}  // namespace bilevel::embed
