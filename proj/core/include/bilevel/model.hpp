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


#ifndef BILEVEL_MODEL_HPP_
#define BILEVEL_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "bilevel/quaternion.hpp"
#include "bilevel/types.hpp"

namespace bilevel::embed {

/// Quaternion vectors are stored as 4*dim reals, quaternion-interleaved:
/// (a0 b0 c0 d0 a1 b1 c1 d1 ...).
inline Quaternion QuatAt(std::span<const double> v, std::size_t i) {
  return {v[4 * i], v[4 * i + 1], v[4 * i + 2], v[4 * i + 3]};
}

inline void AddQuatAt(std::span<double> v, std::size_t i, const Quaternion& q) {
  v[4 * i] += q.a;
  v[4 * i + 1] += q.b;
  v[4 * i + 2] += q.c;
  v[4 * i + 3] += q.d;
}

/// Dense row-major table; each row is one quaternion vector.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::size_t rows, std::size_t dim) : rows_(rows), dim_(dim), data_(rows * 4 * dim, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }
  std::size_t width() const { return 4 * dim_; }
  std::span<double> row(std::size_t i) { return std::span(data_).subspan(i * width(), width()); }
  std::span<const double> row(std::size_t i) const { return std::span(data_).subspan(i * width(), width()); }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Plausibility f(lhs, rel, rhs) over quaternion vectors of one dimension.
/// Implementations must be bilinear in (lhs, rhs) for fixed rel so that
/// ranking can reduce to dot products against a query vector.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::string_view tag() const = 0;
  virtual double Score(std::span<const double> lhs, std::span<const double> rel,
                       std::span<const double> rhs) const = 0;
  /// Adds scale * df/d{lhs, rel, rhs}. Any gradient span may be empty.
  virtual void Backward(std::span<const double> lhs, std::span<const double> rel,
                        std::span<const double> rhs, double scale, std::span<double> grad_lhs,
                        std::span<double> grad_rel, std::span<double> grad_rhs) const = 0;
  /// q with f(lhs, rel, x) = <q, x> for all x.
  virtual void TailQuery(std::span<const double> lhs, std::span<const double> rel,
                         std::span<double> out) const = 0;
  /// q with f(x, rel, rhs) = <q, x> for all x.
  virtual void HeadQuery(std::span<const double> rel, std::span<const double> rhs,
                         std::span<double> out) const = 0;
};

/// sum_c < lhs_c (x) rel_c / |rel_c| , rhs_c >
class QuatEScorer final : public Scorer {
 public:
  std::string_view tag() const override { return "quate"; }
  double Score(std::span<const double> lhs, std::span<const double> rel,
               std::span<const double> rhs) const override;
  void Backward(std::span<const double> lhs, std::span<const double> rel, std::span<const double> rhs,
                double scale, std::span<double> grad_lhs, std::span<double> grad_rel,
                std::span<double> grad_rhs) const override;
  void TailQuery(std::span<const double> lhs, std::span<const double> rel,
                 std::span<double> out) const override;
  void HeadQuery(std::span<const double> rel, std::span<const double> rhs,
                 std::span<double> out) const override;
};

const Scorer& DefaultScorer();

double ScoreBase(std::span<const double> h, std::span<const double> r, std::span<const double> t);

struct ModelShape {
  std::size_t num_entities = 0;
  std::size_t num_relations = 0;
  std::size_t num_higher_relations = 0;
  std::size_t dim = 200;         // d, quaternions per entity/relation
  std::size_t higher_dim = 200;  // d^, quaternions per triplet / higher relation

  friend bool operator==(const ModelShape&, const ModelShape&) = default;
};

/// Row-major d^ x 3d real matrix applied independently to each of the four
/// quaternion component planes of [h; r; t].
class Projection {
 public:
  Projection() = default;
  Projection(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t k, std::size_t m) { return data_[k * cols_ + m]; }
  double at(std::size_t k, std::size_t m) const { return data_[k * cols_ + m]; }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const Projection&, const Projection&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Adagrad squared-gradient sums, same layout as the parameters.
struct Accumulators {
  EmbeddingTable entities;
  EmbeddingTable relations;
  EmbeddingTable higher_relations;
  Projection projection;
};

struct ModelParams {
  ModelShape shape;
  std::uint64_t seed = 0;
  EmbeddingTable entities;
  EmbeddingTable relations;
  EmbeddingTable higher_relations;
  Projection projection;
  Accumulators accum;

  /// Uniform in +-1/sqrt(4d) per real (fan-in 3d for the projection).
  static ModelParams Initialize(const ModelShape& shape, std::uint64_t seed);

  /// Compares parameters only, bit for bit.
  bool SameParameters(const ModelParams& other) const;
  bool AllFinite() const;
};

/// W [h; r; t] written to `out` (4 d^ reals).
void ProjectTriplet(const Projection& w, std::span<const double> h, std::span<const double> r,
                    std::span<const double> t, std::span<double> out);

std::vector<double> TripletEmbedding(const ModelParams& params, const BaseTriplet& t);

double ScoreTriplet(const ModelParams& params, const BaseTriplet& t);

double ScoreHigher(const ModelParams& params, const BaseTriplet& lhs, HigherRelationId rel,
                   const BaseTriplet& rhs);

}  // namespace bilevel::embed

#endif  // BILEVEL_MODEL_HPP_
