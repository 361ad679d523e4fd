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


#include "bilevel/checkpoint.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>

#include <fmt/format.h>

#include "bilevel/errors.hpp"

namespace bilevel::embed {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
T ToLittle(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return v;
}

class Writer {
 public:
  void U64(std::uint64_t v) { Raw(ToLittle(v)); }
  void F64(double v) { Raw(ToLittle(v)); }
  void Bytes(std::string_view s) { out_.append(s); }
  void Block(std::span<const double> v) {
    for (double x : v) F64(x);
  }
  std::string Take() && { return std::move(out_); }

 private:
  template <typename T>
  void Raw(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  std::uint64_t U64() { return ToLittle(Raw<std::uint64_t>()); }
  double F64() { return ToLittle(Raw<double>()); }
  std::string_view Bytes(std::size_t n) {
    Need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  void Block(std::span<double> v) {
    Need(v.size() * sizeof(double));
    for (double& x : v) x = F64();
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void Need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw ParseError("checkpoint truncated at byte " + std::to_string(pos_));
  }
  template <typename T>
  T Raw() {
    Need(sizeof(T));
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

void AppendRow(std::string& out, std::size_t id, std::span<const double> row) {
  out += std::to_string(id);
  for (double x : row) fmt::format_to(std::back_inserter(out), ",{:.17g}", x);
  out += '\n';
}

std::string CsvHeader(std::size_t width) {
  std::string h = "id";
  for (std::size_t i = 0; i < width; ++i) h += ",x" + std::to_string(i);
  return h + '\n';
}

}  // namespace

std::string SerializeCheckpoint(const ModelParams& params, std::string_view backbone_tag) {
  Writer w;
  w.Bytes(kCheckpointMagic);
  w.U64(kCheckpointVersion);
  const ModelShape& s = params.shape;
  for (std::uint64_t v : {s.num_entities, s.num_relations, s.num_higher_relations, s.dim, s.higher_dim}) w.U64(v);
  w.U64(backbone_tag.size());
  w.Bytes(backbone_tag);
  w.U64(params.seed);
  w.Block(params.entities.data());
  w.Block(params.relations.data());
  w.Block(params.higher_relations.data());
  w.Block(params.projection.data());
  return std::move(w).Take();
}

ModelParams ParseCheckpoint(std::string_view blob) {
  Reader r(blob);
  if (r.Bytes(kCheckpointMagic.size()) != kCheckpointMagic) throw ParseError("not a checkpoint (bad magic)");
  const std::uint64_t version = r.U64();
  if (version != kCheckpointVersion) throw ParseError("unsupported checkpoint version " + std::to_string(version));
  ModelShape shape;
  shape.num_entities = r.U64();
  shape.num_relations = r.U64();
  shape.num_higher_relations = r.U64();
  shape.dim = r.U64();
  shape.higher_dim = r.U64();
  const std::uint64_t tag_len = r.U64();
  if (tag_len > 64) throw ParseError("checkpoint backbone tag too long");
  const std::string tag(r.Bytes(tag_len));
  if (tag != DefaultScorer().tag()) throw ParseError("unsupported backbone '" + tag + "'");
  const std::uint64_t seed = r.U64();
  // Guard the allocation against a corrupt header before sizing the tables.
  const std::uint64_t reals = (shape.num_entities + shape.num_relations) * 4 * shape.dim +
                              shape.num_higher_relations * 4 * shape.higher_dim + shape.higher_dim * 3 * shape.dim;
  if (reals > blob.size() / sizeof(double)) throw ParseError("checkpoint truncated (header promises more data)");

  ModelParams p = ModelParams::Initialize(shape, seed);
  r.Block(p.entities.data());
  r.Block(p.relations.data());
  r.Block(p.higher_relations.data());
  r.Block(p.projection.data());
  if (!r.done()) throw ParseError("trailing bytes after checkpoint");
  return p;
}

void CheckShape(const ModelParams& params, const BiLevelKG& kg) {
  const ModelShape& s = params.shape;
  auto mismatch = [](const char* what, std::size_t ckpt, std::size_t graph) {
    throw ValidationError(fmt::format("checkpoint/graph shape mismatch: {} {} vs {}", what, ckpt, graph));
  };
  if (s.num_entities != kg.num_entities()) mismatch("|V|", s.num_entities, kg.num_entities());
  if (s.num_relations != kg.num_relations()) mismatch("|R|", s.num_relations, kg.num_relations());
  if (s.num_higher_relations != kg.num_higher_relations()) {
    mismatch("|R^|", s.num_higher_relations, kg.num_higher_relations());
  }
}

std::string EntityCsv(const ModelParams& params) {
  std::string out = CsvHeader(params.entities.width());
  for (std::size_t e = 0; e < params.entities.rows(); ++e) AppendRow(out, e, params.entities.row(e));
  return out;
}

std::string TripletCsv(const ModelParams& params, const BiLevelKG& kg) {
  std::string out = CsvHeader(4 * params.shape.higher_dim);
  for (TripletId id : kg.base_split(Split::kTrain)) {
    AppendRow(out, id.index(), TripletEmbedding(params, kg.triplet(id)));
  }
  return out;
}

}  // namespace bilevel::embed
