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


#include "bilevel/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bilevel/errors.hpp"

namespace bilevel {
namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Splits on '\t'; strips one trailing '\r'.
std::vector<std::string_view> SplitFields(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (!(line.empty() || line == "\r")) fn(line, line_no);
    start = end + 1;
  }
}

std::string Where(std::string_view source, std::size_t line_no) {
  return std::string(source) + ":" + std::to_string(line_no);
}

void RequireFields(const std::vector<std::string_view>& fields, std::size_t expected,
                   std::string_view source, std::size_t line_no) {
  if (fields.size() != expected) {
    throw ParseError(Where(source, line_no) + ": expected " + std::to_string(expected) +
                     " tab-separated fields, got " + std::to_string(fields.size()));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].empty()) {
      throw ParseError(Where(source, line_no) + ": field " + std::to_string(i + 1) + " is empty");
    }
  }
}

template <typename T>
std::vector<std::uint32_t> CsrOffsets(std::size_t n, const std::vector<std::pair<std::uint32_t, T>>& items) {
  std::vector<std::uint32_t> offsets(n + 1, 0);
  for (const auto& [k, v] : items) ++offsets[k + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  return offsets;
}

}  // namespace

TripletId TripletIndex::Insert(const BaseTriplet& t) {
  auto [it, inserted] = index_.try_emplace(t, TripletId(triplets_.size()));
  if (inserted) triplets_.push_back(t);
  return it->second;
}

std::optional<TripletId> TripletIndex::Find(const BaseTriplet& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TripletIndex TripletIndex::FromSplits(std::span<const std::vector<BaseTriplet>, 3> splits) {
  TripletIndex index;
  for (const auto& split : splits) {
    for (const auto& t : split) index.Insert(t);
  }
  return index;
}

std::vector<BaseTriplet> ParseBaseTriples(std::string_view text, Vocabulary& vocab,
                                          std::string_view source) {
  std::vector<BaseTriplet> out;
  ForEachLine(text, [&](std::string_view line, std::size_t line_no) {
    auto f = SplitFields(line);
    RequireFields(f, 3, source, line_no);
    out.push_back({vocab.entities.Intern(f[0]), vocab.relations.Intern(f[1]),
                   vocab.entities.Intern(f[2])});
  });
  return out;
}

std::vector<BaseTriplet> LoadBaseTriples(const std::filesystem::path& path, Vocabulary& vocab) {
  return ParseBaseTriples(ReadFile(path), vocab, path.string());
}

std::vector<HigherTriplet> ParseHigherTriples(std::string_view text, Vocabulary& vocab,
                                              const TripletIndex& index,
                                              std::string_view source) {
  std::vector<HigherTriplet> out;
  ForEachLine(text, [&](std::string_view line, std::size_t line_no) {
    auto f = SplitFields(line);
    RequireFields(f, 7, source, line_no);
    auto resolve = [&](std::size_t at, const char* side) {
      auto h = vocab.entities.Find(f[at]);
      auto r = vocab.relations.Find(f[at + 1]);
      auto t = vocab.entities.Find(f[at + 2]);
      std::optional<TripletId> id;
      if (h && r && t) id = index.Find({*h, *r, *t});
      if (!id) {
        throw IntegrityError(Where(source, line_no) + ": " + side + " triplet (" +
                             std::string(f[at]) + ", " + std::string(f[at + 1]) + ", " +
                             std::string(f[at + 2]) + ") is not a known base triplet");
      }
      return *id;
    };
    TripletId lhs = resolve(0, "left");
    TripletId rhs = resolve(4, "right");
    out.push_back({lhs, vocab.higher_relations.Intern(f[3]), rhs});
  });
  return out;
}

std::vector<HigherTriplet> LoadHigherTriples(const std::filesystem::path& path, Vocabulary& vocab,
                                             const TripletIndex& index) {
  return ParseHigherTriples(ReadFile(path), vocab, index, path.string());
}

BiLevelKG BuildGraph(Vocabulary vocab, const BaseSplits& base, const HigherSplits& higher,
                     std::vector<std::string>* warnings) {
  BiLevelKG kg;
  kg.vocab_ = std::move(vocab);
  kg.triplets_ = TripletIndex::FromSplits(base);

  auto label = [&](const BaseTriplet& t) {
    return "(" + kg.vocab_.entities.Label(t.head) + ", " + kg.vocab_.relations.Label(t.relation) +
           ", " + kg.vocab_.entities.Label(t.tail) + ")";
  };
  auto warn = [&](std::string msg) {
    if (warnings) warnings->push_back(std::move(msg));
  };

  // Base splits: dedup within, reject across.
  std::vector<int> owner(kg.triplets_.size(), -1);
  std::vector<std::string> overlaps;
  for (std::size_t s = 0; s < 3; ++s) {
    for (const auto& t : base[s]) {
      TripletId id = *kg.triplets_.Find(t);
      int& o = owner[id.index()];
      if (o == static_cast<int>(s)) {
        warn("duplicate base triplet " + label(t) + " collapsed in " +
             std::string(SplitName(static_cast<Split>(s))));
        continue;
      }
      if (o != -1) {
        overlaps.push_back(label(t) + " in " + std::string(SplitName(static_cast<Split>(o))) +
                           " and " + std::string(SplitName(static_cast<Split>(s))));
        continue;
      }
      o = static_cast<int>(s);
      kg.base_splits_[s].push_back(id);
    }
  }

  std::unordered_map<HigherTriplet, int> higher_owner;
  for (std::size_t s = 0; s < 3; ++s) {
    for (const auto& h : higher[s]) {
      if (h.lhs.index() >= kg.triplets_.size() || h.rhs.index() >= kg.triplets_.size()) {
        throw IntegrityError("higher triplet references an unknown base triplet id");
      }
      if (h.relation.index() >= kg.vocab_.higher_relations.size()) {
        throw IntegrityError("higher triplet references an unknown higher relation id");
      }
      auto [it, inserted] = higher_owner.try_emplace(h, static_cast<int>(s));
      if (!inserted) {
        const std::string desc = "<" + label(kg.triplets_.Get(h.lhs)) + ", " +
                                 kg.vocab_.higher_relations.Label(h.relation) + ", " +
                                 label(kg.triplets_.Get(h.rhs)) + ">";
        if (it->second == static_cast<int>(s)) {
          warn("duplicate higher triplet " + desc + " collapsed in " +
               std::string(SplitName(static_cast<Split>(s))));
        } else {
          overlaps.push_back(desc + " in " + std::string(SplitName(static_cast<Split>(it->second))) +
                             " and " + std::string(SplitName(static_cast<Split>(s))));
        }
        continue;
      }
      kg.higher_splits_[s].push_back(h);
    }
  }

  if (!overlaps.empty()) {
    std::string msg = "splits overlap on " + std::to_string(overlaps.size()) + " triplet(s):";
    for (const auto& o : overlaps) msg += "\n  " + o;
    throw ValidationError(msg);
  }

  kg.BuildIndices();
  return kg;
}

void BiLevelKG::BuildIndices() {
  train_set_.clear();
  for (TripletId id : base_splits_[0]) train_set_.insert(triplets_.Get(id));
  higher_all_.clear();
  higher_train_.clear();
  for (std::size_t s = 0; s < 3; ++s) {
    for (const auto& h : higher_splits_[s]) higher_all_.insert(h);
  }
  for (const auto& h : higher_splits_[0]) higher_train_.insert(h);

  const std::size_t n_ent = num_entities();

  std::vector<std::pair<std::uint32_t, std::pair<RelationId, EntityId>>> edges;
  edges.reserve(base_splits_[0].size());
  for (TripletId id : base_splits_[0]) {
    const auto& t = triplets_.Get(id);
    edges.push_back({t.head.value, {t.relation, t.tail}});
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  out_offsets_ = CsrOffsets(n_ent, edges);
  out_edges_.clear();
  for (const auto& e : edges) out_edges_.push_back(e.second);

  // Membership covers the train split plus every side of a train higher triplet.
  std::vector<char> relevant(triplets_.size(), 0);
  for (TripletId id : base_splits_[0]) relevant[id.index()] = 1;
  for (const auto& h : higher_splits_[0]) {
    relevant[h.lhs.index()] = 1;
    relevant[h.rhs.index()] = 1;
  }
  std::vector<std::pair<std::uint32_t, TripletId>> members;
  for (std::size_t i = 0; i < relevant.size(); ++i) {
    if (!relevant[i]) continue;
    const auto& t = triplets_.Get(TripletId(i));
    members.push_back({t.head.value, TripletId(i)});
    if (t.tail != t.head) members.push_back({t.tail.value, TripletId(i)});
  }
  std::stable_sort(members.begin(), members.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  member_offsets_ = CsrOffsets(n_ent, members);
  members_.clear();
  for (const auto& m : members) members_.push_back(m.second);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> inc;
  for (std::size_t i = 0; i < higher_splits_[0].size(); ++i) {
    const auto& h = higher_splits_[0][i];
    inc.push_back({h.lhs.value, static_cast<std::uint32_t>(i)});
    if (h.rhs != h.lhs) inc.push_back({h.rhs.value, static_cast<std::uint32_t>(i)});
  }
  std::stable_sort(inc.begin(), inc.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  incidence_offsets_ = CsrOffsets(triplets_.size(), inc);
  incidence_.clear();
  for (const auto& x : inc) incidence_.push_back(x.second);
}

std::optional<Split> BiLevelKG::split_of(TripletId id) const {
  std::size_t i = id.index();
  std::size_t n0 = base_splits_[0].size(), n1 = base_splits_[1].size(), n2 = base_splits_[2].size();
  if (i < n0) return Split::kTrain;
  if (i < n0 + n1) return Split::kValid;
  if (i < n0 + n1 + n2) return Split::kTest;
  return std::nullopt;
}

std::span<const std::pair<RelationId, EntityId>> BiLevelKG::train_out_edges(EntityId e) const {
  if (out_offsets_.empty()) return {};
  return std::span(out_edges_).subspan(out_offsets_[e.index()],
                                       out_offsets_[e.index() + 1] - out_offsets_[e.index()]);
}

std::span<const TripletId> BiLevelKG::membership(EntityId e) const {
  if (member_offsets_.empty()) return {};
  return std::span(members_).subspan(member_offsets_[e.index()],
                                     member_offsets_[e.index() + 1] - member_offsets_[e.index()]);
}

std::span<const std::uint32_t> BiLevelKG::higher_incidence(TripletId id) const {
  if (incidence_offsets_.empty()) return {};
  return std::span(incidence_).subspan(
      incidence_offsets_[id.index()], incidence_offsets_[id.index() + 1] - incidence_offsets_[id.index()]);
}

StatsReport BiLevelKG::Stats() const {
  StatsReport r;
  r.num_entities = num_entities();
  r.num_relations = num_relations();
  r.num_triplets = base_splits_[0].size() + base_splits_[1].size() + base_splits_[2].size();
  r.num_higher_relations = num_higher_relations();
  std::vector<char> involved(triplets_.size(), 0);
  for (const auto& split : higher_splits_) {
    r.num_higher_triplets += split.size();
    for (const auto& h : split) {
      involved[h.lhs.index()] = 1;
      involved[h.rhs.index()] = 1;
    }
  }
  r.num_involved_triplets = static_cast<std::size_t>(std::count(involved.begin(), involved.end(), 1));
  return r;
}

CrossSplitReport BiLevelKG::CrossSplit() const {
  CrossSplitReport r;
  for (std::size_t s = 0; s < 3; ++s) {
    for (const auto& h : higher_splits_[s]) {
      auto a = split_of(h.lhs), b = split_of(h.rhs);
      if (a) ++r.side_split_counts[s][static_cast<std::size_t>(*a)];
      if (b) ++r.side_split_counts[s][static_cast<std::size_t>(*b)];
      if (a != Split::kTrain || b != Split::kTrain) ++r.higher_with_non_train_side[s];
    }
  }
  return r;
}

std::string BiLevelKG::SerializeBase(Split s) const {
  std::string out;
  for (TripletId id : base_splits_[Index(s)]) {
    const auto& t = triplets_.Get(id);
    out += vocab_.entities.Label(t.head) + '\t' + vocab_.relations.Label(t.relation) + '\t' +
           vocab_.entities.Label(t.tail) + '\n';
  }
  return out;
}

std::string BiLevelKG::SerializeHigher(Split s) const {
  std::string out;
  auto side = [&](TripletId id) {
    const auto& t = triplets_.Get(id);
    return vocab_.entities.Label(t.head) + '\t' + vocab_.relations.Label(t.relation) + '\t' +
           vocab_.entities.Label(t.tail);
  };
  for (const auto& h : higher_splits_[Index(s)]) {
    out += side(h.lhs) + '\t' + vocab_.higher_relations.Label(h.relation) + '\t' + side(h.rhs) + '\n';
  }
  return out;
}

DatasetPaths DatasetPaths::FromDirectory(const std::filesystem::path& dir) {
  DatasetPaths p;
  for (Split s : kAllSplits) {
    auto i = static_cast<std::size_t>(s);
    p.base[i] = dir / ("base_" + std::string(SplitName(s)) + ".tsv");
    p.higher[i] = dir / ("higher_" + std::string(SplitName(s)) + ".tsv");
  }
  return p;
}

BiLevelKG LoadDataset(const DatasetPaths& paths, std::vector<std::string>* warnings) {
  Vocabulary vocab;
  BaseSplits base;
  for (std::size_t s = 0; s < 3; ++s) base[s] = LoadBaseTriples(paths.base[s], vocab);
  TripletIndex index = TripletIndex::FromSplits(base);
  HigherSplits higher;
  for (std::size_t s = 0; s < 3; ++s) higher[s] = LoadHigherTriples(paths.higher[s], vocab, index);
  return BuildGraph(std::move(vocab), base, higher, warnings);
}

BiLevelKG ParseDataset(const DatasetText& text, std::vector<std::string>* warnings) {
  static constexpr std::array<std::string_view, 3> kBaseNames = {"base_train", "base_valid", "base_test"};
  static constexpr std::array<std::string_view, 3> kHigherNames = {"higher_train", "higher_valid", "higher_test"};
  Vocabulary vocab;
  BaseSplits base;
  for (std::size_t s = 0; s < 3; ++s) base[s] = ParseBaseTriples(text.base[s], vocab, kBaseNames[s]);
  TripletIndex index = TripletIndex::FromSplits(base);
  HigherSplits higher;
  for (std::size_t s = 0; s < 3; ++s) {
    higher[s] = ParseHigherTriples(text.higher[s], vocab, index, kHigherNames[s]);
  }
  return BuildGraph(std::move(vocab), base, higher, warnings);
}

}  // namespace bilevel
