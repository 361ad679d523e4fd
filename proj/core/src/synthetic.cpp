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


#include "bilevel/synthetic.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "bilevel/errors.hpp"

namespace bilevel::synthetic {
namespace {

using Pair = std::pair<std::size_t, std::size_t>;

constexpr std::size_t kMultipliers[] = {7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 49, 53, 59};

std::string Entity(std::size_t x) {
  std::string s = std::to_string(x);
  return "e" + std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

std::string Line(std::size_t h, const std::string& r, std::size_t t) {
  return Entity(h) + "\t" + r + "\t" + Entity(t);
}

}  // namespace

DatasetText Generate(const Options& o) {
  const std::size_t n = o.num_entities;
  if (n < 2) throw ContractError("synthetic graph needs at least two entities");
  if (o.implication_facts > n || o.equivalence_facts > n || o.implication_extra > n) {
    throw ContractError("synthetic fact counts exceed the entity count");
  }
  if (o.filler_facts > 2 * n) throw ContractError("filler_facts exceeds 2 * num_entities");
  std::mt19937_64 rng(o.seed);
  std::size_t next_multiplier = 0;
  // Fresh modular map per call; multipliers are taken in order so that maps differ.
  auto new_map = [&]() {
    std::size_t a = kMultipliers[next_multiplier++ % std::size(kMultipliers)];
    while (std::gcd(a, n) != 1) a = kMultipliers[next_multiplier++ % std::size(kMultipliers)];
    const std::size_t b = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    return [a, b, n](std::size_t x) { return (a * x + b) % n; };
  };
  auto sample_domain = [&](std::size_t k) {
    std::vector<std::size_t> xs(n);
    std::iota(xs.begin(), xs.end(), 0);
    std::shuffle(xs.begin(), xs.end(), rng);
    xs.resize(k);
    std::sort(xs.begin(), xs.end());
    return xs;
  };

  DatasetText out;
  std::array<std::vector<std::string>, 3> base, higher;

  // implication pair
  const auto sub_map = new_map();
  std::vector<Pair> sub;
  for (std::size_t x : sample_domain(o.implication_facts)) sub.emplace_back(x, sub_map(x));
  std::set<Pair> super(sub.begin(), sub.end());
  const auto extra_map = new_map();
  for (std::size_t x : sample_domain(n)) {
    if (super.size() >= sub.size() + o.implication_extra) break;
    super.emplace(x, extra_map(x));
  }
  for (const auto& [h, t] : sub) base[0].push_back(Line(h, "sub", t));
  for (const auto& [h, t] : super) base[0].push_back(Line(h, "super", t));
  std::vector<std::string> edges;
  for (const auto& [h, t] : sub) edges.push_back(Line(h, "sub", t) + "\timplies\t" + Line(h, "super", t));

  // equivalence pair
  const auto fwd_map = new_map();
  std::vector<Pair> fwd;
  for (std::size_t x : sample_domain(o.equivalence_facts)) fwd.emplace_back(x, fwd_map(x));
  for (const auto& [h, t] : fwd) {
    base[0].push_back(Line(h, "fwd", t));
    base[0].push_back(Line(t, "bwd", h));
    edges.push_back(Line(h, "fwd", t) + "\tequivalent_to\t" + Line(t, "bwd", h));
  }

  // filler relations: union of two maps, some facts held out
  for (std::size_t k = 0; k < o.filler_relations; ++k) {
    const std::string rel = "rel" + std::to_string(k);
    const auto f = new_map();
    const auto g = new_map();
    std::set<Pair> pool;
    for (std::size_t x = 0; x < n; ++x) {
      pool.emplace(x, f(x));
      pool.emplace(x, g(x));
    }
    std::vector<Pair> facts(pool.begin(), pool.end());
    std::shuffle(facts.begin(), facts.end(), rng);
    facts.resize(std::min(facts.size(), o.filler_facts));
    const auto held = static_cast<std::size_t>(o.base_holdout * static_cast<double>(facts.size()));
    for (std::size_t i = 0; i < facts.size(); ++i) {
      const std::size_t split = i < held ? 1 : i < 2 * held ? 2 : 0;
      base[split].push_back(Line(facts[i].first, rel, facts[i].second));
    }
  }

  std::shuffle(edges.begin(), edges.end(), rng);
  const auto n_valid = static_cast<std::size_t>(o.higher_valid * static_cast<double>(edges.size()));
  const auto n_test = static_cast<std::size_t>(o.higher_test * static_cast<double>(edges.size()));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::size_t split = i < n_valid ? 1 : i < n_valid + n_test ? 2 : 0;
    higher[split].push_back(edges[i]);
  }

  for (std::size_t s = 0; s < 3; ++s) {
    for (const auto& l : base[s]) out.base[s] += l + "\n";
    for (const auto& l : higher[s]) out.higher[s] += l + "\n";
  }
  return out;
}

}  // namespace bilevel::synthetic
