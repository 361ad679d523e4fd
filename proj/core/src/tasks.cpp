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


#include "bilevel/tasks.hpp"

#include <algorithm>
#include <functional>
#include <thread>
#include <unordered_map>

#include "bilevel/errors.hpp"

namespace bilevel::eval {
namespace {

using embed::ModelParams;

std::uint64_t Key(std::uint32_t a, std::uint32_t b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

using MultiIndex = std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>;

double DotSpan(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// W^T q applied per component plane; returns 3 blocks of 4d reals (h, r, t).
std::vector<double> TransposeProject(const embed::Projection& w, std::span<const double> q, std::size_t dim) {
  std::vector<double> out(3 * 4 * dim, 0.0);
  for (std::size_t k = 0; k < w.rows(); ++k) {
    const double* qk = &q[4 * k];
    for (std::size_t col = 0; col < w.cols(); ++col) {
      const double wk = w.at(k, col);
      double* o = &out[4 * col];
      o[0] += wk * qk[0];
      o[1] += wk * qk[1];
      o[2] += wk * qk[2];
      o[3] += wk * qk[3];
    }
  }
  return out;
}

struct Job {
  QueryForm form;
  std::uint32_t source;
};

// Runs `rank(job) -> double` over jobs, possibly in parallel, preserving order.
void RunJobs(const std::vector<Job>& jobs, std::size_t workers,
             const std::function<double(const Job&, std::vector<double>&)>& rank,
             std::vector<double>& ranks) {
  ranks.assign(jobs.size(), 0.0);
  workers = std::max<std::size_t>(1, std::min(workers, jobs.size()));
  auto body = [&](std::size_t w) {
    std::vector<double> scratch;
    const std::size_t begin = jobs.size() * w / workers, end = jobs.size() * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) ranks[i] = rank(jobs[i], scratch);
  };
  if (workers == 1) {
    body(0);
    return;
  }
  std::vector<std::jthread> threads;
  for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(body, w);
}

void Finalize(RankReport& report) {
  if (report.queries.empty()) return;
  std::vector<double> ranks;
  ranks.reserve(report.queries.size());
  for (const auto& q : report.queries) ranks.push_back(q.rank);
  report.metrics = Aggregate(ranks);
}

struct HigherIndex {
  MultiIndex tails;  // (lhs, rel) -> rhs ids, over every split
  MultiIndex heads;  // (rel, rhs) -> lhs ids
};

HigherIndex BuildHigherIndex(const BiLevelKG& kg) {
  HigherIndex idx;
  for (Split s : kAllSplits) {
    for (const auto& h : kg.higher_split(s)) {
      idx.tails[Key(h.lhs.value, h.relation.value)].push_back(h.rhs.value);
      idx.heads[Key(h.relation.value, h.rhs.value)].push_back(h.lhs.value);
    }
  }
  return idx;
}

const std::vector<std::uint32_t>& Lookup(const MultiIndex& m, std::uint64_t key) {
  static const std::vector<std::uint32_t> kEmpty;
  auto it = m.find(key);
  return it == m.end() ? kEmpty : it->second;
}

}  // namespace

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kTripletPrediction:
      return "tp";
    case Task::kConditionalLinkPrediction:
      return "clp";
    case Task::kBaseLinkPrediction:
      return "blp";
  }
  return "?";
}

std::optional<Task> ParseTask(std::string_view name) {
  if (name == "tp") return Task::kTripletPrediction;
  if (name == "clp") return Task::kConditionalLinkPrediction;
  if (name == "blp") return Task::kBaseLinkPrediction;
  return std::nullopt;
}

std::string_view QueryFormName(QueryForm form) {
  switch (form) {
    case QueryForm::kTail:
      return "tail";
    case QueryForm::kHead:
      return "head";
    case QueryForm::kRhsTail:
      return "rhs_tail";
    case QueryForm::kRhsHead:
      return "rhs_head";
    case QueryForm::kLhsTail:
      return "lhs_tail";
    case QueryForm::kLhsHead:
      return "lhs_head";
  }
  return "?";
}

RankReport EvalTripletPrediction(const ModelParams& params, const BiLevelKG& kg, Split split,
                                 const EvalOptions& options) {
  RankReport report;
  report.task = Task::kTripletPrediction;
  report.split = split;
  const std::size_t n_cand = kg.num_train_triplets();
  report.num_candidates = n_cand;
  const auto higher = kg.higher_split(split);
  const HigherIndex index = BuildHigherIndex(kg);
  const auto universe = kg.triplets().triplets();
  const embed::Scorer& scorer = embed::DefaultScorer();
  const std::size_t dim = params.shape.dim, width = 4 * dim, hwidth = 4 * params.shape.higher_dim;

  std::vector<Job> jobs;
  for (std::uint32_t i = 0; i < higher.size(); ++i) {
    for (QueryForm form : {QueryForm::kTail, QueryForm::kHead}) {
      TripletId gold = form == QueryForm::kTail ? higher[i].rhs : higher[i].lhs;
      if (!kg.in_train(gold)) {
        ++report.skipped;
        continue;
      }
      jobs.push_back({form, i});
    }
  }

  auto rank = [&](const Job& job, std::vector<double>& scores) {
    const HigherTriplet& ht = higher[job.source];
    const bool tail = job.form == QueryForm::kTail;
    const TripletId context = tail ? ht.lhs : ht.rhs;
    const TripletId gold = tail ? ht.rhs : ht.lhs;
    const auto ctx = embed::TripletEmbedding(params, universe[context.index()]);
    std::vector<double> q(hwidth);
    auto rel = params.higher_relations.row(ht.relation.index());
    if (tail) {
      scorer.TailQuery(ctx, rel, q);
    } else {
      scorer.HeadQuery(rel, ctx, q);
    }
    // <q, W[h; r; t]> = <a_h, h> + <a_r, r> + <a_t, t>
    const auto a = TransposeProject(params.projection, q, dim);
    const std::span<const double> a_h(a.data(), width), a_r(a.data() + width, width),
        a_t(a.data() + 2 * width, width);
    std::vector<double> by_head(kg.num_entities()), by_tail(kg.num_entities()), by_rel(kg.num_relations());
    for (std::size_t e = 0; e < kg.num_entities(); ++e) {
      by_head[e] = DotSpan(a_h, params.entities.row(e));
      by_tail[e] = DotSpan(a_t, params.entities.row(e));
    }
    for (std::size_t r = 0; r < kg.num_relations(); ++r) by_rel[r] = DotSpan(a_r, params.relations.row(r));
    scores.resize(n_cand);
    for (std::size_t x = 0; x < n_cand; ++x) {
      const BaseTriplet& t = universe[x];
      scores[x] = by_head[t.head.index()] + by_rel[t.relation.index()] + by_tail[t.tail.index()];
    }
    const auto& known = tail ? Lookup(index.tails, Key(ht.lhs.value, ht.relation.value))
                             : Lookup(index.heads, Key(ht.relation.value, ht.rhs.value));
    std::vector<std::size_t> filtered;
    for (std::uint32_t x : known) {
      if (x != gold.value && x < n_cand) filtered.push_back(x);
    }
    return FilteredRank(scores, gold.index(), filtered);
  };

  std::vector<double> ranks;
  RunJobs(jobs, options.workers, rank, ranks);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    report.queries.push_back({jobs[i].form, jobs[i].source, higher[jobs[i].source].relation, ranks[i]});
  }
  Finalize(report);
  return report;
}

RankReport EvalConditionalLinkPrediction(const ModelParams& params, const BiLevelKG& kg, Split split,
                                         const EvalOptions& options) {
  RankReport report;
  report.task = Task::kConditionalLinkPrediction;
  report.split = split;
  report.num_candidates = kg.num_entities();
  const auto higher = kg.higher_split(split);
  const HigherIndex index = BuildHigherIndex(kg);
  const auto universe = kg.triplets().triplets();
  const embed::Scorer& scorer = embed::DefaultScorer();
  const std::size_t dim = params.shape.dim, width = 4 * dim, hwidth = 4 * params.shape.higher_dim;
  const double lambda = options.lambda_high;

  std::vector<Job> jobs;
  for (std::uint32_t i = 0; i < higher.size(); ++i) {
    for (QueryForm form : {QueryForm::kRhsTail, QueryForm::kRhsHead, QueryForm::kLhsTail, QueryForm::kLhsHead}) {
      jobs.push_back({form, i});
    }
  }

  auto rank = [&](const Job& job, std::vector<double>& scores) {
    const HigherTriplet& ht = higher[job.source];
    const bool on_rhs = job.form == QueryForm::kRhsTail || job.form == QueryForm::kRhsHead;
    const bool want_tail = job.form == QueryForm::kRhsTail || job.form == QueryForm::kLhsTail;
    const BaseTriplet& context = universe[(on_rhs ? ht.lhs : ht.rhs).index()];
    const BaseTriplet& open = universe[(on_rhs ? ht.rhs : ht.lhs).index()];
    auto rel = params.higher_relations.row(ht.relation.index());

    // Higher-level part: f(context, r^, X) = <u, X> on the rhs, f(X, r^, context) = <u, X> on the lhs.
    const auto ctx = embed::TripletEmbedding(params, context);
    std::vector<double> u(hwidth);
    if (on_rhs) {
      scorer.TailQuery(ctx, rel, u);
    } else {
      scorer.HeadQuery(rel, ctx, u);
    }
    const auto a = TransposeProject(params.projection, u, dim);
    const std::span<const double> a_h(a.data(), width), a_r(a.data() + width, width),
        a_t(a.data() + 2 * width, width);

    std::vector<double> q0(width);
    auto r_open = params.relations.row(open.relation.index());
    double fixed = DotSpan(a_r, r_open);
    std::span<const double> a_var;
    if (want_tail) {
      scorer.TailQuery(params.entities.row(open.head.index()), r_open, q0);
      fixed += DotSpan(a_h, params.entities.row(open.head.index()));
      a_var = a_t;
    } else {
      scorer.HeadQuery(r_open, params.entities.row(open.tail.index()), q0);
      fixed += DotSpan(a_t, params.entities.row(open.tail.index()));
      a_var = a_h;
    }
    scores.resize(kg.num_entities());
    for (std::size_t x = 0; x < kg.num_entities(); ++x) {
      auto ex = params.entities.row(x);
      scores[x] = DotSpan(q0, ex) + lambda * (fixed + DotSpan(a_var, ex));
    }

    const EntityId gold = want_tail ? open.tail : open.head;
    const auto& known = on_rhs ? Lookup(index.tails, Key(ht.lhs.value, ht.relation.value))
                               : Lookup(index.heads, Key(ht.relation.value, ht.rhs.value));
    std::vector<std::size_t> filtered;
    for (std::uint32_t id : known) {
      const BaseTriplet& t = universe[id];
      if (t.relation != open.relation) continue;
      if (want_tail && t.head == open.head && t.tail != gold) filtered.push_back(t.tail.index());
      if (!want_tail && t.tail == open.tail && t.head != gold) filtered.push_back(t.head.index());
    }
    return FilteredRank(scores, gold.index(), filtered);
  };

  std::vector<double> ranks;
  RunJobs(jobs, options.workers, rank, ranks);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    report.queries.push_back({jobs[i].form, jobs[i].source, higher[jobs[i].source].relation, ranks[i]});
  }
  Finalize(report);
  return report;
}

RankReport EvalBaseLinkPrediction(const ModelParams& params, const BiLevelKG& kg, Split split,
                                  const EvalOptions& options) {
  RankReport report;
  report.task = Task::kBaseLinkPrediction;
  report.split = split;
  report.num_candidates = kg.num_entities();
  const auto ids = kg.base_split(split);
  const embed::Scorer& scorer = embed::DefaultScorer();
  const std::size_t width = 4 * params.shape.dim;

  MultiIndex tails, heads;
  for (const BaseTriplet& t : kg.triplets().triplets()) {
    tails[Key(t.head.value, t.relation.value)].push_back(t.tail.value);
    heads[Key(t.relation.value, t.tail.value)].push_back(t.head.value);
  }

  std::vector<Job> jobs;
  for (std::uint32_t i = 0; i < ids.size(); ++i) {
    jobs.push_back({QueryForm::kTail, i});
    jobs.push_back({QueryForm::kHead, i});
  }

  auto rank = [&](const Job& job, std::vector<double>& scores) {
    const BaseTriplet& t = kg.triplet(ids[job.source]);
    const bool tail = job.form == QueryForm::kTail;
    std::vector<double> q(width);
    auto r = params.relations.row(t.relation.index());
    if (tail) {
      scorer.TailQuery(params.entities.row(t.head.index()), r, q);
    } else {
      scorer.HeadQuery(r, params.entities.row(t.tail.index()), q);
    }
    scores.resize(kg.num_entities());
    for (std::size_t x = 0; x < kg.num_entities(); ++x) scores[x] = DotSpan(q, params.entities.row(x));
    const EntityId gold = tail ? t.tail : t.head;
    const auto& known = tail ? Lookup(tails, Key(t.head.value, t.relation.value))
                             : Lookup(heads, Key(t.relation.value, t.tail.value));
    std::vector<std::size_t> filtered;
    for (std::uint32_t x : known) {
      if (x != gold.value) filtered.push_back(x);
    }
    return FilteredRank(scores, gold.index(), filtered);
  };

  std::vector<double> ranks;
  RunJobs(jobs, options.workers, rank, ranks);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    report.queries.push_back({jobs[i].form, jobs[i].source, std::nullopt, ranks[i]});
  }
  Finalize(report);
  return report;
}

RankReport Evaluate(Task task, const ModelParams& params, const BiLevelKG& kg, Split split,
                    const EvalOptions& options) {
  switch (task) {
    case Task::kTripletPrediction:
      return EvalTripletPrediction(params, kg, split, options);
    case Task::kConditionalLinkPrediction:
      return EvalConditionalLinkPrediction(params, kg, split, options);
    case Task::kBaseLinkPrediction:
      return EvalBaseLinkPrediction(params, kg, split, options);
  }
  throw ContractError("unknown task");
}

std::vector<RelationBreakdownRow> PerRelationBreakdown(const RankReport& report, const BiLevelKG& kg) {
  if (report.task == Task::kBaseLinkPrediction) {
    throw ContractError("per-relation breakdown needs a TP or CLP report");
  }
  const std::size_t n = kg.num_higher_relations();
  std::vector<RelationBreakdownRow> rows(n);
  std::vector<std::vector<double>> ranks(n);
  for (std::size_t r = 0; r < n; ++r) rows[r].relation = HigherRelationId(r);
  for (const auto& h : kg.higher_split(report.split)) ++rows[h.relation.index()].frequency;
  for (const auto& q : report.queries) {
    if (q.relation) ranks[q.relation->index()].push_back(q.rank);
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (!ranks[r].empty()) rows[r].metrics = Aggregate(ranks[r]);
  }
  return rows;
}

}  // namespace bilevel::eval
