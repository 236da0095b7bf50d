// Copyright 2026 The Synthrisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synthrisk/distance.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>

#include "synthrisk/parallel.h"

namespace synthrisk {

namespace {

double ContinuousTerm(bool miss_a, double a, bool miss_b, double b, double span) {
  if (miss_a && miss_b) return 0.0;
  if (miss_a || miss_b) return 1.0;
  if (span <= 0.0) return 0.0;
  return std::min(1.0, std::abs(a - b) / span);
}

struct ColumnPair {
  size_t query_col;
  size_t corpus_col;
  bool categorical;
  double span;
};

std::vector<ColumnPair> ResolveColumns(const Dataset& a, const Dataset& b,
                                       std::span<const std::string> cols,
                                       const RangeTable& ranges) {
  if (cols.empty()) throw InvalidArgument("attribute subset must not be empty");
  std::vector<ColumnPair> out;
  out.reserve(cols.size());
  for (const auto& name : cols) {
    const size_t ia = a.ColumnIndex(name);
    const size_t ib = b.ColumnIndex(name);
    const ColumnKind kind = a.column(ia).kind();
    if (b.column(ib).kind() != kind) {
      throw InvalidArgument("attribute '" + name + "' has different kinds in the two datasets");
    }
    double span = 0.0;
    if (kind == ColumnKind::kContinuous) {
      auto range = ranges.Find(name);
      if (!range) throw InvalidArgument("no range for continuous attribute '" + name + "'");
      span = range->max - range->min;
    }
    out.push_back({ia, ib, kind == ColumnKind::kCategorical, span});
  }
  return out;
}

// Query categorical codes re-expressed in the corpus dictionary. Tokens that
// never occur in the corpus get fresh codes beyond its dictionary.
std::vector<int32_t> RemapCodes(const Column& query, const Column& corpus) {
  std::vector<int32_t> mapping(query.categories().size());
  int32_t next = static_cast<int32_t>(corpus.categories().size());
  for (size_t i = 0; i < mapping.size(); ++i) {
    auto code = corpus.FindCode(query.categories()[i]);
    mapping[i] = code ? *code : next++;
  }
  std::vector<int32_t> out(query.size());
  for (size_t r = 0; r < query.size(); ++r) {
    const int32_t c = query.code(r);
    out[r] = c < 0 ? -1 : mapping[c];
  }
  return out;
}

void SelectNearest(std::span<const double> dist, size_t k, NeighborSet& out) {
  out.clear();
  if (k == 1) {
    size_t best = 0;
    for (size_t j = 1; j < dist.size(); ++j) {
      if (dist[j] < dist[best]) best = j;
    }
    out.push_back({best, dist[best]});
    return;
  }
  using Entry = std::pair<double, size_t>;
  std::priority_queue<Entry> heap;  // max-heap on (distance, index)
  for (size_t j = 0; j < dist.size(); ++j) {
    Entry e{dist[j], j};
    if (heap.size() < k) {
      heap.push(e);
    } else if (e < heap.top()) {
      heap.pop();
      heap.push(e);
    }
  }
  out.resize(heap.size());
  for (size_t i = heap.size(); i-- > 0;) {
    out[i] = {heap.top().second, heap.top().first};
    heap.pop();
  }
}

}  // namespace

RangeTable RangeTable::Compute(const Dataset& corpus, const Dataset& queries,
                               std::span<const std::string> cols) {
  RangeTable table;
  for (const auto& name : cols) {
    const Column& c = corpus.column(name);
    const Column& q = queries.column(name);
    if (c.kind() != ColumnKind::kContinuous || q.kind() != ColumnKind::kContinuous) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Column* col : {&c, &q}) {
      for (size_t r = 0; r < col->size(); ++r) {
        if (col->is_missing(r)) continue;
        lo = std::min(lo, col->number(r));
        hi = std::max(hi, col->number(r));
      }
    }
    if (lo > hi) {
      table.Set(name, {0.0, 0.0, true});
    } else {
      table.Set(name, {lo, hi});
    }
  }
  return table;
}

void RangeTable::Extend(const RangeTable& other) {
  for (const auto& [name, range] : other.ranges_) {
    auto [it, inserted] = ranges_.try_emplace(name, range);
    if (!inserted && !range.empty) {
      if (it->second.empty) {
        it->second = range;
        continue;
      }
      it->second.min = std::min(it->second.min, range.min);
      it->second.max = std::max(it->second.max, range.max);
    }
  }
}

void RangeTable::Set(const std::string& name, ValueRange range) {
  if (range.max < range.min) throw InvalidArgument("range max below min for '" + name + "'");
  ranges_[name] = range;
}

std::optional<ValueRange> RangeTable::Find(const std::string& name) const {
  auto it = ranges_.find(name);
  if (it == ranges_.end()) return std::nullopt;
  return it->second;
}

double GowerDistance(const Dataset& a, size_t row_a, const Dataset& b, size_t row_b,
                     std::span<const std::string> cols, const RangeTable& ranges) {
  const auto pairs = ResolveColumns(a, b, cols, ranges);
  double sum = 0.0;
  for (const auto& p : pairs) {
    const Column& ca = a.column(p.query_col);
    const Column& cb = b.column(p.corpus_col);
    if (p.categorical) {
      const bool ma = ca.is_missing(row_a);
      const bool mb = cb.is_missing(row_b);
      double term;
      if (ma || mb) {
        term = (ma && mb) ? 0.0 : 1.0;
      } else {
        term = ca.categories()[ca.code(row_a)] == cb.categories()[cb.code(row_b)] ? 0.0 : 1.0;
      }
      sum += term;
    } else {
      sum += ContinuousTerm(ca.is_missing(row_a), ca.number(row_a), cb.is_missing(row_b),
                            cb.number(row_b), p.span);
    }
  }
  return sum / static_cast<double>(pairs.size());
}

std::vector<NeighborSet> Knn(const Dataset& queries, const Dataset& corpus,
                             std::span<const std::string> cols, size_t k, size_t workers) {
  if (cols.empty()) throw InvalidArgument("attribute subset must not be empty");
  return Knn(queries, corpus, cols, k, RangeTable::Compute(corpus, queries, cols), workers);
}

std::vector<NeighborSet> Knn(const Dataset& queries, const Dataset& corpus,
                             std::span<const std::string> cols, size_t k,
                             const RangeTable& ranges, size_t workers) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (corpus.n_rows() == 0) throw InvalidArgument("corpus must not be empty");
  const auto pairs = ResolveColumns(queries, corpus, cols, ranges);
  const size_t n_corpus = corpus.n_rows();
  const size_t effective_k = std::min(k, n_corpus);

  std::vector<std::vector<int32_t>> query_codes(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].categorical) {
      query_codes[i] = RemapCodes(queries.column(pairs[i].query_col),
                                  corpus.column(pairs[i].corpus_col));
    }
  }

  const double n_cols = static_cast<double>(pairs.size());
  std::vector<NeighborSet> result(queries.n_rows());
  const size_t n_workers = std::max<size_t>(1, std::min(workers, queries.n_rows()));
  // One distance buffer per contiguous block of queries.
  const size_t block = (queries.n_rows() + n_workers - 1) / std::max<size_t>(n_workers, 1);
  const size_t n_blocks = block == 0 ? 0 : (queries.n_rows() + block - 1) / block;
  ParallelFor(n_blocks, n_workers, [&](size_t b) {
    std::vector<double> dist(n_corpus);
    const size_t begin = b * block;
    const size_t end = std::min(queries.n_rows(), begin + block);
    for (size_t q = begin; q < end; ++q) {
      std::fill(dist.begin(), dist.end(), 0.0);
      for (size_t i = 0; i < pairs.size(); ++i) {
        const Column& cc = corpus.column(pairs[i].corpus_col);
        if (pairs[i].categorical) {
          const int32_t qc = query_codes[i][q];
          const auto codes = cc.codes();
          for (size_t j = 0; j < n_corpus; ++j) dist[j] += codes[j] == qc ? 0.0 : 1.0;
        } else {
          const Column& qcol = queries.column(pairs[i].query_col);
          const bool qm = qcol.is_missing(q);
          const double qv = qcol.number(q);
          const double span = pairs[i].span;
          const auto values = cc.numbers();
          const auto missing = cc.missing_mask();
          for (size_t j = 0; j < n_corpus; ++j) {
            dist[j] += ContinuousTerm(qm, qv, missing[j] != 0, values[j], span);
          }
        }
      }
      for (double& d : dist) d /= n_cols;
      SelectNearest(dist, effective_k, result[q]);
    }
  });
  return result;
}

}  // namespace synthrisk
