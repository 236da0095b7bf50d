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

#include "synthrisk/utility.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "synthrisk/parallel.h"
#include "synthrisk/predicate.h"

namespace synthrisk::utility {

namespace {

constexpr int kMissingRank = -1;

// Rank of each category code in lexicographic token order.
std::vector<int> TokenRanks(const Column& col) {
  std::vector<int> rank(col.categories().size());
  const auto& order = col.sorted_codes();
  for (size_t k = 0; k < order.size(); ++k) rank[order[k]] = static_cast<int>(k);
  return rank;
}

int RankAt(const Column& col, const std::vector<int>& rank, size_t row) {
  return col.is_missing(row) ? kMissingRank : rank[col.code(row)];
}

// Centered Pearson correlation. Undefined when either side has no spread.
std::optional<double> Correlation(std::span<const double> x, std::span<const double> y) {
  const size_t n = x.size();
  if (n < 2) return std::nullopt;
  double sx = 0.0;
  double sy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> AbsPearson(const Column& a, const Column& b) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(a.size());
  for (size_t r = 0; r < a.size(); ++r) {
    if (!a.is_missing(r) && !b.is_missing(r)) pts.emplace_back(a.number(r), b.number(r));
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> x(pts.size());
  std::vector<double> y(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) std::tie(x[i], y[i]) = pts[i];
  auto c = Correlation(x, y);
  if (!c) return std::nullopt;
  return std::abs(*c);
}

std::optional<double> CorrelationRatio(const Column& cat, const Column& num) {
  const auto rank = TokenRanks(cat);
  std::vector<std::pair<int, double>> pts;
  pts.reserve(cat.size());
  for (size_t r = 0; r < cat.size(); ++r) {
    if (!cat.is_missing(r) && !num.is_missing(r)) {
      pts.emplace_back(rank[cat.code(r)], num.number(r));
    }
  }
  if (pts.size() < 2) return std::nullopt;
  std::sort(pts.begin(), pts.end());
  if (pts.front().first == pts.back().first) return std::nullopt;
  double total = 0.0;
  for (const auto& p : pts) total += p.second;
  const double mean = total / static_cast<double>(pts.size());
  double ss_total = 0.0;
  for (const auto& p : pts) ss_total += (p.second - mean) * (p.second - mean);
  if (!(ss_total > 0.0)) return std::nullopt;
  double ss_between = 0.0;
  for (size_t i = 0; i < pts.size();) {
    size_t j = i;
    double group = 0.0;
    while (j < pts.size() && pts[j].first == pts[i].first) group += pts[j++].second;
    const double n_g = static_cast<double>(j - i);
    const double diff = group / n_g - mean;
    ss_between += n_g * diff * diff;
    i = j;
  }
  return std::clamp(std::sqrt(ss_between / ss_total), 0.0, 1.0);
}

double Entropy(const std::map<int, size_t>& counts, double n) {
  double h = 0.0;
  for (const auto& [key, c] : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

// MI / sqrt(H_a H_b) with missing as its own category.
std::optional<double> NormalizedMutualInformation(const Column& a, const Column& b) {
  const size_t n_rows = a.size();
  if (n_rows == 0) return std::nullopt;
  const auto rank_a = TokenRanks(a);
  const auto rank_b = TokenRanks(b);
  std::map<std::pair<int, int>, size_t> joint;
  std::map<int, size_t> ma;
  std::map<int, size_t> mb;
  for (size_t r = 0; r < n_rows; ++r) {
    const int x = RankAt(a, rank_a, r);
    const int y = RankAt(b, rank_b, r);
    ++joint[{x, y}];
    ++ma[x];
    ++mb[y];
  }
  const double n = static_cast<double>(n_rows);
  const double ha = Entropy(ma, n);
  const double hb = Entropy(mb, n);
  if (!(ha > 0.0) || !(hb > 0.0)) return std::nullopt;
  double mi = 0.0;
  for (const auto& [key, c] : joint) {
    const double pxy = static_cast<double>(c) / n;
    const double px = static_cast<double>(ma[key.first]) / n;
    const double py = static_cast<double>(mb[key.second]) / n;
    mi += pxy * std::log(pxy / (px * py));
  }
  return std::clamp(mi / std::sqrt(ha * hb), 0.0, 1.0);
}

struct PairStatistic {
  std::string name;
  std::optional<double> value;
};

PairStatistic ComputePair(const Column& a, const Column& b) {
  if (!a.is_categorical() && !b.is_categorical()) return {"pearson", AbsPearson(a, b)};
  if (a.is_categorical() && b.is_categorical()) {
    return {"nmi", NormalizedMutualInformation(a, b)};
  }
  return {"correlation_ratio",
          a.is_categorical() ? CorrelationRatio(a, b) : CorrelationRatio(b, a)};
}

double CategoricalJsd(const Column& a, const Column& b) {
  // Token -> (count in a, count in b); missing is keyed apart from all tokens.
  std::map<std::pair<int, std::string>, std::pair<double, double>> table;
  for (size_t r = 0; r < a.size(); ++r) {
    auto key = a.is_missing(r) ? std::make_pair(0, std::string())
                               : std::make_pair(1, a.categories()[a.code(r)]);
    table[key].first += 1.0;
  }
  for (size_t r = 0; r < b.size(); ++r) {
    auto key = b.is_missing(r) ? std::make_pair(0, std::string())
                               : std::make_pair(1, b.categories()[b.code(r)]);
    table[key].second += 1.0;
  }
  if (a.size() == 0 || b.size() == 0) return a.size() == b.size() ? 0.0 : 1.0;
  std::vector<double> p;
  std::vector<double> q;
  p.reserve(table.size());
  q.reserve(table.size());
  for (const auto& [key, counts] : table) {
    p.push_back(counts.first / static_cast<double>(a.size()));
    q.push_back(counts.second / static_cast<double>(b.size()));
  }
  return JensenShannon(p, q);
}

double ContinuousKs(const Column& a, const Column& b) {
  if (a.size() == 0 || b.size() == 0) return a.size() == b.size() ? 0.0 : 1.0;
  auto present = [](const Column& col) {
    std::vector<double> v;
    v.reserve(col.size());
    for (size_t r = 0; r < col.size(); ++r) {
      if (!col.is_missing(r)) v.push_back(col.number(r));
    }
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto va = present(a);
  const auto vb = present(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  // Missing values form a point mass below every observed value.
  size_t i = 0;
  size_t j = 0;
  const double ma = na - static_cast<double>(va.size());
  const double mb = nb - static_cast<double>(vb.size());
  double d = std::abs(ma / na - mb / nb);
  while (i < va.size() || j < vb.size()) {
    const double x = j == vb.size() || (i < va.size() && va[i] <= vb[j]) ? va[i] : vb[j];
    while (i < va.size() && va[i] == x) ++i;
    while (j < vb.size() && vb[j] == x) ++j;
    d = std::max(d, std::abs((ma + static_cast<double>(i)) / na -
                             (mb + static_cast<double>(j)) / nb));
  }
  return std::min(d, 1.0);
}

std::vector<std::string> SharedNames(const Dataset& ori, const Dataset& syn) {
  std::vector<std::string> names;
  for (const auto& spec : Align(ori, syn)) names.push_back(spec.name);
  return names;
}

}  // namespace

double JensenShannon(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw InvalidArgument("distributions differ in length");
  double jsd = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) jsd += 0.5 * p[i] * std::log2(p[i] / m);
    if (q[i] > 0.0) jsd += 0.5 * q[i] * std::log2(q[i] / m);
  }
  return std::clamp(jsd, 0.0, 1.0);
}

double KolmogorovSmirnov(std::span<const double> a, std::span<const double> b) {
  std::vector<std::optional<double>> va(a.begin(), a.end());
  std::vector<std::optional<double>> vb(b.begin(), b.end());
  return ContinuousKs(Column::Continuous("a", std::move(va)),
                      Column::Continuous("b", std::move(vb)));
}

double MarginalScore(const Dataset& ori, const Dataset& syn, std::vector<ColumnScore>* columns) {
  const auto names = SharedNames(ori, syn);
  double total = 0.0;
  for (const auto& name : names) {
    const Column& a = ori.column(name);
    const Column& b = syn.column(name);
    ColumnScore cs{name, a.is_categorical() ? "jsd" : "ks", 0.0, 0.0};
    cs.value = a.is_categorical() ? CategoricalJsd(a, b) : ContinuousKs(a, b);
    cs.score = 100.0 * (1.0 - cs.value);
    total += cs.score;
    if (columns) columns->push_back(std::move(cs));
  }
  return total / static_cast<double>(names.size());
}

std::optional<double> PairwiseScore(const Dataset& ori, const Dataset& syn,
                                    std::vector<PairScore>* pairs,
                                    std::vector<std::string>* warnings, size_t workers) {
  const auto names = SharedNames(ori, syn);
  std::vector<std::pair<size_t, size_t>> index;
  for (size_t i = 0; i < names.size(); ++i) {
    for (size_t j = i + 1; j < names.size(); ++j) index.emplace_back(i, j);
  }
  std::vector<PairStatistic> st_ori(index.size());
  std::vector<PairStatistic> st_syn(index.size());
  ParallelFor(index.size(), workers, [&](size_t p) {
    const auto& a = names[index[p].first];
    const auto& b = names[index[p].second];
    st_ori[p] = ComputePair(ori.column(a), ori.column(b));
    st_syn[p] = ComputePair(syn.column(a), syn.column(b));
  });
  double total = 0.0;
  size_t used = 0;
  for (size_t p = 0; p < index.size(); ++p) {
    const auto& a = names[index[p].first];
    const auto& b = names[index[p].second];
    if (!st_ori[p].value || !st_syn[p].value) {
      if (warnings) {
        warnings->push_back("pair (" + a + ", " + b + ") skipped: " + st_ori[p].name +
                            " undefined on a constant column");
      }
      continue;
    }
    const double score = 100.0 * (1.0 - std::abs(*st_ori[p].value - *st_syn[p].value));
    total += score;
    ++used;
    if (pairs) pairs->push_back({a, b, st_ori[p].name, *st_ori[p].value, *st_syn[p].value, score});
  }
  if (used == 0) return std::nullopt;
  return total / static_cast<double>(used);
}

double QueryScore(const Dataset& ori, const Dataset& syn, size_t n_queries, Rng& rng,
                  std::vector<std::string>* warnings, size_t workers) {
  if (n_queries < 2) throw InvalidArgument("n_queries must be >= 2");
  const auto names = SharedNames(ori, syn);
  const Dataset a = ori.Select(names);
  const Dataset b = syn.Select(names);
  const size_t max_atoms = std::min(kMaxQueryAtoms, names.size());
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::uniform_int_distribution<size_t> pick_atoms(1, max_atoms);
    std::vector<Predicate> queries;
    queries.reserve(n_queries);
    for (size_t q = 0; q < n_queries; ++q) {
      const size_t n_atoms = pick_atoms(rng);
      queries.push_back(RandomPredicate(a, n_atoms, rng));
    }
    std::vector<double> ca(n_queries);
    std::vector<double> cb(n_queries);
    ParallelFor(n_queries, workers, [&](size_t q) {
      ca[q] = static_cast<double>(Evaluate(queries[q], a));
      cb[q] = static_cast<double>(Evaluate(queries[q], b));
    });
    if (auto c = Correlation(ca, cb)) return 100.0 * std::max(0.0, *c);
  }
  if (warnings) warnings->push_back("query counts have zero variance after resampling; score 0");
  return 0.0;
}

UtilityScore Score(const Dataset& ori, const Dataset& syn, size_t n_queries, uint64_t seed,
                   size_t workers) {
  UtilityScore out;
  out.marginal = MarginalScore(ori, syn, &out.columns);
  out.pairwise = PairwiseScore(ori, syn, &out.pairs, &out.warnings, workers);
  Rng rng(seed);
  out.query = QueryScore(ori, syn, n_queries, rng, &out.warnings, workers);
  double sum = out.marginal + out.query;
  double n = 2.0;
  if (out.pairwise) {
    sum += *out.pairwise;
    n += 1.0;
  }
  out.total = std::clamp(sum / n, 0.0, 100.0);
  return out;
}

}  // namespace synthrisk::utility
