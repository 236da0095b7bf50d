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


// Reference implementations written directly from the definitions, used to
// check the library's optimized code paths.

#ifndef SYNTHRISK_TESTS_ORACLES_H_
#define SYNTHRISK_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "synthrisk/distance.h"
#include "synthrisk/tabular.h"

namespace synthrisk::testing {

// kNN by a double loop: per-pair Gower over Values, ranges from a separate
// scan of both tables, then a stable sort by distance.
inline std::vector<NeighborSet> OracleKnn(const Dataset& queries, const Dataset& corpus,
                                          const std::vector<std::string>& cols, size_t k) {
  std::vector<double> span(cols.size(), 0.0);
  for (size_t i = 0; i < cols.size(); ++i) {
    if (corpus.column(cols[i]).is_categorical()) continue;
    double lo = 1e300, hi = -1e300;
    for (const Dataset* ds : {&corpus, &queries}) {
      const size_t c = ds->ColumnIndex(cols[i]);
      for (size_t r = 0; r < ds->n_rows(); ++r) {
        const Value v = ds->value(r, c);
        if (v.is_missing()) continue;
        lo = std::min(lo, v.number());
        hi = std::max(hi, v.number());
      }
    }
    span[i] = hi > lo ? hi - lo : 0.0;
  }
  std::vector<NeighborSet> out;
  for (size_t q = 0; q < queries.n_rows(); ++q) {
    std::vector<double> dist(corpus.n_rows());
    for (size_t j = 0; j < corpus.n_rows(); ++j) {
      double sum = 0.0;
      for (size_t i = 0; i < cols.size(); ++i) {
        const Value a = queries.value(q, queries.ColumnIndex(cols[i]));
        const Value b = corpus.value(j, corpus.ColumnIndex(cols[i]));
        double term;
        if (a.is_missing() || b.is_missing()) {
          term = a.is_missing() && b.is_missing() ? 0.0 : 1.0;
        } else if (a.is_category()) {
          term = a.category() == b.category() ? 0.0 : 1.0;
        } else if (span[i] == 0.0) {
          term = 0.0;
        } else {
          term = std::min(1.0, std::abs(a.number() - b.number()) / span[i]);
        }
        sum += term;
      }
      dist[j] = sum / static_cast<double>(cols.size());
    }
    std::vector<size_t> order(corpus.n_rows());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t x, size_t y) { return dist[x] < dist[y]; });
    NeighborSet set;
    for (size_t i = 0; i < std::min(k, order.size()); ++i) {
      set.push_back({order[i], dist[order[i]]});
    }
    out.push_back(set);
  }
  return out;
}

// Adaptive Gauss-Kronrod quadrature of n w (1 - w)^(n - 1) over [0, W]. The
// integrand is concentrated below ~50 / n, so that stretch is integrated on
// its own.
inline double QuadratureCurve(double W, double n) {
  auto f = [n](double w) { return n * w * std::pow(1.0 - w, n - 1.0); };
  using Gk = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double knee = std::min(W, 50.0 / n);
  double total = Gk::integrate(f, 0.0, knee, 20, 1e-15);
  if (W > knee) total += Gk::integrate(f, knee, W, 20, 1e-15);
  return total;
}

// 1 - C(n - k, k) / C(n, k): two independent k-subsets of [0, n) intersect.
inline double IntersectProbability(size_t n, size_t k) {
  if (2 * k > n) return 1.0;
  double miss = 1.0;
  for (size_t i = 0; i < k; ++i) {
    miss *= static_cast<double>(n - k - i) / static_cast<double>(n - i);
  }
  return 1.0 - miss;
}

}  // namespace synthrisk::testing

#endif  // SYNTHRISK_TESTS_ORACLES_H_
