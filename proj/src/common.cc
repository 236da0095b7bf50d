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

#include "synthrisk/common.h"

#include <charconv>
#include <cstdlib>
#include <numeric>
#include <string_view>
#include <unordered_map>

#include "synthrisk/parallel.h"

namespace synthrisk {

uint64_t DeriveSeed(uint64_t master, uint64_t stream) {
  uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<size_t> SampleWithoutReplacement(size_t n, size_t count, Rng& rng) {
  if (count > n) {
    throw InvalidArgument("cannot sample " + std::to_string(count) +
                          " distinct items from " + std::to_string(n));
  }
  // Partial Fisher-Yates over a sparse permutation so the cost is O(count).
  std::unordered_map<size_t, size_t> swapped;
  std::vector<size_t> out;
  out.reserve(count);
  auto at = [&](size_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  for (size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<size_t> pick(i, n - 1);
    const size_t j = pick(rng);
    const size_t vi = at(i);
    const size_t vj = at(j);
    swapped[j] = vi;
    swapped[i] = vj;
    out.push_back(vj);
  }
  return out;
}

size_t OutcomeVector::successes() const {
  return std::accumulate(bits_.begin(), bits_.end(), size_t{0});
}

size_t ResolveWorkers(size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SYNTHRISK_WORKERS")) {
    std::string_view text(env);
    size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) {
      return value;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace synthrisk
