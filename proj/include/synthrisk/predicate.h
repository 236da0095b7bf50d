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

// Conjunctive predicates over a Dataset and the generators used by the
// singling-out attack.

#ifndef SYNTHRISK_PREDICATE_H_
#define SYNTHRISK_PREDICATE_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "synthrisk/tabular.h"

namespace synthrisk {

enum class CompareOp { kEq, kNeq, kLe, kGe, kLt, kGt, kIsMissing };

std::string_view ToString(CompareOp op);

// `attr op value`. Comparisons against a missing stored value are false;
// only kIsMissing matches missing cells.
struct Atom {
  std::string attr;
  CompareOp op;
  Value value;  // missing for kIsMissing
};

// Logical AND of atoms.
class Predicate {
 public:
  Predicate() = default;
  explicit Predicate(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

  const std::vector<Atom>& atoms() const { return atoms_; }
  void Add(Atom atom) { atoms_.push_back(std::move(atom)); }

  // e.g. "workclass == 'Private' & age >= 50 & zip is NaN"
  std::string ToString() const;

 private:
  std::vector<Atom> atoms_;
};

// A predicate resolved against one dataset: column indices and category
// codes are looked up once so repeated counting is a tight loop.
class BoundPredicate {
 public:
  // Throws InvalidArgument for unknown attributes or a value whose type does
  // not fit the column kind.
  BoundPredicate(const Predicate& predicate, const Dataset& ds);

  bool Matches(size_t row) const;
  // Matching rows, stopping early once `limit` matches are seen.
  size_t Count(size_t limit = std::numeric_limits<size_t>::max()) const;
  // Same, restricted to the given row subset.
  size_t Count(std::span<const uint32_t> rows,
               size_t limit = std::numeric_limits<size_t>::max()) const;

 private:
  struct Bound {
    const Column* column;
    CompareOp op;
    double number;
    int32_t code;  // -2 when the token is absent from the dataset
  };
  std::vector<Bound> atoms_;
  size_t n_rows_;
  bool never_ = false;  // an == atom on a token absent from the dataset
};

// Number of rows of `ds` satisfying every atom.
size_t Evaluate(const Predicate& predicate, const Dataset& ds);

// Univariate singling-out candidates for one attribute:
//  - "attr is missing" when exactly one value is missing;
//  - continuous: "attr <= min" and "attr >= max" over non-missing values;
//  - categorical: "attr == v" for every v occurring exactly once.
std::vector<Predicate> UnivariatePredicates(const Dataset& syn, std::string_view attr);

// Lower median of the non-missing values of every continuous column (nullopt
// for categorical or all-missing columns), indexed by column position.
std::vector<std::optional<double>> LowerMedians(const Dataset& ds);

// Predicate describing row `row` of `syn` on `attrs`: missing -> is missing;
// continuous -> ">= v" when v >= median else "<= v"; categorical -> "== v".
Predicate MultivariatePredicate(const Dataset& syn, std::span<const std::string> attrs,
                                size_t row);
Predicate MultivariatePredicate(const Dataset& syn, std::span<const std::string> attrs,
                                size_t row, std::span<const std::optional<double>> medians);

// Uninformed baseline predicate on `n_attrs` distinct random attributes with a
// random operator (== / != for categorical; any of the six comparisons for
// continuous) and a value drawn from the attribute's support in `syn`
// (observed categories; uniform on [min, max] for continuous).
Predicate RandomPredicate(const Dataset& syn, size_t n_attrs, Rng& rng);

}  // namespace synthrisk

#endif  // SYNTHRISK_PREDICATE_H_
