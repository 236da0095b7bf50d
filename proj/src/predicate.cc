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

#include "synthrisk/predicate.h"

#include <algorithm>
#include <limits>

namespace synthrisk {

namespace {

constexpr int32_t kAbsentCode = -2;

bool IsOrderingOp(CompareOp op) {
  return op == CompareOp::kLe || op == CompareOp::kGe || op == CompareOp::kLt ||
         op == CompareOp::kGt;
}

}  // namespace

std::string_view ToString(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "==";
    case CompareOp::kNeq: return "!=";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGe: return ">=";
    case CompareOp::kLt: return "<";
    case CompareOp::kGt: return ">";
    case CompareOp::kIsMissing: return "is";
  }
  return "?";
}

std::string Predicate::ToString() const {
  std::string out;
  for (size_t i = 0; i < atoms_.size(); ++i) {
    if (i) out += " & ";
    const Atom& a = atoms_[i];
    out += a.attr;
    if (a.op == CompareOp::kIsMissing) {
      out += " is NaN";
    } else {
      out += ' ';
      out += synthrisk::ToString(a.op);
      out += ' ';
      out += a.value.ToString();
    }
  }
  return out;
}

BoundPredicate::BoundPredicate(const Predicate& predicate, const Dataset& ds)
    : n_rows_(ds.n_rows()) {
  atoms_.reserve(predicate.atoms().size());
  for (const Atom& atom : predicate.atoms()) {
    const Column& col = ds.column(atom.attr);
    Bound b{&col, atom.op, 0.0, kAbsentCode};
    if (atom.op != CompareOp::kIsMissing) {
      if (col.is_categorical()) {
        if (!atom.value.is_category() || IsOrderingOp(atom.op)) {
          throw InvalidArgument("atom '" + Predicate({atom}).ToString() +
                                "' does not fit categorical attribute '" + atom.attr + "'");
        }
        if (auto code = col.FindCode(atom.value.category())) b.code = *code;
        if (b.code == kAbsentCode && atom.op == CompareOp::kEq) never_ = true;
      } else {
        if (!atom.value.is_number()) {
          throw InvalidArgument("atom '" + Predicate({atom}).ToString() +
                                "' does not fit continuous attribute '" + atom.attr + "'");
        }
        b.number = atom.value.number();
      }
    }
    atoms_.push_back(b);
  }
}

bool BoundPredicate::Matches(size_t row) const {
  if (never_) return false;
  for (const Bound& b : atoms_) {
    const bool missing = b.column->is_missing(row);
    if (b.op == CompareOp::kIsMissing) {
      if (!missing) return false;
      continue;
    }
    if (missing) return false;
    if (b.column->is_categorical()) {
      const bool equal = b.column->code(row) == b.code;
      if ((b.op == CompareOp::kEq) != equal) return false;
      continue;
    }
    const double x = b.column->number(row);
    bool ok = false;
    switch (b.op) {
      case CompareOp::kEq: ok = x == b.number; break;
      case CompareOp::kNeq: ok = x != b.number; break;
      case CompareOp::kLe: ok = x <= b.number; break;
      case CompareOp::kGe: ok = x >= b.number; break;
      case CompareOp::kLt: ok = x < b.number; break;
      case CompareOp::kGt: ok = x > b.number; break;
      case CompareOp::kIsMissing: break;
    }
    if (!ok) return false;
  }
  return true;
}

size_t BoundPredicate::Count(size_t limit) const {
  if (never_) return 0;
  size_t count = 0;
  for (size_t r = 0; r < n_rows_ && count < limit; ++r) {
    if (Matches(r)) ++count;
  }
  return count;
}

size_t BoundPredicate::Count(std::span<const uint32_t> rows, size_t limit) const {
  if (never_) return 0;
  size_t count = 0;
  for (size_t i = 0; i < rows.size() && count < limit; ++i) {
    if (Matches(rows[i])) ++count;
  }
  return count;
}

size_t Evaluate(const Predicate& predicate, const Dataset& ds) {
  return BoundPredicate(predicate, ds).Count();
}

std::vector<Predicate> UnivariatePredicates(const Dataset& syn, std::string_view attr) {
  const Column& col = syn.column(attr);
  const std::string name(attr);
  std::vector<Predicate> out;
  if (col.missing_count() == 1) {
    out.emplace_back(std::vector<Atom>{{name, CompareOp::kIsMissing, Value::Missing()}});
  }
  if (col.kind() == ColumnKind::kContinuous) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (size_t r = 0; r < col.size(); ++r) {
      if (col.is_missing(r)) continue;
      lo = std::min(lo, col.number(r));
      hi = std::max(hi, col.number(r));
    }
    if (lo <= hi) {
      out.emplace_back(std::vector<Atom>{{name, CompareOp::kLe, Value::Number(lo)}});
      out.emplace_back(std::vector<Atom>{{name, CompareOp::kGe, Value::Number(hi)}});
    }
    return out;
  }
  std::vector<size_t> counts(col.categories().size());
  for (size_t r = 0; r < col.size(); ++r) {
    if (!col.is_missing(r)) ++counts[col.code(r)];
  }
  for (size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 1) {
      out.emplace_back(
          std::vector<Atom>{{name, CompareOp::kEq, Value::Category(col.categories()[c])}});
    }
  }
  return out;
}

std::vector<std::optional<double>> LowerMedians(const Dataset& ds) {
  std::vector<std::optional<double>> out(ds.n_cols());
  for (size_t c = 0; c < ds.n_cols(); ++c) {
    const Column& col = ds.column(c);
    if (col.kind() != ColumnKind::kContinuous) continue;
    std::vector<double> values;
    values.reserve(col.size());
    for (size_t r = 0; r < col.size(); ++r) {
      if (!col.is_missing(r)) values.push_back(col.number(r));
    }
    if (values.empty()) continue;
    const size_t mid = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                     values.end());
    out[c] = values[mid];
  }
  return out;
}

Predicate MultivariatePredicate(const Dataset& syn, std::span<const std::string> attrs,
                                size_t row) {
  const auto medians = LowerMedians(syn);
  return MultivariatePredicate(syn, attrs, row, medians);
}

Predicate MultivariatePredicate(const Dataset& syn, std::span<const std::string> attrs,
                                size_t row, std::span<const std::optional<double>> medians) {
  if (attrs.empty()) throw InvalidArgument("multivariate predicate needs at least one attribute");
  if (row >= syn.n_rows()) throw InvalidArgument("record index out of range");
  Predicate p;
  for (const auto& name : attrs) {
    const size_t c = syn.ColumnIndex(name);
    const Column& col = syn.column(c);
    if (col.is_missing(row)) {
      p.Add({name, CompareOp::kIsMissing, Value::Missing()});
    } else if (col.kind() == ColumnKind::kContinuous) {
      const double v = col.number(row);
      // medians[c] exists: at least this row is non-missing.
      const CompareOp op = v >= *medians[c] ? CompareOp::kGe : CompareOp::kLe;
      p.Add({name, op, Value::Number(v)});
    } else {
      p.Add({name, CompareOp::kEq, Value::Category(col.categories()[col.code(row)])});
    }
  }
  return p;
}

Predicate RandomPredicate(const Dataset& syn, size_t n_attrs, Rng& rng) {
  if (n_attrs == 0 || n_attrs > syn.n_cols()) {
    throw InvalidArgument("random predicate needs 1 <= n_attrs <= d");
  }
  static constexpr CompareOp kContinuousOps[] = {CompareOp::kEq, CompareOp::kNeq,
                                                 CompareOp::kGt, CompareOp::kLt,
                                                 CompareOp::kGe, CompareOp::kLe};
  Predicate p;
  for (size_t c : SampleWithoutReplacement(syn.n_cols(), n_attrs, rng)) {
    const Column& col = syn.column(c);
    if (col.is_categorical()) {
      if (col.categories().empty()) {
        p.Add({col.name(), CompareOp::kIsMissing, Value::Missing()});
        continue;
      }
      std::uniform_int_distribution<int> pick_op(0, 1);
      const CompareOp op = pick_op(rng) == 0 ? CompareOp::kEq : CompareOp::kNeq;
      std::uniform_int_distribution<size_t> pick_value(0, col.categories().size() - 1);
      const int32_t code = col.sorted_codes()[pick_value(rng)];
      p.Add({col.name(), op, Value::Category(col.categories()[code])});
      continue;
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (size_t r = 0; r < col.size(); ++r) {
      if (col.is_missing(r)) continue;
      lo = std::min(lo, col.number(r));
      hi = std::max(hi, col.number(r));
    }
    if (lo > hi) {
      p.Add({col.name(), CompareOp::kIsMissing, Value::Missing()});
      continue;
    }
    std::uniform_int_distribution<int> pick_op(0, 5);
    const CompareOp op = kContinuousOps[pick_op(rng)];
    std::uniform_real_distribution<double> pick_value(lo, hi);
    const double v = lo == hi ? lo : std::clamp(pick_value(rng), lo, hi);
    p.Add({col.name(), op, Value::Number(v)});
  }
  return p;
}

}  // namespace synthrisk
