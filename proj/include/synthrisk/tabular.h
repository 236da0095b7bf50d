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

// Typed in-memory tables: columns are either categorical (string tokens) or
// continuous (finite doubles); missingness is an explicit flag, never NaN.

#ifndef SYNTHRISK_TABULAR_H_
#define SYNTHRISK_TABULAR_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "synthrisk/common.h"

namespace synthrisk {

enum class ColumnKind { kCategorical, kContinuous };

std::string_view ToString(ColumnKind kind);
// Accepts "categorical" or "continuous".
ColumnKind ParseColumnKind(std::string_view text);

// A single cell: a category token, a finite number, or missing.
class Value {
 public:
  Value() = default;  // missing

  static Value Missing() { return Value(); }
  static Value Category(std::string token);
  // Throws InvalidArgument for NaN or infinite input.
  static Value Number(double x);

  bool is_missing() const { return std::holds_alternative<std::monostate>(data_); }
  bool is_category() const { return std::holds_alternative<std::string>(data_); }
  bool is_number() const { return std::holds_alternative<double>(data_); }

  const std::string& category() const { return std::get<std::string>(data_); }
  double number() const { return std::get<double>(data_); }

  // Human-readable form: quoted token, shortest round-trip number, or "NaN".
  std::string ToString() const;

  // Structural identity (missing is identical to missing). Distance and
  // predicate code define their own comparison semantics on top of this.
  friend bool Identical(const Value& a, const Value& b) { return a.data_ == b.data_; }

 private:
  std::variant<std::monostate, std::string, double> data_;
};

struct ColumnSpec {
  std::string name;
  ColumnKind kind;
  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

// One typed column. Categorical columns hold dictionary codes (first-seen
// order, -1 for missing); continuous columns hold doubles plus a missing mask.
class Column {
 public:
  static Column Continuous(std::string name, std::vector<std::optional<double>> values);
  static Column Categorical(std::string name,
                            const std::vector<std::optional<std::string>>& tokens);

  const std::string& name() const { return name_; }
  ColumnKind kind() const { return kind_; }
  bool is_categorical() const { return kind_ == ColumnKind::kCategorical; }
  size_t size() const { return missing_.size(); }

  bool is_missing(size_t row) const { return missing_[row] != 0; }
  // Continuous only; 0.0 at missing rows.
  double number(size_t row) const { return numbers_[row]; }
  // Categorical only; -1 at missing rows.
  int32_t code(size_t row) const { return codes_[row]; }
  const std::vector<std::string>& categories() const { return categories_; }
  // Category codes ordered by token, independent of row order.
  const std::vector<int32_t>& sorted_codes() const { return sorted_codes_; }
  std::optional<int32_t> FindCode(std::string_view token) const;
  size_t missing_count() const;

  std::span<const double> numbers() const { return numbers_; }
  std::span<const int32_t> codes() const { return codes_; }
  std::span<const uint8_t> missing_mask() const { return missing_; }

  Value value(size_t row) const;
  Column Take(std::span<const size_t> rows) const;

  friend bool operator==(const Column& a, const Column& b);

 private:
  Column(std::string name, ColumnKind kind) : name_(std::move(name)), kind_(kind) {}

  std::string name_;
  ColumnKind kind_;
  std::vector<uint8_t> missing_;
  std::vector<double> numbers_;
  std::vector<int32_t> codes_;
  std::vector<std::string> categories_;
  std::vector<int32_t> sorted_codes_;
  std::unordered_map<std::string, int32_t> code_index_;
};

enum class DatasetRole { kOriginal, kTrain, kControl, kSynthetic, kRelease };

std::string_view ToString(DatasetRole role);

// Immutable table. Safe to share read-only across threads.
class Dataset {
 public:
  // Throws DataError for unequal column lengths or duplicate names.
  explicit Dataset(std::vector<Column> columns, DatasetRole role = DatasetRole::kOriginal);

  size_t n_rows() const { return n_rows_; }
  size_t n_cols() const { return columns_.size(); }
  DatasetRole role() const { return role_; }
  std::vector<ColumnSpec> schema() const;
  std::vector<std::string> column_names() const;

  const Column& column(size_t index) const { return columns_[index]; }
  // Throws InvalidArgument for unknown names.
  const Column& column(std::string_view name) const;
  std::optional<size_t> FindColumn(std::string_view name) const;
  size_t ColumnIndex(std::string_view name) const;

  Value value(size_t row, size_t col) const { return columns_[col].value(row); }
  std::vector<Value> Row(size_t row) const;

  // Rows in the given order (duplicates allowed).
  Dataset Take(std::span<const size_t> rows) const;
  Dataset Take(std::span<const size_t> rows, DatasetRole role) const;
  Dataset WithRole(DatasetRole role) const;
  // Projection onto the given columns, in the given order.
  Dataset Select(std::span<const std::string> names) const;

  friend bool operator==(const Dataset& a, const Dataset& b);

 private:
  std::vector<Column> columns_;
  std::unordered_map<std::string, size_t> index_;
  size_t n_rows_ = 0;
  DatasetRole role_;
};

// Vertically stacks datasets with identical schemas.
Dataset Concat(std::span<const Dataset> parts, DatasetRole role);

using SchemaOverride = std::map<std::string, ColumnKind, std::less<>>;

// Reads a JSON object {"column": "categorical" | "continuous", ...}.
SchemaOverride LoadSchemaOverride(const std::filesystem::path& path);

// RFC-4180 CSV with a header row. Empty fields are missing values. Columns
// not named in `schema` are continuous iff every non-empty field parses as a
// finite number; otherwise (including all-empty columns) categorical.
Dataset ReadCsv(std::istream& in, const SchemaOverride& schema = {},
                DatasetRole role = DatasetRole::kOriginal);
Dataset LoadCsv(const std::filesystem::path& path, const SchemaOverride& schema = {},
                DatasetRole role = DatasetRole::kOriginal);

void WriteCsv(const Dataset& ds, std::ostream& out);
void WriteCsv(const Dataset& ds, const std::filesystem::path& path);

struct SplitSpec {
  double control_fraction = 0.2;
  uint64_t seed = 0;
};

struct TrainControlSplit {
  Dataset train;
  Dataset control;
};

// Random partition with |control| = round(N * control_fraction). Rows keep
// their original relative order within each part.
TrainControlSplit Split(const Dataset& ds, const SplitSpec& spec);

// Attributes common to both datasets, in `a`'s column order. Throws
// DataError when a shared attribute has different kinds or nothing is shared.
std::vector<ColumnSpec> Align(const Dataset& a, const Dataset& b);

}  // namespace synthrisk

#endif  // SYNTHRISK_TABULAR_H_
