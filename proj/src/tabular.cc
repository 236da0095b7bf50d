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

#include "synthrisk/tabular.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "json.hpp"

namespace synthrisk {

namespace {

std::string FormatNumber(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::optional<double> ParseNumber(std::string_view text) {
  // Leading '+' is not accepted by from_chars; allow it and surrounding blanks.
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

// Reads one CSV record. Returns false at end of input. `fields` receives the
// raw field values; quoted empty fields and unquoted empty fields are both "".
bool ReadRecord(std::istream& in, std::vector<std::string>& fields, size_t& line) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\r') {
      if (in.peek() == '\n') in.get(c);
      ++line;
      fields.push_back(std::move(field));
      return true;
    } else if (c == '\n') {
      ++line;
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) throw DataError("unterminated quoted field near line " + std::to_string(line));
  if (any) fields.push_back(std::move(field));
  return any;
}

std::string QuoteField(const std::string& text) {
  const bool needs = text.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string_view ToString(ColumnKind kind) {
  return kind == ColumnKind::kCategorical ? "categorical" : "continuous";
}

ColumnKind ParseColumnKind(std::string_view text) {
  if (text == "categorical") return ColumnKind::kCategorical;
  if (text == "continuous") return ColumnKind::kContinuous;
  throw InvalidArgument("unknown column kind '" + std::string(text) +
                        "' (expected categorical or continuous)");
}

std::string_view ToString(DatasetRole role) {
  switch (role) {
    case DatasetRole::kOriginal: return "original";
    case DatasetRole::kTrain: return "train";
    case DatasetRole::kControl: return "control";
    case DatasetRole::kSynthetic: return "synthetic";
    case DatasetRole::kRelease: return "release";
  }
  return "unknown";
}

Value Value::Category(std::string token) {
  Value v;
  v.data_ = std::move(token);
  return v;
}

Value Value::Number(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("numeric value must be finite");
  Value v;
  v.data_ = x;
  return v;
}

std::string Value::ToString() const {
  if (is_missing()) return "NaN";
  if (is_number()) return FormatNumber(number());
  std::string out = "'";
  for (char c : category()) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

Column Column::Continuous(std::string name, std::vector<std::optional<double>> values) {
  Column col(std::move(name), ColumnKind::kContinuous);
  col.missing_.resize(values.size());
  col.numbers_.resize(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i].has_value()) {
      if (!std::isfinite(*values[i])) {
        throw InvalidArgument("column '" + col.name_ + "': non-finite value at row " +
                              std::to_string(i));
      }
      col.numbers_[i] = *values[i];
    } else {
      col.missing_[i] = 1;
    }
  }
  return col;
}

Column Column::Categorical(std::string name,
                           const std::vector<std::optional<std::string>>& tokens) {
  Column col(std::move(name), ColumnKind::kCategorical);
  col.missing_.resize(tokens.size());
  col.codes_.resize(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].has_value()) {
      col.missing_[i] = 1;
      col.codes_[i] = -1;
      continue;
    }
    auto [it, inserted] =
        col.code_index_.try_emplace(*tokens[i], static_cast<int32_t>(col.categories_.size()));
    if (inserted) col.categories_.push_back(*tokens[i]);
    col.codes_[i] = it->second;
  }
  col.sorted_codes_.resize(col.categories_.size());
  std::iota(col.sorted_codes_.begin(), col.sorted_codes_.end(), 0);
  std::sort(col.sorted_codes_.begin(), col.sorted_codes_.end(),
            [&](int32_t x, int32_t y) { return col.categories_[x] < col.categories_[y]; });
  return col;
}

std::optional<int32_t> Column::FindCode(std::string_view token) const {
  auto it = code_index_.find(std::string(token));
  if (it == code_index_.end()) return std::nullopt;
  return it->second;
}

size_t Column::missing_count() const {
  return std::accumulate(missing_.begin(), missing_.end(), size_t{0});
}

Value Column::value(size_t row) const {
  if (missing_[row]) return Value::Missing();
  if (kind_ == ColumnKind::kContinuous) return Value::Number(numbers_[row]);
  return Value::Category(categories_[codes_[row]]);
}

Column Column::Take(std::span<const size_t> rows) const {
  if (kind_ == ColumnKind::kContinuous) {
    std::vector<std::optional<double>> values(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      if (!missing_[rows[i]]) values[i] = numbers_[rows[i]];
    }
    return Continuous(name_, std::move(values));
  }
  std::vector<std::optional<std::string>> tokens(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!missing_[rows[i]]) tokens[i] = categories_[codes_[rows[i]]];
  }
  return Categorical(name_, tokens);
}

bool operator==(const Column& a, const Column& b) {
  if (a.name_ != b.name_ || a.kind_ != b.kind_ || a.missing_ != b.missing_) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a.missing_[i]) continue;
    if (a.kind_ == ColumnKind::kContinuous) {
      if (a.numbers_[i] != b.numbers_[i]) return false;
    } else if (a.categories_[a.codes_[i]] != b.categories_[b.codes_[i]]) {
      return false;
    }
  }
  return true;
}

Dataset::Dataset(std::vector<Column> columns, DatasetRole role)
    : columns_(std::move(columns)), role_(role) {
  n_rows_ = columns_.empty() ? 0 : columns_.front().size();
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].size() != n_rows_) {
      throw DataError("column '" + columns_[i].name() + "' has " +
                      std::to_string(columns_[i].size()) + " rows, expected " +
                      std::to_string(n_rows_));
    }
    if (!index_.emplace(columns_[i].name(), i).second) {
      throw DataError("duplicate column name '" + columns_[i].name() + "'");
    }
  }
}

std::vector<ColumnSpec> Dataset::schema() const {
  std::vector<ColumnSpec> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back({c.name(), c.kind()});
  return out;
}

std::vector<std::string> Dataset::column_names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.name());
  return out;
}

std::optional<size_t> Dataset::FindColumn(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

size_t Dataset::ColumnIndex(std::string_view name) const {
  auto idx = FindColumn(name);
  if (!idx) throw InvalidArgument("unknown attribute '" + std::string(name) + "'");
  return *idx;
}

const Column& Dataset::column(std::string_view name) const {
  return columns_[ColumnIndex(name)];
}

std::vector<Value> Dataset::Row(size_t row) const {
  std::vector<Value> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.value(row));
  return out;
}

Dataset Dataset::Take(std::span<const size_t> rows) const { return Take(rows, role_); }

Dataset Dataset::Take(std::span<const size_t> rows, DatasetRole role) const {
  for (size_t r : rows) {
    if (r >= n_rows_) throw InvalidArgument("row index out of range");
  }
  std::vector<Column> cols;
  cols.reserve(columns_.size());
  for (const auto& c : columns_) cols.push_back(c.Take(rows));
  return Dataset(std::move(cols), role);
}

Dataset Dataset::WithRole(DatasetRole role) const {
  Dataset copy = *this;
  copy.role_ = role;
  return copy;
}

Dataset Dataset::Select(std::span<const std::string> names) const {
  std::vector<Column> cols;
  cols.reserve(names.size());
  for (const auto& n : names) cols.push_back(column(n));
  return Dataset(std::move(cols), role_);
}

bool operator==(const Dataset& a, const Dataset& b) {
  return a.n_rows_ == b.n_rows_ && a.columns_ == b.columns_;
}

Dataset Concat(std::span<const Dataset> parts, DatasetRole role) {
  if (parts.empty()) throw InvalidArgument("nothing to concatenate");
  const auto schema = parts.front().schema();
  for (const auto& p : parts) {
    if (p.schema() != schema) throw DataError("cannot concatenate datasets with different schemas");
  }
  std::vector<Column> cols;
  for (size_t c = 0; c < schema.size(); ++c) {
    if (schema[c].kind == ColumnKind::kContinuous) {
      std::vector<std::optional<double>> values;
      for (const auto& p : parts) {
        const Column& col = p.column(c);
        for (size_t r = 0; r < col.size(); ++r) {
          values.push_back(col.is_missing(r) ? std::nullopt : std::optional(col.number(r)));
        }
      }
      cols.push_back(Column::Continuous(schema[c].name, std::move(values)));
    } else {
      std::vector<std::optional<std::string>> tokens;
      for (const auto& p : parts) {
        const Column& col = p.column(c);
        for (size_t r = 0; r < col.size(); ++r) {
          if (col.is_missing(r)) {
            tokens.emplace_back();
          } else {
            tokens.emplace_back(col.categories()[col.code(r)]);
          }
        }
      }
      cols.push_back(Column::Categorical(schema[c].name, tokens));
    }
  }
  return Dataset(std::move(cols), role);
}

SchemaOverride LoadSchemaOverride(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open schema file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("schema file " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw DataError("schema file must hold a JSON object");
  SchemaOverride out;
  for (auto& [name, kind] : doc.items()) {
    if (!kind.is_string()) throw DataError("schema entry '" + name + "' must be a string");
    out.emplace(name, ParseColumnKind(kind.get<std::string>()));
  }
  return out;
}

Dataset ReadCsv(std::istream& in, const SchemaOverride& schema, DatasetRole role) {
  size_t line = 1;
  std::vector<std::string> header;
  if (!ReadRecord(in, header, line)) throw DataError("missing header row");
  {
    std::unordered_set<std::string> seen;
    for (const auto& h : header) {
      if (!seen.insert(h).second) throw DataError("duplicate header name '" + h + "'");
    }
  }
  for (const auto& [name, kind] : schema) {
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw DataError("schema override names unknown column '" + name + "'");
    }
  }
  const size_t d = header.size();
  std::vector<std::vector<std::string>> raw(d);
  std::vector<std::string> fields;
  while (true) {
    const size_t record_line = line + 1;
    if (!ReadRecord(in, fields, line)) break;
    // Tolerate a trailing blank line.
    if (fields.size() == 1 && fields[0].empty() && d != 1) continue;
    if (fields.size() != d) {
      throw DataError("ragged row at line " + std::to_string(record_line) + ": " +
                      std::to_string(fields.size()) + " fields, expected " + std::to_string(d));
    }
    for (size_t c = 0; c < d; ++c) raw[c].push_back(std::move(fields[c]));
  }
  if (d == 0 || raw[0].empty()) throw DataError("empty dataset");

  std::vector<Column> cols;
  cols.reserve(d);
  for (size_t c = 0; c < d; ++c) {
    const auto& cells = raw[c];
    std::vector<std::optional<double>> numbers(cells.size());
    bool all_numeric = true;
    bool any_value = false;
    for (size_t r = 0; r < cells.size(); ++r) {
      if (cells[r].empty()) continue;
      any_value = true;
      numbers[r] = ParseNumber(cells[r]);
      if (!numbers[r]) all_numeric = false;
    }
    ColumnKind kind = (all_numeric && any_value) ? ColumnKind::kContinuous
                                                 : ColumnKind::kCategorical;
    if (auto it = schema.find(header[c]); it != schema.end()) {
      kind = it->second;
      if (kind == ColumnKind::kContinuous && !all_numeric) {
        for (size_t r = 0; r < cells.size(); ++r) {
          if (!cells[r].empty() && !numbers[r]) {
            throw DataError("column '" + header[c] + "' is declared continuous but row " +
                            std::to_string(r + 1) + " holds '" + cells[r] + "'");
          }
        }
      }
    }
    if (kind == ColumnKind::kContinuous) {
      cols.push_back(Column::Continuous(header[c], std::move(numbers)));
    } else {
      std::vector<std::optional<std::string>> tokens(cells.size());
      for (size_t r = 0; r < cells.size(); ++r) {
        if (!cells[r].empty()) tokens[r] = cells[r];
      }
      cols.push_back(Column::Categorical(header[c], tokens));
    }
  }
  return Dataset(std::move(cols), role);
}

Dataset LoadCsv(const std::filesystem::path& path, const SchemaOverride& schema,
                DatasetRole role) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return ReadCsv(in, schema, role);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void WriteCsv(const Dataset& ds, std::ostream& out) {
  for (size_t c = 0; c < ds.n_cols(); ++c) {
    if (c) out << ',';
    out << QuoteField(ds.column(c).name());
  }
  out << '\n';
  for (size_t r = 0; r < ds.n_rows(); ++r) {
    for (size_t c = 0; c < ds.n_cols(); ++c) {
      if (c) out << ',';
      const Column& col = ds.column(c);
      if (col.is_missing(r)) continue;
      if (col.kind() == ColumnKind::kContinuous) {
        out << FormatNumber(col.number(r));
      } else {
        out << QuoteField(col.categories()[col.code(r)]);
      }
    }
    out << '\n';
  }
}

void WriteCsv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteCsv(ds, out);
  if (!out) throw IoError("write failed for " + path.string());
}

TrainControlSplit Split(const Dataset& ds, const SplitSpec& spec) {
  if (!(spec.control_fraction > 0.0 && spec.control_fraction < 1.0)) {
    throw InvalidArgument("control_fraction must lie in (0, 1)");
  }
  const size_t n = ds.n_rows();
  if (n < 2) throw InvalidArgument("split needs at least 2 rows");
  const auto n_control =
      static_cast<size_t>(std::llround(static_cast<double>(n) * spec.control_fraction));
  if (n_control == 0 || n_control == n) {
    throw InvalidArgument("control_fraction leaves one side of the split empty");
  }
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), size_t{0});
  Rng rng(spec.seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<size_t> control(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_control));
  std::vector<size_t> train(perm.begin() + static_cast<std::ptrdiff_t>(n_control), perm.end());
  std::sort(control.begin(), control.end());
  std::sort(train.begin(), train.end());
  return {ds.Take(train, DatasetRole::kTrain), ds.Take(control, DatasetRole::kControl)};
}

std::vector<ColumnSpec> Align(const Dataset& a, const Dataset& b) {
  std::vector<ColumnSpec> common;
  for (const auto& spec : a.schema()) {
    auto idx = b.FindColumn(spec.name);
    if (!idx) continue;
    if (b.column(*idx).kind() != spec.kind) {
      throw DataError("attribute '" + spec.name + "' is " + std::string(ToString(spec.kind)) +
                      " in one dataset and " +
                      std::string(ToString(b.column(*idx).kind())) + " in the other");
    }
    common.push_back(spec);
  }
  if (common.empty()) throw DataError("datasets share no attributes");
  return common;
}

}  // namespace synthrisk
