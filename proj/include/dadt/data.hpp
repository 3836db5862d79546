/*
 * Copyright 2026 The DADT Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Tabular data model: schema, typed rows, row views, split conditions and
// paths, CSV/JSON ingestion and seeded train/test splitting.
//
// Values are stored as doubles. A discrete value is the index of its label in
// the attribute domain; a continuous value is stored as parsed.

#ifndef DADT_DATA_HPP_
#define DADT_DATA_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dadt/csv.hpp"
#include "dadt/error.hpp"
#include "json.hpp"

namespace dadt {

using Json = nlohmann::json;

enum class AttributeKind { kDiscrete, kContinuous };

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::kDiscrete;
  // Ordered category labels; empty for continuous attributes.
  std::vector<std::string> domain;
  // Optional inclusive (min, max) for continuous attributes.
  std::optional<std::pair<double, double>> bounds;

  static Attribute Discrete(std::string name, std::vector<std::string> domain) {
    return Attribute{std::move(name), AttributeKind::kDiscrete, std::move(domain), std::nullopt};
  }
  static Attribute Continuous(std::string name,
                              std::optional<std::pair<double, double>> bounds = std::nullopt) {
    return Attribute{std::move(name), AttributeKind::kContinuous, {}, bounds};
  }

  bool is_discrete() const { return kind == AttributeKind::kDiscrete; }
  bool is_continuous() const { return kind == AttributeKind::kContinuous; }

  std::optional<int> CodeOf(std::string_view label) const {
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (domain[i] == label) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  bool operator==(const Attribute&) const = default;
};

// Shortest decimal text that parses back to the same double.
inline std::string FormatDouble(double v) {
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline std::optional<double> ParseDouble(std::string_view text) {
  // from_chars rejects a leading '+', which CSV exporters sometimes emit.
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

class Schema {
 public:
  Schema() = default;

  Schema(std::vector<Attribute> predictive, Attribute class_attr,
         std::optional<std::string> protected_attr = std::nullopt)
      : predictive_(std::move(predictive)),
        class_attr_(std::move(class_attr)),
        protected_attr_(std::move(protected_attr)) {
    Validate();
  }

  const std::vector<Attribute>& predictive() const { return predictive_; }
  const Attribute& class_attr() const { return class_attr_; }
  const std::optional<std::string>& protected_attr() const { return protected_attr_; }

  std::size_t num_predictive() const { return predictive_.size(); }
  std::size_t num_classes() const { return class_attr_.domain.size(); }
  const Attribute& attribute(std::size_t index) const { return predictive_.at(index); }

  std::optional<std::size_t> Find(std::string_view name) const {
    for (std::size_t i = 0; i < predictive_.size(); ++i) {
      if (predictive_[i].name == name) return i;
    }
    return std::nullopt;
  }

  std::size_t IndexOf(std::string_view name) const {
    auto index = Find(name);
    if (!index) Fail(ErrorCode::kUnknownAttribute, "no predictive attribute named '" + std::string(name) + "'");
    return *index;
  }

  std::optional<std::size_t> protected_index() const {
    if (!protected_attr_) return std::nullopt;
    return Find(*protected_attr_);
  }

  bool operator==(const Schema&) const = default;

  Json ToJson() const {
    Json predictive = Json::array();
    for (const auto& a : predictive_) predictive.push_back(AttributeToJson(a));
    Json out{{"predictive", predictive}, {"class", AttributeToJson(class_attr_)}};
    if (protected_attr_) out["protected"] = *protected_attr_;
    return out;
  }

  static Schema FromJson(const Json& doc) {
    try {
      if (!doc.is_object() || !doc.contains("predictive") || !doc.contains("class")) {
        Fail(ErrorCode::kFormatError, "schema needs 'predictive' and 'class'");
      }
      std::vector<Attribute> predictive;
      for (const auto& a : doc.at("predictive")) predictive.push_back(AttributeFromJson(a));
      Attribute class_attr = AttributeFromJson(doc.at("class"));
      std::optional<std::string> protected_attr;
      if (doc.contains("protected") && !doc.at("protected").is_null()) {
        protected_attr = doc.at("protected").get<std::string>();
      }
      return Schema(std::move(predictive), std::move(class_attr), std::move(protected_attr));
    } catch (const Json::exception& e) {
      Fail(ErrorCode::kFormatError, std::string("malformed schema: ") + e.what());
    }
  }

 private:
  static Json AttributeToJson(const Attribute& a) {
    Json out{{"name", a.name}, {"kind", a.is_discrete() ? "discrete" : "continuous"}};
    if (a.is_discrete()) out["domain"] = a.domain;
    if (a.bounds) out["bounds"] = {a.bounds->first, a.bounds->second};
    return out;
  }

  static Attribute AttributeFromJson(const Json& j) {
    Attribute a;
    a.name = j.at("name").get<std::string>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "discrete") {
      a.kind = AttributeKind::kDiscrete;
      for (const auto& v : j.at("domain")) {
        // Census code books are often numeric; keep their text form.
        a.domain.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
    } else if (kind == "continuous") {
      a.kind = AttributeKind::kContinuous;
      if (j.contains("bounds")) {
        const auto& b = j.at("bounds");
        a.bounds = std::make_pair(b.at(0).get<double>(), b.at(1).get<double>());
      }
    } else {
      Fail(ErrorCode::kFormatError, "attribute '" + a.name + "' has unknown kind '" + kind + "'");
    }
    return a;
  }

  void Validate() const {
    std::unordered_set<std::string> names;
    auto check_attr = [](const Attribute& a) {
      if (a.name.empty()) Fail(ErrorCode::kFormatError, "attribute with empty name");
      if (a.is_discrete()) {
        if (a.domain.empty()) Fail(ErrorCode::kFormatError, "discrete attribute '" + a.name + "' has empty domain");
        std::unordered_set<std::string> seen;
        for (const auto& v : a.domain) {
          if (!seen.insert(v).second) {
            Fail(ErrorCode::kFormatError, "duplicate label '" + v + "' in domain of '" + a.name + "'");
          }
        }
      } else if (a.bounds && a.bounds->first > a.bounds->second) {
        Fail(ErrorCode::kFormatError, "attribute '" + a.name + "' has inverted bounds");
      }
    };
    for (const auto& a : predictive_) {
      check_attr(a);
      if (!names.insert(a.name).second) Fail(ErrorCode::kFormatError, "duplicate attribute name '" + a.name + "'");
    }
    check_attr(class_attr_);
    if (names.count(class_attr_.name)) {
      Fail(ErrorCode::kFormatError, "class attribute '" + class_attr_.name + "' also listed as predictive");
    }
    if (!class_attr_.is_discrete() || class_attr_.domain.size() < 2) {
      Fail(ErrorCode::kFormatError, "class attribute must be discrete with at least two values");
    }
    if (protected_attr_) {
      auto index = Find(*protected_attr_);
      if (!index || !predictive_[*index].is_discrete()) {
        Fail(ErrorCode::kFormatError, "protected attribute '" + *protected_attr_ +
                                          "' must name a discrete predictive attribute");
      }
    }
  }

  std::vector<Attribute> predictive_;
  Attribute class_attr_;
  std::optional<std::string> protected_attr_;
};

// Immutable once built: rows are appended during construction only.
class Dataset {
 public:
  Dataset() = default;
  Dataset(Schema schema, bool labeled) : schema_(std::move(schema)), labeled_(labeled) {}

  const Schema& schema() const { return schema_; }
  bool labeled() const { return labeled_; }
  std::size_t num_rows() const { return num_rows_; }
  bool empty() const { return num_rows_ == 0; }
  std::size_t num_columns() const { return schema_.num_predictive(); }

  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * num_columns(), num_columns()};
  }
  double value(std::size_t r, std::size_t column) const { return values_[r * num_columns() + column]; }

  int label(std::size_t r) const {
    if (!labeled_) Fail(ErrorCode::kUnlabeledData, "dataset has no class column");
    return labels_[r];
  }

  // Appends an encoded row. `label` is ignored for unlabeled datasets.
  void AddRow(std::span<const double> values, int label = -1) {
    if (values.size() != num_columns()) {
      Fail(ErrorCode::kSchemaMismatch, "row has " + std::to_string(values.size()) + " values, schema has " +
                                           std::to_string(num_columns()));
    }
    for (std::size_t c = 0; c < values.size(); ++c) {
      const Attribute& a = schema_.attribute(c);
      const double v = values[c];
      bool ok = std::isfinite(v);
      if (ok && a.is_discrete()) {
        ok = v >= 0 && v < static_cast<double>(a.domain.size()) && v == std::floor(v);
      } else if (ok && a.bounds) {
        ok = v >= a.bounds->first && v <= a.bounds->second;
      }
      if (!ok) {
        Fail(ErrorCode::kValueOutOfDomain, "row " + std::to_string(num_rows_) + ", column '" + a.name + "'");
      }
    }
    if (labeled_) {
      if (label < 0 || label >= static_cast<int>(schema_.num_classes())) {
        Fail(ErrorCode::kValueOutOfDomain,
             "row " + std::to_string(num_rows_) + ", column '" + schema_.class_attr().name + "'");
      }
      labels_.push_back(label);
    }
    values_.insert(values_.end(), values.begin(), values.end());
    ++num_rows_;
  }

  Dataset Subset(std::span<const std::size_t> rows) const {
    Dataset out(schema_, labeled_);
    out.values_.reserve(rows.size() * num_columns());
    for (std::size_t r : rows) out.AddRowUnchecked(row(r), labeled_ ? labels_[r] : -1);
    return out;
  }

  // Same rows with the class column dropped.
  Dataset WithoutLabels() const {
    Dataset out(schema_, false);
    out.values_ = values_;
    out.num_rows_ = num_rows_;
    return out;
  }

  std::string DisplayValue(std::size_t r, std::size_t column) const {
    return DisplayValue(schema_.attribute(column), value(r, column));
  }

  static std::string DisplayValue(const Attribute& a, double v) {
    if (a.is_discrete()) return a.domain.at(static_cast<std::size_t>(v));
    return FormatDouble(v);
  }

  bool operator==(const Dataset& other) const {
    return schema_ == other.schema_ && labeled_ == other.labeled_ && num_rows_ == other.num_rows_ &&
           values_ == other.values_ && labels_ == other.labels_;
  }

 private:
  void AddRowUnchecked(std::span<const double> values, int label) {
    values_.insert(values_.end(), values.begin(), values.end());
    if (labeled_) labels_.push_back(label);
    ++num_rows_;
  }

  Schema schema_;
  bool labeled_ = true;
  std::size_t num_rows_ = 0;
  std::vector<double> values_;
  std::vector<int> labels_;
};

// A read-only selection of rows of a dataset. The dataset must outlive it.
class DatasetView {
 public:
  DatasetView() = default;
  explicit DatasetView(const Dataset& data) : data_(&data), rows_(data.num_rows()) {
    std::iota(rows_.begin(), rows_.end(), std::size_t{0});
  }
  DatasetView(const Dataset& data, std::vector<std::size_t> rows) : data_(&data), rows_(std::move(rows)) {}

  const Dataset& data() const { return *data_; }
  const Schema& schema() const { return data_->schema(); }
  const std::vector<std::size_t>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  std::span<const double> row(std::size_t i) const { return data_->row(rows_[i]); }
  double value(std::size_t i, std::size_t column) const { return data_->value(rows_[i], column); }
  int label(std::size_t i) const { return data_->label(rows_[i]); }

  Dataset Materialize() const { return data_->Subset(rows_); }

 private:
  const Dataset* data_ = nullptr;
  std::vector<std::size_t> rows_;
};

enum class ConditionOp { kEq, kNeq, kLeq, kGt };

inline std::string_view ConditionOpSymbol(ConditionOp op) {
  switch (op) {
    case ConditionOp::kEq: return "==";
    case ConditionOp::kNeq: return "!=";
    case ConditionOp::kLeq: return "<=";
    case ConditionOp::kGt: return ">";
  }
  return "?";
}

inline ConditionOp ParseConditionOp(std::string_view symbol) {
  if (symbol == "==" || symbol == "=") return ConditionOp::kEq;
  if (symbol == "!=") return ConditionOp::kNeq;
  if (symbol == "<=") return ConditionOp::kLeq;
  if (symbol == ">") return ConditionOp::kGt;
  Fail(ErrorCode::kFormatError, "unknown condition operator '" + std::string(symbol) + "'");
}

// A binary test on one predictive attribute, addressed by schema index.
// Eq/Neq apply to discrete attributes (threshold is a domain code),
// Leq/Gt to continuous ones.
struct SplitCondition {
  std::size_t attribute = 0;
  ConditionOp op = ConditionOp::kEq;
  double threshold = 0.0;

  bool Holds(std::span<const double> row) const { return Holds(row[attribute]); }

  bool Holds(double v) const {
    switch (op) {
      case ConditionOp::kEq: return v == threshold;
      case ConditionOp::kNeq: return v != threshold;
      case ConditionOp::kLeq: return v <= threshold;
      case ConditionOp::kGt: return v > threshold;
    }
    return false;
  }

  SplitCondition Negated() const {
    SplitCondition out = *this;
    switch (op) {
      case ConditionOp::kEq: out.op = ConditionOp::kNeq; break;
      case ConditionOp::kNeq: out.op = ConditionOp::kEq; break;
      case ConditionOp::kLeq: out.op = ConditionOp::kGt; break;
      case ConditionOp::kGt: out.op = ConditionOp::kLeq; break;
    }
    return out;
  }

  bool operator==(const SplitCondition&) const = default;
};

inline void ValidateCondition(const Schema& schema, const SplitCondition& cond) {
  if (cond.attribute >= schema.num_predictive()) {
    Fail(ErrorCode::kUnknownAttribute, "attribute index " + std::to_string(cond.attribute) + " out of range");
  }
  const Attribute& a = schema.attribute(cond.attribute);
  const bool equality = cond.op == ConditionOp::kEq || cond.op == ConditionOp::kNeq;
  if (equality != a.is_discrete()) {
    Fail(ErrorCode::kDomainError, "operator " + std::string(ConditionOpSymbol(cond.op)) +
                                      " not valid on attribute '" + a.name + "'");
  }
}

// Builds a condition from textual parts, e.g. ("SEX", kEq, "female").
inline SplitCondition MakeCondition(const Schema& schema, std::string_view attribute, ConditionOp op,
                                    std::string_view threshold) {
  SplitCondition cond{schema.IndexOf(attribute), op, 0.0};
  const Attribute& a = schema.attribute(cond.attribute);
  if (a.is_discrete()) {
    auto code = a.CodeOf(threshold);
    if (!code) Fail(ErrorCode::kValueOutOfDomain, "'" + std::string(threshold) + "' not in domain of " + a.name);
    cond.threshold = *code;
  } else {
    auto v = ParseDouble(threshold);
    if (!v) Fail(ErrorCode::kParseError, "bad threshold '" + std::string(threshold) + "'");
    cond.threshold = *v;
  }
  ValidateCondition(schema, cond);
  return cond;
}

inline Json ConditionToJson(const Schema& schema, const SplitCondition& cond) {
  const Attribute& a = schema.attribute(cond.attribute);
  Json out{{"attr", a.name}, {"op", ConditionOpSymbol(cond.op)}};
  if (a.is_discrete()) {
    out["threshold"] = a.domain.at(static_cast<std::size_t>(cond.threshold));
  } else {
    out["threshold"] = cond.threshold;
  }
  return out;
}

inline SplitCondition ConditionFromJson(const Schema& schema, const Json& j) {
  SplitCondition cond{schema.IndexOf(j.at("attr").get<std::string>()),
                      ParseConditionOp(j.at("op").get<std::string>()), 0.0};
  const Attribute& a = schema.attribute(cond.attribute);
  if (a.is_discrete()) {
    auto code = a.CodeOf(j.at("threshold").get<std::string>());
    if (!code) Fail(ErrorCode::kValueOutOfDomain, "threshold not in domain of " + a.name);
    cond.threshold = *code;
  } else {
    cond.threshold = j.at("threshold").get<double>();
  }
  ValidateCondition(schema, cond);
  return cond;
}

// Conjunction of split conditions in root-to-node order. Empty is the root.
struct Path {
  std::vector<SplitCondition> conditions;

  bool empty() const { return conditions.empty(); }
  std::size_t size() const { return conditions.size(); }

  bool Holds(std::span<const double> row) const {
    for (const auto& c : conditions) {
      if (!c.Holds(row)) return false;
    }
    return true;
  }

  Path Extended(const SplitCondition& cond) const {
    Path out = *this;
    out.conditions.push_back(cond);
    return out;
  }

  // Distinct attributes in order of first appearance along the path.
  std::vector<std::size_t> DistinctAttributes() const {
    std::vector<std::size_t> out;
    for (const auto& c : conditions) {
      if (std::find(out.begin(), out.end(), c.attribute) == out.end()) out.push_back(c.attribute);
    }
    return out;
  }

  // Conditions of this path whose attribute is in `attributes`, order kept.
  Path Restricted(std::span<const std::size_t> attributes) const {
    Path out;
    for (const auto& c : conditions) {
      if (std::find(attributes.begin(), attributes.end(), c.attribute) != attributes.end()) {
        out.conditions.push_back(c);
      }
    }
    return out;
  }

  bool operator==(const Path&) const = default;
};

inline std::string PathToString(const Schema& schema, const Path& path) {
  if (path.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& c = path.conditions[i];
    if (i > 0) out += " & ";
    out += schema.attribute(c.attribute).name;
    out += ConditionOpSymbol(c.op);
    out += Dataset::DisplayValue(schema.attribute(c.attribute), c.threshold);
  }
  return out;
}

inline DatasetView FilterByPath(const DatasetView& view, const Path& path) {
  for (const auto& c : path.conditions) ValidateCondition(view.schema(), c);
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (path.Holds(view.row(i))) rows.push_back(view.rows()[i]);
  }
  return DatasetView(view.data(), std::move(rows));
}

inline DatasetView FilterByPath(const Dataset& data, const Path& path) {
  return FilterByPath(DatasetView(data), path);
}

// ---------------------------------------------------------------------------
// Ingestion.

inline Schema LoadSchema(std::istream& in) {
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kFormatError, std::string("schema is not valid JSON: ") + e.what());
  }
  return Schema::FromJson(doc);
}

// Reads a CSV with a header row. Columns are matched by name; the class
// column may be absent, which yields an unlabeled dataset.
inline Dataset LoadDataset(std::istream& csv_in, const Schema& schema) {
  csv::Reader reader(csv_in);
  csv::Record header;
  if (!reader.Next(header) || (header.size() == 1 && header[0].empty())) {
    Fail(ErrorCode::kParseError, "missing header row");
  }
  const std::size_t n_cols = schema.num_predictive();
  std::vector<int> column_of_field(header.size(), -1);  // -2 marks the class column
  std::vector<bool> seen(n_cols, false);
  bool has_class = false;
  for (std::size_t f = 0; f < header.size(); ++f) {
    if (header[f] == schema.class_attr().name) {
      if (has_class) Fail(ErrorCode::kSchemaMismatch, "duplicate class column");
      has_class = true;
      column_of_field[f] = -2;
      continue;
    }
    auto index = schema.Find(header[f]);
    if (!index) Fail(ErrorCode::kSchemaMismatch, "extra column '" + header[f] + "'");
    if (seen[*index]) Fail(ErrorCode::kSchemaMismatch, "duplicate column '" + header[f] + "'");
    seen[*index] = true;
    column_of_field[f] = static_cast<int>(*index);
  }
  for (std::size_t c = 0; c < n_cols; ++c) {
    if (!seen[c]) Fail(ErrorCode::kSchemaMismatch, "missing column '" + schema.attribute(c).name + "'");
  }

  Dataset data(schema, has_class);
  csv::Record record;
  std::vector<double> values(n_cols);
  std::size_t row_index = 0;
  while (reader.Next(record)) {
    if (record.size() == 1 && record[0].empty()) continue;  // blank line
    if (record.size() != header.size()) {
      Fail(ErrorCode::kParseError, "row " + std::to_string(row_index) + " has " + std::to_string(record.size()) +
                                       " fields, header has " + std::to_string(header.size()));
    }
    int label = -1;
    for (std::size_t f = 0; f < record.size(); ++f) {
      const std::string& field = record[f];
      const Attribute& a = column_of_field[f] == -2 ? schema.class_attr()
                                                    : schema.attribute(static_cast<std::size_t>(column_of_field[f]));
      const std::string where = "row " + std::to_string(row_index) + ", column '" + a.name + "'";
      if (field.empty()) Fail(ErrorCode::kMissingValue, where);
      double v = 0.0;
      if (a.is_discrete()) {
        auto code = a.CodeOf(field);
        if (!code) Fail(ErrorCode::kValueOutOfDomain, where + ": '" + field + "'");
        v = *code;
      } else {
        auto parsed = ParseDouble(field);
        if (!parsed) Fail(ErrorCode::kParseError, where + ": '" + field + "' is not a number");
        v = *parsed;
        if (a.bounds && (v < a.bounds->first || v > a.bounds->second)) {
          Fail(ErrorCode::kValueOutOfDomain, where + ": " + field + " outside bounds");
        }
      }
      if (column_of_field[f] == -2) {
        label = static_cast<int>(v);
      } else {
        values[static_cast<std::size_t>(column_of_field[f])] = v;
      }
    }
    data.AddRow(values, label);
    ++row_index;
  }
  return data;
}

inline Dataset LoadDataset(std::istream& csv_in, std::istream& schema_in) {
  return LoadDataset(csv_in, LoadSchema(schema_in));
}

// Writes predictive columns in schema order, then the class column when
// the dataset is labeled. Continuous values round-trip exactly.
inline void WriteCsv(const Dataset& data, std::ostream& out) {
  const Schema& schema = data.schema();
  csv::Record record;
  for (const auto& a : schema.predictive()) record.push_back(a.name);
  if (data.labeled()) record.push_back(schema.class_attr().name);
  csv::WriteRecord(out, record);
  for (std::size_t r = 0; r < data.num_rows(); ++r) {
    record.clear();
    for (std::size_t c = 0; c < data.num_columns(); ++c) record.push_back(data.DisplayValue(r, c));
    if (data.labeled()) record.push_back(schema.class_attr().domain[static_cast<std::size_t>(data.label(r))]);
    csv::WriteRecord(out, record);
  }
}

struct TrainTestSplit {
  Dataset train;
  Dataset test;
  // Set when rounding left one side empty.
  bool degenerate = false;
};

// Seeded uniform shuffle followed by a prefix cut. The train part has
// round-half-up(train_fraction * n) rows; relative row order is not kept.
inline TrainTestSplit SplitTrainTest(const Dataset& data, double train_fraction, std::uint64_t seed) {
  if (data.empty()) Fail(ErrorCode::kEmptyDataset, "cannot split an empty dataset");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    Fail(ErrorCode::kDomainError, "train_fraction must lie in (0, 1)");
  }
  const std::size_t n = data.num_rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 0.5));
  std::span<const std::size_t> all(order);
  TrainTestSplit out{data.Subset(all.first(n_train)), data.Subset(all.subspan(n_train)), false};
  out.degenerate = out.train.empty() || out.test.empty();
  return out;
}

}  // namespace dadt

#endif  // DADT_DATA_HPP_
