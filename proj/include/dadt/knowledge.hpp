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

// Target-domain knowledge about attribute distributions and its mixing with
// source estimates.
//
// A store answers P_T(cond | path) either from a retained target sample
// (full knowledge), from joint tables over bounded attribute subsets
// (partial knowledge, cross-tables of official statistics) or from
// conditional CDF knots for continuous attributes. When a path cannot be
// answered, the caller shrinks it to the maximal answerable sub-path and
// mixes the answer with the source estimate:
//
//   P(cond | path) = alpha * P_S(cond | path) + (1 - alpha) * P_T(cond | sub-path)
//
// where alpha is the share of path attributes dropped by the shrinking.

#ifndef DADT_KNOWLEDGE_HPP_
#define DADT_KNOWLEDGE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dadt/data.hpp"
#include "dadt/error.hpp"
#include "dadt/stats.hpp"

namespace dadt {

enum class RegimeKind { kNone, kFull, kPartial };

struct KnowledgeRegime {
  RegimeKind kind = RegimeKind::kNone;
  // Maximum number of jointly known attributes; meaningful for kPartial.
  int arity = 0;

  static KnowledgeRegime None() { return {RegimeKind::kNone, 0}; }
  static KnowledgeRegime Full() { return {RegimeKind::kFull, 0}; }
  static KnowledgeRegime Partial(int arity) {
    if (arity < 1) Fail(ErrorCode::kConfigError, "partial knowledge needs arity >= 1");
    return {RegimeKind::kPartial, arity};
  }

  std::string Name() const {
    switch (kind) {
      case RegimeKind::kNone: return "ntdk";
      case RegimeKind::kFull: return "ftdk";
      case RegimeKind::kPartial: return "ptdk" + std::to_string(arity);
    }
    return "?";
  }

  static KnowledgeRegime Parse(std::string_view name) {
    if (name == "ntdk" || name == "none") return None();
    if (name == "ftdk" || name == "full") return Full();
    if (name.substr(0, 4) == "ptdk" && name.size() > 4) {
      auto k = ParseDouble(name.substr(4));
      if (k && *k >= 1 && *k == std::floor(*k)) return Partial(static_cast<int>(*k));
    }
    Fail(ErrorCode::kConfigError, "unknown knowledge regime '" + std::string(name) + "'");
  }

  bool operator==(const KnowledgeRegime&) const = default;
};

// A probability kept as mass / total. Estimates derived from the same counts
// keep identical numerators and denominators, so mixtures built from them
// reproduce plain frequency counting bit for bit.
struct Ratio {
  double mass = 0.0;
  double total = 1.0;

  double value() const { return mass / total; }
};

inline double AffineEstimate(double source_p, double target_p, double alpha) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(source_p) || !in_unit(target_p) || !in_unit(alpha)) {
    Fail(ErrorCode::kDomainError, "affine estimate inputs must lie in [0,1]");
  }
  const double p = alpha * source_p + (1.0 - alpha) * target_p;
  return std::clamp(p, 0.0, 1.0);
}

// Affine mixing on ratios; the endpoints return their operand unchanged.
inline Ratio AffineMix(const Ratio& source, const Ratio& target, double alpha) {
  if (alpha == 1.0) return source;
  if (alpha == 0.0) return target;
  return Ratio{AffineEstimate(source.value(), target.value(), alpha), 1.0};
}

// Share of distinct attributes of `path` that `subpath` does not test.
inline double DynamicAlpha(const Path& path, const Path& subpath) {
  for (const auto& c : subpath.conditions) {
    if (std::find(path.conditions.begin(), path.conditions.end(), c) == path.conditions.end()) {
      Fail(ErrorCode::kSubsetViolation, "sub-path condition not contained in path");
    }
  }
  const std::vector<std::size_t> all = path.DistinctAttributes();
  if (all.empty()) return 0.0;
  const std::vector<std::size_t> kept = subpath.DistinctAttributes();
  std::size_t dropped = 0;
  for (std::size_t a : all) {
    if (std::find(kept.begin(), kept.end(), a) == kept.end()) ++dropped;
  }
  return static_cast<double>(dropped) / static_cast<double>(all.size());
}

// Joint probability mass over a set of attributes. Keys hold encoded values
// aligned with `vars` (ascending schema indices).
struct JointTable {
  std::vector<std::size_t> vars;
  std::vector<std::vector<double>> keys;
  std::vector<double> mass;
  double total = 0.0;
};

// P_T(X <= x | context) for a continuous attribute, given by knots.
struct CdfKnowledge {
  std::size_t var = 0;
  // Equality context as (attribute, code) pairs, ascending attribute.
  std::vector<std::pair<std::size_t, double>> context;
  std::vector<std::pair<double, double>> knots;

  // Zero below the first knot, linear between knots, one above the last.
  double Evaluate(double x) const {
    if (knots.empty() || x < knots.front().first) return 0.0;
    if (x >= knots.back().first) return knots.back().second;
    auto hi = std::upper_bound(knots.begin(), knots.end(), x,
                               [](double v, const std::pair<double, double>& k) { return v < k.first; });
    auto lo = std::prev(hi);
    const double w = (x - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
  }
};

// A value cell of one attribute: a discrete code or a continuous bin (lo, hi].
struct ValueCell {
  bool discrete = true;
  double code = 0.0;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool Contains(double v) const { return discrete ? v == code : (v > lo && v <= hi); }
  bool operator==(const ValueCell&) const = default;
};

// P_T(X in cell) and P_T(Y | X in cell) for one attribute.
struct ClassConditionalTable {
  std::size_t var = 0;
  std::vector<ValueCell> cells;
  std::vector<double> cell_probs;
  std::vector<std::vector<double>> class_dists;
};

struct PivotCellKnowledge {
  double weight = 0.0;
  // Empty when the target has no mass in the cell.
  std::vector<double> class_dist;
};

inline constexpr std::size_t kDefaultCellBudget = 10'000'000;

class KnowledgeStore {
 public:
  KnowledgeStore() = default;

  static KnowledgeStore Empty(const Schema& schema) {
    KnowledgeStore ks;
    ks.schema_ = schema;
    ks.regime_ = KnowledgeRegime::None();
    return ks;
  }

  // Full knowledge keeps the sample and counts on demand; partial knowledge
  // precomputes joint tables over every attribute subset of size <= k.
  static KnowledgeStore FromSample(const Dataset& target, const KnowledgeRegime& regime,
                                   std::size_t cell_budget = kDefaultCellBudget) {
    if (target.empty()) Fail(ErrorCode::kEmptyDataset, "target sample is empty");
    KnowledgeStore ks = Empty(target.schema());
    ks.regime_ = regime;
    if (regime.kind == RegimeKind::kNone) return ks;
    auto sample = std::make_shared<const Dataset>(target);
    if (target.labeled()) ks.labeled_sample_ = sample;
    if (regime.kind == RegimeKind::kFull) {
      ks.sample_ = sample;
      return ks;
    }
    ks.arity_limit_ = static_cast<std::size_t>(regime.arity);
    const std::size_t m = target.num_columns();
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(regime.arity), m);
    std::vector<std::size_t> subset;
    // Enumerate subsets in lexicographic order, size 1..k.
    auto recurse = [&](auto&& self, std::size_t start) -> void {
      if (!subset.empty()) ks.tables_.push_back(CountTable(target, subset, cell_budget));
      if (subset.size() == k) return;
      for (std::size_t a = start; a < m; ++a) {
        subset.push_back(a);
        self(self, a + 1);
        subset.pop_back();
      }
    };
    recurse(recurse, 0);
    std::sort(ks.tables_.begin(), ks.tables_.end(), [](const JointTable& a, const JointTable& b) {
      return a.vars.size() != b.vars.size() ? a.vars.size() < b.vars.size() : a.vars < b.vars;
    });
    return ks;
  }

  static KnowledgeStore FromCrosstabs(std::istream& in, const Schema& schema) {
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::exception& e) {
      Fail(ErrorCode::kFormatError, std::string("cross-tab document is not valid JSON: ") + e.what());
    }
    return FromCrosstabs(doc, schema);
  }

  static KnowledgeStore FromCrosstabs(const Json& doc, const Schema& schema);

  const Schema& schema() const { return schema_; }
  const KnowledgeRegime& regime() const { return regime_; }
  // Unset means unbounded.
  std::optional<std::size_t> arity_limit() const { return arity_limit_; }
  const std::vector<JointTable>& tables() const { return tables_; }
  const std::vector<CdfKnowledge>& cdfs() const { return cdfs_; }
  const std::shared_ptr<const Dataset>& sample() const { return sample_; }
  const std::shared_ptr<const Dataset>& labeled_sample() const { return labeled_sample_; }
  const std::optional<std::vector<double>>& class_marginal() const { return class_marginal_; }

  bool empty() const { return !sample_ && tables_.empty() && cdfs_.empty(); }

  bool has_class_conditionals() const { return labeled_sample_ != nullptr || !class_conditionals_.empty(); }

  // P_T(cond | path) if the store answers for the whole path; nullopt when
  // the path exceeds the arity limit, no table covers it, or its mass is 0.
  std::optional<Ratio> QueryRatio(const SplitCondition& cond, const Path& path) const {
    ValidateCondition(schema_, cond);
    for (const auto& c : path.conditions) ValidateCondition(schema_, c);
    if (empty()) return std::nullopt;
    std::vector<std::size_t> attrs = path.DistinctAttributes();
    if (std::find(attrs.begin(), attrs.end(), cond.attribute) == attrs.end()) attrs.push_back(cond.attribute);
    if (arity_limit_ && attrs.size() > *arity_limit_) return std::nullopt;
    if (sample_) return CountOnSample(*sample_, cond, path);
    std::sort(attrs.begin(), attrs.end());
    if (auto r = QueryTables(attrs, cond, path)) return r;
    return QueryCdfs(cond, path);
  }

  std::optional<double> Query(const SplitCondition& cond, const Path& path) const {
    auto r = QueryRatio(cond, path);
    if (!r) return std::nullopt;
    return r->value();
  }

  // The largest sub-path the store can answer for `cond`. Candidates keep
  // all conditions on the first L distinct attributes of the path in root
  // order, with L as large as the arity limit allows and shrinking while the
  // store cannot answer. nullopt means nothing is answerable: use the source.
  std::optional<Path> MaximalSubpath(const SplitCondition& cond, const Path& path) const {
    if (empty()) return std::nullopt;
    const std::vector<std::size_t> attrs = path.DistinctAttributes();
    std::size_t longest = attrs.size();
    if (arity_limit_) {
      std::vector<std::size_t> chosen{cond.attribute};
      longest = 0;
      for (std::size_t a : attrs) {
        if (std::find(chosen.begin(), chosen.end(), a) == chosen.end()) chosen.push_back(a);
        if (chosen.size() > *arity_limit_) break;
        ++longest;
      }
    }
    for (std::size_t len = longest + 1; len-- > 0;) {
      std::span<const std::size_t> prefix(attrs.data(), len);
      Path sub = path.Restricted(prefix);
      if (QueryRatio(cond, sub)) return sub;
    }
    return std::nullopt;
  }

  // Cells and per-cell P_T(X in cell), P_T(Y | X in cell) for attribute
  // `var`. Cells come from an explicit class-conditional table when one was
  // loaded, otherwise from `default_cells` evaluated on the labeled sample.
  std::optional<std::pair<std::vector<ValueCell>, std::vector<PivotCellKnowledge>>> ClassConditionals(
      std::size_t var, const std::vector<ValueCell>& default_cells) const {
    for (const auto& t : class_conditionals_) {
      if (t.var != var) continue;
      std::vector<PivotCellKnowledge> out;
      for (std::size_t i = 0; i < t.cells.size(); ++i) out.push_back({t.cell_probs[i], t.class_dists[i]});
      return std::make_pair(t.cells, out);
    }
    if (!labeled_sample_) return std::nullopt;
    const Dataset& d = *labeled_sample_;
    const std::size_t n_classes = schema_.num_classes();
    std::vector<std::vector<double>> counts(default_cells.size(), std::vector<double>(n_classes, 0.0));
    std::vector<double> totals(default_cells.size(), 0.0);
    for (std::size_t r = 0; r < d.num_rows(); ++r) {
      const double v = d.value(r, var);
      for (std::size_t c = 0; c < default_cells.size(); ++c) {
        if (default_cells[c].Contains(v)) {
          counts[c][static_cast<std::size_t>(d.label(r))] += 1.0;
          totals[c] += 1.0;
          break;
        }
      }
    }
    std::vector<PivotCellKnowledge> out;
    for (std::size_t c = 0; c < default_cells.size(); ++c) {
      PivotCellKnowledge cell{totals[c] / static_cast<double>(d.num_rows()), {}};
      if (totals[c] > 0) cell.class_dist = NormalizeCounts(counts[c]);
      out.push_back(std::move(cell));
    }
    return std::make_pair(default_cells, out);
  }

  // Target values of a continuous attribute, when a sample is retained.
  std::vector<double> SampleValues(std::size_t var) const {
    const Dataset* d = sample_ ? sample_.get() : labeled_sample_.get();
    std::vector<double> out;
    if (!d) return out;
    out.reserve(d->num_rows());
    for (std::size_t r = 0; r < d->num_rows(); ++r) out.push_back(d->value(r, var));
    return out;
  }

 private:
  static std::optional<Ratio> CountOnSample(const Dataset& d, const SplitCondition& cond, const Path& path) {
    double den = 0.0;
    double num = 0.0;
    for (std::size_t r = 0; r < d.num_rows(); ++r) {
      auto row = d.row(r);
      if (!path.Holds(row)) continue;
      den += 1.0;
      if (cond.Holds(row)) num += 1.0;
    }
    if (den == 0.0) return std::nullopt;
    return Ratio{num, den};
  }

  static JointTable CountTable(const Dataset& d, const std::vector<std::size_t>& vars, std::size_t cell_budget) {
    // Budget uses the full cross product of domain sizes (distinct values
    // for continuous attributes).
    double cells = 1.0;
    for (std::size_t v : vars) {
      const Attribute& a = d.schema().attribute(v);
      double size = static_cast<double>(a.domain.size());
      if (a.is_continuous()) {
        std::vector<double> values;
        for (std::size_t r = 0; r < d.num_rows(); ++r) values.push_back(d.value(r, v));
        std::sort(values.begin(), values.end());
        size = static_cast<double>(std::unique(values.begin(), values.end()) - values.begin());
      }
      cells *= size;
    }
    if (cells > static_cast<double>(cell_budget)) {
      Fail(ErrorCode::kArityOverflow, "cross-table would need " + FormatDouble(cells) + " cells, budget is " +
                                          std::to_string(cell_budget));
    }
    std::map<std::vector<double>, double> counts;
    std::vector<double> key(vars.size());
    for (std::size_t r = 0; r < d.num_rows(); ++r) {
      for (std::size_t i = 0; i < vars.size(); ++i) key[i] = d.value(r, vars[i]);
      counts[key] += 1.0;
    }
    JointTable t;
    t.vars = vars;
    for (auto& [k, c] : counts) {
      t.keys.push_back(k);
      t.mass.push_back(c);
    }
    t.total = static_cast<double>(d.num_rows());
    return t;
  }

  std::optional<Ratio> QueryTables(const std::vector<std::size_t>& attrs, const SplitCondition& cond,
                                   const Path& path) const {
    // Smallest table whose variables cover the query; tables are kept
    // sorted by size.
    for (const auto& t : tables_) {
      if (!std::includes(t.vars.begin(), t.vars.end(), attrs.begin(), attrs.end())) continue;
      std::vector<std::size_t> pos(schema_.num_predictive(), 0);
      for (std::size_t i = 0; i < t.vars.size(); ++i) pos[t.vars[i]] = i;
      double den = 0.0;
      double num = 0.0;
      for (std::size_t c = 0; c < t.keys.size(); ++c) {
        const auto& key = t.keys[c];
        bool holds = true;
        for (const auto& pc : path.conditions) {
          if (!pc.Holds(key[pos[pc.attribute]])) {
            holds = false;
            break;
          }
        }
        if (!holds) continue;
        den += t.mass[c];
        if (cond.Holds(key[pos[cond.attribute]])) num += t.mass[c];
      }
      if (den <= 0.0) return std::nullopt;
      return Ratio{num, den};
    }
    return std::nullopt;
  }

  std::optional<Ratio> QueryCdfs(const SplitCondition& cond, const Path& path) const {
    if (cond.op != ConditionOp::kLeq && cond.op != ConditionOp::kGt) return std::nullopt;
    std::vector<std::pair<std::size_t, double>> context;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& c : path.conditions) {
      if (c.attribute == cond.attribute) {
        if (c.op == ConditionOp::kLeq) hi = std::min(hi, c.threshold);
        if (c.op == ConditionOp::kGt) lo = std::max(lo, c.threshold);
      } else if (c.op == ConditionOp::kEq) {
        context.emplace_back(c.attribute, c.threshold);
      } else {
        return std::nullopt;
      }
    }
    std::sort(context.begin(), context.end());
    context.erase(std::unique(context.begin(), context.end()), context.end());
    for (const auto& cdf : cdfs_) {
      if (cdf.var != cond.attribute || cdf.context != context) continue;
      auto at = [&](double x) {
        if (x == std::numeric_limits<double>::infinity()) return 1.0;
        if (x == -std::numeric_limits<double>::infinity()) return 0.0;
        return cdf.Evaluate(x);
      };
      if (lo >= hi) return std::nullopt;
      const double den = at(hi) - at(lo);
      if (den <= 0.0) return std::nullopt;
      // Mass of (lo, min(hi, t)] for <=, (max(lo, t), hi] for >.
      double num;
      if (cond.op == ConditionOp::kLeq) {
        num = cond.threshold <= lo ? 0.0 : at(std::min(hi, cond.threshold)) - at(lo);
      } else {
        num = cond.threshold >= hi ? 0.0 : at(hi) - at(std::max(lo, cond.threshold));
      }
      return Ratio{std::clamp(num, 0.0, den), den};
    }
    return std::nullopt;
  }

  Schema schema_;
  KnowledgeRegime regime_;
  std::optional<std::size_t> arity_limit_;
  std::shared_ptr<const Dataset> sample_;
  std::shared_ptr<const Dataset> labeled_sample_;
  std::vector<JointTable> tables_;
  std::vector<CdfKnowledge> cdfs_;
  std::vector<ClassConditionalTable> class_conditionals_;
  std::optional<std::vector<double>> class_marginal_;
};

namespace internal {

inline constexpr double kLoadTolerance = 1e-6;

inline double CheckedTotal(double sum, const std::string& what) {
  if (std::abs(sum - 1.0) > kLoadTolerance) {
    Fail(ErrorCode::kNormalizationError, what + " sums to " + FormatDouble(sum));
  }
  return sum;
}

inline double CodeOrFail(const Attribute& a, const Json& label) {
  const std::string text = label.is_string() ? label.get<std::string>() : label.dump();
  auto code = a.CodeOf(text);
  if (!code) Fail(ErrorCode::kFormatError, "'" + text + "' not in domain of " + a.name);
  return *code;
}

inline std::vector<double> ClassDistFromJson(const Schema& schema, const Json& j, const std::string& what) {
  std::vector<double> dist(schema.num_classes(), 0.0);
  double sum = 0.0;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const double p = it.value().get<double>();
    if (p < 0.0) Fail(ErrorCode::kNormalizationError, what + " has a negative probability");
    dist[static_cast<std::size_t>(CodeOrFail(schema.class_attr(), Json(it.key())))] += p;
    sum += p;
  }
  CheckedTotal(sum, what);
  for (double& p : dist) p /= sum;
  return dist;
}

}  // namespace internal

inline KnowledgeStore KnowledgeStore::FromCrosstabs(const Json& doc, const Schema& schema) {
  using internal::CheckedTotal;
  using internal::CodeOrFail;
  KnowledgeStore ks = Empty(schema);
  try {
    if (!doc.is_object()) Fail(ErrorCode::kFormatError, "cross-tab document must be an object");
    if (doc.contains("arity_limit") && !doc.at("arity_limit").is_null()) {
      const int k = doc.at("arity_limit").get<int>();
      if (k < 1) Fail(ErrorCode::kFormatError, "arity_limit must be >= 1");
      ks.arity_limit_ = static_cast<std::size_t>(k);
      ks.regime_ = KnowledgeRegime::Partial(k);
    } else {
      ks.regime_ = KnowledgeRegime::Full();
    }

    auto read_table = [&](const Json& t) {
      JointTable table;
      std::vector<std::string> names;
      for (const auto& v : t.at("vars")) names.push_back(v.get<std::string>());
      if (names.empty()) Fail(ErrorCode::kFormatError, "table without vars");
      std::vector<std::size_t> idx;
      for (const auto& n : names) {
        idx.push_back(schema.IndexOf(n));
        if (!schema.attribute(idx.back()).is_discrete()) {
          Fail(ErrorCode::kFormatError, "cross-table variable '" + n + "' must be discrete; use cdfs");
        }
      }
      // Store keys in ascending attribute order.
      std::vector<std::size_t> order(idx.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return idx[a] < idx[b]; });
      for (std::size_t o : order) table.vars.push_back(idx[o]);
      if (std::adjacent_find(table.vars.begin(), table.vars.end()) != table.vars.end()) {
        Fail(ErrorCode::kFormatError, "table repeats a variable");
      }
      const std::string kind = t.value("kind", std::string("joint"));
      if (kind != "joint") Fail(ErrorCode::kFormatError, "unsupported table kind '" + kind + "'");
      std::map<std::vector<double>, double> cells;
      auto add_cell = [&](const std::vector<Json>& key_labels, double p) {
        if (key_labels.size() != idx.size()) Fail(ErrorCode::kFormatError, "cell key arity mismatch");
        if (p < 0.0) Fail(ErrorCode::kNormalizationError, "negative cell probability");
        std::vector<double> key(idx.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
          key[i] = CodeOrFail(schema.attribute(idx[order[i]]), key_labels[order[i]]);
        }
        cells[key] += p;
      };
      if (t.contains("table")) {
        if (idx.size() != 1) Fail(ErrorCode::kFormatError, "'table' shorthand needs exactly one variable");
        for (auto it = t.at("table").begin(); it != t.at("table").end(); ++it) {
          add_cell({Json(it.key())}, it.value().get<double>());
        }
      } else {
        for (const auto& cell : t.at("cells")) {
          add_cell(cell.at("key").get<std::vector<Json>>(), cell.at("p").get<double>());
        }
      }
      double sum = 0.0;
      for (const auto& [k, p] : cells) sum += p;
      CheckedTotal(sum, "table over " + names.front() + (names.size() > 1 ? ",..." : ""));
      for (const auto& [k, p] : cells) {
        table.keys.push_back(k);
        table.mass.push_back(p / sum);
      }
      table.total = 1.0;
      ks.tables_.push_back(std::move(table));
    };

    if (doc.contains("tables")) {
      for (const auto& t : doc.at("tables")) read_table(t);
    } else if (doc.contains("vars")) {
      read_table(doc);
    }
    std::sort(ks.tables_.begin(), ks.tables_.end(), [](const JointTable& a, const JointTable& b) {
      return a.vars.size() != b.vars.size() ? a.vars.size() < b.vars.size() : a.vars < b.vars;
    });

    if (doc.contains("cdfs")) {
      for (const auto& c : doc.at("cdfs")) {
        CdfKnowledge cdf;
        cdf.var = schema.IndexOf(c.at("var").get<std::string>());
        if (!schema.attribute(cdf.var).is_continuous()) {
          Fail(ErrorCode::kFormatError, "cdf variable must be continuous");
        }
        if (c.contains("context")) {
          for (const auto& pair : c.at("context")) {
            const std::size_t a = schema.IndexOf(pair.at(0).get<std::string>());
            cdf.context.emplace_back(a, CodeOrFail(schema.attribute(a), pair.at(1)));
          }
        }
        std::sort(cdf.context.begin(), cdf.context.end());
        for (const auto& k : c.at("knots")) cdf.knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
        if (cdf.knots.empty()) Fail(ErrorCode::kFormatError, "cdf without knots");
        for (std::size_t i = 0; i < cdf.knots.size(); ++i) {
          const auto [x, p] = cdf.knots[i];
          if (p < 0.0 || (i > 0 && (x <= cdf.knots[i - 1].first || p < cdf.knots[i - 1].second))) {
            Fail(ErrorCode::kFormatError, "cdf knots must be increasing in value and nondecreasing in probability");
          }
        }
        const double last = CheckedTotal(cdf.knots.back().second, "cdf of " + schema.attribute(cdf.var).name);
        for (auto& k : cdf.knots) k.second /= last;
        ks.cdfs_.push_back(std::move(cdf));
      }
    }

    if (doc.contains("class_conditionals") && !doc.at("class_conditionals").is_null()) {
      for (const auto& cc : doc.at("class_conditionals")) {
        ClassConditionalTable t;
        t.var = schema.IndexOf(cc.at("var").get<std::string>());
        const Attribute& a = schema.attribute(t.var);
        double sum = 0.0;
        for (const auto& cell : cc.at("cells")) {
          ValueCell vc;
          if (a.is_discrete()) {
            vc.discrete = true;
            vc.code = CodeOrFail(a, cell.at("value"));
          } else {
            vc.discrete = false;
            vc.lo = cell.at("bin").at(0).is_null() ? -std::numeric_limits<double>::infinity()
                                                   : cell.at("bin").at(0).get<double>();
            vc.hi = cell.at("bin").at(1).is_null() ? std::numeric_limits<double>::infinity()
                                                   : cell.at("bin").at(1).get<double>();
          }
          const double px = cell.at("p_x").get<double>();
          if (px < 0.0) Fail(ErrorCode::kNormalizationError, "negative p_x");
          sum += px;
          t.cells.push_back(vc);
          t.cell_probs.push_back(px);
          t.class_dists.push_back(
              internal::ClassDistFromJson(schema, cell.at("dist"), "class conditional of " + a.name));
        }
        CheckedTotal(sum, "marginal of " + a.name);
        for (double& p : t.cell_probs) p /= sum;
        ks.class_conditionals_.push_back(std::move(t));
      }
    }
    if (doc.contains("class_marginal") && !doc.at("class_marginal").is_null()) {
      ks.class_marginal_ = internal::ClassDistFromJson(schema, doc.at("class_marginal"), "class marginal");
    }
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kFormatError, std::string("malformed cross-tab document: ") + e.what());
  }
  return ks;
}

// Knowledge-embedded estimate of P(cond | path): source-only under no
// knowledge, otherwise the source ratio mixed with the target answer on the
// maximal sub-path.
struct EmbeddedEstimate {
  Ratio ratio;
  double alpha = 1.0;
  // Distinct path attributes dropped to reach an answerable sub-path.
  std::size_t truncated = 0;
  bool used_target = false;
};

inline EmbeddedEstimate EstimateWithKnowledge(const KnowledgeStore& ks, const Ratio& source,
                                              const SplitCondition& cond, const Path& path,
                                              std::optional<double> alpha_override = std::nullopt) {
  if (ks.regime().kind == RegimeKind::kNone || ks.empty()) return {source, 1.0, 0, false};
  auto sub = ks.MaximalSubpath(cond, path);
  if (!sub) return {source, 1.0, path.DistinctAttributes().size(), false};
  const Ratio target = *ks.QueryRatio(cond, *sub);
  const double alpha = alpha_override ? *alpha_override : DynamicAlpha(path, *sub);
  const std::size_t truncated = path.DistinctAttributes().size() - sub->DistinctAttributes().size();
  return {AffineMix(source, target, alpha), alpha, truncated, true};
}

}  // namespace dadt

#endif  // DADT_KNOWLEDGE_HPP_
