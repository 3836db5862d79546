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

// Top-down induction of domain-adaptive decision trees.
//
// Splits maximize information gain. Under target knowledge both probability
// forms entering the gain are re-estimated:
//
//   P(X = t | path)  from the knowledge store mixed with the source,
//   P(Y = y | path)  = sum_x P_S(Y = y | X_w = x, path) * P(X_w = x | path),
//
// where X_w is a single pivot attribute chosen once, at the root, as the
// attribute whose source and target class conditionals are closest on
// average (Wasserstein). Without knowledge both reduce to frequency counting
// on the source rows, i.e. a standard IG tree.

#ifndef DADT_TREE_HPP_
#define DADT_TREE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dadt/data.hpp"
#include "dadt/error.hpp"
#include "dadt/knowledge.hpp"
#include "dadt/stats.hpp"

namespace dadt {

// Splits must gain strictly more than this.
inline constexpr double kMinGain = 1e-12;

struct TreeConfig {
  int max_depth = 8;
  double min_node_fraction = 0.05;
  double purity_stop = 1.0;
  KnowledgeRegime regime = KnowledgeRegime::None();
  std::optional<double> alpha_override;
  std::optional<std::string> x_w_override;
  std::uint64_t seed = 0;
  // Apply the knowledge-embedded class estimate at leaves too, not only
  // while scoring splits.
  bool knowledge_at_leaves = true;
  // Route discrete values outside the domain to the Neq branch instead of
  // failing.
  bool route_unseen_right = false;

  void Validate() const {
    if (max_depth < 1) Fail(ErrorCode::kConfigError, "max_depth must be >= 1");
    if (!(min_node_fraction > 0.0 && min_node_fraction < 1.0)) {
      Fail(ErrorCode::kConfigError, "min_node_fraction must lie in (0, 1)");
    }
    if (!(purity_stop > 0.5 && purity_stop <= 1.0)) Fail(ErrorCode::kConfigError, "purity_stop must lie in (0.5, 1]");
    if (alpha_override && !(*alpha_override >= 0.0 && *alpha_override <= 1.0)) {
      Fail(ErrorCode::kConfigError, "alpha_override must lie in [0, 1]");
    }
  }

  Json ToJson() const {
    Json out{{"max_depth", max_depth},
             {"min_node_fraction", min_node_fraction},
             {"purity_stop", purity_stop},
             {"regime", regime.Name()},
             {"seed", seed},
             {"knowledge_at_leaves", knowledge_at_leaves},
             {"route_unseen_right", route_unseen_right}};
    out["alpha_override"] = alpha_override ? Json(*alpha_override) : Json(nullptr);
    out["x_w_override"] = x_w_override ? Json(*x_w_override) : Json(nullptr);
    return out;
  }

  static TreeConfig FromJson(const Json& j) {
    TreeConfig c;
    try {
      c.max_depth = j.value("max_depth", c.max_depth);
      c.min_node_fraction = j.value("min_node_fraction", c.min_node_fraction);
      c.purity_stop = j.value("purity_stop", c.purity_stop);
      if (j.contains("regime")) c.regime = KnowledgeRegime::Parse(j.at("regime").get<std::string>());
      c.seed = j.value("seed", c.seed);
      c.knowledge_at_leaves = j.value("knowledge_at_leaves", c.knowledge_at_leaves);
      c.route_unseen_right = j.value("route_unseen_right", c.route_unseen_right);
      if (j.contains("alpha_override") && !j.at("alpha_override").is_null()) {
        c.alpha_override = j.at("alpha_override").get<double>();
      }
      if (j.contains("x_w_override") && !j.at("x_w_override").is_null()) {
        c.x_w_override = j.at("x_w_override").get<std::string>();
      }
    } catch (const Json::exception& e) {
      Fail(ErrorCode::kConfigError, std::string("bad tree config: ") + e.what());
    }
    c.Validate();
    return c;
  }
};

struct NodeDiagnostics {
  // Mixing weight and sub-path truncation of the pivot estimate at this node.
  double alpha = 1.0;
  std::size_t truncated = 0;
  // Pivot cells with source rows but zero target mass.
  std::size_t zero_target_cells = 0;

  bool operator==(const NodeDiagnostics&) const = default;
};

struct TreeNode {
  // Set on internal nodes; left child holds the rows satisfying it.
  std::optional<SplitCondition> condition;
  int left = -1;
  int right = -1;
  double ig = 0.0;
  // Class estimate at the node's path; the prediction at leaves.
  Distribution class_dist;
  std::size_t n_source_rows = 0;
  int depth = 0;
  Path path;
  NodeDiagnostics diagnostics;

  bool is_leaf() const { return !condition.has_value(); }
  bool operator==(const TreeNode&) const = default;
};

struct Prediction {
  int label = 0;
  std::vector<double> probs;
};

// Quantile edges splitting the pooled values into ten bins: (-inf, e1],
// (e1, e2], ..., (e9, inf). Repeated edges collapse.
inline std::vector<ValueCell> DecileCells(std::vector<double> values) {
  std::vector<ValueCell> cells;
  const double inf = std::numeric_limits<double>::infinity();
  if (values.empty()) {
    cells.push_back(ValueCell{false, 0.0, -inf, inf});
    return cells;
  }
  std::sort(values.begin(), values.end());
  std::vector<double> edges;
  const double n = static_cast<double>(values.size());
  for (int q = 1; q <= 9; ++q) {
    // Nearest-rank quantile.
    auto rank = static_cast<std::size_t>(std::ceil(q / 10.0 * n));
    const double e = values[std::max<std::size_t>(rank, 1) - 1];
    if (e < values.back() && (edges.empty() || e > edges.back())) edges.push_back(e);
  }
  double lo = -inf;
  for (double e : edges) {
    cells.push_back(ValueCell{false, 0.0, lo, e});
    lo = e;
  }
  cells.push_back(ValueCell{false, 0.0, lo, inf});
  return cells;
}

inline std::vector<ValueCell> DiscreteCells(const Attribute& a) {
  std::vector<ValueCell> cells;
  for (std::size_t i = 0; i < a.domain.size(); ++i) cells.push_back(ValueCell{true, static_cast<double>(i)});
  return cells;
}

// Cells used for an attribute in pivot computations: domain values when
// discrete, deciles of the pooled source and target values otherwise.
inline std::vector<ValueCell> PivotCellsFor(const Dataset& source, const KnowledgeStore& ks, std::size_t attr) {
  const Attribute& a = source.schema().attribute(attr);
  if (a.is_discrete()) return DiscreteCells(a);
  std::vector<double> pooled = ks.SampleValues(attr);
  for (std::size_t r = 0; r < source.num_rows(); ++r) pooled.push_back(source.value(r, attr));
  return DecileCells(std::move(pooled));
}

struct PivotScore {
  std::size_t attribute = 0;
  double score = 0.0;  // average class-conditional Wasserstein distance
  std::vector<ValueCell> cells;
};

// Sum over cells x of W(P_S(Y | X = x), P_T(Y | X = x)) * P_T(X = x).
// Source cells without rows fall back to the source class marginal.
inline PivotScore ConditionalShiftScore(const Dataset& source, const KnowledgeStore& ks, std::size_t attr) {
  if (!source.labeled()) Fail(ErrorCode::kUnlabeledData, "source must be labeled");
  const Schema& schema = source.schema();
  auto cc = ks.ClassConditionals(attr, PivotCellsFor(source, ks, attr));
  if (!cc) {
    Fail(ErrorCode::kInsufficientKnowledge,
         "no target class conditionals for '" + schema.attribute(attr).name + "'");
  }
  const auto& [cells, target] = *cc;
  const std::size_t k = schema.num_classes();
  std::vector<std::vector<double>> counts(cells.size(), std::vector<double>(k, 0.0));
  std::vector<double> marginal(k, 0.0);
  for (std::size_t r = 0; r < source.num_rows(); ++r) {
    const auto y = static_cast<std::size_t>(source.label(r));
    marginal[y] += 1.0;
    const double v = source.value(r, attr);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].Contains(v)) {
        counts[c][y] += 1.0;
        break;
      }
    }
  }
  const std::vector<double> source_marginal = NormalizeCounts(marginal);
  PivotScore out{attr, 0.0, cells};
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (target[c].weight <= 0.0 || target[c].class_dist.empty()) continue;
    double total = 0.0;
    for (double v : counts[c]) total += v;
    const std::vector<double> ps = total > 0.0 ? NormalizeCounts(counts[c]) : source_marginal;
    out.score += target[c].weight *
                 Wasserstein(Distribution::Categorical(ps), Distribution::Categorical(target[c].class_dist));
  }
  return out;
}

// Pivot attribute minimizing the average class-conditional distance; ties go
// to the earlier attribute in schema order. Attributes without target class
// conditionals are not candidates.
inline PivotScore SelectPivot(const Dataset& source, const KnowledgeStore& ks) {
  if (source.num_columns() == 0) Fail(ErrorCode::kConfigError, "schema has no predictive attributes");
  if (!ks.has_class_conditionals()) {
    Fail(ErrorCode::kInsufficientKnowledge, "pivot selection needs target class conditionals or an override");
  }
  std::optional<PivotScore> best;
  for (std::size_t a = 0; a < source.num_columns(); ++a) {
    if (!ks.ClassConditionals(a, PivotCellsFor(source, ks, a))) continue;
    PivotScore s = ConditionalShiftScore(source, ks, a);
    if (!best || s.score < best->score) best = std::move(s);
  }
  if (!best) Fail(ErrorCode::kInsufficientKnowledge, "no attribute has target class conditionals");
  return *best;
}

class DecisionTree {
 public:
  DecisionTree() = default;
  DecisionTree(Schema schema, TreeConfig config, std::vector<TreeNode> nodes, std::optional<std::size_t> pivot,
               std::vector<ValueCell> pivot_cells, std::size_t n_train)
      : schema_(std::move(schema)),
        config_(std::move(config)),
        nodes_(std::move(nodes)),
        pivot_(pivot),
        pivot_cells_(std::move(pivot_cells)),
        n_train_(n_train) {}

  const Schema& schema() const { return schema_; }
  const TreeConfig& config() const { return config_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  const TreeNode& node(int index) const { return nodes_.at(static_cast<std::size_t>(index)); }
  std::optional<std::size_t> pivot() const { return pivot_; }
  std::optional<std::string> pivot_name() const {
    if (!pivot_) return std::nullopt;
    return schema_.attribute(*pivot_).name;
  }
  const std::vector<ValueCell>& pivot_cells() const { return pivot_cells_; }
  std::size_t n_train() const { return n_train_; }

  int Depth() const {
    int d = 0;
    for (const auto& n : nodes_) d = std::max(d, n.depth);
    return d;
  }

  std::vector<int> Leaves() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].is_leaf()) out.push_back(static_cast<int>(i));
    }
    return out;
  }

  // Index of the leaf reached by an encoded row.
  int LeafIndex(std::span<const double> row) const {
    int current = 0;
    while (!nodes_[static_cast<std::size_t>(current)].is_leaf()) {
      const TreeNode& n = nodes_[static_cast<std::size_t>(current)];
      const SplitCondition& c = *n.condition;
      const Attribute& a = schema_.attribute(c.attribute);
      const double v = row[c.attribute];
      if (a.is_discrete() && !(v >= 0 && v < static_cast<double>(a.domain.size()) && v == std::floor(v))) {
        if (!config_.route_unseen_right) {
          Fail(ErrorCode::kValueOutOfDomain, "unseen value of '" + a.name + "' at prediction time");
        }
        current = n.right;
        continue;
      }
      current = c.Holds(v) ? n.left : n.right;
    }
    return current;
  }

  // Argmax class of the reached leaf; ties go to the earlier class.
  Prediction Predict(std::span<const double> row) const {
    const TreeNode& leaf = nodes_[static_cast<std::size_t>(LeafIndex(row))];
    Prediction p{0, leaf.class_dist.probs};
    for (std::size_t i = 1; i < p.probs.size(); ++i) {
      if (p.probs[i] > p.probs[static_cast<std::size_t>(p.label)]) p.label = static_cast<int>(i);
    }
    return p;
  }

  int PredictLabel(std::span<const double> row) const { return Predict(row).label; }

  bool operator==(const DecisionTree& other) const {
    return schema_ == other.schema_ && nodes_ == other.nodes_ && pivot_ == other.pivot_ &&
           pivot_cells_ == other.pivot_cells_ && n_train_ == other.n_train_;
  }

  // Same splits, thresholds, row counts and leaf distributions (bitwise);
  // ignores diagnostics and pivot bookkeeping.
  bool SameModel(const DecisionTree& other) const {
    if (nodes_.size() != other.nodes_.size()) return false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const TreeNode& a = nodes_[i];
      const TreeNode& b = other.nodes_[i];
      if (a.condition != b.condition || a.left != b.left || a.right != b.right ||
          a.n_source_rows != b.n_source_rows || a.class_dist.probs != b.class_dist.probs) {
        return false;
      }
    }
    return true;
  }

  Json ToJson() const {
    Json out{{"format", "dadt-tree/1"},
             {"schema", schema_.ToJson()},
             {"config", config_.ToJson()},
             {"n_train", n_train_},
             {"root", NodeToJson(0)}};
    out["x_w"] = pivot_ ? Json(schema_.attribute(*pivot_).name) : Json(nullptr);
    Json cells = Json::array();
    for (const auto& c : pivot_cells_) {
      if (c.discrete) {
        cells.push_back(Json{{"code", c.code}});
      } else {
        cells.push_back(Json{{"lo", std::isinf(c.lo) ? Json(nullptr) : Json(c.lo)},
                             {"hi", std::isinf(c.hi) ? Json(nullptr) : Json(c.hi)}});
      }
    }
    out["pivot_cells"] = cells;
    return out;
  }

  static DecisionTree FromJson(const Json& j) {
    try {
      DecisionTree t;
      t.schema_ = Schema::FromJson(j.at("schema"));
      t.config_ = TreeConfig::FromJson(j.at("config"));
      t.n_train_ = j.at("n_train").get<std::size_t>();
      if (!j.at("x_w").is_null()) t.pivot_ = t.schema_.IndexOf(j.at("x_w").get<std::string>());
      const double inf = std::numeric_limits<double>::infinity();
      for (const auto& c : j.at("pivot_cells")) {
        if (c.contains("code")) {
          t.pivot_cells_.push_back(ValueCell{true, c.at("code").get<double>()});
        } else {
          t.pivot_cells_.push_back(ValueCell{false, 0.0, c.at("lo").is_null() ? -inf : c.at("lo").get<double>(),
                                             c.at("hi").is_null() ? inf : c.at("hi").get<double>()});
        }
      }
      t.nodes_.emplace_back();
      t.NodeFromJson(j.at("root"), Path{}, 0, 0);
      return t;
    } catch (const Json::exception& e) {
      Fail(ErrorCode::kFormatError, std::string("malformed tree document: ") + e.what());
    }
  }

 private:
  Json NodeToJson(int index) const {
    const TreeNode& n = nodes_[static_cast<std::size_t>(index)];
    Json dist = Json::object();
    for (std::size_t i = 0; i < n.class_dist.probs.size(); ++i) dist[schema_.class_attr().domain[i]] = n.class_dist.probs[i];
    Json out{{"dist", dist},
             {"n_source_rows", n.n_source_rows},
             {"diagnostics",
              {{"alpha", n.diagnostics.alpha},
               {"truncated", n.diagnostics.truncated},
               {"zero_target_cells", n.diagnostics.zero_target_cells}}}};
    if (!n.is_leaf()) {
      out["condition"] = ConditionToJson(schema_, *n.condition);
      out["ig"] = n.ig;
      out["left"] = NodeToJson(n.left);
      out["right"] = NodeToJson(n.right);
    }
    return out;
  }

  // Slots are allocated exactly as growth allocates them (both children
  // before either subtree) so that a round trip preserves node indices.
  void NodeFromJson(const Json& j, const Path& path, int depth, int index) {
    TreeNode n;
    std::vector<double> probs(schema_.num_classes(), 0.0);
    for (auto it = j.at("dist").begin(); it != j.at("dist").end(); ++it) {
      auto code = schema_.class_attr().CodeOf(it.key());
      if (!code) Fail(ErrorCode::kFormatError, "unknown class label '" + it.key() + "' in tree");
      probs[static_cast<std::size_t>(*code)] = it.value().get<double>();
    }
    n.class_dist = Distribution::Categorical(std::move(probs), schema_.class_attr().domain);
    n.class_dist.Validate();
    n.n_source_rows = j.at("n_source_rows").get<std::size_t>();
    n.depth = depth;
    n.path = path;
    const Json& d = j.at("diagnostics");
    n.diagnostics = {d.at("alpha").get<double>(), d.at("truncated").get<std::size_t>(),
                     d.value("zero_target_cells", std::size_t{0})};
    if (j.contains("condition")) {
      n.condition = ConditionFromJson(schema_, j.at("condition"));
      n.ig = j.at("ig").get<double>();
      n.left = static_cast<int>(nodes_.size());
      n.right = n.left + 1;
      nodes_.resize(nodes_.size() + 2);
      NodeFromJson(j.at("left"), path.Extended(*n.condition), depth + 1, n.left);
      NodeFromJson(j.at("right"), path.Extended(n.condition->Negated()), depth + 1, n.right);
    }
    nodes_[static_cast<std::size_t>(index)] = std::move(n);
  }

  Schema schema_;
  TreeConfig config_;
  std::vector<TreeNode> nodes_;
  std::optional<std::size_t> pivot_;
  std::vector<ValueCell> pivot_cells_;
  std::size_t n_train_ = 0;
};

struct ClassEstimate {
  Distribution dist;
  NodeDiagnostics diagnostics;
};

// P(Y | path) for the source rows reaching `path`. Without knowledge (or
// pivot) this is frequency counting. Otherwise it mixes source class
// conditionals per pivot cell with knowledge-embedded pivot cell weights:
//
//   P(Y = y | path) = sum_x P_S(Y = y | X_w in x, path) * P(X_w in x | path)
//
// A cell without source rows contributes P_S(Y | path) instead.
inline ClassEstimate EstimateClassDist(const DatasetView& rows, const Path& path, std::optional<std::size_t> pivot,
                                       std::span<const ValueCell> pivot_cells, const KnowledgeStore& ks,
                                       std::optional<double> alpha_override = std::nullopt) {
  if (rows.empty()) Fail(ErrorCode::kEmptyContext, "class estimate over zero rows");
  const Schema& schema = rows.schema();
  const std::vector<std::string>& labels = schema.class_attr().domain;
  const std::size_t k = schema.num_classes();
  std::vector<double> counts = ClassCounts(rows);
  if (ks.regime().kind == RegimeKind::kNone || ks.empty() || !pivot) {
    return {Distribution::Categorical(NormalizeCounts(counts), labels), {}};
  }

  const std::size_t n_cells = pivot_cells.size();
  std::vector<std::vector<double>> cell_counts(n_cells, std::vector<double>(k, 0.0));
  std::vector<double> cell_totals(n_cells, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double v = rows.value(i, *pivot);
    for (std::size_t c = 0; c < n_cells; ++c) {
      if (pivot_cells[c].Contains(v)) {
        cell_counts[c][static_cast<std::size_t>(rows.label(i))] += 1.0;
        cell_totals[c] += 1.0;
        break;
      }
    }
  }
  const double n = static_cast<double>(rows.size());

  // Knowledge-embedded P(X_w in cell | path) as ratios.
  std::vector<Ratio> weights(n_cells);
  NodeDiagnostics diag;
  bool first = true;
  auto record = [&](const EmbeddedEstimate& e) {
    if (first) {
      diag.alpha = e.alpha;
      diag.truncated = e.truncated;
      first = false;
    }
  };
  for (std::size_t c = 0; c < n_cells; ++c) {
    const ValueCell& cell = pivot_cells[c];
    if (cell.discrete) {
      const SplitCondition cond{*pivot, ConditionOp::kEq, cell.code};
      const EmbeddedEstimate e = EstimateWithKnowledge(ks, Ratio{cell_totals[c], n}, cond, path, alpha_override);
      record(e);
      weights[c] = e.ratio;
    } else {
      // P(lo < X <= hi) = P(X <= hi) - P(X <= lo).
      const SplitCondition upper{*pivot, ConditionOp::kLeq, cell.hi};
      const SplitCondition lower{*pivot, ConditionOp::kLeq, cell.lo};
      double below_hi = 0.0;
      double below_lo = 0.0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const double v = rows.value(i, *pivot);
        below_hi += v <= cell.hi ? 1.0 : 0.0;
        below_lo += v <= cell.lo ? 1.0 : 0.0;
      }
      const EmbeddedEstimate eh = EstimateWithKnowledge(ks, Ratio{below_hi, n}, upper, path, alpha_override);
      const EmbeddedEstimate el = EstimateWithKnowledge(ks, Ratio{below_lo, n}, lower, path, alpha_override);
      record(eh);
      if (eh.ratio.total == el.ratio.total) {
        weights[c] = Ratio{std::max(0.0, eh.ratio.mass - el.ratio.mass), eh.ratio.total};
      } else {
        weights[c] = Ratio{std::max(0.0, eh.ratio.value() - el.ratio.value()), 1.0};
      }
    }
  }

  // Keep the shared denominator when all cells have one so that masses stay
  // integral whenever the knowledge is count-based.
  bool shared = true;
  for (const Ratio& w : weights) shared = shared && w.total == weights.front().total;
  double weight_sum = 0.0;
  for (Ratio& w : weights) {
    if (!shared) w = Ratio{w.value(), 1.0};
    weight_sum += w.value();
  }
  if (std::abs(weight_sum - 1.0) > kProbabilityTolerance) {
    Fail(ErrorCode::kInternalError, "pivot cell weights sum to " + FormatDouble(weight_sum));
  }

  std::vector<double> mass(k, 0.0);
  for (std::size_t c = 0; c < n_cells; ++c) {
    const double w = weights[c].mass;
    if (w == 0.0) {
      if (cell_totals[c] > 0.0) ++diag.zero_target_cells;
      continue;
    }
    if (cell_totals[c] > 0.0) {
      const double scale = w / cell_totals[c];
      for (std::size_t y = 0; y < k; ++y) mass[y] += cell_counts[c][y] * scale;
    } else {
      const double scale = w / n;
      for (std::size_t y = 0; y < k; ++y) mass[y] += counts[y] * scale;
    }
  }
  return {Distribution::Categorical(NormalizeCounts(mass), labels), diag};
}

namespace internal {

inline double Purity(std::span<const double> counts) {
  double total = 0.0;
  double best = 0.0;
  for (double c : counts) {
    total += c;
    best = std::max(best, c);
  }
  return total > 0.0 ? best / total : 1.0;
}

// Candidate conditions at a node in (schema order, ascending threshold):
// every present value of a discrete attribute; midpoints between
// consecutive distinct values of a continuous one.
inline std::vector<SplitCondition> CandidateConditions(const DatasetView& rows) {
  std::vector<SplitCondition> out;
  const Schema& schema = rows.schema();
  std::vector<double> values(rows.size());
  for (std::size_t a = 0; a < schema.num_predictive(); ++a) {
    for (std::size_t i = 0; i < rows.size(); ++i) values[i] = rows.value(i, a);
    std::vector<double> distinct = values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (schema.attribute(a).is_discrete()) {
      for (double v : distinct) out.push_back(SplitCondition{a, ConditionOp::kEq, v});
    } else {
      for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
        out.push_back(SplitCondition{a, ConditionOp::kLeq, distinct[i] + (distinct[i + 1] - distinct[i]) / 2.0});
      }
    }
  }
  return out;
}

inline std::pair<DatasetView, DatasetView> Partition(const DatasetView& rows, const SplitCondition& cond) {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    (cond.Holds(rows.row(i)) ? left : right).push_back(rows.rows()[i]);
  }
  return {DatasetView(rows.data(), std::move(left)), DatasetView(rows.data(), std::move(right))};
}

}  // namespace internal

struct SplitChoice {
  SplitCondition condition;
  double ig = 0.0;
};

// Everything split scoring needs besides the node itself.
struct GrowContext {
  const KnowledgeStore* ks = nullptr;
  std::optional<std::size_t> pivot;
  std::vector<ValueCell> pivot_cells;
  TreeConfig config;
  // Minimum source rows per child.
  double min_rows = 1.0;
};

// The gain-maximizing admissible split, or nullopt when no split gains more
// than kMinGain or every split leaves a child below the minimum size.
// Ties keep the earliest candidate.
inline std::optional<SplitChoice> BestSplit(const DatasetView& rows, const Path& path, const Distribution& parent,
                                            const GrowContext& ctx) {
  std::optional<SplitChoice> best;
  const double n = static_cast<double>(rows.size());
  for (const SplitCondition& cond : internal::CandidateConditions(rows)) {
    auto [left, right] = internal::Partition(rows, cond);
    const auto n_left = static_cast<double>(left.size());
    const auto n_right = static_cast<double>(right.size());
    if (left.empty() || right.empty() || n_left < ctx.min_rows || n_right < ctx.min_rows) continue;
    const double p_left =
        EstimateWithKnowledge(*ctx.ks, Ratio{n_left, n}, cond, path, ctx.config.alpha_override).ratio.value();
    const Distribution dl =
        EstimateClassDist(left, path.Extended(cond), ctx.pivot, ctx.pivot_cells, *ctx.ks, ctx.config.alpha_override)
            .dist;
    const Distribution dr = EstimateClassDist(right, path.Extended(cond.Negated()), ctx.pivot, ctx.pivot_cells,
                                              *ctx.ks, ctx.config.alpha_override)
                                .dist;
    const double ig = InformationGain(parent, p_left, dl, dr);
    if (!best || ig > best->ig) best = SplitChoice{cond, ig};
  }
  if (!best || !(best->ig > kMinGain)) return std::nullopt;
  return best;
}

namespace internal {

inline void GrowNode(const DatasetView& rows, const Path& path, int depth, const GrowContext& ctx,
                     std::vector<TreeNode>& nodes, int index) {
  const std::vector<double> counts = ClassCounts(rows);
  const ClassEstimate estimate =
      EstimateClassDist(rows, path, ctx.pivot, ctx.pivot_cells, *ctx.ks, ctx.config.alpha_override);
  TreeNode node;
  node.n_source_rows = rows.size();
  node.depth = depth;
  node.path = path;
  node.diagnostics = estimate.diagnostics;
  node.class_dist = ctx.config.knowledge_at_leaves
                        ? estimate.dist
                        : Distribution::Categorical(NormalizeCounts(counts), rows.schema().class_attr().domain);

  std::optional<SplitChoice> split;
  if (depth < ctx.config.max_depth && Purity(counts) < ctx.config.purity_stop) {
    split = BestSplit(rows, path, estimate.dist, ctx);
  }
  if (!split) {
    nodes[static_cast<std::size_t>(index)] = std::move(node);
    return;
  }
  node.condition = split->condition;
  node.ig = split->ig;
  auto [left, right] = Partition(rows, split->condition);
  node.left = static_cast<int>(nodes.size());
  nodes.emplace_back();
  node.right = static_cast<int>(nodes.size());
  nodes.emplace_back();
  const int l = node.left;
  const int r = node.right;
  nodes[static_cast<std::size_t>(index)] = std::move(node);
  GrowNode(left, path.Extended(split->condition), depth + 1, ctx, nodes, l);
  GrowNode(right, path.Extended(split->condition.Negated()), depth + 1, ctx, nodes, r);
}

inline void CheckTrainable(const Dataset& train) {
  if (train.empty()) Fail(ErrorCode::kEmptyDataset, "training set is empty");
  if (!train.labeled()) Fail(ErrorCode::kUnlabeledData, "training set has no class column");
}

}  // namespace internal

// Grows a tree on labeled source rows. The knowledge regime comes from the
// store; config.regime is recorded for provenance.
inline DecisionTree Grow(const Dataset& train, const KnowledgeStore& ks, TreeConfig config) {
  config.Validate();
  internal::CheckTrainable(train);
  if (!(ks.schema() == train.schema()) && ks.regime().kind != RegimeKind::kNone) {
    Fail(ErrorCode::kSchemaMismatch, "knowledge store is bound to a different schema");
  }
  config.regime = ks.regime();
  GrowContext ctx;
  ctx.ks = &ks;
  ctx.config = config;
  ctx.min_rows = std::max(1.0, config.min_node_fraction * static_cast<double>(train.num_rows()));
  if (ks.regime().kind != RegimeKind::kNone && !ks.empty()) {
    if (config.x_w_override) {
      ctx.pivot = train.schema().IndexOf(*config.x_w_override);
      ctx.pivot_cells = PivotCellsFor(train, ks, *ctx.pivot);
    } else {
      PivotScore p = SelectPivot(train, ks);
      ctx.pivot = p.attribute;
      ctx.pivot_cells = std::move(p.cells);
    }
  }
  std::vector<TreeNode> nodes(1);
  internal::GrowNode(DatasetView(train), Path{}, 0, ctx, nodes, 0);
  return DecisionTree(train.schema(), config, std::move(nodes), ctx.pivot, ctx.pivot_cells, train.num_rows());
}

inline DecisionTree Grow(const Dataset& train, TreeConfig config) {
  return Grow(train, KnowledgeStore::Empty(train.schema()), std::move(config));
}

// Plain information-gain tree written directly against frequency counts,
// with no knowledge machinery in the loop. Serves as the reference the
// no-knowledge path must reproduce exactly.
inline DecisionTree GrowStandard(const Dataset& train, TreeConfig config) {
  config.Validate();
  internal::CheckTrainable(train);
  config.regime = KnowledgeRegime::None();
  const Schema& schema = train.schema();
  const double min_rows = std::max(1.0, config.min_node_fraction * static_cast<double>(train.num_rows()));
  std::vector<TreeNode> nodes(1);

  auto grow = [&](auto&& self, const DatasetView& rows, const Path& path, int depth, int index) -> void {
    const std::vector<double> counts = ClassCounts(rows);
    const std::vector<double> parent = NormalizeCounts(counts);
    TreeNode node;
    node.n_source_rows = rows.size();
    node.depth = depth;
    node.path = path;
    node.class_dist = Distribution::Categorical(parent, schema.class_attr().domain);

    std::optional<SplitChoice> best;
    if (depth < config.max_depth && internal::Purity(counts) < config.purity_stop) {
      const double n = static_cast<double>(rows.size());
      for (const SplitCondition& cond : internal::CandidateConditions(rows)) {
        std::vector<double> left(schema.num_classes(), 0.0);
        std::vector<double> right(schema.num_classes(), 0.0);
        double n_left = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const auto y = static_cast<std::size_t>(rows.label(i));
          if (cond.Holds(rows.row(i))) {
            left[y] += 1.0;
            n_left += 1.0;
          } else {
            right[y] += 1.0;
          }
        }
        const double n_right = n - n_left;
        if (n_left == 0.0 || n_right == 0.0 || n_left < min_rows || n_right < min_rows) continue;
        const double ig = InformationGain(parent, n_left / n, NormalizeCounts(left), NormalizeCounts(right));
        if (!best || ig > best->ig) best = SplitChoice{cond, ig};
      }
      if (best && !(best->ig > kMinGain)) best.reset();
    }
    if (!best) {
      nodes[static_cast<std::size_t>(index)] = std::move(node);
      return;
    }
    node.condition = best->condition;
    node.ig = best->ig;
    auto [l_rows, r_rows] = internal::Partition(rows, best->condition);
    node.left = static_cast<int>(nodes.size());
    nodes.emplace_back();
    node.right = static_cast<int>(nodes.size());
    nodes.emplace_back();
    const int l = node.left;
    const int r = node.right;
    nodes[static_cast<std::size_t>(index)] = std::move(node);
    self(self, l_rows, path.Extended(best->condition), depth + 1, l);
    self(self, r_rows, path.Extended(best->condition.Negated()), depth + 1, r);
  };
  grow(grow, DatasetView(train), Path{}, 0, 0);
  return DecisionTree(schema, config, std::move(nodes), std::nullopt, {}, train.num_rows());
}

}  // namespace dadt

#endif  // DADT_TREE_HPP_
