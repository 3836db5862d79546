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

// Evaluation: accuracy, group fairness (demographic parity, equal
// opportunity), per-group threshold post-processing, relative gains and
// shift diagnostics.

#ifndef DADT_METRICS_HPP_
#define DADT_METRICS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dadt/data.hpp"
#include "dadt/error.hpp"
#include "dadt/knowledge.hpp"
#include "dadt/stats.hpp"
#include "dadt/tree.hpp"

namespace dadt {

// Denominators below this make a relative gain meaningless.
inline constexpr double kGainEpsilon = 1e-9;
inline constexpr double kGainCap = 100.0;

enum class FairnessObjective { kDemographicParity, kEqualOpportunity };

inline std::string FairnessObjectiveName(FairnessObjective o) {
  return o == FairnessObjective::kDemographicParity ? "dp" : "eop";
}

inline FairnessObjective ParseFairnessObjective(std::string_view s) {
  if (s == "dp" || s == "DP") return FairnessObjective::kDemographicParity;
  if (s == "eop" || s == "EOP") return FairnessObjective::kEqualOpportunity;
  Fail(ErrorCode::kConfigError, "unknown fairness objective '" + std::string(s) + "'");
}

// Two groups of a binary protected attribute: domain codes 0 and 1.
struct ProtectedGroups {
  std::size_t attribute = 0;

  static ProtectedGroups Of(const Schema& schema, std::optional<std::string> name = std::nullopt) {
    if (!name) name = schema.protected_attr();
    if (!name) Fail(ErrorCode::kConfigError, "no protected attribute configured");
    const std::size_t index = schema.IndexOf(*name);
    const Attribute& a = schema.attribute(index);
    if (!a.is_discrete() || a.domain.size() != 2) {
      Fail(ErrorCode::kDomainError, "protected attribute '" + *name + "' must be discrete with two values");
    }
    return {index};
  }

  int GroupOf(std::span<const double> row) const { return static_cast<int>(row[attribute]); }
};

// Positive class code; defaults to the last declared class value.
inline int PositiveLabel(const Schema& schema, std::optional<std::string> label = std::nullopt) {
  if (!label) return static_cast<int>(schema.num_classes()) - 1;
  auto code = schema.class_attr().CodeOf(*label);
  if (!code) Fail(ErrorCode::kConfigError, "unknown positive label '" + *label + "'");
  return *code;
}

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  bool operator==(const Confusion&) const = default;
};

namespace internal {

inline void CheckEvaluable(const Dataset& test, bool need_labels) {
  if (test.empty()) Fail(ErrorCode::kEmptyDataset, "evaluation set is empty");
  if (need_labels && !test.labeled()) Fail(ErrorCode::kUnlabeledData, "evaluation set has no class column");
}

template <typename Model>
std::vector<int> PredictAll(const Model& model, const Dataset& test) {
  std::vector<int> out(test.num_rows());
  for (std::size_t r = 0; r < test.num_rows(); ++r) out[r] = model.PredictLabel(test.row(r));
  return out;
}

inline double GroupGap(const std::array<double, 2>& hits, const std::array<double, 2>& totals,
                       const char* what) {
  for (int g = 0; g < 2; ++g) {
    if (totals[static_cast<std::size_t>(g)] == 0.0) Fail(ErrorCode::kGroupMissing, what);
  }
  return std::abs(hits[0] / totals[0] - hits[1] / totals[1]);
}

}  // namespace internal

// Fraction of rows predicted correctly.
inline double AccuracyOf(std::span<const int> predictions, const Dataset& test) {
  internal::CheckEvaluable(test, true);
  std::size_t correct = 0;
  for (std::size_t r = 0; r < test.num_rows(); ++r) correct += predictions[r] == test.label(r) ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(test.num_rows());
}

// |P(Yhat = positive | g = 0) - P(Yhat = positive | g = 1)|. Needs no labels.
inline double DemographicParityOf(std::span<const int> predictions, const Dataset& test, const ProtectedGroups& groups,
                                  int positive) {
  internal::CheckEvaluable(test, false);
  std::array<double, 2> hits{0.0, 0.0};
  std::array<double, 2> totals{0.0, 0.0};
  for (std::size_t r = 0; r < test.num_rows(); ++r) {
    const auto g = static_cast<std::size_t>(groups.GroupOf(test.row(r)));
    totals[g] += 1.0;
    hits[g] += predictions[r] == positive ? 1.0 : 0.0;
  }
  return internal::GroupGap(hits, totals, "a protected group has no rows");
}

// |TPR_0 - TPR_1|.
inline double EqualOpportunityOf(std::span<const int> predictions, const Dataset& test, const ProtectedGroups& groups,
                                 int positive) {
  internal::CheckEvaluable(test, true);
  std::array<double, 2> hits{0.0, 0.0};
  std::array<double, 2> positives{0.0, 0.0};
  std::array<double, 2> totals{0.0, 0.0};
  for (std::size_t r = 0; r < test.num_rows(); ++r) {
    const auto g = static_cast<std::size_t>(groups.GroupOf(test.row(r)));
    totals[g] += 1.0;
    if (test.label(r) != positive) continue;
    positives[g] += 1.0;
    hits[g] += predictions[r] == positive ? 1.0 : 0.0;
  }
  for (int g = 0; g < 2; ++g) {
    if (totals[static_cast<std::size_t>(g)] == 0.0) Fail(ErrorCode::kGroupMissing, "a protected group has no rows");
    if (positives[static_cast<std::size_t>(g)] == 0.0) {
      Fail(ErrorCode::kNoPositives, "protected group " + std::to_string(g) + " has no positive rows");
    }
  }
  return std::abs(hits[0] / positives[0] - hits[1] / positives[1]);
}

template <typename Model>
double Accuracy(const Model& model, const Dataset& test) {
  internal::CheckEvaluable(test, true);
  return AccuracyOf(internal::PredictAll(model, test), test);
}

template <typename Model>
double DemographicParity(const Model& model, const Dataset& test, const ProtectedGroups& groups, int positive) {
  internal::CheckEvaluable(test, false);
  return DemographicParityOf(internal::PredictAll(model, test), test, groups, positive);
}

template <typename Model>
double EqualOpportunity(const Model& model, const Dataset& test, const ProtectedGroups& groups, int positive) {
  internal::CheckEvaluable(test, true);
  return EqualOpportunityOf(internal::PredictAll(model, test), test, groups, positive);
}

struct EvalReport {
  double acc = 0.0;
  std::optional<double> dp;
  std::optional<double> eop;
  // Why a fairness metric is absent, e.g. a group without positives.
  std::string fairness_note;
  // Per protected group when one is configured; a single entry otherwise.
  std::vector<Confusion> confusion;
  std::size_t n_test = 0;

  Json ToJson() const {
    Json groups = Json::array();
    for (const auto& c : confusion) groups.push_back({{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}});
    Json out{{"acc", acc}, {"confusion", groups}, {"n_test", n_test}};
    out["dp"] = dp ? Json(*dp) : Json(nullptr);
    out["eop"] = eop ? Json(*eop) : Json(nullptr);
    if (!fairness_note.empty()) out["fairness_note"] = fairness_note;
    return out;
  }

  static EvalReport FromJson(const Json& j) {
    EvalReport r;
    r.acc = j.at("acc").get<double>();
    if (!j.at("dp").is_null()) r.dp = j.at("dp").get<double>();
    if (!j.at("eop").is_null()) r.eop = j.at("eop").get<double>();
    r.fairness_note = j.value("fairness_note", std::string());
    for (const auto& c : j.at("confusion")) {
      r.confusion.push_back({c.at("tp").get<std::size_t>(), c.at("fp").get<std::size_t>(),
                             c.at("fn").get<std::size_t>(), c.at("tn").get<std::size_t>()});
    }
    r.n_test = j.at("n_test").get<std::size_t>();
    return r;
  }

  bool operator==(const EvalReport&) const = default;
};

// Accuracy, confusion counts and, with a protected attribute, DP and EOP.
template <typename Model>
EvalReport Evaluate(const Model& model, const Dataset& test, std::optional<ProtectedGroups> groups, int positive) {
  internal::CheckEvaluable(test, true);
  const std::vector<int> pred = internal::PredictAll(model, test);
  EvalReport report;
  report.n_test = test.num_rows();
  report.acc = AccuracyOf(pred, test);
  report.confusion.assign(groups ? 2 : 1, Confusion{});
  for (std::size_t r = 0; r < test.num_rows(); ++r) {
    Confusion& c = report.confusion[groups ? static_cast<std::size_t>(groups->GroupOf(test.row(r))) : 0];
    const bool actual = test.label(r) == positive;
    const bool predicted = pred[r] == positive;
    if (actual && predicted) ++c.tp;
    if (!actual && predicted) ++c.fp;
    if (actual && !predicted) ++c.fn;
    if (!actual && !predicted) ++c.tn;
  }
  if (groups) {
    try {
      report.dp = DemographicParityOf(pred, test, *groups, positive);
      report.eop = EqualOpportunityOf(pred, test, *groups, positive);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kGroupMissing && e.code() != ErrorCode::kNoPositives) throw;
      report.fairness_note = e.what();
    }
  }
  return report;
}

// A tree whose positive decision uses a per-group threshold on the leaf
// probability of the positive class.
class PostprocessedModel {
 public:
  PostprocessedModel(DecisionTree tree, ProtectedGroups groups, int positive, std::array<double, 2> thresholds)
      : tree_(std::move(tree)), groups_(groups), positive_(positive), thresholds_(thresholds) {}

  double Score(std::span<const double> row) const {
    return tree_.node(tree_.LeafIndex(row)).class_dist.probs[static_cast<std::size_t>(positive_)];
  }

  int PredictLabel(std::span<const double> row) const {
    const double tau = thresholds_[static_cast<std::size_t>(groups_.GroupOf(row))];
    return Score(row) >= tau ? positive_ : 1 - positive_;
  }

  const DecisionTree& tree() const { return tree_; }
  const std::array<double, 2>& thresholds() const { return thresholds_; }
  int positive() const { return positive_; }
  const ProtectedGroups& groups() const { return groups_; }

 private:
  DecisionTree tree_;
  ProtectedGroups groups_;
  int positive_;
  std::array<double, 2> thresholds_;
};

struct PostprocessResult {
  std::array<double, 2> thresholds{0.5, 0.5};
  double disparity_before = 0.0;
  double disparity_after = 0.0;
  // Holdout accuracy at the chosen thresholds; 0 without labels.
  double holdout_acc = 0.0;
};

// Threshold grid: distinct leaf scores of the positive class plus 0, 1/2
// and 1. Scores only change between leaf values, so the grid reaches every
// achievable pair of group decisions.
inline std::vector<double> ThresholdGrid(const DecisionTree& tree, int positive) {
  std::vector<double> grid{0.0, 0.5, 1.0};
  for (int leaf : tree.Leaves()) grid.push_back(tree.node(leaf).class_dist.probs[static_cast<std::size_t>(positive)]);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// Exhaustive search over per-group thresholds: minimal holdout disparity,
// then maximal holdout accuracy, then lower threshold for group 0, then
// for group 1. Two-class trees only.
inline PostprocessedModel PostprocessThresholds(const DecisionTree& tree, const Dataset& holdout,
                                                const ProtectedGroups& groups, FairnessObjective objective,
                                                int positive, PostprocessResult* result = nullptr) {
  if (tree.schema().num_classes() != 2) Fail(ErrorCode::kDomainError, "post-processing needs a two-class problem");
  internal::CheckEvaluable(holdout, objective == FairnessObjective::kEqualOpportunity);
  const std::vector<double> grid = ThresholdGrid(tree, positive);
  const std::size_t g_size = grid.size();

  // Per group and threshold: predicted positives, true positives, correct.
  std::array<std::vector<double>, 2> pred_pos{std::vector<double>(g_size), std::vector<double>(g_size)};
  std::array<std::vector<double>, 2> true_pos{std::vector<double>(g_size), std::vector<double>(g_size)};
  std::array<std::vector<double>, 2> correct{std::vector<double>(g_size), std::vector<double>(g_size)};
  std::array<double, 2> rows{0.0, 0.0};
  std::array<double, 2> positives{0.0, 0.0};
  const bool labeled = holdout.labeled();
  std::vector<int> before(holdout.num_rows());
  for (std::size_t r = 0; r < holdout.num_rows(); ++r) {
    const auto row = holdout.row(r);
    const auto g = static_cast<std::size_t>(groups.GroupOf(row));
    const double score = tree.node(tree.LeafIndex(row)).class_dist.probs[static_cast<std::size_t>(positive)];
    before[r] = tree.PredictLabel(row);
    const bool actual = labeled && holdout.label(r) == positive;
    rows[g] += 1.0;
    positives[g] += actual ? 1.0 : 0.0;
    for (std::size_t t = 0; t < g_size; ++t) {
      const bool predicted = score >= grid[t];
      pred_pos[g][t] += predicted ? 1.0 : 0.0;
      true_pos[g][t] += predicted && actual ? 1.0 : 0.0;
      correct[g][t] += labeled && predicted == actual ? 1.0 : 0.0;
    }
  }
  if (rows[0] == 0.0 || rows[1] == 0.0) Fail(ErrorCode::kGroupMissing, "a protected group has no holdout rows");
  if (objective == FairnessObjective::kEqualOpportunity && (positives[0] == 0.0 || positives[1] == 0.0)) {
    Fail(ErrorCode::kNoPositives, "a protected group has no positive holdout rows");
  }

  auto rate = [&](std::size_t g, std::size_t t) {
    return objective == FairnessObjective::kDemographicParity ? pred_pos[g][t] / rows[g]
                                                              : true_pos[g][t] / positives[g];
  };
  std::size_t best_a = 0;
  std::size_t best_b = 0;
  double best_gap = 2.0;
  double best_correct = -1.0;
  for (std::size_t a = 0; a < g_size; ++a) {
    for (std::size_t b = 0; b < g_size; ++b) {
      const double gap = std::abs(rate(0, a) - rate(1, b));
      const double hits = correct[0][a] + correct[1][b];
      // Grid order already yields the lower-threshold tie rule.
      if (gap < best_gap || (gap == best_gap && hits > best_correct)) {
        best_a = a;
        best_b = b;
        best_gap = gap;
        best_correct = hits;
      }
    }
  }
  if (result) {
    result->thresholds = {grid[best_a], grid[best_b]};
    result->disparity_after = best_gap;
    result->disparity_before = objective == FairnessObjective::kDemographicParity
                                   ? DemographicParityOf(before, holdout, groups, positive)
                                   : EqualOpportunityOf(before, holdout, groups, positive);
    result->holdout_acc = labeled ? best_correct / static_cast<double>(holdout.num_rows()) : 0.0;
  }
  return PostprocessedModel(tree, groups, positive, {grid[best_a], grid[best_b]});
}

struct Gain {
  double value = 0.0;
  // The tt and ntdk values coincide; the gain is reported as 0.
  bool degenerate = false;

  bool operator==(const Gain&) const = default;
};

namespace internal {

inline void CheckUnit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) Fail(ErrorCode::kDomainError, std::string(what) + " must lie in [0, 1]");
}

inline Gain CappedGain(double numerator, double denominator) {
  if (!(denominator >= kGainEpsilon)) return {0.0, true};
  return {std::clamp(numerator / denominator * 100.0, -kGainCap, kGainCap), false};
}

}  // namespace internal

// Share of the accuracy gap between ntdk and tt recovered by the adapted
// model, in percent.
inline Gain RelativeGainAcc(double acc_tt, double acc_ntdk, double acc_adapted) {
  internal::CheckUnit(acc_tt, "acc_tt");
  internal::CheckUnit(acc_ntdk, "acc_ntdk");
  internal::CheckUnit(acc_adapted, "acc_adapted");
  return internal::CappedGain(acc_adapted - std::min(acc_ntdk, acc_tt), std::abs(acc_tt - acc_ntdk));
}

// Same for a disparity, where smaller is better.
inline Gain RelativeGainFairness(double m_tt, double m_ntdk, double m_adapted) {
  internal::CheckUnit(m_tt, "m_tt");
  internal::CheckUnit(m_ntdk, "m_ntdk");
  internal::CheckUnit(m_adapted, "m_adapted");
  return internal::CappedGain(std::max(m_ntdk, m_tt) - m_adapted, std::abs(m_tt - m_ntdk));
}

struct RelativeGains {
  Gain r_acc;
  std::optional<Gain> r_dp;
  std::optional<Gain> r_eop;
  double acc_tt = 0.0;
  double acc_ntdk = 0.0;
  double acc_adapted = 0.0;
  std::optional<double> dp_tt, dp_ntdk, dp_adapted;
  std::optional<double> eop_tt, eop_ntdk, eop_adapted;

  static RelativeGains From(const EvalReport& tt, const EvalReport& ntdk, const EvalReport& adapted) {
    RelativeGains g;
    g.acc_tt = tt.acc;
    g.acc_ntdk = ntdk.acc;
    g.acc_adapted = adapted.acc;
    g.r_acc = RelativeGainAcc(tt.acc, ntdk.acc, adapted.acc);
    g.dp_tt = tt.dp, g.dp_ntdk = ntdk.dp, g.dp_adapted = adapted.dp;
    g.eop_tt = tt.eop, g.eop_ntdk = ntdk.eop, g.eop_adapted = adapted.eop;
    if (tt.dp && ntdk.dp && adapted.dp) g.r_dp = RelativeGainFairness(*tt.dp, *ntdk.dp, *adapted.dp);
    if (tt.eop && ntdk.eop && adapted.eop) g.r_eop = RelativeGainFairness(*tt.eop, *ntdk.eop, *adapted.eop);
    return g;
  }

  Json ToJson() const {
    auto gain = [](const std::optional<Gain>& g) {
      return g ? Json{{"value", g->value}, {"degenerate", g->degenerate}} : Json(nullptr);
    };
    auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    return Json{{"r_acc", gain(r_acc)},          {"r_dp", gain(r_dp)},          {"r_eop", gain(r_eop)},
                {"acc_tt", acc_tt},              {"acc_ntdk", acc_ntdk},        {"acc_adapted", acc_adapted},
                {"dp_tt", opt(dp_tt)},           {"dp_ntdk", opt(dp_ntdk)},     {"dp_adapted", opt(dp_adapted)},
                {"eop_tt", opt(eop_tt)},         {"eop_ntdk", opt(eop_ntdk)},   {"eop_adapted", opt(eop_adapted)}};
  }

  static RelativeGains FromJson(const Json& j) {
    auto gain = [](const Json& v) -> std::optional<Gain> {
      if (v.is_null()) return std::nullopt;
      return Gain{v.at("value").get<double>(), v.at("degenerate").get<bool>()};
    };
    auto opt = [](const Json& v) -> std::optional<double> {
      if (v.is_null()) return std::nullopt;
      return v.get<double>();
    };
    RelativeGains g;
    g.r_acc = *gain(j.at("r_acc"));
    g.r_dp = gain(j.at("r_dp"));
    g.r_eop = gain(j.at("r_eop"));
    g.acc_tt = j.at("acc_tt").get<double>();
    g.acc_ntdk = j.at("acc_ntdk").get<double>();
    g.acc_adapted = j.at("acc_adapted").get<double>();
    g.dp_tt = opt(j.at("dp_tt"));
    g.dp_ntdk = opt(j.at("dp_ntdk"));
    g.dp_adapted = opt(j.at("dp_adapted"));
    g.eop_tt = opt(j.at("eop_tt"));
    g.eop_ntdk = opt(j.at("eop_ntdk"));
    g.eop_adapted = opt(j.at("eop_adapted"));
    return g;
  }

  bool operator==(const RelativeGains&) const = default;
};

// Sum over leaves of W(leaf class distribution, target class frequency at
// the leaf) weighted by the leaf's share of target rows.
inline double TreeShiftDistance(const DecisionTree& tree, const Dataset& target_test) {
  internal::CheckEvaluable(target_test, true);
  const std::size_t k = tree.schema().num_classes();
  std::vector<std::vector<double>> counts(tree.nodes().size());
  for (std::size_t r = 0; r < target_test.num_rows(); ++r) {
    auto& c = counts[static_cast<std::size_t>(tree.LeafIndex(target_test.row(r)))];
    if (c.empty()) c.assign(k, 0.0);
    c[static_cast<std::size_t>(target_test.label(r))] += 1.0;
  }
  const auto& labels = tree.schema().class_attr().domain;
  const double n = static_cast<double>(target_test.num_rows());
  double total = 0.0;
  for (int leaf : tree.Leaves()) {
    const auto& c = counts[static_cast<std::size_t>(leaf)];
    if (c.empty()) continue;
    double reached = 0.0;
    for (double v : c) reached += v;
    total += Wasserstein(Distribution::Categorical(tree.node(leaf).class_dist.probs, labels),
                         Distribution::Categorical(NormalizeCounts(c), labels)) *
             (reached / n);
  }
  return total;
}

struct AttributeShift {
  std::string attribute;
  double w_marginal = 0.0;
  // Unset when neither target labels nor class conditionals are available.
  std::optional<double> w_conditional;

  bool operator==(const AttributeShift&) const = default;
};

// Per attribute: Wasserstein distance between the source and target
// marginals, and the average class-conditional distance used for pivot
// selection.
inline std::vector<AttributeShift> AttributeShiftReport(const Dataset& source, const Dataset& target,
                                                        const KnowledgeStore& ks) {
  if (source.empty() || target.empty()) Fail(ErrorCode::kEmptyDataset, "shift report needs two non-empty datasets");
  if (!(source.schema() == target.schema())) Fail(ErrorCode::kSchemaMismatch, "datasets use different schemas");
  std::vector<AttributeShift> out;
  const Schema& schema = source.schema();
  for (std::size_t a = 0; a < schema.num_predictive(); ++a) {
    const Attribute& attr = schema.attribute(a);
    AttributeShift s;
    s.attribute = attr.name;
    if (attr.is_discrete()) {
      auto marginal = [&](const Dataset& d) {
        std::vector<double> counts(attr.domain.size(), 0.0);
        for (std::size_t r = 0; r < d.num_rows(); ++r) counts[static_cast<std::size_t>(d.value(r, a))] += 1.0;
        return Distribution::Categorical(NormalizeCounts(counts), attr.domain);
      };
      s.w_marginal = Wasserstein(marginal(source), marginal(target));
    } else {
      std::vector<double> xs(source.num_rows());
      std::vector<double> xt(target.num_rows());
      for (std::size_t r = 0; r < source.num_rows(); ++r) xs[r] = source.value(r, a);
      for (std::size_t r = 0; r < target.num_rows(); ++r) xt[r] = target.value(r, a);
      s.w_marginal = WassersteinSamples(xs, xt);
    }
    if (ks.has_class_conditionals() && source.labeled()) s.w_conditional = ConditionalShiftScore(source, ks, a).score;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace dadt

#endif  // DADT_METRICS_HPP_
