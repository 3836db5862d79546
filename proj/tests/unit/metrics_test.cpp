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

#include <gtest/gtest.h>

#include <random>

#include "dadt/metrics.hpp"
#include "support/testing.hpp"

namespace dadt {
namespace {

using testing::ErrorOf;
using testing::Table;

struct ConstantModel {
  int label = 0;
  int PredictLabel(std::span<const double>) const { return label; }
};

// Predicts the value of one attribute, for hand-set prediction columns.
struct ColumnModel {
  std::size_t column = 0;
  int PredictLabel(std::span<const double> row) const { return static_cast<int>(row[column]); }
};

// Columns: G (protected), P (the prediction to score), label.
Schema GroupSchema() { return testing::BinarySchema({"G", "P"}, std::string("G")); }

std::vector<int> Labels(const Dataset& d) {
  std::vector<int> out;
  for (std::size_t r = 0; r < d.num_rows(); ++r) out.push_back(d.label(r));
  return out;
}

TEST(Accuracy, PerfectAndConstantModels) {
  const Dataset d = Table(GroupSchema(), {{0, 0, 1}, {1, 0, 1}, {0, 0, 1}, {1, 0, 0}, {0, 0, 0}});
  const std::vector<int> truth = Labels(d);
  EXPECT_EQ(AccuracyOf(truth, d), 1.0);
  EXPECT_EQ(Accuracy(ConstantModel{1}, d), 0.6);
  EXPECT_EQ(Accuracy(ConstantModel{0}, d), 0.4);
}

TEST(Accuracy, HandBuiltTreeOnEightRows) {
  // Leaf X=0 predicts 1, X=1 predicts 0.
  const Schema s = testing::BinarySchema({"X"});
  const DecisionTree t = Grow(Table(s, {{0, 1}, {0, 1}, {1, 0}, {1, 0}}), TreeConfig{});
  const Dataset probe = Table(s, {{0, 1}, {0, 1}, {0, 0}, {1, 0}, {1, 0}, {1, 1}, {1, 0}, {0, 1}});
  // Correct: rows 0, 1, 3, 4, 6, 7.
  EXPECT_EQ(Accuracy(t, probe), 6.0 / 8.0);
}

TEST(Accuracy, NeedsLabelledNonEmptyData) {
  const Dataset d = Table(GroupSchema(), {{0, 0, 1}});
  EXPECT_EQ(ErrorOf([&] { Accuracy(ConstantModel{}, d.WithoutLabels()); }), ErrorCode::kUnlabeledData);
  EXPECT_EQ(ErrorOf([&] { Accuracy(ConstantModel{}, Dataset(d.schema(), true)); }), ErrorCode::kEmptyDataset);
}

TEST(DemographicParity, RatesAndGaps) {
  const ProtectedGroups g = ProtectedGroups::Of(GroupSchema());
  // Equal rates.
  const Dataset even = Table(GroupSchema(), {{0, 1, 0}, {0, 0, 0}, {1, 1, 0}, {1, 0, 0}});
  EXPECT_EQ(DemographicParity(ColumnModel{1}, even, g, 1), 0.0);
  // 3/5 against 2/5.
  const Dataset skew = Table(GroupSchema(), {{0, 1, 0}, {0, 1, 0}, {0, 1, 0}, {0, 0, 0}, {0, 0, 0},
                                             {1, 1, 0}, {1, 1, 0}, {1, 0, 0}, {1, 0, 0}, {1, 0, 0}});
  EXPECT_NEAR(DemographicParity(ColumnModel{1}, skew, g, 1), 0.2, 1e-15);
  // Groups of six and four: 4/6 against 1/4.
  const Dataset ten = Table(GroupSchema(), {{0, 1, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 0}, {0, 0, 0}, {0, 0, 1},
                                            {1, 1, 1}, {1, 0, 0}, {1, 0, 1}, {1, 0, 0}});
  EXPECT_NEAR(DemographicParity(ColumnModel{1}, ten, g, 1), 4.0 / 6.0 - 0.25, 1e-15);
  // No labels required.
  EXPECT_NEAR(DemographicParity(ColumnModel{1}, ten.WithoutLabels(), g, 1), 4.0 / 6.0 - 0.25, 1e-15);
}

TEST(DemographicParity, MissingGroupIsAnError) {
  const ProtectedGroups g = ProtectedGroups::Of(GroupSchema());
  const Dataset one = Table(GroupSchema(), {{0, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(ErrorOf([&] { DemographicParity(ColumnModel{1}, one, g, 1); }), ErrorCode::kGroupMissing);
}

TEST(EqualOpportunity, TruePositiveRateGaps) {
  const ProtectedGroups g = ProtectedGroups::Of(GroupSchema());
  const Dataset d = Table(GroupSchema(), {{0, 1, 1}, {0, 0, 0}, {1, 1, 1}, {1, 0, 0}});
  EXPECT_EQ(EqualOpportunity(ColumnModel{1}, d, g, 1), 0.0);
  const Dataset half = Table(GroupSchema(), {{0, 1, 1}, {0, 1, 1}, {1, 1, 1}, {1, 0, 1}});
  EXPECT_EQ(EqualOpportunity(ColumnModel{1}, half, g, 1), 0.5);
  // Group 0: TP 3, FN 1. Group 1: TP 1, FN 1. Negatives do not matter.
  const Dataset hand = Table(GroupSchema(), {{0, 1, 1}, {0, 1, 1}, {0, 1, 1}, {0, 0, 1}, {0, 1, 0},
                                             {1, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 0, 0}});
  EXPECT_EQ(EqualOpportunity(ColumnModel{1}, hand, g, 1), 0.25);
}

TEST(EqualOpportunity, GroupWithoutPositivesIsAnError) {
  const ProtectedGroups g = ProtectedGroups::Of(GroupSchema());
  const Dataset d = Table(GroupSchema(), {{0, 1, 1}, {1, 1, 0}});
  EXPECT_EQ(ErrorOf([&] { EqualOpportunity(ColumnModel{1}, d, g, 1); }), ErrorCode::kNoPositives);
}

TEST(FairnessMetrics, SymmetricUnderSwappingGroups) {
  std::mt19937_64 rng(31);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<double>> rows;
    std::vector<std::vector<double>> swapped;
    for (int i = 0; i < 40; ++i) {
      const double grp = i < 2 ? i : coin(rng);
      const double pred = coin(rng);
      const double y = i < 4 ? 1 : coin(rng);
      rows.push_back({grp, pred, y});
      swapped.push_back({1 - grp, pred, y});
    }
    const Dataset a = Table(GroupSchema(), rows);
    const Dataset b = Table(GroupSchema(), swapped);
    const ProtectedGroups g = ProtectedGroups::Of(GroupSchema());
    EXPECT_EQ(DemographicParity(ColumnModel{1}, a, g, 1), DemographicParity(ColumnModel{1}, b, g, 1));
    const auto eo = [&](const Dataset& d) {
      return ErrorOf([&] { EqualOpportunity(ColumnModel{1}, d, g, 1); });
    };
    if (!eo(a) && !eo(b)) {
      EXPECT_EQ(EqualOpportunity(ColumnModel{1}, a, g, 1), EqualOpportunity(ColumnModel{1}, b, g, 1));
    }
  }
}

TEST(ProtectedGroups, MustBeABinaryDiscreteAttribute) {
  const Schema s({Attribute::Discrete("R", {"a", "b", "c"}), Attribute::Continuous("V"),
                  Attribute::Discrete("G", {"f", "m"})},
                 Attribute::Discrete("Y", {"0", "1"}));
  EXPECT_EQ(ErrorOf([&] { ProtectedGroups::Of(s); }), ErrorCode::kConfigError);
  EXPECT_EQ(ErrorOf([&] { ProtectedGroups::Of(s, "R"); }), ErrorCode::kDomainError);
  EXPECT_EQ(ErrorOf([&] { ProtectedGroups::Of(s, "V"); }), ErrorCode::kDomainError);
  EXPECT_EQ(ProtectedGroups::Of(s, "G").attribute, 2u);
}

TEST(PositiveLabel, DefaultsToTheLastClass) {
  const Schema s({Attribute::Discrete("A", {"x"})}, Attribute::Discrete("Y", {"low", "mid", "high"}));
  EXPECT_EQ(PositiveLabel(s), 2);
  EXPECT_EQ(PositiveLabel(s, "low"), 0);
  EXPECT_EQ(ErrorOf([&] { PositiveLabel(s, "none"); }), ErrorCode::kConfigError);
}

TEST(Evaluate, ReportCarriesConfusionAndFairness) {
  const Dataset d = Table(GroupSchema(), {{0, 1, 1}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, 0, 0}, {1, 0, 0}});
  const EvalReport r = Evaluate(ColumnModel{1}, d, ProtectedGroups::Of(GroupSchema()), 1);
  EXPECT_EQ(r.n_test, 6u);
  EXPECT_NEAR(r.acc, 4.0 / 6.0, 1e-15);
  ASSERT_EQ(r.confusion.size(), 2u);
  EXPECT_EQ(r.confusion[0].tp, 1u);
  EXPECT_EQ(r.confusion[0].fp, 1u);
  EXPECT_EQ(r.confusion[0].fn, 1u);
  EXPECT_EQ(r.confusion[1].tn, 2u);
  EXPECT_NEAR(*r.dp, 2.0 / 3.0 - 1.0 / 3.0, 1e-15);
  EXPECT_EQ(*r.eop, 0.5);
  EXPECT_EQ(EvalReport::FromJson(Json::parse(r.ToJson().dump())), r);
}

TEST(Evaluate, MissingPositivesBecomeANote) {
  const Dataset d = Table(GroupSchema(), {{0, 1, 1}, {1, 1, 0}});
  const EvalReport r = Evaluate(ColumnModel{1}, d, ProtectedGroups::Of(GroupSchema()), 1);
  // Parity needs no positives, so it survives.
  EXPECT_EQ(r.dp, 0.0);
  EXPECT_FALSE(r.eop);
  EXPECT_NE(r.fairness_note.find("NoPositives"), std::string::npos);
  const EvalReport plain = Evaluate(ColumnModel{1}, d, std::nullopt, 1);
  EXPECT_EQ(plain.confusion.size(), 1u);
  EXPECT_TRUE(plain.fairness_note.empty());
}

// ---------------------------------------------------------------------------
// Post-processing.

// Tree splitting on G with the given positive scores per group.
DecisionTree GroupTree(double score0, double score1) {
  auto leaf = [](double p) {
    return Json{{"dist", {{"0", 1.0 - p}, {"1", p}}}, {"n_source_rows", 1}, {"diagnostics", {{"alpha", 1}, {"truncated", 0}}}};
  };
  Json root = leaf(0.5);
  root["condition"] = {{"attr", "G"}, {"op", "=="}, {"threshold", "0"}};
  root["ig"] = 0.1;
  root["left"] = leaf(score0);
  root["right"] = leaf(score1);
  Schema s = GroupSchema();
  return DecisionTree::FromJson(Json{{"schema", s.ToJson()}, {"config", Json::object()}, {"n_train", 2},
                                     {"x_w", nullptr}, {"pivot_cells", Json::array()}, {"root", root}});
}

TEST(Postprocess, FairModelKeepsItsThresholds) {
  // Scores 0.8 / 0.2 on a non-protected split; both groups alike.
  const Schema s = GroupSchema();
  const DecisionTree t = Grow(Table(s, {{0, 1, 1}, {1, 1, 1}, {0, 0, 0}, {1, 0, 0}, {0, 1, 1}, {1, 1, 1}, {0, 1, 1},
                                       {1, 1, 1}, {0, 1, 0}, {1, 1, 0}, {0, 0, 0}, {1, 0, 0}}),
                              TreeConfig{});
  const Dataset holdout = Table(s, {{0, 1, 1}, {0, 0, 0}, {1, 1, 1}, {1, 0, 0}});
  PostprocessResult info;
  const PostprocessedModel m =
      PostprocessThresholds(t, holdout, ProtectedGroups::Of(s), FairnessObjective::kDemographicParity, 1, &info);
  EXPECT_EQ(info.thresholds, (std::array<double, 2>{0.5, 0.5}));
  EXPECT_EQ(info.disparity_before, 0.0);
  EXPECT_EQ(info.disparity_after, 0.0);
  EXPECT_EQ(info.holdout_acc, 1.0);
  for (std::size_t r = 0; r < holdout.num_rows(); ++r) EXPECT_EQ(m.PredictLabel(holdout.row(r)), t.PredictLabel(holdout.row(r)));
}

TEST(Postprocess, ConstantScoreTakesTheMoreAccurateSide) {
  const Schema s = GroupSchema();
  // One leaf with positive score 0.3, so the plain model never says 1.
  const DecisionTree t = Grow(Table(s, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {1, 1, 1}, {0, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                       {1, 0, 0}, {0, 1, 0}, {1, 0, 1}}),
                              [] {
                                TreeConfig c;
                                c.max_depth = 1;
                                c.min_node_fraction = 0.9;
                                return c;
                              }());
  ASSERT_EQ(t.nodes().size(), 1u);
  // Holdout mostly positive: predicting 1 everywhere is the accurate side.
  const Dataset holdout = Table(s, {{0, 0, 1}, {0, 1, 1}, {0, 0, 0}, {1, 0, 1}, {1, 1, 1}, {1, 1, 1}});
  PostprocessResult info;
  const PostprocessedModel m =
      PostprocessThresholds(t, holdout, ProtectedGroups::Of(s), FairnessObjective::kDemographicParity, 1, &info);
  EXPECT_EQ(info.disparity_after, 0.0);
  EXPECT_EQ(info.thresholds, (std::array<double, 2>{0.0, 0.0}));
  for (std::size_t r = 0; r < holdout.num_rows(); ++r) EXPECT_EQ(m.PredictLabel(holdout.row(r)), 1);
  EXPECT_NEAR(info.holdout_acc, 5.0 / 6.0, 1e-15);
}

TEST(Postprocess, GroupSkewedTreeByHand) {
  const DecisionTree t = GroupTree(0.8, 0.3);
  const Schema& s = t.schema();
  // Group 0: three positives, one negative. Group 1: two and two.
  const Dataset holdout = Table(s, {{0, 0, 1}, {0, 0, 1}, {0, 0, 1}, {0, 0, 0}, {1, 0, 1}, {1, 0, 1}, {1, 0, 0}, {1, 0, 0}});
  // Grid {0, 0.3, 0.5, 0.8, 1}. Zero gap needs both groups all-positive
  // (tau0 <= 0.8, tau1 <= 0.3: 5 correct) or all-negative (3 correct).
  PostprocessResult info;
  PostprocessThresholds(t, holdout, ProtectedGroups::Of(s), FairnessObjective::kDemographicParity, 1, &info);
  EXPECT_EQ(info.disparity_before, 1.0);
  EXPECT_EQ(info.disparity_after, 0.0);
  EXPECT_EQ(info.thresholds, (std::array<double, 2>{0.0, 0.0}));
  EXPECT_EQ(info.holdout_acc, 5.0 / 8.0);

  // Equal opportunity: TPRs are 1 or 0 per group, same two options.
  PostprocessThresholds(t, holdout, ProtectedGroups::Of(s), FairnessObjective::kEqualOpportunity, 1, &info);
  EXPECT_EQ(info.disparity_after, 0.0);
  EXPECT_EQ(info.holdout_acc, 5.0 / 8.0);
}

TEST(Postprocess, RejectsUnusableHoldouts) {
  const DecisionTree t = GroupTree(0.8, 0.3);
  const Schema& s = t.schema();
  const ProtectedGroups g = ProtectedGroups::Of(s);
  const Dataset one_group = Table(s, {{0, 0, 1}, {0, 0, 0}});
  EXPECT_EQ(ErrorOf([&] { PostprocessThresholds(t, one_group, g, FairnessObjective::kDemographicParity, 1); }),
            ErrorCode::kGroupMissing);
  const Dataset no_pos = Table(s, {{0, 0, 1}, {1, 0, 0}});
  EXPECT_EQ(ErrorOf([&] { PostprocessThresholds(t, no_pos, g, FairnessObjective::kEqualOpportunity, 1); }),
            ErrorCode::kNoPositives);
  // Demographic parity needs no labels.
  EXPECT_NO_THROW(PostprocessThresholds(t, no_pos.WithoutLabels(), g, FairnessObjective::kDemographicParity, 1));
}

TEST(Postprocess, NeverWorseThanThePlainModel) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Schema s = testing::BinarySchema({"G", "A", "B"}, std::string("G"));
    std::vector<std::vector<double>> rows;
    const double skew = u(rng);
    for (int i = 0; i < 120; ++i) {
      const double g = i < 2 ? i : (u(rng) < 0.5 ? 1 : 0);
      const double a = u(rng) < 0.5 ? 1 : 0;
      const double b = u(rng) < 0.5 ? 1 : 0;
      const double p = 0.2 + 0.5 * a * (g == 1 ? skew : 1.0) + 0.2 * b;
      rows.push_back({g, a, b, i < 4 ? double(i % 2) : (u(rng) < p ? 1.0 : 0.0)});
    }
    // Make sure both groups have positives in the holdout.
    rows.push_back({0, 1, 1, 1});
    rows.push_back({1, 1, 1, 1});
    const Dataset d = Table(s, rows);
    const TrainTestSplit split = SplitTrainTest(d, 0.5, rng());
    TreeConfig c;
    c.min_node_fraction = 0.02;
    const DecisionTree t = Grow(split.train, c);
    for (auto objective : {FairnessObjective::kDemographicParity, FairnessObjective::kEqualOpportunity}) {
      PostprocessResult info;
      if (ErrorOf([&] { PostprocessThresholds(t, d, ProtectedGroups::Of(s), objective, 1, &info); })) continue;
      EXPECT_LE(info.disparity_after, info.disparity_before + 1e-12);
    }
  }
}

// ---------------------------------------------------------------------------
// Relative gains.

TEST(RelativeGain, EndpointsAndCap) {
  EXPECT_EQ(RelativeGainAcc(0.9, 0.7, 0.9).value, 100.0);
  EXPECT_EQ(RelativeGainAcc(0.9, 0.7, 0.7).value, 0.0);
  EXPECT_NEAR(RelativeGainAcc(0.9, 0.7, 0.8).value, 50.0, 1e-9);
  const Gain huge = RelativeGainAcc(0.5, 0.5 - 2e-9, 1.0);
  EXPECT_EQ(huge.value, 100.0);
  EXPECT_FALSE(huge.degenerate);
  EXPECT_EQ(RelativeGainAcc(0.5, 0.5 + 2e-9, 0.0).value, -100.0);
}

TEST(RelativeGain, DegenerateDenominator) {
  const Gain g = RelativeGainAcc(0.8, 0.8, 0.9);
  EXPECT_EQ(g.value, 0.0);
  EXPECT_TRUE(g.degenerate);
  EXPECT_TRUE(RelativeGainFairness(0.1, 0.1 + 1e-10, 0.0).degenerate);
}

TEST(RelativeGain, FairnessVariant) {
  // Disparities: smaller is better.
  EXPECT_EQ(RelativeGainFairness(0.1, 0.3, 0.1).value, 100.0);
  EXPECT_EQ(RelativeGainFairness(0.1, 0.3, 0.3).value, 0.0);
  EXPECT_EQ(RelativeGainFairness(0.3, 0.1, 0.1).value, 100.0);
  EXPECT_EQ(RelativeGainFairness(0.3, 0.1, 0.3).value, 0.0);
  EXPECT_NEAR(RelativeGainFairness(0.1, 0.3, 0.2).value, 50.0, 1e-9);
}

TEST(RelativeGain, RejectsValuesOutsideTheUnitInterval) {
  EXPECT_EQ(ErrorOf([] { RelativeGainAcc(1.1, 0.5, 0.5); }), ErrorCode::kDomainError);
  EXPECT_EQ(ErrorOf([] { RelativeGainFairness(0.1, -0.5, 0.5); }), ErrorCode::kDomainError);
  EXPECT_EQ(ErrorOf([] { RelativeGainAcc(0.5, 0.5, std::nan("")); }), ErrorCode::kDomainError);
}

TEST(RelativeGain, FuzzedTriplesStayBounded) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    double a = u(rng), b = u(rng), c = u(rng);
    if (trial % 7 == 0) b = a;
    if (trial % 11 == 0) c = a;
    for (const Gain g : {RelativeGainAcc(a, b, c), RelativeGainFairness(a, b, c)}) {
      ASSERT_TRUE(std::isfinite(g.value));
      ASSERT_GE(g.value, -100.0);
      ASSERT_LE(g.value, 100.0);
      if (std::abs(a - b) < kGainEpsilon) {
        ASSERT_TRUE(g.degenerate);
        ASSERT_EQ(g.value, 0.0);
      }
    }
  }
}

TEST(RelativeGains, FromReportsAndJson) {
  EvalReport tt{0.9, 0.1, 0.05, "", {}, 10};
  EvalReport ntdk{0.7, 0.3, 0.25, "", {}, 10};
  EvalReport adapted{0.8, 0.2, 0.25, "", {}, 10};
  const RelativeGains g = RelativeGains::From(tt, ntdk, adapted);
  EXPECT_NEAR(g.r_acc.value, 50.0, 1e-9);
  EXPECT_NEAR(g.r_dp->value, 50.0, 1e-9);
  EXPECT_NEAR(g.r_eop->value, 0.0, 1e-9);
  EXPECT_EQ(RelativeGains::FromJson(Json::parse(g.ToJson().dump())), g);
  adapted.dp.reset();
  EXPECT_FALSE(RelativeGains::From(tt, ntdk, adapted).r_dp);
}

// ---------------------------------------------------------------------------
// Shift diagnostics.

TEST(TreeShiftDistance, ZeroWhenLeavesMatchTheTarget) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset d = testing::RandomDataset(rng);
    const DecisionTree t = Grow(d, TreeConfig{});
    EXPECT_NEAR(TreeShiftDistance(t, d), 0.0, 1e-12);
  }
}

TEST(TreeShiftDistance, SingleLeaf) {
  const Schema s = testing::BinarySchema({"A"});
  TreeConfig c;
  c.max_depth = 1;
  c.min_node_fraction = 0.9;
  const DecisionTree t = Grow(Table(s, {{0, 1}, {1, 0}, {0, 0}, {1, 0}}), c);  // P(Y=1) = 1/4
  const Dataset target = Table(s, {{0, 1}, {1, 1}, {0, 1}, {1, 0}});         // 3/4
  EXPECT_NEAR(TreeShiftDistance(t, target), 0.5, 1e-15);
}

TEST(TreeShiftDistance, TwoLeavesByHand) {
  const DecisionTree t = GroupTree(0.8, 0.3);
  const Schema& s = t.schema();
  // Six target rows reach the G=0 leaf (positive rate 1/2), four reach the
  // other (positive rate 1/4).
  const Dataset target = Table(s, {{0, 0, 1}, {0, 0, 1}, {0, 0, 1}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0},
                                   {1, 0, 1}, {1, 0, 0}, {1, 0, 0}, {1, 0, 0}});
  EXPECT_NEAR(TreeShiftDistance(t, target), 0.6 * 0.3 + 0.4 * 0.05, 1e-12);
}

TEST(AttributeShiftReport, IdenticalSamplesHaveNoShift) {
  std::mt19937_64 rng(35);
  const Dataset d = testing::RandomDataset(rng);
  for (const auto& a : AttributeShiftReport(d, d, KnowledgeStore::FromSample(d, KnowledgeRegime::Full()))) {
    EXPECT_EQ(a.w_marginal, 0.0) << a.attribute;
    EXPECT_EQ(*a.w_conditional, 0.0) << a.attribute;
  }
}

TEST(AttributeShiftReport, BernoulliMarginals) {
  const Schema s = testing::BinarySchema({"A"});
  std::vector<std::vector<double>> src;
  std::vector<std::vector<double>> tgt;
  for (int i = 0; i < 10; ++i) {
    src.push_back({i < 3 ? 1.0 : 0.0, 0});
    tgt.push_back({i < 5 ? 1.0 : 0.0, 0});
  }
  const auto report = AttributeShiftReport(Table(s, src), Table(s, tgt), KnowledgeStore::Empty(s));
  ASSERT_EQ(report.size(), 1u);
  EXPECT_NEAR(report[0].w_marginal, 0.2, 1e-15);
  EXPECT_FALSE(report[0].w_conditional);
}

TEST(AttributeShiftReport, TwoAttributeExample) {
  const Schema s = testing::BinarySchema({"X1", "X2"});
  const Dataset source = testing::Repeat(s, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}}, 5);
  const Dataset target = testing::Repeat(s, {{0, 0, 1}, {1, 1, 1}}, 10);
  const auto report = AttributeShiftReport(source, target, KnowledgeStore::FromSample(target, KnowledgeRegime::Full()));
  // Per value: P_S(Y=1 | X2=x) = 1/2, P_T(Y=1 | X2=x) = 1, each with weight 1/2.
  for (const auto& a : report) {
    EXPECT_EQ(a.w_marginal, 0.0);
    EXPECT_EQ(*a.w_conditional, 0.5);
  }
}

TEST(AttributeShiftReport, ContinuousMarginalsUseSamples) {
  const Schema s({Attribute::Continuous("V")}, Attribute::Discrete("Y", {"0", "1"}));
  const Dataset a = Table(s, {{1, 0}, {2, 1}, {3, 0}});
  const Dataset b = Table(s, {{2, 0}, {3, 1}, {4, 0}});
  EXPECT_NEAR(AttributeShiftReport(a, b, KnowledgeStore::Empty(s))[0].w_marginal, 1.0, 1e-12);
  EXPECT_EQ(ErrorOf([&] { AttributeShiftReport(a, Dataset(s, true), KnowledgeStore::Empty(s)); }),
            ErrorCode::kEmptyDataset);
}

}  // namespace
}  // namespace dadt
