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

// Synthetic source/target populations over binary attributes.
//
// Source: X1..Xm independent Bernoulli(1/2). Target: the same, except that
// X2 copies X1 with probability rho (rho = 1 makes them equal almost
// surely). The label is a fixed rule of the attributes flipped with
// probability epsilon. With delta > 0 each cell x independently has its
// target conditional inverted, P_T(Y=1|x) = 1 - P_S(Y=1|x), relaxing the
// covariate shift assumption.

#ifndef DADT_SYNTH_HPP_
#define DADT_SYNTH_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <random>
#include <string>
#include <vector>

#include "dadt/data.hpp"
#include "dadt/error.hpp"

namespace dadt {

enum class LabelRule {
  kXnor,   // Y = I[X1 = X2]
  kAnd,    // Y = X1 and X2
  kFirst,  // Y = X1
};

inline std::string LabelRuleName(LabelRule r) {
  switch (r) {
    case LabelRule::kXnor: return "xnor";
    case LabelRule::kAnd: return "and";
    case LabelRule::kFirst: return "first";
  }
  return "?";
}

inline LabelRule ParseLabelRule(std::string_view s) {
  if (s == "xnor") return LabelRule::kXnor;
  if (s == "and") return LabelRule::kAnd;
  if (s == "first") return LabelRule::kFirst;
  Fail(ErrorCode::kConfigError, "unknown label rule '" + std::string(s) + "'");
}

inline constexpr std::size_t kMaxSynthAttributes = 16;

struct SynthConfig {
  std::size_t n_source = 5000;
  std::size_t n_target = 5000;
  std::size_t n_attrs = 2;
  double target_correlation = 1.0;
  LabelRule label_rule = LabelRule::kXnor;
  double label_noise = 0.0;
  double covshift_violation = 0.0;
  // Appends a binary protected attribute G, independent of everything else.
  bool protected_attribute = false;
  std::uint64_t seed = 42;

  void Validate() const {
    if (n_source == 0 || n_target == 0) Fail(ErrorCode::kConfigError, "sample sizes must be positive");
    if (n_attrs < 2 || n_attrs + (protected_attribute ? 1 : 0) > kMaxSynthAttributes) {
      Fail(ErrorCode::kConfigError, "n_attrs must lie in [2, " + std::to_string(kMaxSynthAttributes) + "]");
    }
    if (!(target_correlation >= 0.0 && target_correlation <= 1.0)) {
      Fail(ErrorCode::kConfigError, "target_correlation must lie in [0, 1]");
    }
    if (!(label_noise >= 0.0 && label_noise < 0.5)) Fail(ErrorCode::kConfigError, "label_noise must lie in [0, 0.5)");
    if (!(covshift_violation >= 0.0 && covshift_violation <= 1.0)) {
      Fail(ErrorCode::kConfigError, "covshift_violation must lie in [0, 1]");
    }
  }

  Json ToJson() const {
    return Json{{"n_source", n_source},
                {"n_target", n_target},
                {"n_attrs", n_attrs},
                {"target_correlation", target_correlation},
                {"label_rule", LabelRuleName(label_rule)},
                {"label_noise", label_noise},
                {"covshift_violation", covshift_violation},
                {"protected_attribute", protected_attribute},
                {"seed", seed}};
  }

  static SynthConfig FromJson(const Json& j) {
    SynthConfig c;
    if (j.contains("seed") && !(j.at("seed").is_number_integer() && j.at("seed") >= 0)) {
      Fail(ErrorCode::kConfigError, "seed must be a non-negative integer");
    }
    try {
      c.n_source = j.value("n_source", c.n_source);
      c.n_target = j.value("n_target", c.n_target);
      c.n_attrs = j.value("n_attrs", c.n_attrs);
      c.target_correlation = j.value("target_correlation", c.target_correlation);
      c.label_rule = ParseLabelRule(j.value("label_rule", LabelRuleName(c.label_rule)));
      c.label_noise = j.value("label_noise", c.label_noise);
      c.covshift_violation = j.value("covshift_violation", c.covshift_violation);
      c.protected_attribute = j.value("protected_attribute", c.protected_attribute);
      c.seed = j.value("seed", c.seed);
    } catch (const Json::exception& e) {
      Fail(ErrorCode::kConfigError, std::string("bad synth config: ") + e.what());
    }
    c.Validate();
    return c;
  }

  bool operator==(const SynthConfig&) const = default;
};

// Exact P(Y=1 | x) in both domains for one attribute assignment.
struct GroundTruthCell {
  std::vector<int> values;
  double p_source = 0.0;
  double p_target = 0.0;
  bool flipped = false;
};

struct SynthData {
  Dataset source;
  Dataset target;
  // One cell per assignment of the predictive attributes, in binary counting
  // order with the first attribute most significant.
  std::vector<GroundTruthCell> ground_truth;

  Json GroundTruthJson() const {
    Json cells = Json::array();
    for (const auto& c : ground_truth) {
      cells.push_back({{"x", c.values}, {"p_source", c.p_source}, {"p_target", c.p_target}, {"flipped", c.flipped}});
    }
    Json names = Json::array();
    for (const auto& a : source.schema().predictive()) names.push_back(a.name);
    return Json{{"attributes", names}, {"positive_label", "1"}, {"cells", cells}};
  }
};

inline Schema SynthSchema(const SynthConfig& cfg) {
  std::vector<Attribute> attrs;
  for (std::size_t i = 1; i <= cfg.n_attrs; ++i) attrs.push_back(Attribute::Discrete("X" + std::to_string(i), {"0", "1"}));
  std::optional<std::string> protected_name;
  if (cfg.protected_attribute) {
    attrs.push_back(Attribute::Discrete("G", {"0", "1"}));
    protected_name = "G";
  }
  return Schema(std::move(attrs), Attribute::Discrete("Y", {"0", "1"}), protected_name);
}

namespace internal {

// Uniform double in [0, 1) from the top 53 bits; identical on every
// platform, unlike std::uniform_real_distribution.
inline double Uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool Bernoulli(std::mt19937_64& rng, double p) { return Uniform(rng) < p; }

inline int RuleValue(LabelRule rule, std::span<const double> x) {
  switch (rule) {
    case LabelRule::kXnor: return x[0] == x[1] ? 1 : 0;
    case LabelRule::kAnd: return x[0] == 1.0 && x[1] == 1.0 ? 1 : 0;
    case LabelRule::kFirst: return x[0] == 1.0 ? 1 : 0;
  }
  return 0;
}

inline std::size_t CellIndex(std::span<const double> x) {
  std::size_t index = 0;
  for (double v : x) index = index * 2 + static_cast<std::size_t>(v);
  return index;
}

}  // namespace internal

inline SynthData GenerateSynthetic(const SynthConfig& cfg) {
  cfg.Validate();
  const Schema schema = SynthSchema(cfg);
  const std::size_t m = schema.num_predictive();
  const std::size_t n_cells = std::size_t{1} << m;

  // Cell flips come from their own stream so they do not depend on n.
  std::mt19937_64 flip_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  SynthData out{Dataset(schema, true), Dataset(schema, true), {}};
  out.ground_truth.resize(n_cells);
  std::vector<double> x(m);
  for (std::size_t c = 0; c < n_cells; ++c) {
    GroundTruthCell& cell = out.ground_truth[c];
    cell.values.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      cell.values[i] = static_cast<int>((c >> (m - 1 - i)) & 1U);
      x[i] = cell.values[i];
    }
    cell.p_source = internal::RuleValue(cfg.label_rule, x) == 1 ? 1.0 - cfg.label_noise : cfg.label_noise;
    cell.flipped = cfg.covshift_violation > 0.0 && internal::Bernoulli(flip_rng, cfg.covshift_violation);
    cell.p_target = cell.flipped ? 1.0 - cell.p_source : cell.p_source;
  }

  std::mt19937_64 rng(cfg.seed);
  auto draw = [&](Dataset& d, std::size_t n, bool target) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t i = 0; i < m; ++i) x[i] = internal::Bernoulli(rng, 0.5) ? 1.0 : 0.0;
      if (target && internal::Bernoulli(rng, cfg.target_correlation)) x[1] = x[0];
      const GroundTruthCell& cell = out.ground_truth[internal::CellIndex(x)];
      const int y = internal::Bernoulli(rng, target ? cell.p_target : cell.p_source) ? 1 : 0;
      d.AddRow(x, y);
    }
  };
  draw(out.source, cfg.n_source, false);
  draw(out.target, cfg.n_target, true);
  return out;
}

}  // namespace dadt

#endif  // DADT_SYNTH_HPP_
