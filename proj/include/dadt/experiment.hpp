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

// Source/target experiment sweeps. Each pair is split 75/25 on both sides;
// knowledge comes from the target training part only; every regime is
// evaluated on the same target test part.

#ifndef DADT_EXPERIMENT_HPP_
#define DADT_EXPERIMENT_HPP_

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dadt/csv.hpp"
#include "dadt/data.hpp"
#include "dadt/error.hpp"
#include "dadt/knowledge.hpp"
#include "dadt/metrics.hpp"
#include "dadt/synth.hpp"
#include "dadt/tree.hpp"

namespace dadt {

// A tree-growing regime: the target-trained baseline or a knowledge regime
// applied to source training data.
struct Regime {
  bool target_trained = false;
  KnowledgeRegime knowledge = KnowledgeRegime::None();

  std::string Name() const { return target_trained ? "tt" : knowledge.Name(); }

  static Regime Parse(std::string_view name) {
    if (name == "tt") return {true, KnowledgeRegime::None()};
    return {false, KnowledgeRegime::Parse(name)};
  }

  bool adapted() const { return !target_trained && knowledge.kind != RegimeKind::kNone; }
  bool operator==(const Regime& o) const { return Name() == o.Name(); }
};

// A source or target dataset: a CSV file or one side of a synthetic pair.
struct DataRef {
  std::string csv;  // resolved path; empty for synthetic data
};

struct PairSpec {
  std::string id;
  DataRef source;
  DataRef target;
  std::optional<SynthConfig> synth;
};

struct FairnessConfig {
  std::optional<std::string> protected_attr;
  std::optional<std::string> positive_label;
  bool postprocess = false;
  std::vector<FairnessObjective> objectives{FairnessObjective::kDemographicParity,
                                            FairnessObjective::kEqualOpportunity};
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::optional<std::string> schema_path;
  std::vector<PairSpec> pairs;
  std::vector<Regime> regimes;
  TreeConfig tree;
  double train_fraction = 0.75;
  FairnessConfig fairness;
  std::string output;  // file prefix
  std::size_t threads = 1;

  // Relative paths resolve against `base_dir` (the config file's directory).
  static ExperimentConfig FromJson(const Json& j, const std::filesystem::path& base_dir) {
    ExperimentConfig c;
    auto resolve = [&](const std::string& p) { return (base_dir / p).lexically_normal().string(); };
    try {
      if (!j.contains("seed")) Fail(ErrorCode::kConfigError, "experiment config needs a seed");
      if (!(j.at("seed").is_number_integer() && j.at("seed") >= 0)) {
        Fail(ErrorCode::kConfigError, "seed must be a non-negative integer");
      }
      c.seed = j.at("seed").get<std::uint64_t>();
      if (j.contains("schema")) c.schema_path = resolve(j.at("schema").get<std::string>());
      if (j.contains("tree")) c.tree = TreeConfig::FromJson(j.at("tree"));
      c.train_fraction = j.value("train_fraction", c.train_fraction);
      c.output = resolve(j.value("output", std::string("results")));
      c.threads = j.value("threads", c.threads);
      for (const auto& r : j.value("regimes", Json::array({"tt", "ntdk", "ftdk", "ptdk2", "ptdk3"}))) {
        c.regimes.push_back(Regime::Parse(r.get<std::string>()));
      }
      if (j.contains("fairness")) {
        const Json& f = j.at("fairness");
        if (f.contains("protected")) c.fairness.protected_attr = f.at("protected").get<std::string>();
        if (f.contains("positive_label")) c.fairness.positive_label = f.at("positive_label").get<std::string>();
        c.fairness.postprocess = f.value("postprocess", false);
        if (f.contains("objectives")) {
          c.fairness.objectives.clear();
          for (const auto& o : f.at("objectives")) c.fairness.objectives.push_back(ParseFairnessObjective(o.get<std::string>()));
        }
      }
      for (const auto& p : j.value("pairs", Json::array())) {
        PairSpec spec;
        spec.id = p.at("id").get<std::string>();
        if (p.contains("synth")) {
          spec.synth = SynthConfig::FromJson(p.at("synth"));
        } else {
          spec.source.csv = resolve(p.at("source").get<std::string>());
          spec.target.csv = resolve(p.at("target").get<std::string>());
        }
        c.pairs.push_back(std::move(spec));
      }
      // Replicated synthetic pairs varying one numeric field:
      // {"base": {...}, "replicates": 20, "vary": {"covshift_violation": [0, 0.1]}}
      if (j.contains("synth_sweep")) {
        const Json& s = j.at("synth_sweep");
        const Json base = s.value("base", Json::object());
        const std::size_t replicates = s.value("replicates", std::size_t{1});
        std::string field;
        Json levels = Json::array({nullptr});
        if (s.contains("vary")) {
          if (s.at("vary").size() != 1) Fail(ErrorCode::kConfigError, "synth_sweep.vary takes exactly one field");
          field = s.at("vary").begin().key();
          levels = s.at("vary").begin().value();
        }
        const std::uint64_t base_seed = base.value("seed", std::uint64_t{1});
        for (const auto& level : levels) {
          for (std::size_t r = 0; r < replicates; ++r) {
            Json cfg = base;
            std::string id;
            if (!field.empty()) {
              cfg[field] = level;
              id = field + "=" + (level.is_number() ? FormatDouble(level.get<double>()) : level.dump()) + "/";
            }
            cfg["seed"] = base_seed + r;
            c.pairs.push_back({id + "rep" + std::to_string(r), {}, {}, SynthConfig::FromJson(cfg)});
          }
        }
      }
    } catch (const Json::exception& e) {
      Fail(ErrorCode::kConfigError, std::string("bad experiment config: ") + e.what());
    }
    c.Validate();
    return c;
  }

  void Validate() const {
    if (regimes.empty()) Fail(ErrorCode::kConfigError, "no regimes requested");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) Fail(ErrorCode::kConfigError, "train_fraction must lie in (0, 1)");
    if (threads == 0) Fail(ErrorCode::kConfigError, "threads must be >= 1");
    for (const auto& p : pairs) {
      if (!p.synth && !schema_path) Fail(ErrorCode::kConfigError, "pair '" + p.id + "' reads CSV files but no schema is set");
    }
    tree.Validate();
  }
};

struct PostprocessOutcome {
  FairnessObjective objective = FairnessObjective::kDemographicParity;
  std::array<double, 2> thresholds{0.5, 0.5};
  EvalReport report;

  bool operator==(const PostprocessOutcome&) const = default;
};

struct RegimeResult {
  std::string regime;
  // Set when the regime failed; the remaining fields are then unset.
  std::string error;
  std::optional<EvalReport> report;
  std::vector<PostprocessOutcome> postprocessed;
  std::optional<double> w_tree;
  std::optional<RelativeGains> gains;
  std::optional<std::string> x_w;
  std::size_t n_nodes = 0;
  int depth = 0;

  // Fairness values entering the gains: post-processed when available.
  std::optional<double> EffectiveMetric(FairnessObjective o) const {
    for (const auto& p : postprocessed) {
      if (p.objective == o) return o == FairnessObjective::kDemographicParity ? p.report.dp : p.report.eop;
    }
    if (!report) return std::nullopt;
    return o == FairnessObjective::kDemographicParity ? report->dp : report->eop;
  }

  bool operator==(const RegimeResult&) const = default;
};

struct ExperimentResult {
  std::string pair_id;
  std::uint64_t seed = 0;
  std::string error;
  std::vector<RegimeResult> regimes;
  std::vector<AttributeShift> shift;
  // Pivot of the full-knowledge tree and its class-conditional distance.
  std::optional<std::string> x_w;
  std::optional<double> w_xw;
  double wall_clock_s = 0.0;

  const RegimeResult* Find(std::string_view regime) const {
    for (const auto& r : regimes) {
      if (r.regime == regime) return &r;
    }
    return nullptr;
  }

  bool operator==(const ExperimentResult&) const = default;
};

// FNV-1a; keeps per-pair seeds independent of pair order.
inline std::uint64_t HashId(std::string_view id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t PairSeed(std::uint64_t global_seed, std::string_view id) { return global_seed + HashId(id); }

namespace internal {

inline Dataset ReadCsvFile(const std::string& path, const Schema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIoError, "cannot open '" + path + "'");
  return LoadDataset(in, schema);
}

inline RegimeResult RunRegime(const Regime& regime, const TrainTestSplit& source, const TrainTestSplit& target,
                              const ExperimentConfig& cfg) {
  RegimeResult out;
  out.regime = regime.Name();
  const Schema& schema = source.train.schema();
  const Dataset& train = regime.target_trained ? target.train : source.train;
  KnowledgeStore ks = regime.adapted() ? KnowledgeStore::FromSample(target.train, regime.knowledge)
                                       : KnowledgeStore::Empty(schema);
  const DecisionTree tree = Grow(train, ks, cfg.tree);
  out.x_w = tree.pivot_name();
  out.n_nodes = tree.nodes().size();
  out.depth = tree.Depth();

  std::optional<ProtectedGroups> groups;
  if (cfg.fairness.protected_attr || schema.protected_attr()) {
    groups = ProtectedGroups::Of(schema, cfg.fairness.protected_attr);
  }
  const int positive = PositiveLabel(schema, cfg.fairness.positive_label);
  out.report = Evaluate(tree, target.test, groups, positive);
  out.w_tree = TreeShiftDistance(tree, target.test);
  if (groups && cfg.fairness.postprocess) {
    // Thresholds are fit in the domain the tree was trained for.
    const Dataset& holdout = regime.target_trained ? target.train : source.test;
    for (FairnessObjective o : cfg.fairness.objectives) {
      PostprocessResult pr;
      const PostprocessedModel model = PostprocessThresholds(tree, holdout, *groups, o, positive, &pr);
      out.postprocessed.push_back({o, pr.thresholds, Evaluate(model, target.test, groups, positive)});
    }
  }
  return out;
}

}  // namespace internal

// Runs every regime on one pair. Errors are recorded, never thrown.
inline ExperimentResult RunPair(const PairSpec& pair, const ExperimentConfig& cfg,
                                const std::map<std::string, std::shared_ptr<const Dataset>>& files) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.pair_id = pair.id;
  result.seed = PairSeed(cfg.seed, pair.id);
  try {
    std::optional<SynthData> synth;
    if (pair.synth) synth = GenerateSynthetic(*pair.synth);
    const Dataset& source = synth ? synth->source : *files.at(pair.source.csv);
    const Dataset& target = synth ? synth->target : *files.at(pair.target.csv);
    if (!source.labeled()) Fail(ErrorCode::kUnlabeledData, "source data must be labeled");
    if (!target.labeled()) Fail(ErrorCode::kUnlabeledData, "target data must be labeled for evaluation");
    const TrainTestSplit s = SplitTrainTest(source, cfg.train_fraction, result.seed);
    const TrainTestSplit t = SplitTrainTest(target, cfg.train_fraction, result.seed + 1);
    if (s.degenerate || t.degenerate) Fail(ErrorCode::kEmptyDataset, "a train/test split is empty");

    const KnowledgeStore full = KnowledgeStore::FromSample(t.train, KnowledgeRegime::Full());
    result.shift = AttributeShiftReport(s.train, t.train, full);

    for (const Regime& regime : cfg.regimes) {
      try {
        result.regimes.push_back(internal::RunRegime(regime, s, t, cfg));
      } catch (const std::exception& e) {
        RegimeResult failed;
        failed.regime = regime.Name();
        failed.error = e.what();
        result.regimes.push_back(std::move(failed));
      }
    }
    for (const auto& r : result.regimes) {
      if (r.regime == "ftdk" && r.x_w) {
        result.x_w = r.x_w;
        result.w_xw = ConditionalShiftScore(s.train, full, s.train.schema().IndexOf(*r.x_w)).score;
      }
    }

    const RegimeResult* tt = result.Find("tt");
    const RegimeResult* ntdk = result.Find("ntdk");
    if (tt && ntdk && tt->report && ntdk->report) {
      auto effective = [](const RegimeResult& r) {
        EvalReport e = *r.report;
        e.dp = r.EffectiveMetric(FairnessObjective::kDemographicParity);
        e.eop = r.EffectiveMetric(FairnessObjective::kEqualOpportunity);
        return e;
      };
      for (auto& r : result.regimes) {
        if (r.regime == "tt" || !r.report) continue;
        r.gains = RelativeGains::From(effective(*tt), effective(*ntdk), effective(r));
      }
    }
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  result.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

// Runs all pairs, `cfg.threads` at a time. Results keep pair order; each
// pair's outcome does not depend on scheduling. `on_result` is called once
// per finished pair, serialized.
inline std::vector<ExperimentResult> RunExperiment(
    const ExperimentConfig& cfg, const std::function<void(const ExperimentResult&)>& on_result = {}) {
  cfg.Validate();
  std::map<std::string, std::shared_ptr<const Dataset>> files;
  if (cfg.schema_path) {
    std::ifstream in(*cfg.schema_path, std::ios::binary);
    if (!in) Fail(ErrorCode::kIoError, "cannot open schema '" + *cfg.schema_path + "'");
    const Schema schema = LoadSchema(in);
    for (const auto& p : cfg.pairs) {
      if (p.synth) continue;
      for (const std::string& path : {p.source.csv, p.target.csv}) {
        if (files.count(path)) continue;
        try {
          files[path] = std::make_shared<const Dataset>(internal::ReadCsvFile(path, schema));
        } catch (const Error&) {
          files[path] = nullptr;  // reported by the pair
        }
      }
    }
  }

  std::vector<ExperimentResult> results(cfg.pairs.size());
  std::atomic<std::size_t> next{0};
  std::mutex emit;
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.pairs.size(); i = next++) {
      const PairSpec& pair = cfg.pairs[i];
      bool loaded = pair.synth.has_value() || (files.at(pair.source.csv) && files.at(pair.target.csv));
      if (loaded) {
        results[i] = RunPair(pair, cfg, files);
      } else {
        results[i].pair_id = pair.id;
        results[i].seed = PairSeed(cfg.seed, pair.id);
        results[i].error = "could not load '" + (files.at(pair.source.csv) ? pair.target.csv : pair.source.csv) + "'";
      }
      if (on_result) {
        std::lock_guard<std::mutex> lock(emit);
        on_result(results[i]);
      }
    }
  };
  const std::size_t n_threads = std::min(cfg.threads, std::max<std::size_t>(cfg.pairs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

namespace internal {

inline std::string Cell(const std::optional<double>& v) { return v ? FormatDouble(*v) : std::string(); }
inline std::string Cell(double v) { return FormatDouble(v); }
inline std::string Cell(bool v) { return v ? "true" : "false"; }

inline const PostprocessOutcome* FindOutcome(const RegimeResult& r, FairnessObjective o) {
  for (const auto& p : r.postprocessed) {
    if (p.objective == o) return &p;
  }
  return nullptr;
}

}  // namespace internal

inline const std::vector<std::string>& ResultsCsvHeader() {
  static const std::vector<std::string> header{
      "pair_id",   "regime",  "status",  "error",    "x_w",          "n_nodes",   "depth",
      "n_test",    "acc",     "dp",      "eop",      "dp_raw",       "eop_raw",   "tau_dp_0",
      "tau_dp_1",  "tau_eop_0", "tau_eop_1", "w_tree", "r_acc",      "r_acc_degenerate",
      "r_dp",      "r_dp_degenerate", "r_eop", "r_eop_degenerate"};
  return header;
}

// One row per pair and regime; wall-clock time is left out so identical
// configurations produce identical bytes.
inline std::string ResultsCsv(const std::vector<ExperimentResult>& results) {
  std::ostringstream out;
  csv::WriteRecord(out, ResultsCsvHeader());
  for (const auto& pair : results) {
    if (!pair.error.empty()) {
      csv::Record row(ResultsCsvHeader().size());
      row[0] = pair.pair_id;
      row[2] = "error";
      row[3] = pair.error;
      csv::WriteRecord(out, row);
      continue;
    }
    for (const auto& r : pair.regimes) {
      csv::Record row;
      row.push_back(pair.pair_id);
      row.push_back(r.regime);
      row.push_back(r.error.empty() ? "ok" : "error");
      row.push_back(r.error);
      row.push_back(r.x_w.value_or(""));
      row.push_back(r.error.empty() ? std::to_string(r.n_nodes) : "");
      row.push_back(r.error.empty() ? std::to_string(r.depth) : "");
      row.push_back(r.report ? std::to_string(r.report->n_test) : "");
      row.push_back(r.report ? internal::Cell(r.report->acc) : "");
      row.push_back(internal::Cell(r.EffectiveMetric(FairnessObjective::kDemographicParity)));
      row.push_back(internal::Cell(r.EffectiveMetric(FairnessObjective::kEqualOpportunity)));
      row.push_back(r.report ? internal::Cell(r.report->dp) : "");
      row.push_back(r.report ? internal::Cell(r.report->eop) : "");
      for (FairnessObjective o : {FairnessObjective::kDemographicParity, FairnessObjective::kEqualOpportunity}) {
        const PostprocessOutcome* p = internal::FindOutcome(r, o);
        row.push_back(p ? internal::Cell(p->thresholds[0]) : "");
        row.push_back(p ? internal::Cell(p->thresholds[1]) : "");
      }
      row.push_back(internal::Cell(r.w_tree));
      auto gain = [&](const std::optional<Gain>& g) {
        row.push_back(g ? internal::Cell(g->value) : "");
        row.push_back(g ? internal::Cell(g->degenerate) : "");
      };
      gain(r.gains ? std::optional<Gain>(r.gains->r_acc) : std::nullopt);
      gain(r.gains ? r.gains->r_dp : std::nullopt);
      gain(r.gains ? r.gains->r_eop : std::nullopt);
      csv::WriteRecord(out, row);
    }
  }
  return out.str();
}

// Plot-ready rows for adapted regimes: tree shift distances of ntdk and the
// adapted tree, the pivot's class-conditional distance and the gains.
inline std::string ScatterCsv(const std::vector<ExperimentResult>& results) {
  std::ostringstream out;
  csv::WriteRecord(out, {"pair_id", "regime", "w_t_ntdk", "w_t_adapted", "w_xw", "r_acc", "r_dp", "r_eop"});
  for (const auto& pair : results) {
    const RegimeResult* ntdk = pair.Find("ntdk");
    for (const auto& r : pair.regimes) {
      if (r.regime == "tt" || r.regime == "ntdk" || !r.gains) continue;
      csv::WriteRecord(out, {pair.pair_id, r.regime, ntdk ? internal::Cell(ntdk->w_tree) : "",
                             internal::Cell(r.w_tree), internal::Cell(pair.w_xw), internal::Cell(r.gains->r_acc.value),
                             r.gains->r_dp ? internal::Cell(r.gains->r_dp->value) : "",
                             r.gains->r_eop ? internal::Cell(r.gains->r_eop->value) : ""});
    }
  }
  return out.str();
}

inline Json ResultToJson(const ExperimentResult& r) {
  auto opt = [](const auto& v) { return v ? Json(*v) : Json(nullptr); };
  Json regimes = Json::array();
  for (const auto& g : r.regimes) {
    Json pp = Json::array();
    for (const auto& p : g.postprocessed) {
      pp.push_back({{"objective", FairnessObjectiveName(p.objective)},
                    {"thresholds", p.thresholds},
                    {"report", p.report.ToJson()}});
    }
    regimes.push_back({{"regime", g.regime},
                       {"error", g.error},
                       {"report", g.report ? g.report->ToJson() : Json(nullptr)},
                       {"postprocessed", pp},
                       {"w_tree", opt(g.w_tree)},
                       {"gains", g.gains ? g.gains->ToJson() : Json(nullptr)},
                       {"x_w", opt(g.x_w)},
                       {"n_nodes", g.n_nodes},
                       {"depth", g.depth}});
  }
  Json shift = Json::array();
  for (const auto& s : r.shift) {
    shift.push_back({{"attribute", s.attribute}, {"w_marginal", s.w_marginal}, {"w_conditional", opt(s.w_conditional)}});
  }
  return Json{{"pair_id", r.pair_id}, {"seed", r.seed},     {"error", r.error},
              {"regimes", regimes},   {"shift", shift},     {"x_w", opt(r.x_w)},
              {"w_xw", opt(r.w_xw)},  {"wall_clock_s", r.wall_clock_s}};
}

inline ExperimentResult ResultFromJson(const Json& j) {
  auto opt_d = [](const Json& v) -> std::optional<double> {
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
  };
  auto opt_s = [](const Json& v) -> std::optional<std::string> {
    if (v.is_null()) return std::nullopt;
    return v.get<std::string>();
  };
  ExperimentResult r;
  try {
    r.pair_id = j.at("pair_id").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.error = j.at("error").get<std::string>();
    for (const auto& g : j.at("regimes")) {
      RegimeResult rr;
      rr.regime = g.at("regime").get<std::string>();
      rr.error = g.at("error").get<std::string>();
      if (!g.at("report").is_null()) rr.report = EvalReport::FromJson(g.at("report"));
      for (const auto& p : g.at("postprocessed")) {
        rr.postprocessed.push_back({ParseFairnessObjective(p.at("objective").get<std::string>()),
                                    p.at("thresholds").get<std::array<double, 2>>(),
                                    EvalReport::FromJson(p.at("report"))});
      }
      rr.w_tree = opt_d(g.at("w_tree"));
      if (!g.at("gains").is_null()) rr.gains = RelativeGains::FromJson(g.at("gains"));
      rr.x_w = opt_s(g.at("x_w"));
      rr.n_nodes = g.at("n_nodes").get<std::size_t>();
      rr.depth = g.at("depth").get<int>();
      r.regimes.push_back(std::move(rr));
    }
    for (const auto& s : j.at("shift")) {
      r.shift.push_back({s.at("attribute").get<std::string>(), s.at("w_marginal").get<double>(),
                         opt_d(s.at("w_conditional"))});
    }
    r.x_w = opt_s(j.at("x_w"));
    r.w_xw = opt_d(j.at("w_xw"));
    r.wall_clock_s = j.at("wall_clock_s").get<double>();
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kFormatError, std::string("malformed result document: ") + e.what());
  }
  return r;
}

inline Json ResultsToJson(const std::vector<ExperimentResult>& results) {
  Json out = Json::array();
  for (const auto& r : results) out.push_back(ResultToJson(r));
  return Json{{"format", "dadt-results/1"}, {"results", out}};
}

struct EmittedFiles {
  std::string csv;
  std::string json;
  std::string scatter;
};

// Writes <prefix>.csv, <prefix>.json and <prefix>_scatter.csv.
inline EmittedFiles EmitResults(const std::vector<ExperimentResult>& results, const std::string& prefix) {
  EmittedFiles files{prefix + ".csv", prefix + ".json", prefix + "_scatter.csv"};
  const std::filesystem::path parent = std::filesystem::path(prefix).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec) Fail(ErrorCode::kIoError, "cannot create '" + parent.string() + "': " + ec.message());
  }
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) Fail(ErrorCode::kIoError, "cannot write '" + path + "'");
  };
  write(files.csv, ResultsCsv(results));
  write(files.json, ResultsToJson(results).dump(2) + "\n");
  write(files.scatter, ScatterCsv(results));
  return files;
}

}  // namespace dadt

#endif  // DADT_EXPERIMENT_HPP_
