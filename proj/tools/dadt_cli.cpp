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

// Command-line front end. Exit status: 0 on success, 1 for configuration or
// data errors, 2 when an internal invariant is violated.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dadt/dadt.hpp"

namespace {

namespace fs = std::filesystem;
using dadt::ErrorCode;
using dadt::Fail;
using dadt::Json;

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIoError, "cannot open '" + path + "'");
  return in;
}

Json ReadJson(const std::string& path) {
  std::ifstream in = OpenIn(path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kFormatError, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) Fail(ErrorCode::kIoError, "cannot write '" + path + "'");
}

dadt::Schema ReadSchema(const std::string& path) {
  std::ifstream in = OpenIn(path);
  return dadt::LoadSchema(in);
}

dadt::Dataset ReadData(const std::string& path, const dadt::Schema& schema) {
  std::ifstream in = OpenIn(path);
  return dadt::LoadDataset(in, schema);
}

struct TreeFlags {
  std::string config_path;
  std::optional<int> max_depth;
  std::optional<double> min_node_fraction;
  std::optional<double> purity_stop;
  std::optional<double> alpha;
  std::optional<std::string> x_w;
  std::optional<std::uint64_t> seed;
  bool no_leaf_knowledge = false;
  bool route_unseen_right = false;

  void Register(CLI::App* app) {
    app->add_option("--tree-config", config_path, "Tree configuration JSON");
    app->add_option("--max-depth", max_depth, "Maximum depth (default 8)");
    app->add_option("--min-node", min_node_fraction, "Minimum child size as a fraction of the training rows");
    app->add_option("--purity", purity_stop, "Stop splitting at this majority share");
    app->add_option("--alpha", alpha, "Fixed mixing weight; 1 uses the source only");
    app->add_option("--x-w", x_w, "Pivot attribute instead of the automatic choice");
    app->add_option("--seed", seed, "Recorded seed");
    app->add_flag("--no-leaf-knowledge", no_leaf_knowledge, "Use source frequencies at leaves");
    app->add_flag("--route-unseen-right", route_unseen_right, "Send unknown discrete values down the right branch");
  }

  dadt::TreeConfig Build() const {
    dadt::TreeConfig c = config_path.empty() ? dadt::TreeConfig{} : dadt::TreeConfig::FromJson(ReadJson(config_path));
    if (max_depth) c.max_depth = *max_depth;
    if (min_node_fraction) c.min_node_fraction = *min_node_fraction;
    if (purity_stop) c.purity_stop = *purity_stop;
    if (alpha) c.alpha_override = *alpha;
    if (x_w) c.x_w_override = *x_w;
    if (seed) c.seed = *seed;
    if (no_leaf_knowledge) c.knowledge_at_leaves = false;
    if (route_unseen_right) c.route_unseen_right = true;
    c.Validate();
    return c;
  }
};

int RunSynth(const std::string& config_path, dadt::SynthConfig cfg, const std::string& out_dir) {
  if (!config_path.empty()) cfg = dadt::SynthConfig::FromJson(ReadJson(config_path));
  const dadt::SynthData data = dadt::GenerateSynthetic(cfg);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) Fail(ErrorCode::kIoError, "cannot create '" + out_dir + "': " + ec.message());
  const fs::path dir(out_dir);
  WriteText((dir / "schema.json").string(), data.source.schema().ToJson().dump(2) + "\n");
  for (const auto& [name, d] : {std::pair{"source.csv", &data.source}, std::pair{"target.csv", &data.target}}) {
    std::ostringstream csv;
    dadt::WriteCsv(*d, csv);
    WriteText((dir / name).string(), csv.str());
  }
  WriteText((dir / "ground_truth.json").string(), data.GroundTruthJson().dump(2) + "\n");
  return 0;
}

int RunTrain(const std::string& schema_path, const std::string& train_path, const std::string& regime_name,
             const std::string& target_path, const std::string& knowledge_path, const TreeFlags& flags,
             const std::string& out) {
  const dadt::Schema schema = ReadSchema(schema_path);
  const dadt::Dataset train = ReadData(train_path, schema);
  const dadt::KnowledgeRegime regime = dadt::KnowledgeRegime::Parse(regime_name);
  dadt::KnowledgeStore ks = dadt::KnowledgeStore::Empty(schema);
  if (regime.kind != dadt::RegimeKind::kNone) {
    if (!target_path.empty()) {
      ks = dadt::KnowledgeStore::FromSample(ReadData(target_path, schema), regime);
    } else if (!knowledge_path.empty()) {
      std::ifstream in = OpenIn(knowledge_path);
      ks = dadt::KnowledgeStore::FromCrosstabs(in, schema);
      if (ks.regime().Name() != regime.Name()) {
        Fail(ErrorCode::kConfigError,
             "knowledge file provides " + ks.regime().Name() + " but " + regime.Name() + " was requested");
      }
    } else {
      Fail(ErrorCode::kConfigError, "regime " + regime.Name() + " needs --target or --knowledge");
    }
  }
  const dadt::DecisionTree tree = dadt::Grow(train, ks, flags.Build());
  WriteText(out, tree.ToJson().dump(2) + "\n");
  return 0;
}

// Encodes prediction rows against the tree's schema. With unseen-value
// routing on, unknown discrete labels become an out-of-domain code.
std::vector<std::vector<double>> EncodeRows(std::istream& in, const dadt::DecisionTree& tree) {
  const dadt::Schema& schema = tree.schema();
  dadt::csv::Reader reader(in);
  dadt::csv::Record header;
  if (!reader.Next(header)) Fail(ErrorCode::kEmptyDataset, "input has no header");
  std::vector<std::optional<std::size_t>> column_of(header.size());
  std::vector<bool> seen(schema.num_predictive(), false);
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == schema.class_attr().name) continue;
    auto index = schema.Find(header[c]);
    if (!index) Fail(ErrorCode::kSchemaMismatch, "unexpected column '" + header[c] + "'");
    if (seen[*index]) Fail(ErrorCode::kSchemaMismatch, "duplicate column '" + header[c] + "'");
    seen[*index] = true;
    column_of[c] = index;
  }
  for (std::size_t a = 0; a < seen.size(); ++a) {
    if (!seen[a]) Fail(ErrorCode::kSchemaMismatch, "missing column '" + schema.attribute(a).name + "'");
  }
  std::vector<std::vector<double>> rows;
  dadt::csv::Record record;
  while (reader.Next(record)) {
    if (record.size() == 1 && record[0].empty()) continue;
    if (record.size() != header.size()) {
      Fail(ErrorCode::kParseError, "row " + std::to_string(rows.size() + 1) + " has " + std::to_string(record.size()) +
                                       " fields, expected " + std::to_string(header.size()));
    }
    std::vector<double> row(schema.num_predictive());
    for (std::size_t c = 0; c < record.size(); ++c) {
      if (!column_of[c]) continue;
      const dadt::Attribute& a = schema.attribute(*column_of[c]);
      if (record[c].empty()) Fail(ErrorCode::kMissingValue, "empty value for '" + a.name + "'");
      if (a.is_discrete()) {
        auto code = a.CodeOf(record[c]);
        if (!code && !tree.config().route_unseen_right) {
          Fail(ErrorCode::kValueOutOfDomain, "value '" + record[c] + "' not in the domain of '" + a.name + "'");
        }
        row[*column_of[c]] = code ? *code : -1.0;
      } else {
        auto v = dadt::ParseDouble(record[c]);
        if (!v) Fail(ErrorCode::kParseError, "'" + record[c] + "' is not a number");
        row[*column_of[c]] = *v;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int RunPredict(const std::string& tree_path, const std::string& data_path, const std::string& out) {
  const dadt::DecisionTree tree = dadt::DecisionTree::FromJson(ReadJson(tree_path));
  std::ifstream in = OpenIn(data_path);
  const auto rows = EncodeRows(in, tree);
  const auto& labels = tree.schema().class_attr().domain;
  std::ostringstream csv;
  dadt::csv::Record header{"prediction"};
  for (const auto& l : labels) header.push_back("p_" + l);
  dadt::csv::WriteRecord(csv, header);
  for (const auto& row : rows) {
    const dadt::Prediction p = tree.Predict(row);
    dadt::csv::Record record{labels[static_cast<std::size_t>(p.label)]};
    for (double v : p.probs) record.push_back(dadt::FormatDouble(v));
    dadt::csv::WriteRecord(csv, record);
  }
  WriteText(out, csv.str());
  return 0;
}

int RunEvaluate(const std::string& tree_path, const std::string& data_path, const std::string& protected_attr,
                const std::string& positive, const std::string& out) {
  const dadt::DecisionTree tree = dadt::DecisionTree::FromJson(ReadJson(tree_path));
  const dadt::Dataset test = ReadData(data_path, tree.schema());
  std::optional<dadt::ProtectedGroups> groups;
  if (!protected_attr.empty() || tree.schema().protected_attr()) {
    groups = dadt::ProtectedGroups::Of(tree.schema(),
                                       protected_attr.empty() ? std::nullopt : std::optional<std::string>(protected_attr));
  }
  const int pos = dadt::PositiveLabel(tree.schema(), positive.empty() ? std::nullopt : std::optional<std::string>(positive));
  Json report = dadt::Evaluate(tree, test, groups, pos).ToJson();
  report["w_tree"] = dadt::TreeShiftDistance(tree, test);
  WriteText(out, report.dump(2) + "\n");
  return 0;
}

int RunExperimentCommand(const std::string& config_path, std::optional<std::size_t> threads, bool quiet) {
  const Json doc = ReadJson(config_path);
  dadt::ExperimentConfig cfg = dadt::ExperimentConfig::FromJson(doc, fs::path(config_path).parent_path());
  if (threads) cfg.threads = *threads;
  std::size_t done = 0;
  const auto results = dadt::RunExperiment(cfg, [&](const dadt::ExperimentResult& r) {
    ++done;
    if (!quiet) {
      std::cerr << "[" << done << "/" << cfg.pairs.size() << "] " << r.pair_id
                << (r.error.empty() ? "" : " error: " + r.error) << "\n";
    }
  });
  const dadt::EmittedFiles files = dadt::EmitResults(results, cfg.output);
  if (!quiet) std::cerr << "wrote " << files.csv << ", " << files.json << ", " << files.scatter << "\n";
  return 0;
}

int RunShiftReport(const std::string& schema_path, const std::string& source_path, const std::string& target_path,
                   const std::string& out) {
  const dadt::Schema schema = ReadSchema(schema_path);
  const dadt::Dataset source = ReadData(source_path, schema);
  const dadt::Dataset target = ReadData(target_path, schema);
  const dadt::KnowledgeStore ks = dadt::KnowledgeStore::FromSample(target, dadt::KnowledgeRegime::Full());
  std::ostringstream csv;
  dadt::csv::WriteRecord(csv, {"attribute", "kind", "w_marginal", "w_conditional"});
  const auto report = dadt::AttributeShiftReport(source, target, ks);
  for (const auto& s : report) {
    const dadt::Attribute& a = schema.attribute(schema.IndexOf(s.attribute));
    dadt::csv::WriteRecord(csv, {s.attribute, a.is_discrete() ? "discrete" : "continuous", dadt::FormatDouble(s.w_marginal),
                                 s.w_conditional ? dadt::FormatDouble(*s.w_conditional) : ""});
  }
  WriteText(out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Domain-adaptive decision trees"};
  app.require_subcommand(1);

  auto* synth = app.add_subcommand("synth", "Write a synthetic source/target pair with its ground truth");
  std::string synth_config;
  std::string synth_out = ".";
  dadt::SynthConfig synth_cfg;
  std::string rule = "xnor";
  synth->add_option("--config", synth_config, "Synthetic configuration JSON (overrides the flags)");
  synth->add_option("--out-dir", synth_out, "Output directory");
  synth->add_option("--n-source", synth_cfg.n_source, "Source rows");
  synth->add_option("--n-target", synth_cfg.n_target, "Target rows");
  synth->add_option("--n-attrs", synth_cfg.n_attrs, "Binary attributes");
  synth->add_option("--rho", synth_cfg.target_correlation, "Probability that X2 copies X1 in the target");
  synth->add_option("--rule", rule, "Label rule: xnor, and, first");
  synth->add_option("--noise", synth_cfg.label_noise, "Label noise");
  synth->add_option("--delta", synth_cfg.covshift_violation, "Per-cell probability of inverting P_T(Y|x)");
  synth->add_flag("--protected", synth_cfg.protected_attribute, "Add a binary protected attribute G");
  synth->add_option("--seed", synth_cfg.seed, "Random seed");

  auto* train = app.add_subcommand("train", "Grow one tree and write it as JSON");
  std::string schema_path, train_path, regime = "ntdk", target_path, knowledge_path, tree_out;
  TreeFlags tree_flags;
  train->add_option("--schema", schema_path, "Schema JSON")->required();
  train->add_option("--train", train_path, "Labeled training CSV")->required();
  train->add_option("--regime", regime, "ntdk, ftdk or ptdk<k>");
  train->add_option("--target", target_path, "Target sample CSV to build knowledge from");
  train->add_option("--knowledge", knowledge_path, "Cross-tab knowledge JSON");
  train->add_option("--out", tree_out, "Tree JSON output (default stdout)");
  tree_flags.Register(train);

  auto* predict = app.add_subcommand("predict", "Predict classes for a CSV");
  std::string tree_path, data_path, predict_out;
  predict->add_option("--tree", tree_path, "Tree JSON")->required();
  predict->add_option("--data", data_path, "Input CSV")->required();
  predict->add_option("--out", predict_out, "Predictions CSV (default stdout)");

  auto* evaluate = app.add_subcommand("evaluate", "Accuracy and fairness of a tree on labeled data");
  std::string eval_tree, eval_data, protected_attr, positive, eval_out;
  evaluate->add_option("--tree", eval_tree, "Tree JSON")->required();
  evaluate->add_option("--data", eval_data, "Labeled CSV")->required();
  evaluate->add_option("--protected", protected_attr, "Binary protected attribute");
  evaluate->add_option("--positive", positive, "Positive class label (default: last class)");
  evaluate->add_option("--out", eval_out, "Report JSON (default stdout)");

  auto* experiment = app.add_subcommand("experiment", "Run a source/target sweep");
  std::string experiment_config;
  std::optional<std::size_t> threads;
  bool quiet = false;
  experiment->add_option("config", experiment_config, "Experiment configuration JSON")->required();
  experiment->add_option("--threads", threads, "Pairs processed in parallel");
  experiment->add_flag("--quiet", quiet, "No progress output");

  auto* shift = app.add_subcommand("shift-report", "Per-attribute source/target distances");
  std::string shift_schema, shift_source, shift_target, shift_out;
  shift->add_option("--schema", shift_schema, "Schema JSON")->required();
  shift->add_option("--source", shift_source, "Source CSV")->required();
  shift->add_option("--target", shift_target, "Target CSV")->required();
  shift->add_option("--out", shift_out, "Report CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (synth->parsed()) {
      synth_cfg.label_rule = dadt::ParseLabelRule(rule);
      return RunSynth(synth_config, synth_cfg, synth_out);
    }
    if (train->parsed()) {
      return RunTrain(schema_path, train_path, regime, target_path, knowledge_path, tree_flags, tree_out);
    }
    if (predict->parsed()) return RunPredict(tree_path, data_path, predict_out);
    if (evaluate->parsed()) return RunEvaluate(eval_tree, eval_data, protected_attr, positive, eval_out);
    if (experiment->parsed()) return RunExperimentCommand(experiment_config, threads, quiet);
    if (shift->parsed()) return RunShiftReport(shift_schema, shift_source, shift_target, shift_out);
  } catch (const dadt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kInternalError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
