// Copyright (c) 2026 vceval authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vceval/campaign.hpp"
#include "vceval/detection.hpp"
#include "vceval/oracle.hpp"
#include "vceval/stats.hpp"
#include "vceval/tandem.hpp"
#include "vceval/version.hpp"
#include "vceval/wer.hpp"

namespace {

using namespace vceval;

std::vector<double> load_scores(const std::string& path, Label default_label) {
  const auto trials = parse_trial_scores(path, default_label);
  std::vector<double> scores;
  scores.reserve(trials.size());
  for (const auto& trial : trials) scores.push_back(trial.score);
  return scores;
}

// `key value` lines, `#` comments.
std::map<std::string, double> load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  }
  std::map<std::string, double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key) || key[0] == '#') continue;
    double value = 0.0;
    if (!(fields >> value) || !std::isfinite(value)) {
      throw Error(ErrorCode::kMalformedLine, "expected `key value`", line_no);
    }
    values[key] = value;
  }
  return values;
}

CostModel cost_model_from_file(const std::string& path) {
  const auto values = load_key_values(path);
  CostModel model;
  auto get = [&](const char* key) -> std::optional<double> {
    const auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
  };
  if (const auto v = get("c_miss")) model.c_miss = *v;
  if (const auto v = get("c_fa")) model.c_fa = *v;
  if (const auto v = get("c_fa_spoof")) model.c_fa_spoof = *v;
  if (const auto v = get("pi_spoof")) {
    model.pi_spoof = *v;
    model.pi_tar = (1.0 - *v) * 0.99;
    model.pi_non = (1.0 - *v) * 0.01;
  }
  if (const auto v = get("pi_tar")) model.pi_tar = *v;
  if (const auto v = get("pi_non")) model.pi_non = *v;
  model.validate();
  return model;
}

// Numeric CSV with a header row; `#` lines skipped.
struct NumericTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
};

NumericTable load_numeric_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  }
  NumericTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream fields(line);
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (table.names.empty()) {
      table.names = cells;
      table.columns.resize(cells.size());
      continue;
    }
    if (cells.size() != table.names.size()) {
      throw Error(ErrorCode::kMalformedLine,
                  "expected " + std::to_string(table.names.size()) + " cells",
                  line_no);
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      try {
        table.columns[i].push_back(std::stod(cells[i]));
      } catch (...) {
        throw Error(ErrorCode::kNonFiniteScore,
                    "cell '" + cells[i] + "' is not numeric", line_no);
      }
    }
  }
  if (table.names.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no rows in " + path);
  }
  return table;
}

std::size_t column_index(const NumericTable& table, const std::string& name) {
  for (std::size_t i = 0; i < table.names.size(); ++i) {
    if (table.names[i] == name) return i;
  }
  throw Error(ErrorCode::kMissingField, "no column named " + name);
}

int run_campaign(const std::string& manifest_path, const std::string& out_dir,
                 const std::string& format) {
  const auto manifest = load_manifest(manifest_path);
  const auto report = evaluate_campaign(manifest);
  const ReportFormat parsed = format == "json"  ? ReportFormat::kJson
                              : format == "md" ? ReportFormat::kMarkdown
                                               : ReportFormat::kCsv;
  const auto files = emit_report(report, parsed, out_dir);
  for (const auto& file : files) {
    std::printf("wrote %s\n", file.string().c_str());
  }
  if (!report.diagnostics.empty()) {
    std::printf("completed with %zu diagnostic(s); see the report\n",
                report.diagnostics.size());
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Objective evaluation toolkit for voice-conversion campaigns"};
  app.set_version_flag("--version", std::string("eval ") + kVersion);
  app.require_subcommand(1);

  // campaign
  std::string manifest_path, out_dir, format = "csv";
  auto* campaign = app.add_subcommand("campaign", "Run a full evaluation");
  campaign->add_option("--manifest", manifest_path, "Manifest JSON")->required();
  campaign->add_option("--out", out_dir, "Output directory")->required();
  campaign->add_option("--format", format, "csv, json or md")
      ->check(CLI::IsMember({"csv", "json", "md"}));

  // asv
  std::string natural_tar, natural_non, conv_tar, genuine_tar, conv_src;
  auto* asv = app.add_subcommand("asv", "ASV conversion assessment");
  asv->add_option("--natural-tar", natural_tar, "Natural target trials")->required();
  asv->add_option("--natural-non", natural_non, "Natural nontarget trials")->required();
  asv->add_option("--conv-tar", conv_tar, "Converted vs target-model trials")->required();
  asv->add_option("--genuine-tar", genuine_tar, "Genuine target test trials")->required();
  asv->add_option("--conv-src", conv_src, "Converted vs source-model trials")->required();

  // cm
  std::string bona_path, spoof_path;
  auto* cm = app.add_subcommand("cm", "Countermeasure EER");
  cm->add_option("--bona", bona_path, "Bona fide scores")->required();
  cm->add_option("--spoof", spoof_path, "Spoof/converted scores")->required();

  // tdcf
  std::string tdcf_bona, tdcf_spoof, asv_op_path, cost_model_path;
  auto* tdcf = app.add_subcommand("tdcf", "Minimum normalized tandem cost");
  tdcf->add_option("--bona", tdcf_bona, "CM bona fide scores")->required();
  tdcf->add_option("--spoof", tdcf_spoof, "CM spoof scores")->required();
  tdcf->add_option("--asv-op", asv_op_path,
                   "ASV operating point: p_miss_asv/p_fa_asv/p_fa_spoof_asv")
      ->required();
  tdcf->add_option("--cost-model", cost_model_path, "Cost model overrides");

  // wer
  std::string pairs_path;
  bool per_utterance = false;
  bool keep_case = false;
  bool keep_punctuation = false;
  auto* wer_cmd = app.add_subcommand("wer", "Word error rate");
  wer_cmd->add_option("--pairs", pairs_path, "Transcript pairs")->required();
  wer_cmd->add_flag("--per-utterance", per_utterance,
                    "Average per-utterance rates instead of pooling counts");
  wer_cmd->add_flag("--keep-case", keep_case, "Skip lowercasing");
  wer_cmd->add_flag("--keep-punctuation", keep_punctuation,
                    "Skip punctuation stripping");

  // stats
  std::string table_path, y_column;
  auto* stats = app.add_subcommand("stats", "Correlation and regression");
  stats->require_subcommand(1);
  auto* corr = stats->add_subcommand("corr", "Pearson correlations");
  corr->add_option("--table", table_path, "Numeric CSV with a header")->required();
  corr->add_option("--y", y_column, "Correlate only against this column");
  auto* regress = stats->add_subcommand("regress", "Multiple linear regression");
  regress->add_option("--table", table_path, "Numeric CSV with a header")->required();
  regress->add_option("--y", y_column,
                      "Response column (default: first column)");

  // fixture
  std::string spec_path, fixture_out;
  auto* fixture = app.add_subcommand("fixture", "Generate a synthetic campaign");
  fixture->add_option("--spec", spec_path, "Fixture spec JSON")->required();
  fixture->add_option("--out", fixture_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*campaign) {
      return run_campaign(manifest_path, out_dir, format);
    }

    if (*asv) {
      const AsvMetrics metrics = asv_assessment(
          load_scores(natural_tar, Label::kTarget),
          load_scores(natural_non, Label::kNontarget),
          load_scores(conv_tar, Label::kConverted),
          load_scores(genuine_tar, Label::kTarget),
          load_scores(conv_src, Label::kConverted));
      std::printf("threshold_natural %.6g\n", metrics.threshold_natural);
      std::printf("asv_eer_pct %.2f\n", metrics.eer_pct);
      std::printf("pfa_tar_pct %.2f\n", metrics.pfa_tar_pct);
      std::printf("pmiss_src_pct %.2f\n", metrics.pmiss_src_pct);
      return 0;
    }

    if (*cm) {
      const EerResult result = cm_eer(load_scores(bona_path, Label::kTarget),
                                      load_scores(spoof_path, Label::kSpoof));
      std::printf("cm_eer_pct %.2f\n", 100.0 * result.eer);
      std::printf("threshold %.6g\n", result.threshold);
      return 0;
    }

    if (*tdcf) {
      const auto op_values = load_key_values(asv_op_path);
      AsvOperatingPoint op;
      for (const char* key : {"p_miss_asv", "p_fa_asv", "p_fa_spoof_asv"}) {
        if (!op_values.count(key)) {
          throw Error(ErrorCode::kMissingField,
                      std::string("asv-op file lacks ") + key);
        }
      }
      op.p_miss_asv = op_values.at("p_miss_asv");
      op.p_fa_asv = op_values.at("p_fa_asv");
      op.p_fa_spoof_asv = op_values.at("p_fa_spoof_asv");
      const CostModel model = cost_model_path.empty()
                                  ? CostModel{}
                                  : cost_model_from_file(cost_model_path);
      const TandemConstants constants = tandem_constants(op, model);
      const TdcfResult result =
          min_tdcf(load_scores(tdcf_bona, Label::kTarget),
                   load_scores(tdcf_spoof, Label::kSpoof), constants);
      std::printf("c0 %.6g\nc1 %.6g\nc2 %.6g\n", constants.c0, constants.c1,
                  constants.c2);
      std::printf("min_tdcf_norm %.5f\n", result.min_tdcf_norm);
      std::printf("cm_threshold %.6g\n", result.cm_threshold);
      return 0;
    }

    if (*wer_cmd) {
      TranscriptNormalization normalization;
      normalization.lowercase = !keep_case;
      normalization.strip_punctuation = !keep_punctuation;
      const auto pairs = parse_transcripts(pairs_path, normalization);
      std::size_t subs = 0, dels = 0, ins = 0, words = 0;
      for (const auto& pair : pairs) {
        const AlignmentCounts counts = align(pair.reference, pair.hypothesis);
        subs += counts.substitutions;
        dels += counts.deletions;
        ins += counts.insertions;
        words += counts.reference_words;
      }
      const double value =
          wer(pairs, per_utterance ? WerAggregation::kPerUtteranceMean
                                   : WerAggregation::kPooled);
      std::printf("wer_pct %.2f\n", value);
      std::printf("substitutions %zu\ndeletions %zu\ninsertions %zu\n", subs,
                  dels, ins);
      std::printf("reference_words %zu\n", words);
      return 0;
    }

    if (*corr) {
      const NumericTable table = load_numeric_table(table_path);
      std::printf("x,y,n,r,p_value,p_bucket\n");
      const std::size_t y_index =
          y_column.empty() ? table.names.size() : column_index(table, y_column);
      for (std::size_t i = 0; i < table.names.size(); ++i) {
        for (std::size_t j = i + 1; j < table.names.size(); ++j) {
          if (y_index < table.names.size() && j != y_index && i != y_index) {
            continue;
          }
          try {
            const CorrelationResult r = pearson(table.columns[i], table.columns[j]);
            std::printf("%s,%s,%zu,%.6f,%.6g,%s\n", table.names[i].c_str(),
                        table.names[j].c_str(), r.n, r.r, r.p_two_sided,
                        p_value_bucket(r.p_two_sided).c_str());
          } catch (const Error& e) {
            std::printf("%s,%s,,,,%s\n", table.names[i].c_str(),
                        table.names[j].c_str(), to_string(e.code()));
          }
        }
      }
      return 0;
    }

    if (*regress) {
      const NumericTable table = load_numeric_table(table_path);
      const std::size_t y_index =
          y_column.empty() ? 0 : column_index(table, y_column);
      std::vector<std::vector<double>> predictors;
      std::vector<std::string> names;
      for (std::size_t i = 0; i < table.names.size(); ++i) {
        if (i == y_index) continue;
        predictors.push_back(table.columns[i]);
        names.push_back(table.names[i]);
      }
      const RegressionResult fit =
          ols_regress(predictors, table.columns[y_index]);
      std::printf("term,estimate,p_value\n");
      std::printf("intercept,%.6g,%.6g\n", fit.intercept, fit.intercept_p_value);
      for (std::size_t i = 0; i < names.size(); ++i) {
        std::printf("%s,%.6g,%.6g\n", names[i].c_str(), fit.coefficients[i],
                    fit.coef_p_values[i]);
      }
      std::printf("r_squared,%.6g,\n", fit.r_squared);
      std::printf("adjusted_r_squared,%.6g,\n", fit.adjusted_r_squared);
      std::printf("f_statistic,%.6g,\n", fit.f_statistic);
      std::printf("significance_f,%.6g,\n", fit.significance_f);
      return 0;
    }

    if (*fixture) {
      const auto spec = oracle::load_fixture_spec(spec_path);
      const auto generated = oracle::generate_fixture(spec, fixture_out);
      std::printf("manifest %s\n", generated.manifest_path.string().c_str());
      std::printf("expected_metrics %s\n",
                  generated.expected_metrics_path.string().c_str());
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
