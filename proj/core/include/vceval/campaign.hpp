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

#ifndef VCEVAL_CAMPAIGN_HPP_
#define VCEVAL_CAMPAIGN_HPP_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vceval/score_io.hpp"
#include "vceval/stats.hpp"
#include "vceval/tandem.hpp"

namespace vceval {

// One row of the objective-metrics table: every metric one team obtained on
// one task (or one language slice of a task).  Unset fields are absent
// cells: the inputs were not declared or failed, never silently zero.
struct SystemMetrics {
  std::string team_id;
  std::string task_id;
  std::optional<std::string> language;
  std::optional<double> asv_eer_pct;
  std::optional<double> pfa_tar_pct;
  std::optional<double> pmiss_src_pct;
  std::optional<double> cosine;
  std::optional<double> cm_eer_pct;
  std::map<std::string, double> mosnet_scores;  // tag -> mean predicted MOS
  std::optional<double> asr_wer_pct;
  std::optional<double> min_tdcf_norm;
};

// Canonical metric keys: asv_eer_pct, pfa_tar_pct, pmiss_src_pct, cosine,
// cm_eer_pct, mosnet_<tag>, asr_wer_pct, min_tdcf_norm.
std::optional<double> metric_value(const SystemMetrics& row,
                                   std::string_view metric);

// Metric keys of `rows` that are populated at least once, in display order.
std::vector<std::string> populated_metrics(std::span<const SystemMetrics> rows);

enum class MetricDirection { kHigherBetter, kLowerBetter };

// Ranking defaults: Pmiss and WER rank lower-better, everything else
// higher-better (EER-style metrics rank spoofing effectiveness, so high is
// "top").  Overridable per metric through the manifest.
MetricDirection default_metric_direction(std::string_view metric);

// Teams whose value ties or beats the k-th best for the direction; boundary
// ties are all included, so the set may exceed k.
std::set<std::string> rank_and_highlight(
    const std::map<std::string, double>& values, MetricDirection direction,
    std::size_t k = 5);

struct CorrelationCell {
  std::optional<CorrelationResult> result;
  std::string error;  // set when the cell was skipped (e.g., too few teams)
};

struct CorrelationTable {
  std::string group;                    // listener group
  std::optional<std::string> language;  // set for per-language breakdowns
  std::vector<std::string> metrics;     // column order
  struct Row {
    std::string rating;
    std::vector<CorrelationCell> cells;
    std::optional<std::size_t> best_metric;  // index of the max-|r| cell
  };
  std::vector<Row> rows;
};

// One correlation per (subjective rating, objective metric) over the teams
// present on both sides.  Cells with fewer than 3 common teams report a
// diagnostic instead of a value.
CorrelationTable correlation_table(
    const std::vector<std::pair<std::string, std::map<std::string, double>>>&
        objective,
    const std::vector<std::pair<std::string, std::map<std::string, double>>>&
        subjective);

// Per-language correlation tables from language-annotated metric rows and
// per-team-per-language subjective values.
std::vector<CorrelationTable> language_breakdown(
    std::span<const SystemMetrics> language_rows,
    const std::vector<std::string>& metrics, const std::string& group,
    const std::map<std::string, std::map<std::string, SubjectiveValue>>&
        ratings);

struct RegressionEntry {
  std::string group;
  std::string rating;
  std::optional<std::string> language;
  std::vector<std::string> predictors;
  std::vector<std::string> teams;  // the rows the model was fitted on
  std::optional<RegressionResult> result;
  std::string error;  // set when the fit was skipped or failed
};

inline const std::vector<std::string>& default_regression_predictors() {
  static const std::vector<std::string> kPredictors = {
      "mosnet_asvspoof19", "asr_wer_pct", "asv_eer_pct", "cm_eer_pct"};
  return kPredictors;
}

// One fitted model per subjective rating, over the teams that have the
// target and every predictor.
std::vector<RegressionEntry> regression_table(
    std::span<const SystemMetrics> rows,
    const std::vector<std::string>& predictor_metrics, const std::string& group,
    const std::map<std::string, std::map<std::string, double>>& targets);

struct Diagnostic {
  std::string task_id;
  std::string team_id;  // "-" for task-level problems
  std::string metric;
  std::string message;
};

struct TaskReport {
  std::string task_id;
  std::optional<double> natural_eer_pct;
  std::optional<double> natural_threshold;
  std::vector<SystemMetrics> rows;           // pooled, ordered by team id
  std::vector<SystemMetrics> language_rows;  // ordered by (team id, language)
  std::vector<std::string> metric_columns;
  std::map<std::string, std::set<std::string>> highlights;  // metric -> teams
  std::vector<CorrelationTable> correlations;
  std::vector<RegressionEntry> regressions;
};

struct CampaignReport {
  std::string tool_version;
  CostModel cost_model;
  std::vector<TaskReport> tasks;
  std::vector<Diagnostic> diagnostics;
  std::map<std::string, std::string> input_digests;  // path -> fnv1a-64 hex
};

// Runs the whole evaluation described by the manifest.  Per-cell failures
// become diagnostics and leave the cell absent; the run keeps going.
CampaignReport evaluate_campaign(const EvaluationManifest& manifest);

enum class ReportFormat { kCsv, kJson, kMarkdown };

// Writes the report under out_dir and returns the files written (sorted).
// Byte-identical across runs on identical inputs.
std::vector<std::filesystem::path> emit_report(
    const CampaignReport& report, ReportFormat format,
    const std::filesystem::path& out_dir);

// The metrics table in the report's CSV layout (also the layout of the
// published-table fixtures shipped under data/).
std::string format_metrics_csv(std::span<const SystemMetrics> rows);

}  // namespace vceval

#endif  // VCEVAL_CAMPAIGN_HPP_
