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

#include "vceval/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "vceval/detection.hpp"
#include "vceval/embedding.hpp"
#include "vceval/version.hpp"
#include "vceval/wer.hpp"

namespace vceval {

std::optional<double> metric_value(const SystemMetrics& row,
                                   std::string_view metric) {
  if (metric == "asv_eer_pct") return row.asv_eer_pct;
  if (metric == "pfa_tar_pct") return row.pfa_tar_pct;
  if (metric == "pmiss_src_pct") return row.pmiss_src_pct;
  if (metric == "cosine") return row.cosine;
  if (metric == "cm_eer_pct") return row.cm_eer_pct;
  if (metric == "asr_wer_pct") return row.asr_wer_pct;
  if (metric == "min_tdcf_norm") return row.min_tdcf_norm;
  if (metric.rfind("mosnet_", 0) == 0) {
    const auto it = row.mosnet_scores.find(std::string(metric.substr(7)));
    if (it != row.mosnet_scores.end()) return it->second;
    return std::nullopt;
  }
  return std::nullopt;
}

std::vector<std::string> populated_metrics(std::span<const SystemMetrics> rows) {
  std::set<std::string> mosnet_tags;
  bool has[7] = {false, false, false, false, false, false, false};
  for (const auto& row : rows) {
    has[0] |= row.asv_eer_pct.has_value();
    has[1] |= row.pfa_tar_pct.has_value();
    has[2] |= row.pmiss_src_pct.has_value();
    has[3] |= row.cosine.has_value();
    has[4] |= row.cm_eer_pct.has_value();
    has[5] |= row.asr_wer_pct.has_value();
    has[6] |= row.min_tdcf_norm.has_value();
    for (const auto& [tag, value] : row.mosnet_scores) mosnet_tags.insert(tag);
  }
  std::vector<std::string> metrics;
  if (has[0]) metrics.push_back("asv_eer_pct");
  if (has[1]) metrics.push_back("pfa_tar_pct");
  if (has[2]) metrics.push_back("pmiss_src_pct");
  if (has[3]) metrics.push_back("cosine");
  if (has[4]) metrics.push_back("cm_eer_pct");
  for (const auto& tag : mosnet_tags) metrics.push_back("mosnet_" + tag);
  if (has[5]) metrics.push_back("asr_wer_pct");
  if (has[6]) metrics.push_back("min_tdcf_norm");
  return metrics;
}

MetricDirection default_metric_direction(std::string_view metric) {
  if (metric == "pmiss_src_pct" || metric == "asr_wer_pct") {
    return MetricDirection::kLowerBetter;
  }
  return MetricDirection::kHigherBetter;
}

std::set<std::string> rank_and_highlight(
    const std::map<std::string, double>& values, MetricDirection direction,
    std::size_t k) {
  if (values.empty()) {
    throw Error(ErrorCode::kEmptyTable, "no values to rank");
  }
  std::vector<double> sorted;
  sorted.reserve(values.size());
  for (const auto& [team, value] : values) sorted.push_back(value);
  if (direction == MetricDirection::kHigherBetter) {
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  } else {
    std::sort(sorted.begin(), sorted.end());
  }
  const double boundary = sorted[std::min(k, sorted.size()) - 1];

  std::set<std::string> top;
  for (const auto& [team, value] : values) {
    const bool in = direction == MetricDirection::kHigherBetter
                        ? value >= boundary
                        : value <= boundary;
    if (in) top.insert(team);
  }
  return top;
}

CorrelationTable correlation_table(
    const std::vector<std::pair<std::string, std::map<std::string, double>>>&
        objective,
    const std::vector<std::pair<std::string, std::map<std::string, double>>>&
        subjective) {
  CorrelationTable table;
  for (const auto& [metric, values] : objective) table.metrics.push_back(metric);

  for (const auto& [rating, rating_values] : subjective) {
    CorrelationTable::Row row;
    row.rating = rating;
    double best_abs_r = -1.0;
    for (const auto& [metric, metric_values] : objective) {
      CorrelationCell cell;
      std::vector<double> x;
      std::vector<double> y;
      for (const auto& [team, value] : metric_values) {
        const auto it = rating_values.find(team);
        if (it == rating_values.end()) continue;
        x.push_back(value);
        y.push_back(it->second);
      }
      if (x.size() < 3) {
        cell.error = "TooFewSamples: " + std::to_string(x.size()) +
                     " common teams for " + metric;
      } else {
        try {
          cell.result = pearson(x, y);
        } catch (const Error& e) {
          cell.error = e.what();
        }
      }
      if (cell.result && std::abs(cell.result->r) > best_abs_r) {
        best_abs_r = std::abs(cell.result->r);
        row.best_metric = row.cells.size();
      }
      row.cells.push_back(std::move(cell));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<CorrelationTable> language_breakdown(
    std::span<const SystemMetrics> language_rows,
    const std::vector<std::string>& metrics, const std::string& group,
    const std::map<std::string, std::map<std::string, SubjectiveValue>>&
        ratings) {
  std::set<std::string> languages;
  for (const auto& row : language_rows) {
    if (!row.language) continue;
    languages.insert(canonical_language(*row.language));
  }

  std::vector<CorrelationTable> tables;
  for (const auto& language : languages) {
    std::vector<std::pair<std::string, std::map<std::string, double>>> objective;
    for (const auto& metric : metrics) {
      std::map<std::string, double> values;
      for (const auto& row : language_rows) {
        if (!row.language || *row.language != language) continue;
        if (const auto value = metric_value(row, metric)) {
          values[row.team_id] = *value;
        }
      }
      if (!values.empty()) objective.emplace_back(metric, std::move(values));
    }

    std::vector<std::pair<std::string, std::map<std::string, double>>> subjective;
    for (const auto& [rating, team_values] : ratings) {
      std::map<std::string, double> values;
      for (const auto& [team, value] : team_values) {
        const auto it = value.by_language.find(language);
        if (it != value.by_language.end()) values[team] = it->second;
      }
      if (!values.empty()) subjective.emplace_back(rating, std::move(values));
    }

    if (objective.empty() || subjective.empty()) continue;
    CorrelationTable table = correlation_table(objective, subjective);
    table.group = group;
    table.language = language;
    tables.push_back(std::move(table));
  }
  return tables;
}

std::vector<RegressionEntry> regression_table(
    std::span<const SystemMetrics> rows,
    const std::vector<std::string>& predictor_metrics, const std::string& group,
    const std::map<std::string, std::map<std::string, double>>& targets) {
  // Index rows by team for the pooled (language-free) slice.
  std::map<std::string, const SystemMetrics*> by_team;
  for (const auto& row : rows) {
    if (!row.language) by_team[row.team_id] = &row;
  }

  std::vector<RegressionEntry> entries;
  for (const auto& [rating, team_values] : targets) {
    RegressionEntry entry;
    entry.group = group;
    entry.rating = rating;
    entry.predictors = predictor_metrics;

    std::vector<std::vector<double>> columns(predictor_metrics.size());
    std::vector<double> y;
    for (const auto& [team, target_value] : team_values) {
      const auto it = by_team.find(team);
      if (it == by_team.end()) continue;
      std::vector<double> row_values;
      bool complete = true;
      for (const auto& metric : predictor_metrics) {
        const auto value = metric_value(*it->second, metric);
        if (!value) {
          complete = false;
          break;
        }
        row_values.push_back(*value);
      }
      if (!complete) continue;
      for (std::size_t k = 0; k < row_values.size(); ++k) {
        columns[k].push_back(row_values[k]);
      }
      y.push_back(target_value);
      entry.teams.push_back(team);
    }

    if (y.size() <= predictor_metrics.size() + 1) {
      entry.error = "TooFewSamples: " + std::to_string(y.size()) +
                    " complete teams for " + std::to_string(
                        predictor_metrics.size()) + " predictors";
    } else {
      try {
        entry.result = ols_regress(columns, y, /*include_intercept=*/true);
      } catch (const Error& e) {
        entry.error = e.what();
      }
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

// ---------------------------------------------------------------------------
// evaluate_campaign
// ---------------------------------------------------------------------------

namespace {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  static const char* kDigits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[value & 0xf];
    value >>= 4;
  }
  return out;
}

// File cache: parse each input once, digest everything actually read.
class InputCache {
 public:
  explicit InputCache(std::map<std::string, std::string>* digests)
      : digests_(digests) {}

  const std::vector<double>& scores(const std::filesystem::path& path,
                                    Label default_label) {
    const std::string key = path.string();
    auto it = scores_.find(key);
    if (it != scores_.end()) return it->second;
    digest(path);
    const auto trials = parse_trial_scores(path, default_label);
    std::vector<double> values;
    values.reserve(trials.size());
    for (const auto& trial : trials) values.push_back(trial.score);
    return scores_.emplace(key, std::move(values)).first->second;
  }

  const std::vector<Embedding>& embeddings(const std::filesystem::path& path) {
    const std::string key = path.string();
    auto it = embeddings_.find(key);
    if (it != embeddings_.end()) return it->second;
    digest(path);
    return embeddings_.emplace(key, parse_embeddings(path)).first->second;
  }

  const std::vector<TranscriptPair>& transcripts(
      const std::filesystem::path& path) {
    const std::string key = path.string();
    auto it = transcripts_.find(key);
    if (it != transcripts_.end()) return it->second;
    digest(path);
    return transcripts_.emplace(key, parse_transcripts(path)).first->second;
  }

  const std::vector<std::pair<std::string, double>>& utterance_scores(
      const std::filesystem::path& path) {
    const std::string key = path.string();
    auto it = utterance_scores_.find(key);
    if (it != utterance_scores_.end()) return it->second;
    digest(path);
    return utterance_scores_.emplace(key, parse_utterance_scores(path))
        .first->second;
  }

  const ProjectionMatrix* projection(const std::filesystem::path& path) {
    const std::string key = path.string();
    auto it = projections_.find(key);
    if (it != projections_.end()) return &it->second;
    digest(path);
    return &projections_.emplace(key, load_projection_matrix(path)).first->second;
  }

 private:
  void digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::kIoFailure, "file missing: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    (*digests_)[path.string()] = hex64(fnv1a64(buffer.str()));
  }

  std::map<std::string, std::string>* digests_;
  std::map<std::string, std::vector<double>> scores_;
  std::map<std::string, std::vector<Embedding>> embeddings_;
  std::map<std::string, std::vector<TranscriptPair>> transcripts_;
  std::map<std::string, std::vector<std::pair<std::string, double>>>
      utterance_scores_;
  std::map<std::string, ProjectionMatrix> projections_;
};

CostModel cost_model_from_manifest(const std::map<std::string, double>& keys) {
  CostModel model;
  auto get = [&](const char* key) -> std::optional<double> {
    const auto it = keys.find(key);
    if (it == keys.end()) return std::nullopt;
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

// Shared per-task context: the natural-data operating point and the shared
// score sets, each loaded at most once.
struct TaskContext {
  const std::vector<double>* natural_target = nullptr;
  const std::vector<double>* natural_nontarget = nullptr;
  const std::vector<double>* genuine_target = nullptr;
  const std::vector<double>* cm_bona = nullptr;
  const std::vector<Embedding>* reference_embeddings = nullptr;
  const ProjectionMatrix* projection = nullptr;
  std::optional<double> threshold;
  std::optional<double> natural_eer;
};

}  // namespace

CampaignReport evaluate_campaign(const EvaluationManifest& manifest) {
  if (manifest.team_ids.empty()) {
    throw Error(ErrorCode::kNoTeams, "manifest declares no teams");
  }
  bool any_inputs = false;
  for (const auto& task : manifest.tasks) {
    any_inputs |= !task.teams.empty();
  }
  if (!any_inputs) {
    throw Error(ErrorCode::kNoTeams, "no task declares any team inputs");
  }

  CampaignReport report;
  report.tool_version = kVersion;
  report.cost_model = cost_model_from_manifest(manifest.cost_model);

  InputCache cache(&report.input_digests);

  auto direction_for = [&](const std::string& metric) {
    const auto it = manifest.metric_directions.find(metric);
    if (it == manifest.metric_directions.end()) {
      return default_metric_direction(metric);
    }
    return it->second == "lower_better" ? MetricDirection::kLowerBetter
                                        : MetricDirection::kHigherBetter;
  };

  for (const auto& task : manifest.tasks) {
    TaskReport task_report;
    task_report.task_id = task.id;

    auto diagnose = [&](const std::string& team, const std::string& metric,
                        const std::string& message) {
      report.diagnostics.push_back({task.id, team, metric, message});
    };

    TaskContext ctx;
    if (task.asv_natural_target && task.asv_natural_nontarget) {
      try {
        ctx.natural_target = &cache.scores(*task.asv_natural_target, Label::kTarget);
        ctx.natural_nontarget =
            &cache.scores(*task.asv_natural_nontarget, Label::kNontarget);
        const EerResult natural =
            eer(det_curve(*ctx.natural_target, *ctx.natural_nontarget));
        ctx.threshold = natural.threshold;
        ctx.natural_eer = natural.eer;
        task_report.natural_threshold = natural.threshold;
        task_report.natural_eer_pct = 100.0 * natural.eer;
      } catch (const Error& e) {
        ctx.natural_target = nullptr;
        ctx.natural_nontarget = nullptr;
        diagnose("-", "asv_threshold", e.what());
      }
    }
    if (task.asv_genuine_target) {
      try {
        ctx.genuine_target = &cache.scores(*task.asv_genuine_target, Label::kTarget);
      } catch (const Error& e) {
        diagnose("-", "asv_eer_pct", e.what());
      }
    }
    if (task.cm_bona_fide) {
      try {
        ctx.cm_bona = &cache.scores(*task.cm_bona_fide, Label::kTarget);
      } catch (const Error& e) {
        diagnose("-", "cm_eer_pct", e.what());
      }
    }
    if (task.reference_embeddings) {
      try {
        ctx.reference_embeddings = &cache.embeddings(*task.reference_embeddings);
      } catch (const Error& e) {
        diagnose("-", "cosine", e.what());
      }
    }
    if (task.projection_matrix) {
      try {
        ctx.projection = cache.projection(*task.projection_matrix);
      } catch (const Error& e) {
        diagnose("-", "cosine", e.what());
      }
    }

    auto compute_row = [&](const std::string& team, const TeamInputs& inputs,
                           const std::optional<std::string>& language) {
      SystemMetrics row;
      row.team_id = team;
      row.task_id = task.id;
      row.language = language;
      const std::string tag = language ? team + "/" + *language : team;

      const std::vector<double>* conv_tar = nullptr;
      if (inputs.asv_converted_vs_target) {
        try {
          conv_tar = &cache.scores(*inputs.asv_converted_vs_target,
                                   Label::kConverted);
        } catch (const Error& e) {
          diagnose(tag, "asv_eer_pct", e.what());
        }
      }

      if (conv_tar != nullptr && ctx.genuine_target != nullptr) {
        try {
          row.asv_eer_pct =
              100.0 * eer(det_curve(*ctx.genuine_target, *conv_tar)).eer;
        } catch (const Error& e) {
          diagnose(tag, "asv_eer_pct", e.what());
        }
      }
      if (conv_tar != nullptr && ctx.threshold) {
        try {
          row.pfa_tar_pct = 100.0 * fixed_threshold_rate(
                                        *conv_tar, *ctx.threshold,
                                        RateDirection::kFaAbove);
        } catch (const Error& e) {
          diagnose(tag, "pfa_tar_pct", e.what());
        }
      }
      if (inputs.asv_converted_vs_source && ctx.threshold) {
        try {
          const auto& conv_src =
              cache.scores(*inputs.asv_converted_vs_source, Label::kConverted);
          row.pmiss_src_pct = 100.0 * fixed_threshold_rate(
                                          conv_src, *ctx.threshold,
                                          RateDirection::kMissAtOrBelow);
        } catch (const Error& e) {
          diagnose(tag, "pmiss_src_pct", e.what());
        }
      }

      if (inputs.embeddings && ctx.reference_embeddings != nullptr) {
        try {
          const auto& converted = cache.embeddings(*inputs.embeddings);
          row.cosine = system_cosine(converted, *ctx.reference_embeddings,
                                     ctx.projection);
        } catch (const Error& e) {
          diagnose(tag, "cosine", e.what());
        }
      }

      const std::vector<double>* cm_scores = nullptr;
      if (inputs.cm_scores && ctx.cm_bona != nullptr) {
        try {
          cm_scores = &cache.scores(*inputs.cm_scores, Label::kSpoof);
          row.cm_eer_pct = 100.0 * cm_eer(*ctx.cm_bona, *cm_scores).eer;
        } catch (const Error& e) {
          cm_scores = nullptr;
          diagnose(tag, "cm_eer_pct", e.what());
        }
      }

      for (const auto& [mos_tag, path] : inputs.mos_predictions) {
        try {
          const auto& predictions = cache.utterance_scores(path);
          double sum = 0.0;
          for (const auto& [utt, value] : predictions) sum += value;
          const double mean_mos = sum / static_cast<double>(predictions.size());
          if (mean_mos < 1.0 || mean_mos > 5.0) {
            diagnose(tag, "mosnet_" + mos_tag,
                     "mean predicted MOS " + std::to_string(mean_mos) +
                         " outside [1, 5]");
          } else {
            row.mosnet_scores[mos_tag] = mean_mos;
          }
        } catch (const Error& e) {
          diagnose(tag, "mosnet_" + mos_tag, e.what());
        }
      }

      if (inputs.transcripts) {
        try {
          row.asr_wer_pct = wer(cache.transcripts(*inputs.transcripts));
        } catch (const Error& e) {
          diagnose(tag, "asr_wer_pct", e.what());
        }
      }

      if (cm_scores != nullptr && conv_tar != nullptr && ctx.threshold &&
          ctx.natural_target != nullptr && ctx.natural_nontarget != nullptr) {
        try {
          AsvOperatingPoint op;
          op.p_miss_asv = fixed_threshold_rate(*ctx.natural_target,
                                               *ctx.threshold,
                                               RateDirection::kMissAtOrBelow);
          op.p_fa_asv = fixed_threshold_rate(*ctx.natural_nontarget,
                                             *ctx.threshold,
                                             RateDirection::kFaAbove);
          op.p_fa_spoof_asv = fixed_threshold_rate(*conv_tar, *ctx.threshold,
                                                   RateDirection::kFaAbove);
          const TandemConstants constants =
              tandem_constants(op, report.cost_model);
          row.min_tdcf_norm =
              min_tdcf(*ctx.cm_bona, *cm_scores, constants).min_tdcf_norm;
        } catch (const Error& e) {
          diagnose(tag, "min_tdcf_norm", e.what());
        }
      }
      return row;
    };

    // task.teams is a sorted map, so rows come out ordered by team id.
    for (const auto& [team, inputs] : task.teams) {
      task_report.rows.push_back(compute_row(team, inputs, std::nullopt));
      const auto lang_it = task.team_languages.find(team);
      if (lang_it != task.team_languages.end()) {
        for (const auto& [language, lang_inputs] : lang_it->second) {
          task_report.language_rows.push_back(
              compute_row(team, lang_inputs, language));
        }
      }
    }

    task_report.metric_columns = populated_metrics(task_report.rows);

    for (const auto& metric : task_report.metric_columns) {
      std::map<std::string, double> values;
      for (const auto& row : task_report.rows) {
        if (const auto value = metric_value(row, metric)) {
          values[row.team_id] = *value;
        }
      }
      if (values.empty()) continue;
      task_report.highlights[metric] =
          rank_and_highlight(values, direction_for(metric));
    }

    // Correlation, per-language and regression tables per listener group.
    for (const auto& [group, group_scores] : manifest.subjective_scores) {
      const auto task_scores = group_scores.find(task.id);
      if (task_scores == group_scores.end()) continue;

      std::vector<std::pair<std::string, std::map<std::string, double>>> objective;
      for (const auto& metric : task_report.metric_columns) {
        std::map<std::string, double> values;
        for (const auto& row : task_report.rows) {
          if (const auto value = metric_value(row, metric)) {
            values[row.team_id] = *value;
          }
        }
        if (!values.empty()) objective.emplace_back(metric, std::move(values));
      }

      std::vector<std::pair<std::string, std::map<std::string, double>>> subjective;
      std::map<std::string, std::map<std::string, double>> regression_targets;
      for (const auto& [rating, team_values] : task_scores->second) {
        std::map<std::string, double> pooled;
        for (const auto& [team, value] : team_values) {
          if (value.pooled) pooled[team] = *value.pooled;
        }
        if (!pooled.empty()) {
          regression_targets[rating] = pooled;
          subjective.emplace_back(rating, std::move(pooled));
        }
      }

      if (!objective.empty() && !subjective.empty()) {
        CorrelationTable table = correlation_table(objective, subjective);
        table.group = group;
        task_report.correlations.push_back(std::move(table));
        for (auto& row : task_report.correlations.back().rows) {
          for (std::size_t c = 0; c < row.cells.size(); ++c) {
            if (!row.cells[c].error.empty()) {
              diagnose("-", "correlation/" + group + "/" + row.rating,
                       row.cells[c].error);
            }
          }
        }
      }

      if (!task_report.language_rows.empty()) {
        auto tables = language_breakdown(task_report.language_rows,
                                         task_report.metric_columns, group,
                                         task_scores->second);
        for (auto& table : tables) {
          task_report.correlations.push_back(std::move(table));
        }
      }

      if (!regression_targets.empty()) {
        auto entries =
            regression_table(task_report.rows, default_regression_predictors(),
                             group, regression_targets);
        for (auto& entry : entries) {
          if (!entry.error.empty()) {
            diagnose("-", "regression/" + group + "/" + entry.rating,
                     entry.error);
          }
          task_report.regressions.push_back(std::move(entry));
        }
      }
    }

    report.tasks.push_back(std::move(task_report));
  }

  return report;
}

}  // namespace vceval
