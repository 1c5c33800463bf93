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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "vceval/campaign.hpp"

namespace vceval {

namespace {

std::string fmt(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

std::string fmt_g(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

// Report precision: two decimals for percentages, cosine and MOS, five for
// the normalized t-DCF.
int metric_decimals(std::string_view metric) {
  return metric == "min_tdcf_norm" ? 5 : 2;
}

std::string csv_quote(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  }
  out << content;
}

std::string metrics_table_csv(std::span<const SystemMetrics> rows,
                              bool with_language) {
  const auto metrics = populated_metrics(rows);
  std::string csv = "team";
  if (with_language) csv += ",language";
  for (const auto& metric : metrics) {
    csv += ',';
    csv += metric;
  }
  csv += '\n';
  for (const auto& row : rows) {
    csv += row.team_id;
    if (with_language) {
      csv += ',';
      csv += row.language.value_or("");
    }
    for (const auto& metric : metrics) {
      csv += ',';
      if (const auto value = metric_value(row, metric)) {
        csv += fmt(*value, metric_decimals(metric));
      }
    }
    csv += '\n';
  }
  return csv;
}

std::string correlation_cell_text(const CorrelationCell& cell) {
  if (!cell.result) return "--";
  return fmt(cell.result->r, 2) + " (" + p_value_bucket(cell.result->p_two_sided) +
         ")";
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

std::vector<std::filesystem::path> emit_csv(const CampaignReport& report,
                                            const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;

  for (const auto& task : report.tasks) {
    {
      const auto path = dir / ("metrics_" + task.task_id + ".csv");
      write_file(path, metrics_table_csv(task.rows, false));
      files.push_back(path);
    }
    if (!task.language_rows.empty()) {
      const auto path = dir / ("metrics_" + task.task_id + "_languages.csv");
      write_file(path, metrics_table_csv(task.language_rows, true));
      files.push_back(path);
    }
    {
      std::string csv = "metric,team\n";
      for (const auto& metric : task.metric_columns) {
        const auto it = task.highlights.find(metric);
        if (it == task.highlights.end()) continue;
        for (const auto& team : it->second) {
          csv += metric + "," + team + "\n";
        }
      }
      const auto path = dir / ("highlights_" + task.task_id + ".csv");
      write_file(path, csv);
      files.push_back(path);
    }
    if (!task.correlations.empty()) {
      std::string csv = "group,language,rating,metric,n,r,p_value,p_bucket,best\n";
      for (const auto& table : task.correlations) {
        for (const auto& row : table.rows) {
          for (std::size_t c = 0; c < row.cells.size(); ++c) {
            const auto& cell = row.cells[c];
            csv += table.group + "," + table.language.value_or("") + "," +
                   row.rating + "," + table.metrics[c] + ",";
            if (cell.result) {
              csv += std::to_string(cell.result->n) + "," +
                     fmt_g(cell.result->r) + "," + fmt_g(cell.result->p_two_sided) +
                     "," + p_value_bucket(cell.result->p_two_sided) + "," +
                     (row.best_metric && *row.best_metric == c ? "1" : "0");
            } else {
              csv += ",,," + csv_quote(cell.error);
            }
            csv += '\n';
          }
        }
      }
      const auto path = dir / ("correlations_" + task.task_id + ".csv");
      write_file(path, csv);
      files.push_back(path);
    }
    if (!task.regressions.empty()) {
      std::string csv =
          "group,rating,term,estimate,p_value,r_squared,adjusted_r_squared,"
          "f_statistic,significance_f,n_teams,note\n";
      for (const auto& entry : task.regressions) {
        if (!entry.result) {
          csv += entry.group + "," + entry.rating + ",model,,,,,,," +
                 std::to_string(entry.teams.size()) + "," +
                 csv_quote(entry.error) + "\n";
          continue;
        }
        const auto& r = *entry.result;
        const std::string stats = fmt_g(r.r_squared) + "," +
                                  fmt_g(r.adjusted_r_squared) + "," +
                                  fmt_g(r.f_statistic) + "," +
                                  fmt_g(r.significance_f) + "," +
                                  std::to_string(entry.teams.size()) + ",";
        csv += entry.group + "," + entry.rating + ",intercept," +
               fmt_g(r.intercept) + "," + fmt_g(r.intercept_p_value) + "," +
               stats + "\n";
        for (std::size_t k = 0; k < entry.predictors.size(); ++k) {
          csv += entry.group + "," + entry.rating + "," + entry.predictors[k] +
                 "," + fmt_g(r.coefficients[k]) + "," +
                 fmt_g(r.coef_p_values[k]) + "," + stats + "\n";
        }
      }
      const auto path = dir / ("regressions_" + task.task_id + ".csv");
      write_file(path, csv);
      files.push_back(path);
    }
  }

  {
    std::string csv = "task,team,metric,message\n";
    for (const auto& d : report.diagnostics) {
      csv += d.task_id + "," + d.team_id + "," + d.metric + "," +
             csv_quote(d.message) + "\n";
    }
    const auto path = dir / "diagnostics.csv";
    write_file(path, csv);
    files.push_back(path);
  }
  {
    std::string csv = "key,value\n";
    csv += "tool_version," + report.tool_version + "\n";
    csv += "cost_model.c_miss," + fmt_g(report.cost_model.c_miss) + "\n";
    csv += "cost_model.c_fa," + fmt_g(report.cost_model.c_fa) + "\n";
    csv += "cost_model.c_fa_spoof," + fmt_g(report.cost_model.c_fa_spoof) + "\n";
    csv += "cost_model.pi_spoof," + fmt_g(report.cost_model.pi_spoof) + "\n";
    csv += "cost_model.pi_tar," + fmt_g(report.cost_model.pi_tar) + "\n";
    csv += "cost_model.pi_non," + fmt_g(report.cost_model.pi_non) + "\n";
    for (const auto& [path, digest] : report.input_digests) {
      csv += "digest:" + csv_quote(path) + "," + digest + "\n";
    }
    const auto path = dir / "provenance.csv";
    write_file(path, csv);
    files.push_back(path);
  }
  return files;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

nlohmann::ordered_json metrics_row_json(const SystemMetrics& row) {
  nlohmann::ordered_json node;
  node["team"] = row.team_id;
  if (row.language) node["language"] = *row.language;
  auto put = [&](const char* key, const std::optional<double>& value) {
    if (value) node[key] = *value;
  };
  put("asv_eer_pct", row.asv_eer_pct);
  put("pfa_tar_pct", row.pfa_tar_pct);
  put("pmiss_src_pct", row.pmiss_src_pct);
  put("cosine", row.cosine);
  put("cm_eer_pct", row.cm_eer_pct);
  for (const auto& [tag, value] : row.mosnet_scores) {
    node["mosnet_" + tag] = value;
  }
  put("asr_wer_pct", row.asr_wer_pct);
  put("min_tdcf_norm", row.min_tdcf_norm);
  return node;
}

std::vector<std::filesystem::path> emit_json(const CampaignReport& report,
                                             const std::filesystem::path& dir) {
  nlohmann::ordered_json doc;
  doc["tool_version"] = report.tool_version;
  doc["cost_model"] = {{"c_miss", report.cost_model.c_miss},
                       {"c_fa", report.cost_model.c_fa},
                       {"c_fa_spoof", report.cost_model.c_fa_spoof},
                       {"pi_spoof", report.cost_model.pi_spoof},
                       {"pi_tar", report.cost_model.pi_tar},
                       {"pi_non", report.cost_model.pi_non}};

  doc["tasks"] = nlohmann::ordered_json::array();
  for (const auto& task : report.tasks) {
    nlohmann::ordered_json node;
    node["id"] = task.task_id;
    if (task.natural_eer_pct) node["natural_eer_pct"] = *task.natural_eer_pct;
    if (task.natural_threshold) {
      node["natural_threshold"] = *task.natural_threshold;
    }
    node["metrics"] = nlohmann::ordered_json::array();
    for (const auto& row : task.rows) node["metrics"].push_back(metrics_row_json(row));
    if (!task.language_rows.empty()) {
      node["metrics_by_language"] = nlohmann::ordered_json::array();
      for (const auto& row : task.language_rows) {
        node["metrics_by_language"].push_back(metrics_row_json(row));
      }
    }
    node["highlights"] = nlohmann::ordered_json::object();
    for (const auto& metric : task.metric_columns) {
      const auto it = task.highlights.find(metric);
      if (it == task.highlights.end()) continue;
      node["highlights"][metric] = it->second;
    }
    node["correlations"] = nlohmann::ordered_json::array();
    for (const auto& table : task.correlations) {
      nlohmann::ordered_json tnode;
      tnode["group"] = table.group;
      if (table.language) tnode["language"] = *table.language;
      tnode["metrics"] = table.metrics;
      tnode["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : table.rows) {
        nlohmann::ordered_json rnode;
        rnode["rating"] = row.rating;
        rnode["cells"] = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < row.cells.size(); ++c) {
          nlohmann::ordered_json cnode;
          cnode["metric"] = table.metrics[c];
          if (row.cells[c].result) {
            cnode["r"] = row.cells[c].result->r;
            cnode["p_value"] = row.cells[c].result->p_two_sided;
            cnode["p_bucket"] = p_value_bucket(row.cells[c].result->p_two_sided);
            cnode["n"] = row.cells[c].result->n;
            cnode["best"] = row.best_metric && *row.best_metric == c;
          } else {
            cnode["error"] = row.cells[c].error;
          }
          rnode["cells"].push_back(cnode);
        }
        tnode["rows"].push_back(rnode);
      }
      node["correlations"].push_back(tnode);
    }
    node["regressions"] = nlohmann::ordered_json::array();
    for (const auto& entry : task.regressions) {
      nlohmann::ordered_json enode;
      enode["group"] = entry.group;
      enode["rating"] = entry.rating;
      if (entry.language) enode["language"] = *entry.language;
      enode["predictors"] = entry.predictors;
      enode["teams"] = entry.teams;
      if (entry.result) {
        enode["intercept"] = entry.result->intercept;
        enode["intercept_p_value"] = entry.result->intercept_p_value;
        enode["coefficients"] = entry.result->coefficients;
        enode["coef_p_values"] = entry.result->coef_p_values;
        enode["r_squared"] = entry.result->r_squared;
        enode["adjusted_r_squared"] = entry.result->adjusted_r_squared;
        enode["f_statistic"] = entry.result->f_statistic;
        enode["significance_f"] = entry.result->significance_f;
      } else {
        enode["error"] = entry.error;
      }
      node["regressions"].push_back(enode);
    }
    doc["tasks"].push_back(node);
  }

  doc["diagnostics"] = nlohmann::ordered_json::array();
  for (const auto& d : report.diagnostics) {
    doc["diagnostics"].push_back({{"task", d.task_id},
                                  {"team", d.team_id},
                                  {"metric", d.metric},
                                  {"message", d.message}});
  }
  doc["input_digests"] = report.input_digests;

  const auto path = dir / "report.json";
  write_file(path, doc.dump(2) + "\n");
  return {path};
}

// ---------------------------------------------------------------------------
// Markdown
// ---------------------------------------------------------------------------

std::vector<std::filesystem::path> emit_markdown(
    const CampaignReport& report, const std::filesystem::path& dir) {
  std::string md = "# Objective evaluation report\n\n";
  md += "tool version: " + report.tool_version + "\n\n";

  for (const auto& task : report.tasks) {
    md += "## Task " + task.task_id + "\n\n";
    if (task.natural_eer_pct) {
      md += "Natural-data ASV: EER " + fmt(*task.natural_eer_pct, 2) +
            "%, threshold " + fmt_g(*task.natural_threshold) + "\n\n";
    }

    md += "### Objective metrics\n\n";
    md += "Top cells per metric (including ties) are bold.\n\n";
    md += "| team |";
    for (const auto& metric : task.metric_columns) md += " " + metric + " |";
    md += "\n|---|";
    for (std::size_t i = 0; i < task.metric_columns.size(); ++i) md += "---|";
    md += "\n";
    for (const auto& row : task.rows) {
      md += "| " + row.team_id + " |";
      for (const auto& metric : task.metric_columns) {
        const auto value = metric_value(row, metric);
        std::string cell = value ? fmt(*value, metric_decimals(metric)) : "--";
        const auto it = task.highlights.find(metric);
        if (value && it != task.highlights.end() && it->second.count(row.team_id)) {
          cell = "**" + cell + "**";
        }
        md += " " + cell + " |";
      }
      md += "\n";
    }
    md += "\n";

    if (!task.language_rows.empty()) {
      md += "### Objective metrics by target-speaker language\n\n";
      md += "| team | language |";
      const auto metrics = populated_metrics(task.language_rows);
      for (const auto& metric : metrics) md += " " + metric + " |";
      md += "\n|---|---|";
      for (std::size_t i = 0; i < metrics.size(); ++i) md += "---|";
      md += "\n";
      for (const auto& row : task.language_rows) {
        md += "| " + row.team_id + " | " + row.language.value_or("") + " |";
        for (const auto& metric : metrics) {
          const auto value = metric_value(row, metric);
          md += " " + (value ? fmt(*value, metric_decimals(metric))
                             : std::string("--")) +
                " |";
        }
        md += "\n";
      }
      md += "\n";
    }

    for (const auto& table : task.correlations) {
      md += "### Correlations with subjective scores (" + table.group;
      if (table.language) md += ", " + *table.language;
      md += ")\n\nBold marks the highest |r| per row.\n\n";
      md += "| rating |";
      for (const auto& metric : table.metrics) md += " " + metric + " |";
      md += "\n|---|";
      for (std::size_t i = 0; i < table.metrics.size(); ++i) md += "---|";
      md += "\n";
      for (const auto& row : table.rows) {
        md += "| " + row.rating + " |";
        for (std::size_t c = 0; c < row.cells.size(); ++c) {
          std::string cell = correlation_cell_text(row.cells[c]);
          if (row.best_metric && *row.best_metric == c) cell = "**" + cell + "**";
          md += " " + cell + " |";
        }
        md += "\n";
      }
      md += "\n";
    }

    if (!task.regressions.empty()) {
      md += "### Multiple linear regressions\n\n";
      md += "| group | rating | term | estimate | p | R2 | adj. R2 | "
            "Significance F |\n|---|---|---|---|---|---|---|---|\n";
      for (const auto& entry : task.regressions) {
        if (!entry.result) {
          md += "| " + entry.group + " | " + entry.rating + " | model | -- | -- "
                "| -- | -- | " + entry.error + " |\n";
          continue;
        }
        const auto& r = *entry.result;
        auto p_text = [](double p) {
          return p < 0.001 ? std::string("p<0.001") : "p=" + fmt(p, 3);
        };
        const std::string stats = fmt(r.r_squared, 2) + " | " +
                                  fmt(r.adjusted_r_squared, 2) + " | " +
                                  (r.significance_f < 0.001
                                       ? std::string("<0.001")
                                       : fmt(r.significance_f, 3));
        md += "| " + entry.group + " | " + entry.rating + " | intercept | " +
              fmt(r.intercept, 3) + " | " + p_text(r.intercept_p_value) + " | " +
              stats + " |\n";
        for (std::size_t k = 0; k < entry.predictors.size(); ++k) {
          md += "| " + entry.group + " | " + entry.rating + " | " +
                entry.predictors[k] + " | " + fmt(r.coefficients[k], 3) + " | " +
                p_text(r.coef_p_values[k]) + " | " + stats + " |\n";
        }
      }
      md += "\n";
    }
  }

  if (!report.diagnostics.empty()) {
    md += "## Diagnostics\n\n";
    for (const auto& d : report.diagnostics) {
      md += "- " + d.task_id + " / " + d.team_id + " / " + d.metric + ": " +
            d.message + "\n";
    }
    md += "\n";
  }

  md += "## Provenance\n\n";
  md += "- cost model: c_miss=" + fmt_g(report.cost_model.c_miss) +
        ", c_fa=" + fmt_g(report.cost_model.c_fa) +
        ", c_fa_spoof=" + fmt_g(report.cost_model.c_fa_spoof) +
        ", pi_spoof=" + fmt_g(report.cost_model.pi_spoof) +
        ", pi_tar=" + fmt_g(report.cost_model.pi_tar) +
        ", pi_non=" + fmt_g(report.cost_model.pi_non) + "\n";
  for (const auto& [path, digest] : report.input_digests) {
    md += "- " + path + ": " + digest + "\n";
  }

  const auto path = dir / "report.md";
  write_file(path, md);
  return {path};
}

}  // namespace

std::string format_metrics_csv(std::span<const SystemMetrics> rows) {
  bool with_language = false;
  for (const auto& row : rows) with_language |= row.language.has_value();
  return metrics_table_csv(rows, with_language);
}

std::vector<std::filesystem::path> emit_report(
    const CampaignReport& report, ReportFormat format,
    const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure,
                "cannot create " + out_dir.string() + ": " + ec.message());
  }

  std::vector<std::filesystem::path> files;
  switch (format) {
    case ReportFormat::kCsv:
      files = emit_csv(report, out_dir);
      break;
    case ReportFormat::kJson:
      files = emit_json(report, out_dir);
      break;
    case ReportFormat::kMarkdown:
      files = emit_markdown(report, out_dir);
      break;
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace vceval
