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

#include "vceval/score_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace vceval {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string::size_type start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

bool is_comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '#';
  }
  return true;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (in >> field) fields.push_back(field);
  return fields;
}

bool parse_double(const std::string& token, double* out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc() && ptr == end;
}

std::string trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

}  // namespace

const char* to_string(Label label) {
  switch (label) {
    case Label::kTarget: return "target";
    case Label::kNontarget: return "nontarget";
    case Label::kSpoof: return "spoof";
    case Label::kConverted: return "converted";
  }
  return "unknown";
}

std::optional<Label> parse_label(std::string_view token) {
  if (token == "target") return Label::kTarget;
  if (token == "nontarget") return Label::kNontarget;
  if (token == "spoof") return Label::kSpoof;
  if (token == "converted") return Label::kConverted;
  return std::nullopt;
}

std::vector<Trial> parse_trial_scores(const std::filesystem::path& path,
                                      std::optional<Label> default_label) {
  const auto lines = split_lines(read_file(path));
  std::vector<Trial> trials;
  std::set<std::pair<std::string, std::string>> seen;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (is_comment_or_blank(lines[i])) continue;
    const auto fields = split_fields(lines[i]);

    Trial trial;
    if (fields.size() == 4) {
      const auto label = parse_label(fields[2]);
      if (!label) {
        throw Error(ErrorCode::kMalformedLine,
                    "unknown trial label '" + fields[2] + "'", line_no);
      }
      trial.label = *label;
      trial.score_text = fields[3];
    } else if (fields.size() == 3) {
      if (!default_label) {
        throw Error(ErrorCode::kMalformedLine,
                    "3-field record but no default label supplied", line_no);
      }
      trial.label = *default_label;
      trial.score_text = fields[2];
    } else {
      throw Error(ErrorCode::kMalformedLine,
                  "expected `model_id utt_id [label] score`, got " +
                      std::to_string(fields.size()) + " fields",
                  line_no);
    }
    trial.model_id = fields[0];
    trial.utt_id = fields[1];
    if (!parse_double(trial.score_text, &trial.score) ||
        !std::isfinite(trial.score)) {
      throw Error(ErrorCode::kNonFiniteScore,
                  "score '" + trial.score_text + "' is not a finite number",
                  line_no);
    }
    if (!seen.insert({trial.model_id, trial.utt_id}).second) {
      throw Error(ErrorCode::kDuplicateTrial,
                  "duplicate trial (" + trial.model_id + ", " + trial.utt_id + ")",
                  line_no);
    }
    trials.push_back(std::move(trial));
  }

  if (trials.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no records in " + path.string());
  }
  return trials;
}

std::vector<Embedding> parse_embeddings(const std::filesystem::path& path) {
  const auto lines = split_lines(read_file(path));
  std::vector<Embedding> embeddings;
  std::size_t dim = 0;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (is_comment_or_blank(lines[i])) continue;
    const auto fields = split_fields(lines[i]);
    if (fields.size() < 2) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "embedding record needs at least one component", line_no);
    }

    Embedding embedding;
    embedding.utt_id = fields[0];
    embedding.values.reserve(fields.size() - 1);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      double value = 0.0;
      if (!parse_double(fields[k], &value) || !std::isfinite(value)) {
        throw Error(ErrorCode::kNonFiniteComponent,
                    "component '" + fields[k] + "' is not a finite number",
                    line_no);
      }
      embedding.values.push_back(value);
    }
    if (dim == 0) {
      dim = embedding.values.size();
    } else if (embedding.values.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "expected " + std::to_string(dim) + " components, got " +
                      std::to_string(embedding.values.size()),
                  line_no);
    }
    embeddings.push_back(std::move(embedding));
  }

  if (embeddings.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no records in " + path.string());
  }
  return embeddings;
}

std::vector<std::string> normalize_tokens(
    std::string_view text, const TranscriptNormalization& normalization) {
  static constexpr std::string_view kPunctuation = ".,;:!?\"()";
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char c : text) {
    if (normalization.strip_punctuation &&
        kPunctuation.find(c) != std::string_view::npos) {
      continue;
    }
    cleaned.push_back(
        normalization.lowercase
            ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
            : c);
  }
  std::vector<std::string> tokens;
  std::istringstream in(cleaned);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

std::vector<TranscriptPair> parse_transcripts(
    const std::filesystem::path& path,
    const TranscriptNormalization& normalization) {
  const auto lines = split_lines(read_file(path));
  std::vector<TranscriptPair> pairs;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (is_comment_or_blank(lines[i])) continue;

    const std::string& line = lines[i];
    const auto first = line.find('|');
    const auto second = first == std::string::npos
                            ? std::string::npos
                            : line.find('|', first + 1);
    if (first == std::string::npos || second == std::string::npos ||
        line.find('|', second + 1) != std::string::npos) {
      throw Error(ErrorCode::kMalformedRecord,
                  "expected `utt_id | reference | hypothesis`", line_no);
    }

    TranscriptPair pair;
    pair.utt_id = trim(std::string_view(line).substr(0, first));
    if (pair.utt_id.empty()) {
      throw Error(ErrorCode::kMalformedRecord, "empty utterance id", line_no);
    }
    pair.reference = normalize_tokens(
        std::string_view(line).substr(first + 1, second - first - 1),
        normalization);
    pair.hypothesis =
        normalize_tokens(std::string_view(line).substr(second + 1), normalization);
    if (pair.reference.empty()) {
      throw Error(ErrorCode::kEmptyReference,
                  "empty reference for utterance " + pair.utt_id, line_no);
    }
    pairs.push_back(std::move(pair));
  }

  if (pairs.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no records in " + path.string());
  }
  return pairs;
}

std::vector<std::pair<std::string, double>> parse_utterance_scores(
    const std::filesystem::path& path) {
  const auto lines = split_lines(read_file(path));
  std::vector<std::pair<std::string, double>> scores;
  std::set<std::string> seen;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (is_comment_or_blank(lines[i])) continue;
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 2) {
      throw Error(ErrorCode::kMalformedLine,
                  "expected `utt_id value`, got " +
                      std::to_string(fields.size()) + " fields",
                  line_no);
    }
    double value = 0.0;
    if (!parse_double(fields[1], &value) || !std::isfinite(value)) {
      throw Error(ErrorCode::kNonFiniteScore,
                  "value '" + fields[1] + "' is not a finite number", line_no);
    }
    if (!seen.insert(fields[0]).second) {
      throw Error(ErrorCode::kDuplicateTrial,
                  "duplicate utterance " + fields[0], line_no);
    }
    scores.emplace_back(fields[0], value);
  }

  if (scores.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no records in " + path.string());
  }
  return scores;
}

std::string serialize_trials(const std::vector<Trial>& trials) {
  std::string out;
  for (const auto& trial : trials) {
    out += trial.model_id;
    out += ' ';
    out += trial.utt_id;
    out += ' ';
    out += to_string(trial.label);
    out += ' ';
    out += trial.score_text;
    out += '\n';
  }
  return out;
}

std::string serialize_embeddings(const std::vector<Embedding>& embeddings) {
  std::string out;
  char buffer[64];
  for (const auto& embedding : embeddings) {
    out += embedding.utt_id;
    for (double value : embedding.values) {
      std::snprintf(buffer, sizeof(buffer), " %.17g", value);
      out += buffer;
    }
    out += '\n';
  }
  return out;
}

std::string canonical_language(std::string_view code) {
  std::string lower;
  lower.reserve(code.size());
  for (char c : code) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (lower == "f" || lower == "finnish") return "Finnish";
  if (lower == "g" || lower == "german") return "German";
  if (lower == "m" || lower == "mandarin") return "Mandarin";
  throw Error(ErrorCode::kUnknownLanguageCode,
              "unknown language code '" + std::string(code) + "'");
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

std::filesystem::path resolve_path(const std::filesystem::path& base,
                                   const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() ? p : base / p;
}

std::optional<std::filesystem::path> opt_path(const json& node,
                                              const char* key,
                                              const std::filesystem::path& base) {
  if (!node.contains(key)) return std::nullopt;
  if (!node[key].is_string()) {
    throw Error(ErrorCode::kInvalidManifest,
                std::string("field '") + key + "' must be a path string");
  }
  return resolve_path(base, node[key].get<std::string>());
}

TeamInputs parse_team_inputs(const json& node, const std::string& team,
                             const std::filesystem::path& base) {
  if (!node.is_object()) {
    throw Error(ErrorCode::kInvalidManifest,
                "team entry for " + team + " must be an object");
  }
  TeamInputs in;
  in.asv_converted_vs_target = opt_path(node, "asv_converted_vs_target", base);
  in.asv_converted_vs_source = opt_path(node, "asv_converted_vs_source", base);
  in.cm_scores = opt_path(node, "cm_scores", base);
  in.embeddings = opt_path(node, "embeddings", base);
  in.transcripts = opt_path(node, "transcripts", base);
  if (node.contains("mos_predictions")) {
    if (!node["mos_predictions"].is_object()) {
      throw Error(ErrorCode::kInvalidManifest,
                  "mos_predictions for " + team + " must map tag -> path");
    }
    for (const auto& [tag, value] : node["mos_predictions"].items()) {
      if (!value.is_string()) {
        throw Error(ErrorCode::kInvalidManifest,
                    "mos_predictions." + tag + " must be a path string");
      }
      in.mos_predictions[tag] = resolve_path(base, value.get<std::string>());
    }
  }
  return in;
}

// A per-team input is usable only when its shared counterpart exists.
void check_cross_references(const TaskManifest& task, const std::string& team,
                            const TeamInputs& inputs) {
  if (inputs.asv_converted_vs_target &&
      (!task.asv_natural_target || !task.asv_natural_nontarget ||
       !task.asv_genuine_target)) {
    throw Error(ErrorCode::kPathNotDeclared,
                "team " + team + " declares asv_converted_vs_target but task " +
                    task.id +
                    " lacks asv_natural_target/asv_natural_nontarget/"
                    "asv_genuine_target");
  }
  if (inputs.asv_converted_vs_source &&
      (!task.asv_natural_target || !task.asv_natural_nontarget)) {
    throw Error(ErrorCode::kPathNotDeclared,
                "team " + team + " declares asv_converted_vs_source but task " +
                    task.id + " lacks the natural calibration trials");
  }
  if (inputs.cm_scores && !task.cm_bona_fide) {
    throw Error(ErrorCode::kPathNotDeclared,
                "team " + team + " declares cm_scores but task " + task.id +
                    " lacks cm_bona_fide");
  }
  if (inputs.embeddings && !task.reference_embeddings) {
    throw Error(ErrorCode::kPathNotDeclared,
                "team " + team + " declares embeddings but task " + task.id +
                    " lacks reference_embeddings");
  }
}

SubjectiveValue parse_subjective_value(const json& node, const std::string& team) {
  SubjectiveValue value;
  if (node.is_number()) {
    value.pooled = node.get<double>();
    return value;
  }
  if (node.is_object()) {
    for (const auto& [key, entry] : node.items()) {
      if (!entry.is_number()) {
        throw Error(ErrorCode::kInvalidManifest,
                    "subjective value for " + team + " must be numeric");
      }
      if (key == "pooled") {
        value.pooled = entry.get<double>();
      } else {
        value.by_language[canonical_language(key)] = entry.get<double>();
      }
    }
    return value;
  }
  throw Error(ErrorCode::kInvalidManifest,
              "subjective value for " + team +
                  " must be a number or {language: number}");
}

}  // namespace

EvaluationManifest load_manifest(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedRecord,
                std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kInvalidManifest, "manifest root must be an object");
  }

  EvaluationManifest manifest;
  manifest.base_dir = path.has_parent_path()
                          ? path.parent_path()
                          : std::filesystem::path(".");

  if (!doc.contains("team_ids")) {
    throw Error(ErrorCode::kMissingField, "manifest key 'team_ids' is required");
  }
  for (const auto& id : doc["team_ids"]) {
    if (!id.is_string()) {
      throw Error(ErrorCode::kInvalidManifest, "team_ids must be strings");
    }
    manifest.team_ids.push_back(id.get<std::string>());
  }
  std::set<std::string> known_teams(manifest.team_ids.begin(),
                                    manifest.team_ids.end());
  if (known_teams.size() != manifest.team_ids.size()) {
    throw Error(ErrorCode::kInvalidManifest, "team ids must be unique");
  }

  if (!doc.contains("tasks") || !doc["tasks"].is_array() ||
      doc["tasks"].empty()) {
    throw Error(ErrorCode::kMissingField,
                "manifest key 'tasks' (non-empty array) is required");
  }

  for (const auto& task_node : doc["tasks"]) {
    if (!task_node.is_object() || !task_node.contains("id")) {
      throw Error(ErrorCode::kMissingField, "every task needs an 'id'");
    }
    TaskManifest task;
    task.id = task_node["id"].get<std::string>();
    task.asv_natural_target =
        opt_path(task_node, "asv_natural_target", manifest.base_dir);
    task.asv_natural_nontarget =
        opt_path(task_node, "asv_natural_nontarget", manifest.base_dir);
    task.asv_genuine_target =
        opt_path(task_node, "asv_genuine_target", manifest.base_dir);
    task.cm_bona_fide = opt_path(task_node, "cm_bona_fide", manifest.base_dir);
    task.reference_embeddings =
        opt_path(task_node, "reference_embeddings", manifest.base_dir);
    task.projection_matrix =
        opt_path(task_node, "projection_matrix", manifest.base_dir);

    if (task_node.contains("teams")) {
      if (!task_node["teams"].is_object()) {
        throw Error(ErrorCode::kInvalidManifest,
                    "task 'teams' must map team id -> inputs");
      }
      for (const auto& [team, node] : task_node["teams"].items()) {
        if (!known_teams.count(team)) {
          throw Error(ErrorCode::kUnknownTeam,
                      "task " + task.id + " references unknown team " + team);
        }
        TeamInputs inputs = parse_team_inputs(node, team, manifest.base_dir);
        check_cross_references(task, team, inputs);
        if (node.contains("languages")) {
          if (!node["languages"].is_object()) {
            throw Error(ErrorCode::kInvalidManifest,
                        "languages block for " + team +
                            " must map language -> inputs");
          }
          for (const auto& [code, lang_node] : node["languages"].items()) {
            const std::string language = canonical_language(code);
            TeamInputs lang_inputs =
                parse_team_inputs(lang_node, team, manifest.base_dir);
            check_cross_references(task, team, lang_inputs);
            task.team_languages[team][language] = std::move(lang_inputs);
          }
        }
        task.teams[team] = std::move(inputs);
      }
    }
    manifest.tasks.push_back(std::move(task));
  }

  if (doc.contains("subjective_scores")) {
    for (const auto& [group, group_node] : doc["subjective_scores"].items()) {
      for (const auto& [task_id, task_node] : group_node.items()) {
        for (const auto& [rating, rating_node] : task_node.items()) {
          for (const auto& [team, value_node] : rating_node.items()) {
            if (!known_teams.count(team)) {
              throw Error(ErrorCode::kUnknownTeam,
                          "subjective_scores references unknown team " + team);
            }
            manifest.subjective_scores[group][task_id][rating][team] =
                parse_subjective_value(value_node, team);
          }
        }
      }
    }
  }

  if (doc.contains("cost_model")) {
    for (const auto& [key, value] : doc["cost_model"].items()) {
      if (!value.is_number()) {
        throw Error(ErrorCode::kInvalidManifest,
                    "cost_model." + key + " must be numeric");
      }
      manifest.cost_model[key] = value.get<double>();
    }
  }

  if (doc.contains("metric_directions")) {
    for (const auto& [key, value] : doc["metric_directions"].items()) {
      const std::string direction = value.get<std::string>();
      if (direction != "higher_better" && direction != "lower_better") {
        throw Error(ErrorCode::kInvalidManifest,
                    "metric_directions." + key +
                        " must be higher_better or lower_better");
      }
      manifest.metric_directions[key] = direction;
    }
  }

  return manifest;
}

}  // namespace vceval
