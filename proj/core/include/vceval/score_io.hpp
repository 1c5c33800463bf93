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

#ifndef VCEVAL_SCORE_IO_HPP_
#define VCEVAL_SCORE_IO_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vceval/error.hpp"

namespace vceval {

enum class Label { kTarget, kNontarget, kSpoof, kConverted };

const char* to_string(Label label);
std::optional<Label> parse_label(std::string_view token);

// One scored comparison, the atom of every detection metric.  score_text
// keeps the exact decimal text from the input so reports can echo scores
// without reformatting.
struct Trial {
  std::string model_id;
  std::string utt_id;
  Label label = Label::kTarget;
  double score = 0.0;
  std::string score_text;
};

struct Embedding {
  std::string utt_id;
  std::vector<double> values;
};

struct TranscriptPair {
  std::string utt_id;
  std::vector<std::string> reference;
  std::vector<std::string> hypothesis;
};

// Default transcript normalization: case-fold to lower, strip .,;:!?"()
// and collapse whitespace.  Both steps can be switched off.
struct TranscriptNormalization {
  bool lowercase = true;
  bool strip_punctuation = true;
};

// Score files: one record per line, `model_id utt_id label score`,
// whitespace-separated, `#` starts a comment line.  Files that carry only
// `model_id utt_id score` need default_label.
std::vector<Trial> parse_trial_scores(const std::filesystem::path& path,
                                      std::optional<Label> default_label = {});

// Embedding files: `utt_id v1 v2 ... vd`, one record per line, a single
// dimensionality for the whole file.
std::vector<Embedding> parse_embeddings(const std::filesystem::path& path);

// Transcript files: `utt_id | reference text | hypothesis text`.
std::vector<TranscriptPair> parse_transcripts(
    const std::filesystem::path& path,
    const TranscriptNormalization& normalization = {});

// Per-utterance scalar files (`utt_id value`), used for MOS predictions.
std::vector<std::pair<std::string, double>> parse_utterance_scores(
    const std::filesystem::path& path);

std::vector<std::string> normalize_tokens(
    std::string_view text, const TranscriptNormalization& normalization);

// Canonical serializations (single-space separated, one record per line).
std::string serialize_trials(const std::vector<Trial>& trials);
std::string serialize_embeddings(const std::vector<Embedding>& embeddings);

// ---------------------------------------------------------------------------
// Campaign manifest
// ---------------------------------------------------------------------------

// Inputs a single team contributes to one task.  Every path is optional;
// a metric is computed only when its inputs are declared.
struct TeamInputs {
  std::optional<std::filesystem::path> asv_converted_vs_target;
  std::optional<std::filesystem::path> asv_converted_vs_source;
  std::optional<std::filesystem::path> cm_scores;
  std::optional<std::filesystem::path> embeddings;
  std::map<std::string, std::filesystem::path> mos_predictions;  // tag -> path
  std::optional<std::filesystem::path> transcripts;
};

struct TaskManifest {
  std::string id;
  // Shared, team-independent inputs.
  std::optional<std::filesystem::path> asv_natural_target;
  std::optional<std::filesystem::path> asv_natural_nontarget;
  std::optional<std::filesystem::path> asv_genuine_target;
  std::optional<std::filesystem::path> cm_bona_fide;
  std::optional<std::filesystem::path> reference_embeddings;
  std::optional<std::filesystem::path> projection_matrix;
  // Per-team inputs, plus optional per-language blocks (language name ->
  // inputs restricted to that target-speaker language).
  std::map<std::string, TeamInputs> teams;
  std::map<std::string, std::map<std::string, TeamInputs>> team_languages;
};

// One subjective rating for one team: a pooled value and/or per-language
// values (language name -> value).
struct SubjectiveValue {
  std::optional<double> pooled;
  std::map<std::string, double> by_language;
};

// listener group -> task id -> rating name -> team id -> value
using SubjectiveScores =
    std::map<std::string,
             std::map<std::string,
                      std::map<std::string, std::map<std::string, SubjectiveValue>>>>;

struct EvaluationManifest {
  std::vector<std::string> team_ids;
  std::vector<TaskManifest> tasks;
  SubjectiveScores subjective_scores;
  std::map<std::string, double> cost_model;            // t-DCF overrides
  std::map<std::string, std::string> metric_directions;  // ranking overrides
  std::filesystem::path base_dir;  // relative paths resolve against this
};

// Loads and validates a JSON manifest.  Cross-references are checked up
// front: unknown teams, per-team inputs whose shared counterpart is not
// declared, and unknown language codes all fail here, before any score
// file is opened.
EvaluationManifest load_manifest(const std::filesystem::path& path);

// Accepts "F"/"G"/"M" or full names (case-insensitive) and returns the
// canonical language name; anything else raises UnknownLanguageCode.
std::string canonical_language(std::string_view code);

}  // namespace vceval

#endif  // VCEVAL_SCORE_IO_HPP_
