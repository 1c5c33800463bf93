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

#include "vceval/wer.hpp"

#include <vector>

namespace vceval {

namespace {

// Path cost ordered lexicographically by (edits, insertions, deletions).
// Lexicographic order is compatible with componentwise addition, so the
// usual DP recurrence stays valid for the tie-broken optimum.
struct EditCost {
  std::size_t edits = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;

  EditCost plus(std::size_t e, std::size_t i, std::size_t d) const {
    return {edits + e, insertions + i, deletions + d};
  }
  bool operator<(const EditCost& other) const {
    if (edits != other.edits) return edits < other.edits;
    if (insertions != other.insertions) return insertions < other.insertions;
    return deletions < other.deletions;
  }
};

}  // namespace

AlignmentCounts align(std::span<const std::string> reference,
                      std::span<const std::string> hypothesis) {
  if (reference.empty()) {
    throw Error(ErrorCode::kEmptyReference,
                "alignment reference is empty after normalization");
  }

  const std::size_t n_ref = reference.size();
  const std::size_t n_hyp = hypothesis.size();

  // Two-row DP over (reference prefix, hypothesis prefix).
  std::vector<EditCost> prev(n_hyp + 1), curr(n_hyp + 1);
  for (std::size_t j = 1; j <= n_hyp; ++j) prev[j] = prev[j - 1].plus(1, 1, 0);

  for (std::size_t i = 1; i <= n_ref; ++i) {
    curr[0] = prev[0].plus(1, 0, 1);
    for (std::size_t j = 1; j <= n_hyp; ++j) {
      const std::size_t sub = reference[i - 1] == hypothesis[j - 1] ? 0 : 1;
      EditCost best = prev[j - 1].plus(sub, 0, 0);
      EditCost del = prev[j].plus(1, 0, 1);
      EditCost ins = curr[j - 1].plus(1, 1, 0);
      if (del < best) best = del;
      if (ins < best) best = ins;
      curr[j] = best;
    }
    std::swap(prev, curr);
  }

  const EditCost& total = prev[n_hyp];
  AlignmentCounts counts;
  counts.insertions = total.insertions;
  counts.deletions = total.deletions;
  counts.substitutions = total.edits - total.insertions - total.deletions;
  counts.reference_words = n_ref;
  return counts;
}

double wer(std::span<const TranscriptPair> pairs, WerAggregation aggregation) {
  if (pairs.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no transcript pairs to score");
  }

  if (aggregation == WerAggregation::kPerUtteranceMean) {
    double sum = 0.0;
    for (const auto& pair : pairs) {
      const AlignmentCounts counts = align(pair.reference, pair.hypothesis);
      sum += 100.0 * static_cast<double>(counts.edits()) /
             static_cast<double>(counts.reference_words);
    }
    return sum / static_cast<double>(pairs.size());
  }

  std::size_t edits = 0;
  std::size_t words = 0;
  for (const auto& pair : pairs) {
    const AlignmentCounts counts = align(pair.reference, pair.hypothesis);
    edits += counts.edits();
    words += counts.reference_words;
  }
  return 100.0 * static_cast<double>(edits) / static_cast<double>(words);
}

}  // namespace vceval
