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

#ifndef VCEVAL_WER_HPP_
#define VCEVAL_WER_HPP_

#include <cstddef>
#include <span>
#include <string>

#include "vceval/error.hpp"
#include "vceval/score_io.hpp"

namespace vceval {

struct AlignmentCounts {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t reference_words = 0;

  std::size_t edits() const { return substitutions + deletions + insertions; }
};

// Minimum-edit-distance alignment with unit costs for substitutions,
// deletions and insertions.  Among minimum-cost alignments the one with
// fewer insertions, then fewer deletions, is chosen (deterministic).
AlignmentCounts align(std::span<const std::string> reference,
                      std::span<const std::string> hypothesis);

enum class WerAggregation {
  kPooled,            // 100 * (sum S + sum D + sum I) / (sum N), HResults-style
  kPerUtteranceMean,  // mean of per-utterance percentages
};

// Corpus word error rate in percent.  Not clamped: a hypothesis much longer
// than the reference yields a value above 100.
double wer(std::span<const TranscriptPair> pairs,
           WerAggregation aggregation = WerAggregation::kPooled);

}  // namespace vceval

#endif  // VCEVAL_WER_HPP_
