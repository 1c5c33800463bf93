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

#ifndef VCEVAL_DETECTION_HPP_
#define VCEVAL_DETECTION_HPP_

#include <span>
#include <vector>

#include "vceval/error.hpp"

namespace vceval {

// Miss / false-alarm staircase of a score-based detector under the
// accept-iff-score-greater-than-threshold convention (ties reject).
//
// thresholds are strictly ascending and bracketed by -inf / +inf sentinels,
// so the curve always spans (p_miss, p_fa) = (0, 1) .. (1, 0).  Between two
// adjacent thresholds both rates are constant; the stored points are the
// plateau values for tau in [thresholds[i], thresholds[i+1]).
struct DetCurve {
  std::vector<double> thresholds;
  std::vector<double> p_miss;  // fraction of positives with score <= tau
  std::vector<double> p_fa;    // fraction of negatives with score >  tau
};

// Equal error rate and the threshold of the crossing.  When the staircase
// has a flat region where p_miss == p_fa, the reported threshold is the
// midpoint of that region; when the crossing happens across a jump, the
// threshold is the score at the jump.  The rate itself is obtained by
// linear interpolation between the two adjacent staircase points, so it is
// exact where an exact crossing exists.  No clamping: when negatives score
// above positives the result may exceed 0.5.
struct EerResult {
  double eer = 0.0;        // fraction in [0, 1] (and beyond 0.5 for anomalies)
  double threshold = 0.0;
};

// The three conversion-assessment rates plus the natural-data threshold
// they were fixed at.  Reference points: an ideal conversion system scores
// (50, 100, 100); a useless one scores (0, 0, 0).
struct AsvMetrics {
  double eer_pct = 0.0;
  double pfa_tar_pct = 0.0;
  double pmiss_src_pct = 0.0;
  double threshold_natural = 0.0;
};

enum class RateDirection {
  kFaAbove,        // fraction of scores strictly above the threshold
  kMissAtOrBelow,  // fraction of scores at or below the threshold
};

DetCurve det_curve(std::span<const double> positives,
                   std::span<const double> negatives);

EerResult eer(const DetCurve& curve);

double fixed_threshold_rate(std::span<const double> scores, double threshold,
                            RateDirection direction);

// Threshold at the equal-error crossing of the natural-data curve.  This is
// the operating point fixed before any converted audio is scored.
double natural_threshold(std::span<const double> target_scores,
                         std::span<const double> nontarget_scores);

AsvMetrics asv_assessment(std::span<const double> natural_target_scores,
                          std::span<const double> natural_nontarget_scores,
                          std::span<const double> converted_vs_target_scores,
                          std::span<const double> genuine_target_test_scores,
                          std::span<const double> converted_vs_source_scores);

// Countermeasure EER: bona fide speech is the positive class, spoofed or
// converted speech the negative class.
EerResult cm_eer(std::span<const double> bona_fide_scores,
                 std::span<const double> spoof_scores);

}  // namespace vceval

#endif  // VCEVAL_DETECTION_HPP_
