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

#include "vceval/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vceval {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_class(std::span<const double> scores, const char* which) {
  if (scores.empty()) {
    throw Error(ErrorCode::kEmptyClass, std::string(which) + " score set is empty");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) {
      throw Error(ErrorCode::kNonFiniteScore,
                  std::string(which) + " score set contains a non-finite value");
    }
  }
}

}  // namespace

DetCurve det_curve(std::span<const double> positives,
                   std::span<const double> negatives) {
  check_class(positives, "positive");
  check_class(negatives, "negative");

  std::vector<double> pos(positives.begin(), positives.end());
  std::vector<double> neg(negatives.begin(), negatives.end());
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());

  std::vector<double> pooled;
  pooled.reserve(pos.size() + neg.size());
  std::merge(pos.begin(), pos.end(), neg.begin(), neg.end(),
             std::back_inserter(pooled));
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

  const double n_pos = static_cast<double>(pos.size());
  const double n_neg = static_cast<double>(neg.size());

  DetCurve curve;
  curve.thresholds.reserve(pooled.size() + 2);
  curve.p_miss.reserve(pooled.size() + 2);
  curve.p_fa.reserve(pooled.size() + 2);

  curve.thresholds.push_back(-kInf);
  curve.p_miss.push_back(0.0);
  curve.p_fa.push_back(1.0);

  for (double tau : pooled) {
    const auto n_missed =
        std::upper_bound(pos.begin(), pos.end(), tau) - pos.begin();
    const auto n_accepted =
        neg.end() - std::upper_bound(neg.begin(), neg.end(), tau);
    curve.thresholds.push_back(tau);
    curve.p_miss.push_back(static_cast<double>(n_missed) / n_pos);
    curve.p_fa.push_back(static_cast<double>(n_accepted) / n_neg);
  }

  curve.thresholds.push_back(kInf);
  curve.p_miss.push_back(1.0);
  curve.p_fa.push_back(0.0);
  return curve;
}

EerResult eer(const DetCurve& curve) {
  const auto& pm = curve.p_miss;
  const auto& pf = curve.p_fa;
  const std::size_t n = curve.thresholds.size();

  // d = p_fa - p_miss is non-increasing along the curve: +1 at -inf, -1 at
  // +inf, so a sign change always exists.
  std::size_t i = 0;
  while (i < n && pf[i] - pm[i] > 0.0) ++i;

  EerResult result;
  const double di = pf[i] - pm[i];
  if (di == 0.0) {
    // Flat crossing: p_miss == p_fa over [thresholds[i], thresholds[j+1]).
    std::size_t j = i;
    while (j + 1 < n && pf[j + 1] - pm[j + 1] == 0.0) ++j;
    result.eer = pm[i];
    result.threshold = 0.5 * (curve.thresholds[i] + curve.thresholds[j + 1]);
  } else {
    // Sign flips across the jump at thresholds[i]; interpolate linearly
    // between the two adjacent staircase points.
    const double d0 = pf[i - 1] - pm[i - 1];
    const double t = d0 / (d0 - di);
    result.eer = pm[i - 1] + t * (pm[i] - pm[i - 1]);
    result.threshold = curve.thresholds[i];
  }
  return result;
}

double fixed_threshold_rate(std::span<const double> scores, double threshold,
                            RateDirection direction) {
  check_class(scores, "rate");
  std::size_t count = 0;
  for (double s : scores) {
    if (direction == RateDirection::kFaAbove ? s > threshold : s <= threshold) {
      ++count;
    }
  }
  return static_cast<double>(count) / static_cast<double>(scores.size());
}

double natural_threshold(std::span<const double> target_scores,
                         std::span<const double> nontarget_scores) {
  return eer(det_curve(target_scores, nontarget_scores)).threshold;
}

AsvMetrics asv_assessment(std::span<const double> natural_target_scores,
                          std::span<const double> natural_nontarget_scores,
                          std::span<const double> converted_vs_target_scores,
                          std::span<const double> genuine_target_test_scores,
                          std::span<const double> converted_vs_source_scores) {
  AsvMetrics metrics;
  metrics.threshold_natural =
      natural_threshold(natural_target_scores, natural_nontarget_scores);
  metrics.eer_pct =
      100.0 *
      eer(det_curve(genuine_target_test_scores, converted_vs_target_scores)).eer;
  metrics.pfa_tar_pct =
      100.0 * fixed_threshold_rate(converted_vs_target_scores,
                                   metrics.threshold_natural,
                                   RateDirection::kFaAbove);
  metrics.pmiss_src_pct =
      100.0 * fixed_threshold_rate(converted_vs_source_scores,
                                   metrics.threshold_natural,
                                   RateDirection::kMissAtOrBelow);
  return metrics;
}

EerResult cm_eer(std::span<const double> bona_fide_scores,
                 std::span<const double> spoof_scores) {
  return eer(det_curve(bona_fide_scores, spoof_scores));
}

}  // namespace vceval
