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

#include "vceval/tandem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vceval/detection.hpp"

namespace vceval {

void CostModel::validate() const {
  if (!(c_miss > 0.0) || !(c_fa > 0.0) || !(c_fa_spoof > 0.0)) {
    throw Error(ErrorCode::kInvalidCostModel, "costs must be positive");
  }
  if (pi_spoof < 0.0 || pi_tar < 0.0 || pi_non < 0.0) {
    throw Error(ErrorCode::kInvalidCostModel, "priors must be non-negative");
  }
  const double sum = pi_spoof + pi_tar + pi_non;
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidCostModel,
                "priors sum to " + std::to_string(sum) + ", expected 1");
  }
}

TandemConstants tandem_constants(const AsvOperatingPoint& op,
                                 const CostModel& cost_model) {
  cost_model.validate();
  if (op.p_miss_asv < 0.0 || op.p_miss_asv > 1.0 || op.p_fa_asv < 0.0 ||
      op.p_fa_asv > 1.0 || op.p_fa_spoof_asv < 0.0 || op.p_fa_spoof_asv > 1.0) {
    throw Error(ErrorCode::kInvalidCostModel,
                "ASV operating rates must lie in [0, 1]");
  }
  TandemConstants constants;
  constants.c0 = cost_model.pi_tar * cost_model.c_miss * op.p_miss_asv +
                 cost_model.pi_non * cost_model.c_fa * op.p_fa_asv;
  constants.c1 = cost_model.pi_tar * cost_model.c_miss - constants.c0;
  constants.c2 =
      cost_model.pi_spoof * cost_model.c_fa_spoof * op.p_fa_spoof_asv;
  return constants;
}

TdcfResult min_tdcf(std::span<const double> cm_bona_scores,
                    std::span<const double> cm_spoof_scores,
                    const TandemConstants& constants) {
  const double normalizer =
      constants.c0 + std::min(constants.c1, constants.c2);
  if (!(normalizer > 0.0)) {
    throw Error(ErrorCode::kDegenerateNormalizer,
                "default tandem cost is " + std::to_string(normalizer) +
                    "; cost model or ASV operating point is degenerate");
  }

  // The CM detection staircase already contains the accept-all (-inf) and
  // reject-all (+inf) endpoints.
  const DetCurve curve = det_curve(cm_bona_scores, cm_spoof_scores);

  TdcfResult result;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    const double cost = constants.c0 + constants.c1 * curve.p_miss[i] +
                        constants.c2 * curve.p_fa[i];
    if (cost < best) {
      best = cost;
      best_index = i;
    }
  }
  result.min_tdcf_norm = best / normalizer;
  result.cm_threshold = curve.thresholds[best_index];
  result.constants = constants;
  return result;
}

double empirical_tandem_cost(std::span<const TandemTrial> trials,
                             double cm_threshold, double asv_threshold,
                             const CostModel& cost_model) {
  cost_model.validate();

  std::size_t n_target = 0, n_nontarget = 0, n_spoof = 0;
  std::size_t target_rejected = 0, nontarget_accepted = 0, spoof_accepted = 0;
  for (const auto& trial : trials) {
    const bool accepted =
        trial.cm_score > cm_threshold && trial.asv_score > asv_threshold;
    switch (trial.label) {
      case Label::kTarget:
        ++n_target;
        if (!accepted) ++target_rejected;
        break;
      case Label::kNontarget:
        ++n_nontarget;
        if (accepted) ++nontarget_accepted;
        break;
      case Label::kSpoof:
      case Label::kConverted:
        ++n_spoof;
        if (accepted) ++spoof_accepted;
        break;
    }
  }
  if (n_target == 0) {
    throw Error(ErrorCode::kMissingClass, "no target trials");
  }
  if (n_nontarget == 0) {
    throw Error(ErrorCode::kMissingClass, "no nontarget trials");
  }
  if (n_spoof == 0) {
    throw Error(ErrorCode::kMissingClass, "no spoof trials");
  }

  const double p_target_rejected =
      static_cast<double>(target_rejected) / static_cast<double>(n_target);
  const double p_nontarget_accepted =
      static_cast<double>(nontarget_accepted) / static_cast<double>(n_nontarget);
  const double p_spoof_accepted =
      static_cast<double>(spoof_accepted) / static_cast<double>(n_spoof);

  return cost_model.pi_tar * cost_model.c_miss * p_target_rejected +
         cost_model.pi_non * cost_model.c_fa * p_nontarget_accepted +
         cost_model.pi_spoof * cost_model.c_fa_spoof * p_spoof_accepted;
}

}  // namespace vceval
