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

#ifndef VCEVAL_TANDEM_HPP_
#define VCEVAL_TANDEM_HPP_

#include <span>

#include "vceval/score_io.hpp"

namespace vceval {

// Costs and priors of the tandem detection cost function.  Defaults model a
// high-security authentication scenario: false acceptances (nontarget or
// spoof) cost ten times a false rejection, spoofing attempts are as common
// as target users, and nontarget users are rare.
struct CostModel {
  double c_miss = 1.0;
  double c_fa = 10.0;
  double c_fa_spoof = 10.0;
  double pi_spoof = 0.5;
  double pi_tar = 0.5 * 0.99;
  double pi_non = 0.5 * 0.01;

  // Priors must be non-negative and sum to 1 (1e-12), costs positive.
  void validate() const;
};

// Fixed ASV operating point: the verification threshold sits at the
// equal-error point of the bona fide trials and stays fixed.
struct AsvOperatingPoint {
  double p_miss_asv = 0.0;      // target trials rejected
  double p_fa_asv = 0.0;        // nontarget trials accepted
  double p_fa_spoof_asv = 0.0;  // spoof/converted trials accepted
};

struct TandemConstants {
  double c0 = 0.0;  // cost floor from ASV errors alone
  double c1 = 0.0;  // weight of the countermeasure miss rate
  double c2 = 0.0;  // weight of the countermeasure false-alarm rate
};

struct TdcfResult {
  double min_tdcf_norm = 0.0;
  double cm_threshold = 0.0;  // argmin; -inf means the accept-all countermeasure
  TandemConstants constants;
};

// Constants of t-DCF(tau) = C0 + C1 * Pmiss_cm(tau) + C2 * Pfa_cm(tau):
//   C0 = pi_tar*C_miss*Pmiss_asv + pi_non*C_fa*Pfa_asv
//   C1 = pi_tar*C_miss - C0
//   C2 = pi_spoof*C_fa_spoof*Pfa_spoof_asv
// C2 vanishes whenever the ASV accepts no spoofed trials, in which case the
// optimal countermeasure is the accept-everything one.
TandemConstants tandem_constants(const AsvOperatingPoint& op,
                                 const CostModel& cost_model);

// Minimum normalized t-DCF over the countermeasure threshold sweep.  The
// sweep covers the full CM detection staircase including the accept-all and
// reject-all endpoints, so the normalized minimum is always in [0, 1];
// normalization divides by the cost of the better trivial countermeasure,
// C0 + min(C1, C2).
TdcfResult min_tdcf(std::span<const double> cm_bona_scores,
                    std::span<const double> cm_spoof_scores,
                    const TandemConstants& constants);

struct TandemTrial {
  Label label = Label::kTarget;  // converted counts as spoof
  double cm_score = 0.0;
  double asv_score = 0.0;
};

// Independent of the closed form: the expected cascade cost with the
// decision rule "accept iff cm_score > tau_cm AND asv_score > tau_asv" and
// per-class probabilities estimated as empirical fractions of the trials.
double empirical_tandem_cost(std::span<const TandemTrial> trials,
                             double cm_threshold, double asv_threshold,
                             const CostModel& cost_model);

}  // namespace vceval

#endif  // VCEVAL_TANDEM_HPP_
