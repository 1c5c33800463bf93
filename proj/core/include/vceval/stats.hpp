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

#ifndef VCEVAL_STATS_HPP_
#define VCEVAL_STATS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vceval/error.hpp"

namespace vceval {

struct CorrelationResult {
  double r = 0.0;
  double p_two_sided = 1.0;
  std::size_t n = 0;
};

struct RegressionResult {
  double intercept = 0.0;
  double intercept_p_value = 1.0;
  std::vector<double> coefficients;
  std::vector<double> coef_p_values;
  double r_squared = 0.0;
  double adjusted_r_squared = 0.0;
  double f_statistic = 0.0;
  double significance_f = 1.0;
};

// Pearson product-moment correlation with a two-sided p-value from
// t = r * sqrt((n-2) / (1-r^2)) against Student-t with n-2 degrees of
// freedom.  |r| = 1 yields p = 0.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

// Ordinary least squares on the given predictor columns (each of length n),
// solved by Householder QR so rank deficiency is detected rather than
// silently inverted.  Per-coefficient two-sided p-values use n - p - 1
// degrees of freedom when the intercept is included.
RegressionResult ols_regress(const std::vector<std::vector<double>>& predictor_columns,
                             std::span<const double> y,
                             bool include_intercept = true);

// Two-sided tail of Student-t: 2 * P(T >= |t|), via the regularized
// incomplete beta function.
double student_t_two_sided_p(double t, double df);

// Survival function of the F distribution: P(X >= f).
double f_sf(double f_value, double d1, double d2);

// Regularized incomplete beta I_x(a, b), continued fraction with modified
// Lentz iteration (relative tolerance 1e-12, at most 300 terms).
double inc_beta_reg(double a, double b, double x);

// Display bucketing used in the correlation tables: "p<0.01", "p=0.01"
// (rounds to 0.01 at two decimals) or "p>0.01".
std::string p_value_bucket(double p);

}  // namespace vceval

#endif  // VCEVAL_STATS_HPP_
