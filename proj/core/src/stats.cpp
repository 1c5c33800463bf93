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

#include "vceval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vceval {

namespace {

// Continued fraction for the incomplete beta function, evaluated with the
// modified Lentz scheme.
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kRelTol = 1e-12;
  constexpr double kTiny = 1e-300;
  constexpr int kMaxIterations = 300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;

  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;

  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kRelTol) return h;
  }
  return h;  // converged to working precision for all df used here
}

double check_samples(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "vectors have lengths " + std::to_string(x.size()) + " and " +
                    std::to_string(y.size()));
  }
  if (x.size() < 3) {
    throw Error(ErrorCode::kTooFewSamples,
                "need at least 3 samples, got " + std::to_string(x.size()));
  }
  return static_cast<double>(x.size());
}

bool is_constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [&](double value) { return value == v.front(); });
}

}  // namespace

double inc_beta_reg(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "beta parameters must be positive");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;

  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df >= 1.0)) {
    throw Error(ErrorCode::kInvalidDf,
                "degrees of freedom must be >= 1, got " + std::to_string(df));
  }
  if (std::isinf(t)) return 0.0;
  return inc_beta_reg(0.5 * df, 0.5, df / (df + t * t));
}

double f_sf(double f_value, double d1, double d2) {
  if (!(d1 >= 1.0) || !(d2 >= 1.0)) {
    throw Error(ErrorCode::kInvalidDf, "F degrees of freedom must be >= 1");
  }
  if (f_value <= 0.0) return 1.0;
  if (std::isinf(f_value)) return 0.0;
  return inc_beta_reg(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * f_value));
}

std::string p_value_bucket(double p) {
  if (p < 0.01) return "p<0.01";
  if (p < 0.015) return "p=0.01";
  return "p>0.01";
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  const double n = check_samples(x, y);
  if (is_constant(x)) {
    throw Error(ErrorCode::kConstantInput, "x is constant");
  }
  if (is_constant(y)) {
    throw Error(ErrorCode::kConstantInput, "y is constant");
  }

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;

  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }

  CorrelationResult result;
  result.n = x.size();
  result.r = sxy / std::sqrt(sxx * syy);
  if (result.r > 1.0) result.r = 1.0;
  if (result.r < -1.0) result.r = -1.0;

  if (std::abs(result.r) >= 1.0) {
    result.p_two_sided = 0.0;
  } else {
    const double t =
        result.r * std::sqrt((n - 2.0) / (1.0 - result.r * result.r));
    result.p_two_sided = student_t_two_sided_p(t, n - 2.0);
  }
  return result;
}

RegressionResult ols_regress(
    const std::vector<std::vector<double>>& predictor_columns,
    std::span<const double> y, bool include_intercept) {
  const std::size_t n = y.size();
  const std::size_t p = predictor_columns.size();
  const std::size_t m = p + (include_intercept ? 1 : 0);
  if (m == 0) {
    throw Error(ErrorCode::kInvalidParams, "no predictors and no intercept");
  }
  for (const auto& column : predictor_columns) {
    if (column.size() != n) {
      throw Error(ErrorCode::kLengthMismatch,
                  "predictor column length does not match response length");
    }
  }
  if (n <= m) {
    throw Error(ErrorCode::kTooFewSamples,
                "need more than " + std::to_string(m) + " samples, got " +
                    std::to_string(n));
  }

  // Design matrix, column-major; intercept column first.
  std::vector<std::vector<double>> a(m, std::vector<double>(n));
  std::size_t col = 0;
  if (include_intercept) {
    std::fill(a[col].begin(), a[col].end(), 1.0);
    ++col;
  }
  for (const auto& column : predictor_columns) {
    a[col++] = column;
  }

  // Householder QR of the design, applied to the response as well.
  std::vector<double> qty(y.begin(), y.end());
  std::vector<std::vector<double>> r_upper(m, std::vector<double>(m, 0.0));

  for (std::size_t k = 0; k < m; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm += a[k][i] * a[k][i];
    norm = std::sqrt(norm);
    if (a[k][k] > 0.0) norm = -norm;

    // Householder vector stored in a[k][k..]; norm == 0 means the column is
    // already annihilated, i.e., rank deficient.
    double r_kk = norm;
    if (norm != 0.0) {
      for (std::size_t i = k; i < n; ++i) a[k][i] /= norm;
      a[k][k] -= 1.0;
    }
    for (std::size_t j = k + 1; j < m; ++j) {
      double s = 0.0;
      if (norm != 0.0) {
        for (std::size_t i = k; i < n; ++i) s += a[k][i] * a[j][i];
        s /= a[k][k];
      }
      for (std::size_t i = k; i < n; ++i) a[j][i] += s * a[k][i];
      r_upper[j][k] = a[j][k];
    }
    if (norm != 0.0) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += a[k][i] * qty[i];
      s /= a[k][k];
      for (std::size_t i = k; i < n; ++i) qty[i] += s * a[k][i];
    }
    r_upper[k][k] = r_kk;
  }

  double max_diag = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    max_diag = std::max(max_diag, std::abs(r_upper[k][k]));
  }
  const double rank_tol =
      std::max(n, m) * std::numeric_limits<double>::epsilon() * max_diag;
  for (std::size_t k = 0; k < m; ++k) {
    if (std::abs(r_upper[k][k]) <= rank_tol) {
      throw Error(ErrorCode::kRankDeficient,
                  "design matrix is rank deficient at column " +
                      std::to_string(k));
    }
  }

  // Back-substitution for the coefficients.
  std::vector<double> beta(m, 0.0);
  for (std::size_t k = m; k-- > 0;) {
    double s = qty[k];
    for (std::size_t j = k + 1; j < m; ++j) s -= r_upper[j][k] * beta[j];
    beta[k] = s / r_upper[k][k];
  }

  // Residual sum of squares: the tail of Q^T y beyond the first m entries.
  double ssr = 0.0;
  for (std::size_t i = m; i < n; ++i) ssr += qty[i] * qty[i];

  double sst = 0.0;
  if (include_intercept) {
    double mean_y = 0.0;
    for (double v : y) mean_y += v;
    mean_y /= static_cast<double>(n);
    for (double v : y) sst += (v - mean_y) * (v - mean_y);
  } else {
    for (double v : y) sst += v * v;
  }
  if (sst == 0.0) {
    throw Error(ErrorCode::kConstantInput, "response is constant");
  }

  // R^(-1), then diag((X^T X)^(-1)) = rows of R^(-1) squared and summed.
  std::vector<std::vector<double>> r_inv(m, std::vector<double>(m, 0.0));
  for (std::size_t j = 0; j < m; ++j) {
    r_inv[j][j] = 1.0 / r_upper[j][j];
    for (std::size_t k = j; k-- > 0;) {
      double s = 0.0;
      for (std::size_t i = k + 1; i <= j; ++i) s += r_upper[i][k] * r_inv[j][i];
      r_inv[j][k] = -s / r_upper[k][k];
    }
  }

  const std::size_t df = n - m;
  const double sigma2 = ssr / static_cast<double>(df);

  RegressionResult result;
  result.coefficients.resize(p);
  result.coef_p_values.resize(p);

  auto coefficient_p = [&](std::size_t k) {
    double xtx_inv_kk = 0.0;
    for (std::size_t j = k; j < m; ++j) xtx_inv_kk += r_inv[j][k] * r_inv[j][k];
    const double se = std::sqrt(sigma2 * xtx_inv_kk);
    if (se == 0.0) return beta[k] == 0.0 ? 1.0 : 0.0;
    return student_t_two_sided_p(beta[k] / se, static_cast<double>(df));
  };

  std::size_t offset = 0;
  if (include_intercept) {
    result.intercept = beta[0];
    result.intercept_p_value = coefficient_p(0);
    offset = 1;
  }
  for (std::size_t k = 0; k < p; ++k) {
    result.coefficients[k] = beta[offset + k];
    result.coef_p_values[k] = coefficient_p(offset + k);
  }

  double r2 = 1.0 - ssr / sst;
  if (r2 < 0.0 && r2 > -1e-12) r2 = 0.0;
  if (r2 > 1.0 && r2 - 1.0 < 1e-12) r2 = 1.0;
  result.r_squared = r2;
  result.adjusted_r_squared =
      1.0 - (1.0 - r2) * (static_cast<double>(n) - 1.0) /
                static_cast<double>(df);

  if (p > 0) {
    if (r2 >= 1.0) {
      result.f_statistic = std::numeric_limits<double>::infinity();
      result.significance_f = 0.0;
    } else {
      result.f_statistic = (r2 / static_cast<double>(p)) /
                           ((1.0 - r2) / static_cast<double>(df));
      result.significance_f = f_sf(result.f_statistic, static_cast<double>(p),
                                   static_cast<double>(df));
    }
  }
  return result;
}

}  // namespace vceval
