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

#include <cmath>
#include <random>

#include <doctest.h>

#include "test_util.hpp"
#include "vceval/oracle.hpp"

using namespace vceval;

TEST_CASE("det_curve on separated classes reaches the perfect corner") {
  const std::vector<double> pos{2, 3};
  const std::vector<double> neg{0, 1};
  const DetCurve curve = det_curve(pos, neg);

  // Endpoints.
  CHECK(curve.p_miss.front() == 0.0);
  CHECK(curve.p_fa.front() == 1.0);
  CHECK(curve.p_miss.back() == 1.0);
  CHECK(curve.p_fa.back() == 0.0);

  // (0, 0) is reached for tau in [1, 2).
  bool perfect = false;
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    if (curve.p_miss[i] == 0.0 && curve.p_fa[i] == 0.0) {
      perfect = true;
      CHECK(curve.thresholds[i] >= 1.0);
      CHECK(curve.thresholds[i] < 2.0);
    }
  }
  CHECK(perfect);
}

TEST_CASE("det_curve monotonicity") {
  const std::vector<double> pos{1, 3, 5, 2.5, -0.5};
  const std::vector<double> neg{0, 2, 4, 4, 1.5};
  const DetCurve curve = det_curve(pos, neg);
  for (std::size_t i = 1; i < curve.thresholds.size(); ++i) {
    CHECK(curve.p_miss[i] >= curve.p_miss[i - 1]);
    CHECK(curve.p_fa[i] <= curve.p_fa[i - 1]);
  }
}

TEST_CASE("det_curve interleaved example") {
  const std::vector<double> pos{1, 3, 5};
  const std::vector<double> neg{0, 2, 4};
  const DetCurve curve = det_curve(pos, neg);
  // At tau = 2: one positive missed, one negative accepted.
  bool found = false;
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    if (curve.thresholds[i] == 2.0) {
      found = true;
      CHECK(curve.p_miss[i] == doctest::Approx(1.0 / 3.0));
      CHECK(curve.p_fa[i] == doctest::Approx(1.0 / 3.0));
    }
  }
  CHECK(found);
  CHECK(eer(curve).eer == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("eer of separated and identical distributions") {
  CHECK(eer(det_curve(std::vector<double>{2, 3}, std::vector<double>{0, 1})).eer ==
        0.0);
  const std::vector<double> same{0, 1};
  const EerResult identical = eer(det_curve(same, same));
  CHECK(identical.eer == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(identical.threshold == doctest::Approx(0.5));
}

TEST_CASE("eer is not clamped when negatives dominate") {
  const std::vector<double> pos{0, 1};
  const std::vector<double> neg{10, 11};
  const EerResult result = eer(det_curve(pos, neg));
  CHECK(result.eer == doctest::Approx(1.0));
  CHECK(result.eer > 0.5);

  // Partial dominance also agrees with the sweep oracle.
  const std::vector<double> pos2{0, 1, 2, 7};
  const std::vector<double> neg2{3, 4, 5, 6};
  const EerResult result2 = eer(det_curve(pos2, neg2));
  CHECK(result2.eer > 0.5);
  CHECK(result2.eer ==
        doctest::Approx(oracle::brute_eer(pos2, neg2)).epsilon(1e-12));
}

TEST_CASE("fixed_threshold_rate conventions") {
  const std::vector<double> scores{0.9, 1.1, 2.0};
  CHECK(fixed_threshold_rate(scores, 1.0, RateDirection::kFaAbove) ==
        doctest::Approx(2.0 / 3.0));
  CHECK(fixed_threshold_rate(scores, 5.0, RateDirection::kFaAbove) == 0.0);
  // Ties reject.
  CHECK(fixed_threshold_rate(std::vector<double>{1.0}, 1.0,
                             RateDirection::kFaAbove) == 0.0);
  CHECK(fixed_threshold_rate(std::vector<double>{1.0}, 1.0,
                             RateDirection::kMissAtOrBelow) == 1.0);
}

TEST_CASE("natural_threshold midpoint conventions") {
  CHECK(natural_threshold(std::vector<double>{2, 3}, std::vector<double>{0, 1}) ==
        doctest::Approx(1.5));
  const std::vector<double> same{0, 1};
  CHECK(natural_threshold(same, same) == doctest::Approx(0.5));
}

TEST_CASE("natural_threshold crossing on random data equals oracle") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> tar(1.0, 1.0);
  std::normal_distribution<double> non(-1.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> targets(40);
    std::vector<double> nontargets(35);
    for (double& s : targets) s = tar(rng);
    for (double& s : nontargets) s = non(rng);
    double oracle_tau = 0.0;
    const double oracle_eer =
        oracle::brute_eer(targets, nontargets, &oracle_tau);
    const EerResult fast = eer(det_curve(targets, nontargets));
    CHECK(fast.eer == doctest::Approx(oracle_eer).epsilon(1e-12));
    CHECK(fast.threshold == doctest::Approx(oracle_tau));
  }
}

TEST_CASE("asv_assessment reference triples") {
  // Natural calibration: clean separation, threshold lands at 0.
  const std::vector<double> natural_tar{1, 2, 3};
  const std::vector<double> natural_non{-3, -2, -1};

  SUBCASE("ideal conversion: indistinguishable from target, far from source") {
    const std::vector<double> genuine{1, 2, 3};
    const std::vector<double> conv_tar{1, 2, 3};   // same distribution
    const std::vector<double> conv_src{-5, -6, -7};  // rejected by source model
    const AsvMetrics m =
        asv_assessment(natural_tar, natural_non, conv_tar, genuine, conv_src);
    CHECK(m.eer_pct == 50.0);
    CHECK(m.pfa_tar_pct == 100.0);
    CHECK(m.pmiss_src_pct == 100.0);
  }

  SUBCASE("useless conversion: identical to source") {
    const std::vector<double> genuine{1, 2, 3};
    const std::vector<double> conv_tar{-5, -6, -7};  // nothing like the target
    const std::vector<double> conv_src{5, 6, 7};     // source re-identified
    const AsvMetrics m =
        asv_assessment(natural_tar, natural_non, conv_tar, genuine, conv_src);
    CHECK(m.eer_pct == 0.0);
    CHECK(m.pfa_tar_pct == 0.0);
    CHECK(m.pmiss_src_pct == 0.0);
  }
}

TEST_CASE("cm_eer conventions") {
  CHECK(cm_eer(std::vector<double>{5, 6}, std::vector<double>{1, 2}).eer == 0.0);
  const std::vector<double> same{0, 1, 2};
  CHECK(cm_eer(same, same).eer == doctest::Approx(0.5));
}

TEST_CASE("empty classes are rejected") {
  using test::thrown_code;
  const std::vector<double> some{1.0};
  const std::vector<double> none;
  CHECK(thrown_code([&] { det_curve(none, some); }) == ErrorCode::kEmptyClass);
  CHECK(thrown_code([&] { det_curve(some, none); }) == ErrorCode::kEmptyClass);
  CHECK(thrown_code([&] {
          fixed_threshold_rate(none, 0.0, RateDirection::kFaAbove);
        }) == ErrorCode::kEmptyClass);
  const std::vector<double> bad{1.0, std::nan("")};
  CHECK(thrown_code([&] { det_curve(bad, some); }) ==
        ErrorCode::kNonFiniteScore);
}

TEST_CASE("eer crossing has equal interpolated rates") {
  std::mt19937_64 rng(1234);
  std::normal_distribution<double> pos_dist(0.6, 1.2);
  std::normal_distribution<double> neg_dist(-0.6, 0.9);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> pos(1 + rng() % 30);
    std::vector<double> neg(1 + rng() % 30);
    for (double& s : pos) s = pos_dist(rng);
    for (double& s : neg) s = neg_dist(rng);
    const DetCurve curve = det_curve(pos, neg);
    const EerResult result = eer(curve);

    // Interpolated p_miss and p_fa coincide at the crossing: both equal the
    // reported rate by construction, so check against the staircase bounds.
    std::size_t i = 0;
    while (curve.p_fa[i] - curve.p_miss[i] > 0.0) ++i;
    CHECK(result.eer >= curve.p_miss[i == 0 ? 0 : i - 1] - 1e-12);
    CHECK(result.eer <= curve.p_miss[i] + 1e-12);
  }
}

TEST_CASE("monotone transform invariance") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> dist(0.0, 2.0);
  auto transform = [](double x) { return x * x * x + 2.0 * x; };  // strictly increasing
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> pos(12), neg(15);
    for (double& s : pos) s = dist(rng);
    for (double& s : neg) s = dist(rng) + 0.8;
    std::vector<double> pos_t(pos.size()), neg_t(neg.size());
    for (std::size_t i = 0; i < pos.size(); ++i) pos_t[i] = transform(pos[i]);
    for (std::size_t i = 0; i < neg.size(); ++i) neg_t[i] = transform(neg[i]);

    CHECK(eer(det_curve(pos, neg)).eer ==
          doctest::Approx(eer(det_curve(pos_t, neg_t)).eer).epsilon(1e-12));

    const double tau = 0.4;
    CHECK(fixed_threshold_rate(pos, tau, RateDirection::kMissAtOrBelow) ==
          fixed_threshold_rate(pos_t, transform(tau),
                               RateDirection::kMissAtOrBelow));
    CHECK(fixed_threshold_rate(neg, tau, RateDirection::kFaAbove) ==
          fixed_threshold_rate(neg_t, transform(tau), RateDirection::kFaAbove));
  }
}

TEST_CASE("eer equals sweep oracle on random score sets") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> pos_dist(0.5, 1.0);
  std::normal_distribution<double> neg_dist(-0.5, 1.0);
  std::uniform_int_distribution<std::size_t> size_dist(1, 50);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> pos(size_dist(rng));
    std::vector<double> neg(size_dist(rng));
    for (double& s : pos) s = pos_dist(rng);
    for (double& s : neg) s = neg_dist(rng);
    const double fast = eer(det_curve(pos, neg)).eer;
    const double brute = oracle::brute_eer(pos, neg);
    CHECK(std::abs(fast - brute) <= 1e-9);
  }
}
