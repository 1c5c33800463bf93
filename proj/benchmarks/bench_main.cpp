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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "vceval/detection.hpp"
#include "vceval/stats.hpp"
#include "vceval/tandem.hpp"
#include "vceval/wer.hpp"

namespace {

using namespace vceval;

std::vector<double> random_scores(std::size_t n, double location,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(location, 1.0);
  std::vector<double> scores(n);
  for (double& s : scores) s = dist(rng);
  return scores;
}

void BM_eer(benchmark::State& state) {
  const auto pos = random_scores(state.range(0), 0.5, 1);
  const auto neg = random_scores(state.range(0), -0.5, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eer(det_curve(pos, neg)).eer);
  }
}
BENCHMARK(BM_eer)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_min_tdcf(benchmark::State& state) {
  const auto bona = random_scores(state.range(0), 1.0, 3);
  const auto spoof = random_scores(state.range(0), -1.0, 4);
  const TandemConstants constants =
      tandem_constants({0.05, 0.05, 0.4}, CostModel{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_tdcf(bona, spoof, constants).min_tdcf_norm);
  }
}
BENCHMARK(BM_min_tdcf)->Arg(1000)->Arg(10000);

void BM_align(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> vocab{"a", "b", "c", "d", "e"};
  std::vector<std::string> ref(state.range(0));
  std::vector<std::string> hyp(state.range(0));
  for (auto& t : ref) t = vocab[rng() % vocab.size()];
  for (auto& t : hyp) t = vocab[rng() % vocab.size()];
  for (auto _ : state) {
    benchmark::DoNotOptimize(align(ref, hyp).edits());
  }
}
BENCHMARK(BM_align)->Arg(20)->Arg(100)->Arg(400);

void BM_student_t_p(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    t += 0.001;
    benchmark::DoNotOptimize(student_t_two_sided_p(t, 29.0));
  }
}
BENCHMARK(BM_student_t_p);

void BM_ols(benchmark::State& state) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> dist(0.0, 1.0);
  const std::size_t n = state.range(0);
  std::vector<std::vector<double>> columns(4, std::vector<double>(n));
  std::vector<double> y(n);
  for (auto& column : columns) {
    for (double& v : column) v = dist(rng);
  }
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = 1.0 + columns[0][i] - 0.5 * columns[2][i] + dist(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ols_regress(columns, y).r_squared);
  }
}
BENCHMARK(BM_ols)->Arg(32)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
