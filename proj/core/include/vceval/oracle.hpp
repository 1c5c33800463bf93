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

#ifndef VCEVAL_ORACLE_HPP_
#define VCEVAL_ORACLE_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vceval/wer.hpp"

// Brute-force reference implementations, kept free of any code from the
// modules they check.  They are shipped with the library so the fast paths
// stay auditable; all of them are slow by design.
namespace vceval::oracle {

// Equal error rate by direct counting at every staircase plateau (midpoints
// of consecutive distinct pooled scores plus the two infinite endpoints),
// then the same interpolated-crossing convention as the fast path.  If
// `threshold` is non-null it receives the crossing threshold.
double brute_eer(std::span<const double> positives,
                 std::span<const double> negatives,
                 double* threshold = nullptr);

// Minimum-cost alignment counts by exhaustive enumeration of all monotone
// alignments.  Feasible only for short sequences; both inputs are capped at
// 8 tokens.
AlignmentCounts brute_align(std::span<const std::string> reference,
                            std::span<const std::string> hypothesis);

enum class TailDensity { kStudentT, kFDist };

// One-sided upper-tail probability P(X >= x) by adaptive Simpson quadrature
// of the density (absolute tolerance 1e-11).  For kStudentT, param1 is the
// degrees of freedom and param2 is ignored.
double quadrature_tail(TailDensity density, double param1, double param2,
                       double x);

// Location/scale of one synthetic score population.
struct ScoreDistribution {
  double location = 0.0;
  double scale = 1.0;
};

struct FixtureSpec {
  std::size_t teams = 4;
  std::size_t utterances_per_class = 32;
  std::uint64_t seed = 1;
  std::size_t embedding_dim = 8;
  std::string task_id = "task1";

  ScoreDistribution natural_target{2.5, 0.6};
  ScoreDistribution natural_nontarget{-2.5, 0.6};
  ScoreDistribution converted_vs_target{0.5, 1.2};
  ScoreDistribution converted_vs_source{-1.0, 1.2};
  ScoreDistribution cm_bona_fide{1.5, 0.8};
  ScoreDistribution cm_spoof{-0.5, 1.0};
  ScoreDistribution mos_vcc18{3.3, 0.4};
  ScoreDistribution mos_asvspoof19{3.1, 0.4};
  // Per-token corruption probability of the hypothesis transcripts; the
  // per-team value is jittered around `location` by `scale`.
  ScoreDistribution word_error{0.15, 0.10};

  void validate() const;
};

FixtureSpec load_fixture_spec(const std::filesystem::path& path);

// Expected values for one generated team, computed through oracle paths
// only (brute_eer, brute_align, direct counting).
struct ExpectedTeamMetrics {
  std::string team_id;
  double asv_eer_pct = 0.0;
  double pfa_tar_pct = 0.0;
  double pmiss_src_pct = 0.0;
  double cosine = 0.0;
  double cm_eer_pct = 0.0;
  double mosnet_vcc18 = 0.0;
  double mosnet_asvspoof19 = 0.0;
  double asr_wer_pct = 0.0;
  double min_tdcf_norm = 0.0;
};

struct GeneratedFixture {
  std::filesystem::path manifest_path;
  std::filesystem::path expected_metrics_path;
  std::vector<ExpectedTeamMetrics> expected;
};

// Writes a complete synthetic campaign (score files, embeddings,
// transcripts, MOS predictions, manifest, subjective scores) under out_dir,
// plus an expected-metrics CSV computed via oracle paths only.  Everything
// is a pure function of the spec, so equal specs give byte-identical trees.
GeneratedFixture generate_fixture(const FixtureSpec& spec,
                                  const std::filesystem::path& out_dir);

}  // namespace vceval::oracle

#endif  // VCEVAL_ORACLE_HPP_
