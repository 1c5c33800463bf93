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

#include "vceval/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "test_util.hpp"

using namespace vceval;
using vceval::test::TempDir;
using vceval::test::thrown_code;
using vceval::test::write_text;

namespace {

SystemMetrics row_with(const std::string& team, const std::string& lang,
                       double eer, double wer) {
  SystemMetrics row;
  row.team_id = team;
  row.task_id = "task2";
  if (!lang.empty()) row.language = lang;
  row.asv_eer_pct = eer;
  row.asr_wer_pct = wer;
  return row;
}

}  // namespace

TEST_CASE("rank_and_highlight") {
  SUBCASE("boundary ties are all included") {
    const std::map<std::string, double> values{{"A", 5}, {"B", 4}, {"C", 3},
                                               {"D", 2}, {"E", 1}, {"F", 1}};
    const auto top = rank_and_highlight(values, MetricDirection::kHigherBetter);
    CHECK(top.size() == 6);
  }
  SUBCASE("lower better") {
    const std::map<std::string, double> values{
        {"A", 10}, {"B", 2}, {"C", 3}, {"D", 4}, {"E", 5}, {"F", 6}, {"G", 7}};
    const auto top =
        rank_and_highlight(values, MetricDirection::kLowerBetter);
    CHECK(top == std::set<std::string>{"B", "C", "D", "E", "F"});
  }
  SUBCASE("fewer teams than k") {
    const std::map<std::string, double> values{{"A", 1}, {"B", 2}};
    const auto top = rank_and_highlight(values, MetricDirection::kHigherBetter);
    CHECK(top.size() == 2);
  }
  SUBCASE("empty") {
    CHECK(thrown_code([&] {
            rank_and_highlight({}, MetricDirection::kHigherBetter);
          }) == ErrorCode::kEmptyTable);
  }
}

TEST_CASE("metric_value and directions") {
  SystemMetrics row;
  row.asv_eer_pct = 42.0;
  row.mosnet_scores["vcc18"] = 3.5;
  CHECK(metric_value(row, "asv_eer_pct") == 42.0);
  CHECK(metric_value(row, "mosnet_vcc18") == 3.5);
  CHECK(!metric_value(row, "mosnet_other").has_value());
  CHECK(!metric_value(row, "asr_wer_pct").has_value());

  CHECK(default_metric_direction("asr_wer_pct") == MetricDirection::kLowerBetter);
  CHECK(default_metric_direction("pmiss_src_pct") ==
        MetricDirection::kLowerBetter);
  CHECK(default_metric_direction("asv_eer_pct") ==
        MetricDirection::kHigherBetter);
  CHECK(default_metric_direction("min_tdcf_norm") ==
        MetricDirection::kHigherBetter);
}

TEST_CASE("correlation_table") {
  SUBCASE("identical columns correlate perfectly and get flagged") {
    std::map<std::string, double> metric{{"T1", 1}, {"T2", 2}, {"T3", 3},
                                         {"T4", 4}};
    std::map<std::string, double> noise{{"T1", 2}, {"T2", 1}, {"T3", 2.5},
                                        {"T4", 1.5}};
    const auto table = correlation_table({{"m_same", metric}, {"m_noise", noise}},
                                         {{"MOS", metric}});
    REQUIRE(table.rows.size() == 1);
    REQUIRE(table.rows[0].cells.size() == 2);
    CHECK(table.rows[0].cells[0].result->r == 1.0);
    CHECK(table.rows[0].best_metric == 0);
  }

  SUBCASE("two common teams is too few") {
    std::map<std::string, double> metric{{"T1", 1}, {"T2", 2}, {"T3", 3}};
    std::map<std::string, double> rating{{"T1", 1}, {"T2", 2}, {"T9", 3}};
    const auto table = correlation_table({{"m", metric}}, {{"MOS", rating}});
    CHECK(!table.rows[0].cells[0].result.has_value());
    CHECK(table.rows[0].cells[0].error.find("TooFewSamples") !=
          std::string::npos);
  }

  SUBCASE("independent synthetic data stays uncorrelated") {
    std::mt19937_64 rng(123);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::map<std::string, double> metric, rating;
    for (int i = 0; i < 200; ++i) {
      const std::string team = "T" + std::to_string(i);
      metric[team] = dist(rng);
      rating[team] = dist(rng);
    }
    const auto table = correlation_table({{"m", metric}}, {{"MOS", rating}});
    const auto& cell = table.rows[0].cells[0];
    REQUIRE(cell.result.has_value());
    CHECK(std::abs(cell.result->r) < 0.2);
    CHECK(cell.result->p_two_sided > 0.01);
  }
}

TEST_CASE("language_breakdown") {
  std::vector<SystemMetrics> rows;
  std::map<std::string, std::map<std::string, SubjectiveValue>> ratings;

  // Three languages, six teams; per-language ratings correlate with EER by
  // construction in Finnish only.
  std::mt19937_64 rng(55);
  std::normal_distribution<double> noise(0.0, 0.05);
  for (int i = 0; i < 6; ++i) {
    const std::string team = "T" + std::to_string(i + 1);
    for (const auto* lang : {"Finnish", "German", "Mandarin"}) {
      const double eer = 10.0 * (i + 1) + (lang[0] == 'G' ? 3.0 : 0.0);
      rows.push_back(row_with(team, lang, eer, 50.0 - eer));
      SubjectiveValue& value = ratings["SIM"][team];
      value.by_language[lang] =
          lang[0] == 'F' ? 1.0 + 0.05 * eer : noise(rng) + 2.0;
    }
  }

  const auto tables =
      language_breakdown(rows, {"asv_eer_pct", "asr_wer_pct"}, "ENG", ratings);
  REQUIRE(tables.size() == 3);
  for (const auto& table : tables) {
    REQUIRE(table.language.has_value());
    REQUIRE(table.rows.size() == 1);
    const auto& cell = table.rows[0].cells[0];
    REQUIRE(cell.result.has_value());
    if (*table.language == "Finnish") {
      CHECK(cell.result->r == doctest::Approx(1.0).epsilon(1e-9));
    }

    // Each per-language r equals a direct pearson over that subset.
    std::vector<double> x, y;
    for (const auto& row : rows) {
      if (*row.language != *table.language) continue;
      x.push_back(*row.asv_eer_pct);
      y.push_back(ratings["SIM"][row.team_id].by_language[*table.language]);
    }
    CHECK(cell.result->r == doctest::Approx(pearson(x, y).r).epsilon(1e-12));
  }

  SUBCASE("single annotated language reproduces the full-table result") {
    std::vector<SystemMetrics> single;
    std::map<std::string, std::map<std::string, SubjectiveValue>> single_ratings;
    std::map<std::string, double> pooled_metric, pooled_rating;
    for (int i = 0; i < 5; ++i) {
      const std::string team = "T" + std::to_string(i + 1);
      single.push_back(row_with(team, "German", 5.0 * i + 1.0, 40.0 - i));
      single_ratings["SIM"][team].by_language["German"] = 1.0 + 0.3 * i;
      pooled_metric[team] = 5.0 * i + 1.0;
      pooled_rating[team] = 1.0 + 0.3 * i;
    }
    const auto breakdown = language_breakdown(single, {"asv_eer_pct"}, "ENG",
                                              single_ratings);
    REQUIRE(breakdown.size() == 1);
    const auto full =
        correlation_table({{"asv_eer_pct", pooled_metric}}, {{"SIM", pooled_rating}});
    CHECK(breakdown[0].rows[0].cells[0].result->r ==
          doctest::Approx(full.rows[0].cells[0].result->r).epsilon(1e-12));
  }

  SUBCASE("unknown language annotation") {
    std::vector<SystemMetrics> bad{row_with("T1", "Klingon", 1.0, 2.0)};
    CHECK(thrown_code([&] {
            language_breakdown(bad, {"asv_eer_pct"}, "ENG", {});
          }) == ErrorCode::kUnknownLanguageCode);
  }
}

TEST_CASE("regression_table") {
  // Build teams whose target is an exact linear function of two predictors.
  std::vector<SystemMetrics> rows;
  std::map<std::string, std::map<std::string, double>> targets;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> eer(0.0, 50.0);
  std::uniform_real_distribution<double> wer(1.0, 90.0);
  std::uniform_real_distribution<double> mos(2.0, 4.5);
  for (int i = 0; i < 12; ++i) {
    SystemMetrics row;
    row.team_id = "T" + std::to_string(10 + i);
    row.task_id = "task1";
    row.asv_eer_pct = eer(rng);
    row.asr_wer_pct = wer(rng);
    row.cm_eer_pct = eer(rng);
    row.mosnet_scores["asvspoof19"] = mos(rng);
    targets["MOS"][row.team_id] =
        1.7 + 0.024 * *row.asv_eer_pct - 0.021 * *row.asr_wer_pct;
    rows.push_back(row);
  }

  const auto entries = regression_table(rows, default_regression_predictors(),
                                        "ENG", targets);
  REQUIRE(entries.size() == 1);
  const auto& entry = entries[0];
  REQUIRE(entry.result.has_value());
  REQUIRE(entry.predictors == default_regression_predictors());
  const auto& fit = *entry.result;
  // mosnet_asvspoof19, asr_wer_pct, asv_eer_pct, cm_eer_pct
  CHECK(fit.intercept == doctest::Approx(1.7).epsilon(1e-9));
  CHECK(fit.coefficients[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fit.coefficients[1] == doctest::Approx(-0.021).epsilon(1e-9));
  CHECK(fit.coefficients[2] == doctest::Approx(0.024).epsilon(1e-9));
  CHECK(fit.coefficients[3] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("collinear predictors are reported, not fatal") {
    for (auto& row : rows) row.cm_eer_pct = *row.asv_eer_pct;  // duplicate
    const auto collinear = regression_table(
        rows, default_regression_predictors(), "ENG", targets);
    REQUIRE(collinear.size() == 1);
    CHECK(!collinear[0].result.has_value());
    CHECK(collinear[0].error.find("RankDeficient") != std::string::npos);
  }

  SUBCASE("too few complete teams") {
    rows.resize(4);
    std::map<std::string, std::map<std::string, double>> small;
    for (const auto& row : rows) {
      small["MOS"][row.team_id] = 3.0 + 0.01 * *row.asv_eer_pct;
    }
    const auto entries2 =
        regression_table(rows, default_regression_predictors(), "ENG", small);
    CHECK(!entries2[0].result.has_value());
    CHECK(entries2[0].error.find("TooFewSamples") != std::string::npos);
  }
}

namespace {

// A small but complete campaign on disk: two teams, every metric.
std::filesystem::path build_campaign(const TempDir& dir) {
  const auto& root = dir.path();
  // Overlapping natural classes: EER 1/3 at threshold 0, so the ASV makes
  // some bona fide errors (C0 > 0 for the tandem metric).
  write_text(root / "nat_tar.txt",
             "NT E1 target 2.0\nNT E2 target 3.0\nNT E3 target -1.0\n");
  write_text(root / "nat_non.txt",
             "NT E1 nontarget -2.0\nNT E2 nontarget -3.0\nNT E3 nontarget 1.0\n");
  write_text(root / "gen_tar.txt", "NT E3 target 2.5\nNT E4 target 1.5\n");
  write_text(root / "cm_bona.txt", "CM E1 target 1.0\nCM E2 target 2.0\n");
  write_text(root / "ref_emb.txt", "r1 1.0 0.0\nr2 1.0 0.0\n");

  write_text(root / "t1_conv_tar.txt", "T1 E1 converted 1.8\nT1 E2 converted 2.2\n");
  write_text(root / "t1_conv_src.txt", "T1 E1 converted -1.0\nT1 E2 converted -2.0\n");
  write_text(root / "t1_cm.txt", "T1 E1 spoof -1.0\nT1 E2 spoof -0.5\n");
  write_text(root / "t1_emb.txt", "e1 1.0 0.0\ne2 0.0 1.0\n");
  write_text(root / "t1_mos18.txt", "E1 3.0\nE2 4.0\n");
  write_text(root / "t1_mos19.txt", "E1 3.5\nE2 3.5\n");
  write_text(root / "t1_trn.txt", "E1 | a b c d | a x c\n");

  write_text(root / "t2_conv_tar.txt", "T2 E1 converted -3.0\nT2 E2 converted -4.0\n");
  write_text(root / "t2_conv_src.txt", "T2 E1 converted 3.0\nT2 E2 converted 4.0\n");
  write_text(root / "t2_cm.txt", "T2 E1 spoof 1.0\nT2 E2 spoof 2.0\n");
  write_text(root / "t2_emb.txt", "e1 -1.0 0.0\ne2 -1.0 0.0\n");
  write_text(root / "t2_mos18.txt", "E1 2.0\nE2 2.5\n");
  write_text(root / "t2_mos19.txt", "E1 2.2\nE2 2.4\n");
  write_text(root / "t2_trn.txt", "E1 | a b | a b\n");

  return write_text(root / "manifest.json", R"({
    "team_ids": ["T1", "T2"],
    "tasks": [{
      "id": "task1",
      "asv_natural_target": "nat_tar.txt",
      "asv_natural_nontarget": "nat_non.txt",
      "asv_genuine_target": "gen_tar.txt",
      "cm_bona_fide": "cm_bona.txt",
      "reference_embeddings": "ref_emb.txt",
      "teams": {
        "T1": {
          "asv_converted_vs_target": "t1_conv_tar.txt",
          "asv_converted_vs_source": "t1_conv_src.txt",
          "cm_scores": "t1_cm.txt",
          "embeddings": "t1_emb.txt",
          "mos_predictions": {"vcc18": "t1_mos18.txt", "asvspoof19": "t1_mos19.txt"},
          "transcripts": "t1_trn.txt"
        },
        "T2": {
          "asv_converted_vs_target": "t2_conv_tar.txt",
          "asv_converted_vs_source": "t2_conv_src.txt",
          "cm_scores": "t2_cm.txt",
          "embeddings": "t2_emb.txt",
          "mos_predictions": {"vcc18": "t2_mos18.txt", "asvspoof19": "t2_mos19.txt"},
          "transcripts": "t2_trn.txt"
        }
      }
    }],
    "subjective_scores": {"ENG": {"task1": {
      "MOS": {"T1": 3.4, "T2": 2.2},
      "SIM": {"T1": 3.0, "T2": 1.5}
    }}}
  })");
}

}  // namespace

TEST_CASE("evaluate_campaign end to end on a tiny campaign") {
  TempDir dir;
  const auto manifest_path = build_campaign(dir);
  const auto report = evaluate_campaign(load_manifest(manifest_path));

  // With two teams the correlation/regression cells degrade to
  // TooFewSamples diagnostics; no metric cell may fail.
  for (const auto& d : report.diagnostics) {
    CHECK((d.metric.rfind("correlation/", 0) == 0 ||
           d.metric.rfind("regression/", 0) == 0));
  }
  REQUIRE(report.tasks.size() == 1);
  const auto& task = report.tasks[0];
  REQUIRE(task.rows.size() == 2);

  const auto& t1 = task.rows[0];
  CHECK(t1.team_id == "T1");
  // Natural threshold is the midpoint of [-2, 2) = 0; every converted-vs-
  // target score of T1 is above it, both conv-src scores below it.
  CHECK(task.natural_threshold == doctest::Approx(0.0));
  CHECK(*t1.pfa_tar_pct == 100.0);
  CHECK(*t1.pmiss_src_pct == 100.0);
  // Genuine {2.5, 1.5} vs converted {1.8, 2.2} interleave to EER 50%.
  CHECK(*t1.asv_eer_pct == doctest::Approx(50.0));
  CHECK(*t1.cm_eer_pct == 0.0);
  // Embeddings (1,0) and (0,1) against reference mean (1,0): cosines 1, 0.
  CHECK(*t1.cosine == doctest::Approx(0.5));
  CHECK(t1.mosnet_scores.at("vcc18") == doctest::Approx(3.5));
  CHECK(*t1.asr_wer_pct == doctest::Approx(50.0));
  CHECK(t1.min_tdcf_norm.has_value());

  const auto& t2 = task.rows[1];
  CHECK(*t2.pfa_tar_pct == 0.0);
  CHECK(*t2.pmiss_src_pct == 0.0);
  CHECK(*t2.asv_eer_pct == 0.0);
  // T2's CM scores sit inside the bona fide range: EER 50%.
  CHECK(*t2.cm_eer_pct == doctest::Approx(50.0));
  CHECK(*t2.cosine == doctest::Approx(-1.0));
  CHECK(*t2.asr_wer_pct == 0.0);

  // T2's spoof never passes ASV at tau = 0 while bona fide errors exist:
  // the accept-all countermeasure is optimal and the normalized cost is 1.
  CHECK(*t2.min_tdcf_norm == doctest::Approx(1.0));

  CHECK(task.highlights.at("asv_eer_pct").count("T1") == 1);
  REQUIRE(task.correlations.size() == 1);
  CHECK(task.correlations[0].group == "ENG");
  // Two teams only: every cell is a TooFewSamples diagnostic, not a value.
  CHECK(!task.correlations[0].rows[0].cells[0].result.has_value());
  REQUIRE(task.regressions.size() == 2);
  CHECK(!task.regressions[0].result.has_value());
}

TEST_CASE("evaluate_campaign collects diagnostics and keeps going") {
  TempDir dir;
  write_text(dir.path() / "nat_tar.txt", "NT E1 target 2.0\nNT E2 target 3.0\n");
  write_text(dir.path() / "nat_non.txt",
             "NT E1 nontarget -2.0\nNT E2 nontarget -3.0\n");
  write_text(dir.path() / "gen_tar.txt", "NT E3 target 2.5\n");
  write_text(dir.path() / "conv.txt", "T1 E1 converted 1.0\n");
  write_text(dir.path() / "mos.txt", "E1 3.0\n");
  const auto manifest_path = write_text(dir.path() / "m.json", R"({
    "team_ids": ["T1"],
    "tasks": [{
      "id": "task1",
      "asv_natural_target": "nat_tar.txt",
      "asv_natural_nontarget": "nat_non.txt",
      "asv_genuine_target": "gen_tar.txt",
      "teams": {"T1": {
        "asv_converted_vs_target": "conv.txt",
        "asv_converted_vs_source": "missing_file.txt",
        "mos_predictions": {"vcc18": "mos.txt"}
      }}
    }]
  })");

  const auto report = evaluate_campaign(load_manifest(manifest_path));
  REQUIRE(report.tasks.size() == 1);
  const auto& row = report.tasks[0].rows[0];
  CHECK(row.asv_eer_pct.has_value());
  CHECK(row.pfa_tar_pct.has_value());
  CHECK(!row.pmiss_src_pct.has_value());  // the broken cell stays absent
  CHECK(row.mosnet_scores.count("vcc18") == 1);

  REQUIRE(report.diagnostics.size() == 1);
  CHECK(report.diagnostics[0].team_id == "T1");
  CHECK(report.diagnostics[0].metric == "pmiss_src_pct");
  CHECK(report.diagnostics[0].message.find("missing") != std::string::npos);
}

TEST_CASE("rank_and_highlight keeps at least min(k, teams) and every boundary tie") {
  std::mt19937_64 rng(60);
  std::uniform_int_distribution<int> value_dist(0, 9);  // many ties
  for (int rep = 0; rep < 200; ++rep) {
    std::map<std::string, double> values;
    const std::size_t teams = 1 + rng() % 12;
    for (std::size_t i = 0; i < teams; ++i) {
      values["T" + std::to_string(i)] = value_dist(rng);
    }
    for (const auto direction :
         {MetricDirection::kHigherBetter, MetricDirection::kLowerBetter}) {
      const auto top = rank_and_highlight(values, direction);
      CHECK(top.size() >= std::min<std::size_t>(5, teams));
      // Every team tied with some member of the set is itself in the set.
      for (const auto& [team, value] : values) {
        if (top.count(team)) continue;
        for (const auto& member : top) {
          CHECK(values.at(member) != value);
        }
      }
    }
  }
}

TEST_CASE("per-language input blocks produce language rows and breakdowns") {
  TempDir dir;
  const auto& root = dir.path();
  write_text(root / "nat_tar.txt",
             "NT E1 target 2.0\nNT E2 target 3.0\nNT E3 target -1.0\n");
  write_text(root / "nat_non.txt",
             "NT E1 nontarget -2.0\nNT E2 nontarget -3.0\nNT E3 nontarget 1.0\n");
  write_text(root / "gen_tar.txt", "NT E3 target 2.5\nNT E4 target 1.5\n");
  // Pooled and per-language converted trials for four teams, with Finnish
  // conversions much stronger than German ones.
  std::string manifest_teams;
  for (int i = 1; i <= 4; ++i) {
    const std::string team = "T" + std::to_string(i);
    const double strength = 0.5 * i;
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "%s E1 converted %.2f\n%s E2 converted %.2f\n", team.c_str(),
                  1.0 + strength, team.c_str(), 2.0 + strength);
    write_text(root / (team + "_fin.txt"), buffer);
    std::snprintf(buffer, sizeof(buffer),
                  "%s E1 converted %.2f\n%s E2 converted %.2f\n", team.c_str(),
                  -2.0 - strength, team.c_str(), -1.0 - strength);
    write_text(root / (team + "_ger.txt"), buffer);
    std::snprintf(buffer, sizeof(buffer),
                  "%s E1 converted %.2f\n%s E2 converted %.2f\n", team.c_str(),
                  strength, team.c_str(), -strength);
    write_text(root / (team + "_all.txt"), buffer);
    manifest_teams += "\"" + team + "\": {"
        "\"asv_converted_vs_target\": \"" + team + "_all.txt\","
        "\"languages\": {"
        "\"F\": {\"asv_converted_vs_target\": \"" + team + "_fin.txt\"},"
        "\"G\": {\"asv_converted_vs_target\": \"" + team + "_ger.txt\"}}}";
    if (i != 4) manifest_teams += ",";
  }
  const auto manifest_path = write_text(root / "m.json", R"({
    "team_ids": ["T1", "T2", "T3", "T4"],
    "tasks": [{
      "id": "task2",
      "asv_natural_target": "nat_tar.txt",
      "asv_natural_nontarget": "nat_non.txt",
      "asv_genuine_target": "gen_tar.txt",
      "teams": {)" + manifest_teams + R"(}
    }],
    "subjective_scores": {"ENG": {"task2": {
      "SIM": {"T1": {"F": 1.5, "G": 1.2}, "T2": {"F": 2.0, "G": 1.4},
               "T3": {"F": 2.5, "G": 1.1}, "T4": {"F": 3.0, "G": 1.3}}
    }}}
  })");

  const auto report = evaluate_campaign(load_manifest(manifest_path));
  REQUIRE(report.tasks.size() == 1);
  const auto& task = report.tasks[0];
  CHECK(task.rows.size() == 4);
  REQUIRE(task.language_rows.size() == 8);
  CHECK(task.language_rows[0].language == "Finnish");
  CHECK(task.language_rows[1].language == "German");
  // Finnish conversions all clear the threshold, German ones never do.
  for (const auto& row : task.language_rows) {
    if (*row.language == "Finnish") CHECK(*row.pfa_tar_pct == 100.0);
    if (*row.language == "German") CHECK(*row.pfa_tar_pct == 0.0);
  }

  // One pooled correlation table plus one per language.
  REQUIRE(task.correlations.size() >= 2);
  bool found_finnish = false;
  for (const auto& table : task.correlations) {
    if (!table.language) continue;
    if (*table.language == "Finnish") {
      found_finnish = true;
      // Finnish EER values rise with the rating by construction.
      const auto& cell = table.rows[0].cells[0];
      REQUIRE(cell.result.has_value());
      CHECK(cell.result->n == 4);
    }
  }
  CHECK(found_finnish);

  // The CSV emitter writes the per-language table.
  TempDir out;
  emit_report(report, ReportFormat::kCsv, out.path());
  const auto languages_csv =
      test::read_text(out.path() / "metrics_task2_languages.csv");
  CHECK(languages_csv.find("T1,Finnish,") != std::string::npos);
  CHECK(languages_csv.find("T4,German,") != std::string::npos);
}

TEST_CASE("out-of-range mean MOS becomes a diagnostic, not a cell") {
  TempDir dir;
  write_text(dir.path() / "mos.txt", "E1 7.5\nE2 8.0\n");
  const auto manifest_path = write_text(dir.path() / "m.json", R"({
    "team_ids": ["T1"],
    "tasks": [{"id": "task1", "teams": {"T1": {
      "mos_predictions": {"vcc18": "mos.txt"}
    }}}]
  })");
  const auto report = evaluate_campaign(load_manifest(manifest_path));
  CHECK(report.tasks[0].rows[0].mosnet_scores.empty());
  REQUIRE(report.diagnostics.size() == 1);
  CHECK(report.diagnostics[0].metric == "mosnet_vcc18");
  CHECK(report.diagnostics[0].message.find("outside [1, 5]") !=
        std::string::npos);
}

TEST_CASE("evaluate_campaign rejects empty manifests") {
  EvaluationManifest manifest;
  CHECK(thrown_code([&] { evaluate_campaign(manifest); }) ==
        ErrorCode::kNoTeams);
}

TEST_CASE("emit_report determinism and shapes") {
  TempDir dir;
  const auto manifest_path = build_campaign(dir);
  const auto report = evaluate_campaign(load_manifest(manifest_path));

  for (const auto format :
       {ReportFormat::kCsv, ReportFormat::kJson, ReportFormat::kMarkdown}) {
    TempDir out1, out2;
    const auto files1 = emit_report(report, format, out1.path());
    const auto files2 = emit_report(report, format, out2.path());
    REQUIRE(files1.size() == files2.size());
    for (std::size_t i = 0; i < files1.size(); ++i) {
      CHECK(files1[i].filename() == files2[i].filename());
      CHECK(test::read_text(files1[i]) == test::read_text(files2[i]));
    }
  }

  SUBCASE("metrics CSV has one line per team plus header") {
    TempDir out;
    emit_report(report, ReportFormat::kCsv, out.path());
    const auto csv = test::read_text(out.path() / "metrics_task1.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.rfind("team,asv_eer_pct,", 0) == 0);
  }

  SUBCASE("markdown marks highlighted cells") {
    TempDir out;
    emit_report(report, ReportFormat::kMarkdown, out.path());
    const auto md = test::read_text(out.path() / "report.md");
    CHECK(md.find("**") != std::string::npos);
    CHECK(md.find("| T1 |") != std::string::npos);
  }
}

TEST_CASE("format_metrics_csv on an empty row set is headers only") {
  const std::string csv = format_metrics_csv({});
  CHECK(csv == "team\n");
}
