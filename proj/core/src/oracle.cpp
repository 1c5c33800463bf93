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

#include "vceval/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace vceval::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double count_at_or_below(std::span<const double> scores, double tau) {
  std::size_t count = 0;
  for (double s : scores) {
    if (s <= tau) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(scores.size());
}

double count_above(std::span<const double> scores, double tau) {
  std::size_t count = 0;
  for (double s : scores) {
    if (s > tau) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(scores.size());
}

}  // namespace

double brute_eer(std::span<const double> positives,
                 std::span<const double> negatives, double* threshold) {
  if (positives.empty()) {
    throw Error(ErrorCode::kEmptyClass, "positive score set is empty");
  }
  if (negatives.empty()) {
    throw Error(ErrorCode::kEmptyClass, "negative score set is empty");
  }

  // Candidate thresholds visit every plateau of the staircase once: one
  // representative per half-open interval between consecutive distinct
  // pooled scores, plus the infinite endpoints.
  std::set<double> distinct(positives.begin(), positives.end());
  distinct.insert(negatives.begin(), negatives.end());
  std::vector<double> taus;
  taus.reserve(distinct.size() + 2);
  taus.push_back(-kInf);
  taus.insert(taus.end(), distinct.begin(), distinct.end());
  taus.push_back(kInf);

  std::vector<double> pm(taus.size());
  std::vector<double> pf(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    pm[i] = count_at_or_below(positives, taus[i]);
    pf[i] = count_above(negatives, taus[i]);
  }

  std::size_t i = 0;
  while (pf[i] - pm[i] > 0.0) ++i;

  double eer_value = 0.0;
  double tau_value = 0.0;
  if (pf[i] - pm[i] == 0.0) {
    std::size_t j = i;
    while (j + 1 < taus.size() && pf[j + 1] - pm[j + 1] == 0.0) ++j;
    eer_value = pm[i];
    tau_value = 0.5 * (taus[i] + taus[j + 1]);
  } else {
    const double d0 = pf[i - 1] - pm[i - 1];
    const double d1 = pf[i] - pm[i];
    const double t = d0 / (d0 - d1);
    eer_value = pm[i - 1] + t * (pm[i] - pm[i - 1]);
    tau_value = taus[i];
  }
  if (threshold != nullptr) *threshold = tau_value;
  return eer_value;
}

namespace {

struct BruteCost {
  std::size_t edits;
  std::size_t insertions;
  std::size_t deletions;

  bool operator<(const BruteCost& other) const {
    if (edits != other.edits) return edits < other.edits;
    if (insertions != other.insertions) return insertions < other.insertions;
    return deletions < other.deletions;
  }
};

void enumerate_alignments(std::span<const std::string> ref,
                          std::span<const std::string> hyp, std::size_t i,
                          std::size_t j, BruteCost acc, std::size_t subs,
                          BruteCost* best, std::size_t* best_subs) {
  if (i == ref.size() && j == hyp.size()) {
    if (acc < *best) {
      *best = acc;
      *best_subs = subs;
    }
    return;
  }
  if (i < ref.size() && j < hyp.size()) {
    const std::size_t sub = ref[i] == hyp[j] ? 0 : 1;
    enumerate_alignments(ref, hyp, i + 1, j + 1,
                         {acc.edits + sub, acc.insertions, acc.deletions},
                         subs + sub, best, best_subs);
  }
  if (i < ref.size()) {
    enumerate_alignments(ref, hyp, i + 1, j,
                         {acc.edits + 1, acc.insertions, acc.deletions + 1},
                         subs, best, best_subs);
  }
  if (j < hyp.size()) {
    enumerate_alignments(ref, hyp, i, j + 1,
                         {acc.edits + 1, acc.insertions + 1, acc.deletions},
                         subs, best, best_subs);
  }
}

}  // namespace

AlignmentCounts brute_align(std::span<const std::string> reference,
                            std::span<const std::string> hypothesis) {
  if (reference.empty()) {
    throw Error(ErrorCode::kEmptyReference, "reference is empty");
  }
  if (reference.size() > 8 || hypothesis.size() > 8) {
    throw Error(ErrorCode::kInputTooLong,
                "exhaustive alignment is limited to 8 tokens per side");
  }

  BruteCost best{std::numeric_limits<std::size_t>::max(), 0, 0};
  std::size_t best_subs = 0;
  enumerate_alignments(reference, hypothesis, 0, 0, {0, 0, 0}, 0, &best,
                       &best_subs);

  AlignmentCounts counts;
  counts.substitutions = best_subs;
  counts.insertions = best.insertions;
  counts.deletions = best.deletions;
  counts.reference_words = reference.size();
  return counts;
}

namespace {

double adaptive_simpson_step(const std::function<double(double)>& f, double a,
                             double b, double fa, double fm, double fb,
                             double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol,
                               depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol,
                               depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (a >= b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

constexpr double kQuadTol = 1e-11;

double student_t_log_norm(double df) {
  return std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
         0.5 * std::log(df * M_PI);
}

// P(T >= x) for x >= 0: direct integral up to c = max(x, 1), then the
// remaining tail through the substitution t = 1 / w^2 ... w = sqrt(1/t),
// which removes both the infinite limit and any endpoint blow-up.
double student_t_tail(double df, double x) {
  const double log_norm = student_t_log_norm(df);
  auto density = [&](double t) {
    return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(t * t / df));
  };
  // f(1/u)/u^2 expressed without dividing by u: C * df^{(df+1)/2} *
  // u^{df-1} * (df u^2 + 1)^{-(df+1)/2}; evaluated at u = w^2 with the
  // Jacobian 2w folded in, the integrand is ~ w^{2 df - 1} near zero.
  auto tail_integrand = [&](double w) {
    if (w == 0.0) return 0.0;
    const double u = w * w;
    return 2.0 * w *
           std::exp(log_norm + 0.5 * (df + 1.0) * std::log(df) +
                    (df - 1.0) * std::log(u) -
                    0.5 * (df + 1.0) * std::log(df * u * u + 1.0));
  };

  const double c = std::max(x, 1.0);
  double result = 0.0;
  if (x < c) result += adaptive_simpson(density, x, c, 0.5 * kQuadTol);
  result += adaptive_simpson(tail_integrand, 0.0, std::sqrt(1.0 / c),
                             0.5 * kQuadTol);
  return result;
}

double f_log_norm(double d1, double d2) {
  return std::lgamma(0.5 * (d1 + d2)) - std::lgamma(0.5 * d1) -
         std::lgamma(0.5 * d2) + 0.5 * d1 * (std::log(d1) - std::log(d2));
}

double f_dist_tail(double d1, double d2, double x) {
  const double log_norm = f_log_norm(d1, d2);
  auto density = [&](double t) {
    return std::exp(log_norm + (0.5 * d1 - 1.0) * std::log(t) -
                    0.5 * (d1 + d2) * std::log1p(d1 * t / d2));
  };
  // f(1/u)/u^2 = A * d2^{(d1+d2)/2} * u^{d2/2-1} * (d2 u + d1)^{-(d1+d2)/2};
  // with u = w^2 the integrand is ~ w^{d2-1} near zero, hence bounded.
  auto tail_integrand = [&](double w) {
    const double u = w * w;
    if (u == 0.0) {
      // 2 w h(w^2) ~ w^{d2-1}: finite nonzero limit only for d2 == 1
      return d2 == 1.0 ? 2.0 * std::exp(log_norm + 0.5 * (d1 + d2) * std::log(d2) -
                                        0.5 * (d1 + d2) * std::log(d1))
                       : 0.0;
    }
    return 2.0 * w *
           std::exp(log_norm + 0.5 * (d1 + d2) * std::log(d2) +
                    (0.5 * d2 - 1.0) * std::log(u) -
                    0.5 * (d1 + d2) * std::log(d2 * u + d1));
  };

  const double c = std::max(x, 1.0);
  double result = 0.0;
  if (x < c) result += adaptive_simpson(density, x, c, 0.5 * kQuadTol);
  result += adaptive_simpson(tail_integrand, 0.0, std::sqrt(1.0 / c),
                             0.5 * kQuadTol);
  return result;
}

}  // namespace

double quadrature_tail(TailDensity density, double param1, double param2,
                       double x) {
  switch (density) {
    case TailDensity::kStudentT: {
      if (!(param1 >= 1.0)) {
        throw Error(ErrorCode::kInvalidParams, "student-t needs df >= 1");
      }
      if (x >= 0.0) return student_t_tail(param1, x);
      return 1.0 - student_t_tail(param1, -x);
    }
    case TailDensity::kFDist: {
      if (!(param1 >= 1.0) || !(param2 >= 1.0)) {
        throw Error(ErrorCode::kInvalidParams, "F needs d1, d2 >= 1");
      }
      if (x <= 0.0) return 1.0;
      return f_dist_tail(param1, param2, x);
    }
  }
  throw Error(ErrorCode::kInvalidParams, "unknown density");
}

// ---------------------------------------------------------------------------
// Fixture generation
// ---------------------------------------------------------------------------

namespace {

// Deterministic generator: splitmix64 streams keyed by (seed, team, class),
// so the byte content never depends on generation order or the platform's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1]
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal(double location, double scale) {
    const double u1 = uniform();
    const double u2 = uniform();
    return location +
           scale * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  std::size_t below(std::size_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t team,
                         std::uint64_t purpose) {
  return seed * 0x100000001b3ULL + team * 0x1000193ULL + purpose;
}

std::string format_score(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  }
  out << content;
}

// value -> %.17g text -> value is exact, so the doubles used for expected
// metrics are the same ones the campaign will parse back.
std::vector<double> draw_scores(Rng& rng, std::size_t count, double location,
                                double scale) {
  std::vector<double> scores(count);
  for (double& s : scores) s = rng.normal(location, scale);
  return scores;
}

std::string score_file(const std::string& model_id, const char* label,
                       std::span<const double> scores) {
  std::string out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    char utt[32];
    std::snprintf(utt, sizeof(utt), "E%04zu", i);
    out += model_id;
    out += ' ';
    out += utt;
    out += ' ';
    out += label;
    out += ' ';
    out += format_score(scores[i]);
    out += '\n';
  }
  return out;
}

std::string utt_score_file(std::span<const double> scores) {
  std::string out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    char utt[32];
    std::snprintf(utt, sizeof(utt), "E%04zu", i);
    out += utt;
    out += ' ';
    out += format_score(scores[i]);
    out += '\n';
  }
  return out;
}

double mean(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

// Oracle-side tandem minimum: direct counting sweep over the pooled CM
// scores with the accept-all / reject-all endpoints.
double brute_min_tdcf_norm(std::span<const double> bona,
                           std::span<const double> spoof, double c0, double c1,
                           double c2) {
  std::set<double> distinct(bona.begin(), bona.end());
  distinct.insert(spoof.begin(), spoof.end());
  std::vector<double> taus;
  taus.push_back(-kInf);
  taus.insert(taus.end(), distinct.begin(), distinct.end());
  taus.push_back(kInf);

  double best = kInf;
  for (double tau : taus) {
    const double cost =
        c0 + c1 * count_at_or_below(bona, tau) + c2 * count_above(spoof, tau);
    if (cost < best) best = cost;
  }
  return best / (c0 + std::min(c1, c2));
}

}  // namespace

void FixtureSpec::validate() const {
  if (teams == 0 || teams > 99) {
    throw Error(ErrorCode::kInvalidSpec, "teams must be in 1..99");
  }
  if (utterances_per_class < 2) {
    throw Error(ErrorCode::kInvalidSpec, "need at least 2 utterances per class");
  }
  if (embedding_dim == 0) {
    throw Error(ErrorCode::kInvalidSpec, "embedding_dim must be positive");
  }
  if (task_id.empty()) {
    throw Error(ErrorCode::kInvalidSpec, "task_id must be non-empty");
  }
  for (const auto* d :
       {&natural_target, &natural_nontarget, &converted_vs_target,
        &converted_vs_source, &cm_bona_fide, &cm_spoof, &mos_vcc18,
        &mos_asvspoof19, &word_error}) {
    if (!std::isfinite(d->location) || !std::isfinite(d->scale) ||
        d->scale < 0.0) {
      throw Error(ErrorCode::kInvalidSpec, "bad distribution parameters");
    }
  }
}

FixtureSpec load_fixture_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidSpec,
                std::string("fixture spec is not valid JSON: ") + e.what());
  }

  FixtureSpec spec;
  if (doc.contains("teams")) spec.teams = doc["teams"].get<std::size_t>();
  if (doc.contains("utterances_per_class")) {
    spec.utterances_per_class = doc["utterances_per_class"].get<std::size_t>();
  }
  if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("embedding_dim")) {
    spec.embedding_dim = doc["embedding_dim"].get<std::size_t>();
  }
  if (doc.contains("task_id")) spec.task_id = doc["task_id"].get<std::string>();

  if (doc.contains("distributions")) {
    auto read = [&](const char* key, ScoreDistribution* out) {
      if (!doc["distributions"].contains(key)) return;
      const auto& node = doc["distributions"][key];
      if (node.contains("location")) out->location = node["location"].get<double>();
      if (node.contains("scale")) out->scale = node["scale"].get<double>();
    };
    read("natural_target", &spec.natural_target);
    read("natural_nontarget", &spec.natural_nontarget);
    read("converted_vs_target", &spec.converted_vs_target);
    read("converted_vs_source", &spec.converted_vs_source);
    read("cm_bona_fide", &spec.cm_bona_fide);
    read("cm_spoof", &spec.cm_spoof);
    read("mos_vcc18", &spec.mos_vcc18);
    read("mos_asvspoof19", &spec.mos_asvspoof19);
    read("word_error", &spec.word_error);
  }
  spec.validate();
  return spec;
}

GeneratedFixture generate_fixture(const FixtureSpec& spec,
                                  const std::filesystem::path& out_dir) {
  spec.validate();
  namespace fs = std::filesystem;
  fs::create_directories(out_dir / "shared");

  const std::size_t n = spec.utterances_per_class;

  // Shared, team-independent data.
  Rng shared_rng(stream_key(spec.seed, 0, 1));
  const auto natural_target =
      draw_scores(shared_rng, n, spec.natural_target.location, spec.natural_target.scale);
  const auto natural_nontarget = draw_scores(
      shared_rng, n, spec.natural_nontarget.location, spec.natural_nontarget.scale);
  const auto genuine_target =
      draw_scores(shared_rng, n, spec.natural_target.location, spec.natural_target.scale);
  const auto cm_bona =
      draw_scores(shared_rng, n, spec.cm_bona_fide.location, spec.cm_bona_fide.scale);

  write_file(out_dir / "shared" / "natural_target.txt",
             score_file("TAR", "target", natural_target));
  write_file(out_dir / "shared" / "natural_nontarget.txt",
             score_file("TAR", "nontarget", natural_nontarget));
  write_file(out_dir / "shared" / "genuine_target.txt",
             score_file("TAR", "target", genuine_target));
  write_file(out_dir / "shared" / "cm_bona.txt",
             score_file("BONA", "target", cm_bona));

  // Reference embeddings: noisy copies of a fixed direction.
  const std::size_t dim = spec.embedding_dim;
  std::vector<std::vector<double>> reference_embeddings;
  {
    Rng rng(stream_key(spec.seed, 0, 2));
    std::string content;
    for (std::size_t i = 0; i < 8; ++i) {
      std::vector<double> v(dim);
      for (std::size_t k = 0; k < dim; ++k) {
        v[k] = (k == 0 ? 4.0 : 0.5) + rng.normal(0.0, 0.15);
      }
      reference_embeddings.push_back(v);
      char utt[32];
      std::snprintf(utt, sizeof(utt), "R%04zu", i);
      content += utt;
      for (double value : v) {
        content += ' ';
        content += format_score(value);
      }
      content += '\n';
    }
    write_file(out_dir / "shared" / "reference_embeddings.txt", content);
  }
  std::vector<double> reference_mean(dim, 0.0);
  for (const auto& v : reference_embeddings) {
    for (std::size_t k = 0; k < dim; ++k) reference_mean[k] += v[k];
  }
  for (double& v : reference_mean) {
    v /= static_cast<double>(reference_embeddings.size());
  }

  // Natural-data operating point, oracle side.
  double tau_asv = 0.0;
  brute_eer(natural_target, natural_nontarget, &tau_asv);
  const double p_miss_asv = count_at_or_below(natural_target, tau_asv);
  const double p_fa_asv = count_above(natural_nontarget, tau_asv);

  // Cost model defaults (priors of the high-security scenario).
  const double pi_spoof = 0.5;
  const double pi_tar = 0.5 * 0.99;
  const double pi_non = 0.5 * 0.01;
  const double c_miss = 1.0;
  const double c_fa = 10.0;
  const double c_fa_spoof = 10.0;

  static constexpr const char* kVocabulary[] = {
      "alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel"};
  constexpr std::size_t kVocabularySize = 8;

  GeneratedFixture fixture;
  nlohmann::ordered_json manifest;
  manifest["team_ids"] = nlohmann::ordered_json::array();
  nlohmann::ordered_json task;
  task["id"] = spec.task_id;
  task["asv_natural_target"] = "shared/natural_target.txt";
  task["asv_natural_nontarget"] = "shared/natural_nontarget.txt";
  task["asv_genuine_target"] = "shared/genuine_target.txt";
  task["cm_bona_fide"] = "shared/cm_bona.txt";
  task["reference_embeddings"] = "shared/reference_embeddings.txt";
  task["teams"] = nlohmann::ordered_json::object();

  nlohmann::ordered_json subjective_mos = nlohmann::ordered_json::object();
  nlohmann::ordered_json subjective_sim = nlohmann::ordered_json::object();

  for (std::size_t team_index = 0; team_index < spec.teams; ++team_index) {
    char team_id[8];
    std::snprintf(team_id, sizeof(team_id), "T%02zu", team_index + 1);
    manifest["team_ids"].push_back(team_id);
    fs::create_directories(out_dir / team_id);

    // Team effects move each class location so the campaign has spread.
    Rng param_rng(stream_key(spec.seed, team_index + 1, 3));
    const double tar_shift = param_rng.normal(0.0, spec.converted_vs_target.scale);
    const double src_shift = param_rng.normal(0.0, 0.5 * spec.converted_vs_source.scale);
    const double cm_shift = param_rng.normal(0.0, spec.cm_spoof.scale);
    const double emb_tightness = 0.1 + 0.5 * param_rng.uniform();
    const double mos18_shift = param_rng.normal(0.0, spec.mos_vcc18.scale);
    const double mos19_shift = param_rng.normal(0.0, spec.mos_asvspoof19.scale);
    double word_error_rate = spec.word_error.location +
                             (param_rng.uniform() - 0.5) * 2.0 * spec.word_error.scale;
    word_error_rate = std::clamp(word_error_rate, 0.0, 0.9);

    Rng rng(stream_key(spec.seed, team_index + 1, 4));
    const auto conv_tar = draw_scores(rng, n,
                                      spec.converted_vs_target.location + tar_shift,
                                      spec.converted_vs_target.scale);
    const auto conv_src = draw_scores(rng, n,
                                      spec.converted_vs_source.location + src_shift,
                                      spec.converted_vs_source.scale);
    const auto cm_scores =
        draw_scores(rng, n, spec.cm_spoof.location + cm_shift, spec.cm_spoof.scale);

    std::vector<double> mos18(n);
    std::vector<double> mos19(n);
    for (std::size_t i = 0; i < n; ++i) {
      mos18[i] = std::clamp(
          rng.normal(spec.mos_vcc18.location + mos18_shift, spec.mos_vcc18.scale),
          1.0, 5.0);
      mos19[i] = std::clamp(rng.normal(spec.mos_asvspoof19.location + mos19_shift,
                                       spec.mos_asvspoof19.scale),
                            1.0, 5.0);
    }

    write_file(out_dir / team_id / "asv_conv_target.txt",
               score_file(team_id, "converted", conv_tar));
    write_file(out_dir / team_id / "asv_conv_source.txt",
               score_file(team_id, "converted", conv_src));
    write_file(out_dir / team_id / "cm_scores.txt",
               score_file(team_id, "spoof", cm_scores));
    write_file(out_dir / team_id / "mos_vcc18.txt", utt_score_file(mos18));
    write_file(out_dir / team_id / "mos_asvspoof19.txt", utt_score_file(mos19));

    // Converted embeddings: same direction as the references, with per-team
    // tightness controlling the cosine spread.
    std::vector<std::vector<double>> converted_embeddings;
    {
      std::string content;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v(dim);
        for (std::size_t k = 0; k < dim; ++k) {
          v[k] = reference_mean[k] + rng.normal(0.0, emb_tightness);
        }
        converted_embeddings.push_back(v);
        char utt[32];
        std::snprintf(utt, sizeof(utt), "E%04zu", i);
        content += utt;
        for (double value : v) {
          content += ' ';
          content += format_score(value);
        }
        content += '\n';
      }
      write_file(out_dir / team_id / "embeddings.txt", content);
    }

    // Transcripts: corrupt the reference with per-token substitutions,
    // deletions and insertions; both sides stay within 8 tokens so the
    // exhaustive aligner can produce the expected counts.
    std::vector<std::vector<std::string>> refs;
    std::vector<std::vector<std::string>> hyps;
    {
      std::string content;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ref_len = 3 + rng.below(4);  // 3..6 tokens
        std::vector<std::string> ref;
        for (std::size_t k = 0; k < ref_len; ++k) {
          ref.push_back(kVocabulary[rng.below(kVocabularySize)]);
        }
        std::vector<std::string> hyp;
        for (const auto& token : ref) {
          const double r = rng.uniform();
          if (r < 0.3 * word_error_rate) continue;  // deletion
          if (r < word_error_rate) {
            hyp.push_back(kVocabulary[rng.below(kVocabularySize)]);  // substitution
          } else {
            hyp.push_back(token);
          }
          if (hyp.size() < 8 && rng.uniform() < 0.3 * word_error_rate) {
            hyp.push_back(kVocabulary[rng.below(kVocabularySize)]);  // insertion
          }
        }
        refs.push_back(ref);
        hyps.push_back(hyp);

        char utt[32];
        std::snprintf(utt, sizeof(utt), "E%04zu", i);
        content += utt;
        content += " |";
        for (const auto& token : ref) {
          content += ' ';
          content += token;
        }
        content += " |";
        for (const auto& token : hyp) {
          content += ' ';
          content += token;
        }
        content += '\n';
      }
      write_file(out_dir / team_id / "transcripts.txt", content);
    }

    // Expected metrics, oracle paths only.
    ExpectedTeamMetrics expected;
    expected.team_id = team_id;
    expected.asv_eer_pct = 100.0 * brute_eer(genuine_target, conv_tar);
    expected.pfa_tar_pct = 100.0 * count_above(conv_tar, tau_asv);
    expected.pmiss_src_pct = 100.0 * count_at_or_below(conv_src, tau_asv);
    expected.cm_eer_pct = 100.0 * brute_eer(cm_bona, cm_scores);
    expected.mosnet_vcc18 = mean(mos18);
    expected.mosnet_asvspoof19 = mean(mos19);

    {
      double cosine_sum = 0.0;
      for (const auto& v : converted_embeddings) {
        double dot = 0.0;
        double norm_v = 0.0;
        double norm_r = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
          dot += v[k] * reference_mean[k];
          norm_v += v[k] * v[k];
          norm_r += reference_mean[k] * reference_mean[k];
        }
        cosine_sum += dot / (std::sqrt(norm_v) * std::sqrt(norm_r));
      }
      expected.cosine = cosine_sum / static_cast<double>(converted_embeddings.size());
    }

    {
      std::size_t edits = 0;
      std::size_t words = 0;
      for (std::size_t i = 0; i < refs.size(); ++i) {
        const AlignmentCounts counts = brute_align(refs[i], hyps[i]);
        edits += counts.edits();
        words += counts.reference_words;
      }
      expected.asr_wer_pct =
          100.0 * static_cast<double>(edits) / static_cast<double>(words);
    }

    {
      const double p_fa_spoof_asv = count_above(conv_tar, tau_asv);
      const double c0 = pi_tar * c_miss * p_miss_asv + pi_non * c_fa * p_fa_asv;
      const double c1 = pi_tar * c_miss - c0;
      const double c2 = pi_spoof * c_fa_spoof * p_fa_spoof_asv;
      expected.min_tdcf_norm = brute_min_tdcf_norm(cm_bona, cm_scores, c0, c1, c2);
    }

    fixture.expected.push_back(expected);

    nlohmann::ordered_json team_node;
    team_node["asv_converted_vs_target"] = std::string(team_id) + "/asv_conv_target.txt";
    team_node["asv_converted_vs_source"] = std::string(team_id) + "/asv_conv_source.txt";
    team_node["cm_scores"] = std::string(team_id) + "/cm_scores.txt";
    team_node["embeddings"] = std::string(team_id) + "/embeddings.txt";
    team_node["mos_predictions"] = {
        {"vcc18", std::string(team_id) + "/mos_vcc18.txt"},
        {"asvspoof19", std::string(team_id) + "/mos_asvspoof19.txt"}};
    team_node["transcripts"] = std::string(team_id) + "/transcripts.txt";
    task["teams"][team_id] = team_node;

    // Synthetic listening-test means: linear in the objective metrics plus
    // deterministic noise, enough to exercise correlations and regressions.
    Rng subj_rng(stream_key(spec.seed, team_index + 1, 5));
    const double mos_subjective = std::clamp(
        0.6 + 0.7 * expected.mosnet_asvspoof19 - 0.012 * expected.asr_wer_pct +
            subj_rng.normal(0.0, 0.08),
        1.0, 5.0);
    const double sim_subjective = std::clamp(
        1.2 + 0.028 * expected.asv_eer_pct + 0.5 * expected.cosine +
            subj_rng.normal(0.0, 0.08),
        1.0, 4.0);
    subjective_mos[team_id] = mos_subjective;
    subjective_sim[team_id] = sim_subjective;
  }

  manifest["tasks"] = nlohmann::ordered_json::array({task});
  manifest["subjective_scores"]["ENG"][spec.task_id]["MOS"] = subjective_mos;
  manifest["subjective_scores"]["ENG"][spec.task_id]["SIM"] = subjective_sim;

  fixture.manifest_path = out_dir / "manifest.json";
  write_file(fixture.manifest_path, manifest.dump(2) + "\n");

  // Expected metrics in the report's CSV layout (columns sorted, formatted
  // at report precision).
  {
    std::string csv =
        "team,asv_eer_pct,pfa_tar_pct,pmiss_src_pct,cosine,cm_eer_pct,"
        "mosnet_asvspoof19,mosnet_vcc18,asr_wer_pct,min_tdcf_norm\n";
    char buffer[256];
    for (const auto& row : fixture.expected) {
      std::snprintf(buffer, sizeof(buffer),
                    "%s,%.2f,%.2f,%.2f,%.2f,%.2f,%.2f,%.2f,%.2f,%.5f\n",
                    row.team_id.c_str(), row.asv_eer_pct, row.pfa_tar_pct,
                    row.pmiss_src_pct, row.cosine, row.cm_eer_pct,
                    row.mosnet_asvspoof19, row.mosnet_vcc18, row.asr_wer_pct,
                    row.min_tdcf_norm);
      csv += buffer;
    }
    fixture.expected_metrics_path = out_dir / "expected_metrics.csv";
    write_file(fixture.expected_metrics_path, csv);
  }

  return fixture;
}

}  // namespace vceval::oracle
