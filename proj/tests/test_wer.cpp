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

#include "vceval/wer.hpp"

#include <algorithm>
#include <random>

#include <doctest.h>

#include "test_util.hpp"
#include "vceval/oracle.hpp"

using namespace vceval;

namespace {

std::vector<std::string> tokens(std::initializer_list<const char*> list) {
  return {list.begin(), list.end()};
}

// Plain Levenshtein distance, test-local.
std::size_t levenshtein(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1), curr(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    curr[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1,
                          prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

}  // namespace

TEST_CASE("align basics") {
  const auto identical = align(tokens({"the", "cat", "sat"}),
                               tokens({"the", "cat", "sat"}));
  CHECK(identical.substitutions == 0);
  CHECK(identical.deletions == 0);
  CHECK(identical.insertions == 0);
  CHECK(identical.reference_words == 3);

  const auto mixed = align(tokens({"a", "b", "c", "d"}), tokens({"a", "x", "c"}));
  CHECK(mixed.substitutions == 1);
  CHECK(mixed.deletions == 1);
  CHECK(mixed.insertions == 0);
  CHECK(mixed.reference_words == 4);

  const auto grown = align(tokens({"a"}), tokens({"x", "y", "z"}));
  CHECK(grown.substitutions == 1);
  CHECK(grown.deletions == 0);
  CHECK(grown.insertions == 2);
  CHECK(grown.reference_words == 1);

  const auto empty_hyp = align(tokens({"a", "b"}), {});
  CHECK(empty_hyp.deletions == 2);
  CHECK(empty_hyp.edits() == 2);

  CHECK(test::thrown_code([&] { align({}, tokens({"a"})); }) ==
        ErrorCode::kEmptyReference);
}

TEST_CASE("align matches exhaustive enumeration on short pairs") {
  // All pairs over a 3-token alphabet with lengths ref 1..3, hyp 0..3.
  const std::vector<std::string> alphabet{"a", "b", "c"};
  std::vector<std::vector<std::string>> sequences{{}};
  for (std::size_t len = 1; len <= 3; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& seq : sequences) {
      if (seq.size() != len - 1) continue;
      for (const auto& token : alphabet) {
        auto extended = seq;
        extended.push_back(token);
        next.push_back(extended);
      }
    }
    sequences.insert(sequences.end(), next.begin(), next.end());
  }
  for (const auto& ref : sequences) {
    if (ref.empty()) continue;
    for (const auto& hyp : sequences) {
      const auto fast = align(ref, hyp);
      const auto brute = oracle::brute_align(ref, hyp);
      CHECK(fast.substitutions == brute.substitutions);
      CHECK(fast.deletions == brute.deletions);
      CHECK(fast.insertions == brute.insertions);
    }
  }
}

TEST_CASE("edit count equals Levenshtein distance") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> alphabet{"a", "b", "c", "d"};
  for (int rep = 0; rep < 300; ++rep) {
    std::vector<std::string> ref(1 + rng() % 7);
    std::vector<std::string> hyp(rng() % 8);
    for (auto& t : ref) t = alphabet[rng() % alphabet.size()];
    for (auto& t : hyp) t = alphabet[rng() % alphabet.size()];
    CHECK(align(ref, hyp).edits() == levenshtein(ref, hyp));
  }
}

TEST_CASE("corpus WER") {
  std::vector<TranscriptPair> identical{
      {"u1", tokens({"the", "cat"}), tokens({"the", "cat"})},
      {"u2", tokens({"dog"}), tokens({"dog"})},
  };
  CHECK(wer(identical) == 0.0);

  std::vector<TranscriptPair> half{
      {"u1", tokens({"a", "b", "c", "d"}), tokens({"a", "x", "c"})},
  };
  CHECK(wer(half) == doctest::Approx(50.0));

  // 2 reference words, 6 all-wrong hypothesis words: 2 substitutions plus 4
  // insertions -> 300%, not clamped.
  std::vector<TranscriptPair> oversized{
      {"u1", tokens({"a", "b"}), tokens({"x", "y", "z", "w", "v", "u"})},
  };
  CHECK(wer(oversized) == doctest::Approx(300.0));

  CHECK(test::thrown_code([&] { wer(std::vector<TranscriptPair>{}); }) ==
        ErrorCode::kEmptyCorpus);
}

TEST_CASE("corpus WER pools counts and ignores pair order") {
  std::vector<TranscriptPair> pairs{
      {"u1", tokens({"a", "b", "c", "d"}), tokens({"a", "x", "c"})},  // 2/4
      {"u2", tokens({"a"}), tokens({"a"})},                           // 0/1
      {"u3", tokens({"a", "b"}), tokens({})},                         // 2/2
  };
  const double pooled = wer(pairs);
  CHECK(pooled == doctest::Approx(100.0 * 4.0 / 7.0));

  std::reverse(pairs.begin(), pairs.end());
  CHECK(wer(pairs) == doctest::Approx(pooled));

  // The per-utterance mean is a different statistic.
  const double averaged = wer(pairs, WerAggregation::kPerUtteranceMean);
  CHECK(averaged == doctest::Approx((50.0 + 0.0 + 100.0) / 3.0));
}

TEST_CASE("WER of empty hypothesis corpus is 100%") {
  std::vector<TranscriptPair> pairs{
      {"u1", tokens({"a", "b", "c"}), tokens({})},
      {"u2", tokens({"d"}), tokens({})},
  };
  CHECK(wer(pairs) == doctest::Approx(100.0));
}
