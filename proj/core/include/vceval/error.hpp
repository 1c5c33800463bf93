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

#ifndef VCEVAL_ERROR_HPP_
#define VCEVAL_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vceval {

enum class ErrorCode {
  // parsing / manifest
  kEmptyInput,
  kMalformedLine,
  kNonFiniteScore,
  kDuplicateTrial,
  kDimensionMismatch,
  kNonFiniteComponent,
  kMalformedRecord,
  kEmptyReference,
  kMissingField,
  kUnknownTeam,
  kPathNotDeclared,
  kInvalidManifest,
  // detection / tandem
  kEmptyClass,
  kInvalidCostModel,
  kDegenerateNormalizer,
  kMissingClass,
  // embedding
  kEmptySet,
  kZeroNormVector,
  // wer
  kEmptyCorpus,
  // stats
  kConstantInput,
  kLengthMismatch,
  kTooFewSamples,
  kRankDeficient,
  kInvalidDf,
  // campaign
  kNoTeams,
  kEmptyTable,
  kUnknownLanguageCode,
  kIoFailure,
  // oracle
  kInputTooLong,
  kInvalidParams,
  kInvalidSpec,
};

const char* to_string(ErrorCode code);

// Every toolkit failure surfaces as an Error carrying a stable code.
// For failures tied to a text input, `line` is the 1-based line number
// (0 when the error is not line-addressable).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace vceval

#endif  // VCEVAL_ERROR_HPP_
