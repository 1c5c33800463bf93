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

#include "vceval/error.hpp"

namespace vceval {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kNonFiniteScore: return "NonFiniteScore";
    case ErrorCode::kDuplicateTrial: return "DuplicateTrial";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonFiniteComponent: return "NonFiniteComponent";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kUnknownTeam: return "UnknownTeam";
    case ErrorCode::kPathNotDeclared: return "PathNotDeclared";
    case ErrorCode::kInvalidManifest: return "InvalidManifest";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kInvalidCostModel: return "InvalidCostModel";
    case ErrorCode::kDegenerateNormalizer: return "DegenerateNormalizer";
    case ErrorCode::kMissingClass: return "MissingClass";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kZeroNormVector: return "ZeroNormVector";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kConstantInput: return "ConstantInput";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kInvalidDf: return "InvalidDf";
    case ErrorCode::kNoTeams: return "NoTeams";
    case ErrorCode::kEmptyTable: return "EmptyTable";
    case ErrorCode::kUnknownLanguageCode: return "UnknownLanguageCode";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kInputTooLong: return "InputTooLong";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
  }
  return "UnknownError";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message,
                           std::size_t line) {
  std::string out = to_string(code);
  out += ": ";
  out += message;
  if (line > 0) {
    out += " (line ";
    out += std::to_string(line);
    out += ")";
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(format_message(code, message, line)),
      code_(code),
      line_(line) {}

}  // namespace vceval
