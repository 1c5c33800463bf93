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

#include "vceval/embedding.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace vceval {

ProjectionMatrix load_projection_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }

  ProjectionMatrix matrix;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<double> row;
    double value = 0.0;
    while (fields >> value) {
      if (!std::isfinite(value)) {
        throw Error(ErrorCode::kNonFiniteComponent,
                    "non-finite matrix entry", line_no);
      }
      row.push_back(value);
    }
    if (row.empty()) continue;  // blank line
    if (matrix.cols == 0) {
      matrix.cols = row.size();
    } else if (row.size() != matrix.cols) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "expected " + std::to_string(matrix.cols) + " entries, got " +
                      std::to_string(row.size()),
                  line_no);
    }
    matrix.entries.insert(matrix.entries.end(), row.begin(), row.end());
    ++matrix.rows;
  }
  if (matrix.rows == 0) {
    throw Error(ErrorCode::kEmptyInput, "no matrix rows in " + path.string());
  }
  return matrix;
}

Embedding average_embeddings(std::span<const Embedding> embeddings) {
  if (embeddings.empty()) {
    throw Error(ErrorCode::kEmptySet, "cannot average zero embeddings");
  }
  const std::size_t dim = embeddings.front().values.size();
  Embedding mean;
  mean.utt_id = "mean";
  mean.values.assign(dim, 0.0);
  for (const auto& embedding : embeddings) {
    if (embedding.values.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "embedding " + embedding.utt_id + " has dimension " +
                      std::to_string(embedding.values.size()) + ", expected " +
                      std::to_string(dim));
    }
    for (std::size_t i = 0; i < dim; ++i) mean.values[i] += embedding.values[i];
  }
  const double n = static_cast<double>(embeddings.size());
  for (double& v : mean.values) v /= n;
  return mean;
}

Embedding lda_project(const Embedding& embedding, const ProjectionMatrix& matrix) {
  if (embedding.values.size() != matrix.cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "projection expects dimension " + std::to_string(matrix.cols) +
                    ", embedding has " + std::to_string(embedding.values.size()));
  }
  Embedding projected;
  projected.utt_id = embedding.utt_id;
  projected.values.assign(matrix.rows, 0.0);
  for (std::size_t r = 0; r < matrix.rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < matrix.cols; ++c) {
      sum += matrix.at(r, c) * embedding.values[c];
    }
    projected.values[r] = sum;
  }
  return projected;
}

double cosine_similarity(const Embedding& a, const Embedding& b) {
  if (a.values.size() != b.values.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cosine of embeddings with dimensions " +
                    std::to_string(a.values.size()) + " and " +
                    std::to_string(b.values.size()));
  }
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    dot += a.values[i] * b.values[i];
    norm_a += a.values[i] * a.values[i];
    norm_b += b.values[i] * b.values[i];
  }
  if (norm_a == 0.0 || norm_b == 0.0) {
    throw Error(ErrorCode::kZeroNormVector,
                "cosine undefined for a zero-norm embedding");
  }
  double value = dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
  if (value > 1.0 && value - 1.0 < 1e-12) value = 1.0;
  if (value < -1.0 && -1.0 - value < 1e-12) value = -1.0;
  return value;
}

double system_cosine(std::span<const Embedding> converted,
                     std::span<const Embedding> reference,
                     const ProjectionMatrix* projection) {
  if (converted.empty()) {
    throw Error(ErrorCode::kEmptySet, "no converted embeddings");
  }
  if (reference.empty()) {
    throw Error(ErrorCode::kEmptySet, "no reference embeddings");
  }

  std::vector<Embedding> ref_projected;
  Embedding ref_mean;
  if (projection != nullptr) {
    ref_projected.reserve(reference.size());
    for (const auto& e : reference) ref_projected.push_back(lda_project(e, *projection));
    ref_mean = average_embeddings(ref_projected);
  } else {
    ref_mean = average_embeddings(reference);
  }

  double sum = 0.0;
  for (const auto& e : converted) {
    const Embedding projected =
        projection != nullptr ? lda_project(e, *projection) : e;
    sum += cosine_similarity(projected, ref_mean);
  }
  return sum / static_cast<double>(converted.size());
}

}  // namespace vceval
