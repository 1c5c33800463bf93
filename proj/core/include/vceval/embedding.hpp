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

#ifndef VCEVAL_EMBEDDING_HPP_
#define VCEVAL_EMBEDDING_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "vceval/score_io.hpp"

namespace vceval {

// Externally trained projection applied to embeddings before cosine
// scoring (e.g., 512 -> 200).  Row-major, rows x cols.
struct ProjectionMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;

  double at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

// Text file with `rows` lines of `cols` whitespace-separated reals.
ProjectionMatrix load_projection_matrix(const std::filesystem::path& path);

Embedding average_embeddings(std::span<const Embedding> embeddings);

Embedding lda_project(const Embedding& embedding, const ProjectionMatrix& matrix);

// a.b / (|a| |b|), clamped to [-1, 1] only against floating rounding.
double cosine_similarity(const Embedding& a, const Embedding& b);

// Mean cosine similarity of the converted embeddings against the average of
// the reference embeddings, all projected first when a matrix is given.
double system_cosine(std::span<const Embedding> converted,
                     std::span<const Embedding> reference,
                     const ProjectionMatrix* projection = nullptr);

}  // namespace vceval

#endif  // VCEVAL_EMBEDDING_HPP_
