// Copyright 2026 The dramascope authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dramascope/matrix.hpp"
#include "dramascope/model.hpp"

namespace dramascope {

struct LabelPoint {
  std::size_t topic = 0;
  std::string text;
  double x = 0.0;
  double y = 0.0;
};

struct EmbeddingCoords {
  std::vector<std::string> doc_ids;
  Mat xy;  // D×dims
  std::vector<double> eigenvalue_trace;  // top eigenvalues, descending
  std::vector<LabelPoint> labels;
};

// Full eigendecomposition of a symmetric matrix (Householder
// tridiagonalization followed by the implicit-shift QL iteration).
// Eigenvalues come back ascending; eigenvectors are the columns of
// `eigenvectors`, matching order.
void symmetric_eigen(const Mat& a, std::vector<double>& eigenvalues,
                     Mat& eigenvectors);

// d(i,j) = 1 - cos(theta_i, theta_j), exact zero diagonal, symmetric,
// clamped to [0,1]. Zero-norm rows are an error.
Mat cosine_distance_matrix(const Mat& theta);

// Torgerson MDS. Coordinates are eigvec*sqrt(eigenvalue) for the top `dims`
// eigenpairs (negative eigenvalues clamp to zero length). Per axis, the
// entry with the largest magnitude (lowest index on ties) is made positive
// so output is reproducible. eigenvalue_trace holds the top min(D, 10)
// eigenvalues of the centered matrix, descending.
EmbeddingCoords classical_mds(const Mat& distances, std::size_t dims = 2,
                              std::vector<std::string> doc_ids = {});

// The n documents with highest theta[., topic], descending proportion;
// ties broken by doc id, lexicographic ascending.
std::vector<std::string> representative_docs(const Mat& theta,
                                             const std::vector<std::string>& doc_ids,
                                             std::size_t topic, std::size_t n = 5);

// Adds one label per (topic, text) pair at the centroid of that topic's five
// highest-proportion documents.
void place_labels(EmbeddingCoords& coords, const Mat& theta,
                  const std::vector<std::pair<std::size_t, std::string>>& topics);

}  // namespace dramascope
