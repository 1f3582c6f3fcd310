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

#include <cstdint>
#include <string>
#include <vector>

#include "dramascope/matrix.hpp"
#include "dramascope/model.hpp"

namespace dramascope {

enum class Weighting { RawCounts, TfIdf };

std::string to_string(Weighting w);
Weighting weighting_from_string(const std::string& s);

struct NmfConfig {
  std::size_t k = 10;
  std::size_t max_iterations = 500;
  double tolerance = 1e-5;  // relative objective decrease that stops iteration
  std::uint64_t seed = 0;
  Weighting weighting = Weighting::TfIdf;

  void validate() const;
};

struct NmfModel {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  Weighting weighting = Weighting::TfIdf;
  Mat w;  // D×K nonnegative loadings
  Mat h;  // K×V nonnegative loadings
  std::vector<double> objective_trace;  // squared Frobenius error per iteration
};

// idf[w] = ln((1 + D) / (1 + df_w)) + 1.
std::vector<double> idf_weights(const DocTermMatrix& m);

// Real-valued copy of the counts, optionally TF-IDF weighted.
SparseReal apply_weighting(const DocTermMatrix& m, Weighting weighting);

// Multiplicative updates minimizing ||V - WH||_F^2 from seeded
// uniform-random initialization. Stops at max_iterations or when the
// relative objective decrease falls below cfg.tolerance.
NmfModel fit_nmf(const SparseReal& v, const NmfConfig& cfg);

// Rows scaled to sum 1; zero rows map to uniform and their indices are
// appended to *degenerate when given.
Mat row_normalize(const Mat& m, std::vector<std::size_t>* degenerate = nullptr);

// W rows normalized to doc-topic proportions (zero rows -> uniform + flag).
Mat doc_topic_proportions(const NmfModel& model,
                          std::vector<std::size_t>* degenerate = nullptr);

// Normalized W/H repackaged for the shared downstream analytics path.
TopicModel as_topic_model(const NmfModel& model);

}  // namespace dramascope
