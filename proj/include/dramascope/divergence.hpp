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
#include <span>
#include <utility>
#include <vector>

#include "dramascope/matrix.hpp"

namespace dramascope {

// True when entries are nonnegative and sum to 1 within tol.
bool is_distribution(std::span<const double> p, double tol = 1e-9);

// Kullback-Leibler divergence in bits: sum over i with p[i] > 0 of
// p[i] * log2(p[i] / q[i]). Returns +infinity when q lacks mass somewhere
// p has it. Throws DataError on length mismatch.
double kl_divergence(std::span<const double> p, std::span<const double> q);

// Jensen-Shannon divergence in bits, via the mixture m = (p + q) / 2:
// jsd = kl(p||m)/2 + kl(q||m)/2. Always finite, symmetric, in [0, 1].
double jsd(std::span<const double> p, std::span<const double> q);

// Per-year aggregated topic distributions. Only years with at least one
// document appear; rows are valid probability vectors.
struct YearlyTopicSeries {
  std::vector<int> years;              // strictly increasing
  Mat distributions;                   // one row per included year
  std::vector<std::size_t> doc_counts; // documents behind each row
};

// Mean of the theta rows that share a calendar year. The default is the
// unweighted document mean; token_weights (one weight per document, e.g.
// token totals) switches to a weighted mean.
YearlyTopicSeries yearly_distributions(
    const Mat& theta, const std::vector<int>& doc_years,
    const std::vector<double>* token_weights = nullptr);

// JSD between consecutive included years. Gaps record how far apart the
// paired years actually are; empty years are skipped, never assumed.
struct JsdSeries {
  std::vector<std::pair<int, int>> year_pairs;
  std::vector<int> gaps;
  std::vector<double> values;  // bits, one per pair
};

JsdSeries jsd_series(const YearlyTopicSeries& series);

// Centered rolling mean for plotting; window <= 1 returns the input. Raw
// values are what gets serialized, this only feeds charts.
std::vector<double> rolling_mean(const std::vector<double>& values, int window);

}  // namespace dramascope
