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

#include "dramascope/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "dramascope/errors.hpp"

namespace dramascope {

bool is_distribution(std::span<const double> p, double tol) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw DataError("kl_divergence: length mismatch (" +
                    std::to_string(p.size()) + " vs " + std::to_string(q.size()) + ")");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
      sum += p[i] * std::log2(p[i] / q[i]);
    }
  }
  // Rounding can leave a tiny negative remainder when p == q.
  return sum < 0.0 && sum > -1e-12 ? 0.0 : sum;
}

double jsd(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw DataError("jsd: length mismatch (" + std::to_string(p.size()) +
                    " vs " + std::to_string(q.size()) + ")");
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m[i] = 0.5 * (p[i] + q[i]);
  // Literally symmetric: swapping p and q permutes two commutative sums.
  return 0.5 * kl_divergence(p, m) + 0.5 * kl_divergence(q, m);
}

YearlyTopicSeries yearly_distributions(const Mat& theta,
                                       const std::vector<int>& doc_years,
                                       const std::vector<double>* token_weights) {
  if (theta.rows == 0) throw DataError("yearly_distributions: no documents");
  if (doc_years.size() != theta.rows)
    throw DataError("yearly_distributions: doc_years not aligned with theta rows");
  if (token_weights && token_weights->size() != theta.rows)
    throw DataError("yearly_distributions: token_weights not aligned with theta rows");

  std::map<int, std::vector<std::size_t>> by_year;
  for (std::size_t d = 0; d < theta.rows; ++d) by_year[doc_years[d]].push_back(d);

  YearlyTopicSeries out;
  out.years.reserve(by_year.size());
  out.doc_counts.reserve(by_year.size());
  out.distributions = Mat(by_year.size(), theta.cols);
  std::size_t row = 0;
  for (const auto& [year, docs] : by_year) {
    double weight_sum = 0.0;
    for (std::size_t d : docs) {
      const double w = token_weights ? (*token_weights)[d] : 1.0;
      weight_sum += w;
      for (std::size_t k = 0; k < theta.cols; ++k)
        out.distributions(row, k) += w * theta(d, k);
    }
    if (weight_sum <= 0.0)
      throw DataError("yearly_distributions: zero total weight in year " +
                      std::to_string(year));
    for (std::size_t k = 0; k < theta.cols; ++k) out.distributions(row, k) /= weight_sum;
    out.years.push_back(year);
    out.doc_counts.push_back(docs.size());
    ++row;
  }
  return out;
}

JsdSeries jsd_series(const YearlyTopicSeries& series) {
  if (series.years.size() < 2)
    throw DataError("jsd_series: need at least 2 included years, have " +
                    std::to_string(series.years.size()));
  JsdSeries out;
  const std::size_t n = series.years.size();
  out.year_pairs.reserve(n - 1);
  out.gaps.reserve(n - 1);
  out.values.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::span<const double> p(series.distributions.row(i),
                                    series.distributions.cols);
    const std::span<const double> q(series.distributions.row(i + 1),
                                    series.distributions.cols);
    out.year_pairs.emplace_back(series.years[i], series.years[i + 1]);
    out.gaps.push_back(series.years[i + 1] - series.years[i]);
    out.values.push_back(jsd(p, q));
  }
  return out;
}

std::vector<double> rolling_mean(const std::vector<double>& values, int window) {
  if (window <= 1 || values.empty()) return values;
  std::vector<double> out(values.size());
  const int half = window / 2;
  const int n = static_cast<int>(values.size());
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - half);
    const int hi = std::min(n - 1, i + half);
    double s = 0.0;
    for (int j = lo; j <= hi; ++j) s += values[j];
    out[i] = s / static_cast<double>(hi - lo + 1);
  }
  return out;
}

}  // namespace dramascope
