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

#include "dramascope/trends.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "dramascope/errors.hpp"
#include "dramascope/stats.hpp"

namespace dramascope {

std::string to_string(TrendClass c) {
  switch (c) {
    case TrendClass::Hot: return "hot";
    case TrendClass::Cold: return "cold";
    case TrendClass::Flat: return "flat";
  }
  return "flat";
}

std::vector<std::pair<int, double>> topic_prevalence_series(
    const YearlyTopicSeries& series, std::size_t topic) {
  if (topic >= series.distributions.cols)
    throw DataError("topic_prevalence_series: topic " + std::to_string(topic) +
                    " out of range (K=" + std::to_string(series.distributions.cols) + ")");
  std::vector<std::pair<int, double>> out;
  out.reserve(series.years.size());
  for (std::size_t i = 0; i < series.years.size(); ++i)
    out.emplace_back(series.years[i], series.distributions(i, topic));
  return out;
}

TrendResult ols_trend(const std::vector<std::pair<int, double>>& points,
                      int period_start, int period_end) {
  const std::size_t n = points.size();
  if (n < 3)
    throw DataError("ols_trend: need at least 3 points, have " + std::to_string(n));
  {
    std::set<int> distinct;
    for (const auto& [year, value] : points) distinct.insert(year);
    if (distinct.size() != n) throw DataError("ols_trend: duplicate years in input");
  }

  double x_mean = 0.0, y_mean = 0.0;
  for (const auto& [x, y] : points) {
    x_mean += x;
    y_mean += y;
  }
  x_mean /= static_cast<double>(n);
  y_mean /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = x - x_mean;
    sxx += dx * dx;
    sxy += dx * (y - y_mean);
  }
  if (sxx == 0.0) throw DataError("ols_trend: zero variance in years");

  TrendResult r;
  r.mean_prevalence = y_mean;
  r.slope = sxy / sxx;

  double ss_resid = 0.0;
  for (const auto& [x, y] : points) {
    const double fitted = y_mean + r.slope * (x - x_mean);
    const double e = y - fitted;
    ss_resid += e * e;
  }
  const double df = static_cast<double>(n - 2);
  const double sigma2 = ss_resid / df;
  r.slope_stderr = std::sqrt(sigma2 / sxx);

  if (r.slope_stderr > 0.0) {
    r.t_stat = r.slope / r.slope_stderr;
    r.p_value = student_t_two_sided_p(r.t_stat, df);
  } else if (r.slope != 0.0) {
    // Perfect nonconstant line: unbounded evidence against slope = 0.
    r.t_stat = r.slope > 0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
  } else {
    // Constant data: no evidence of any trend.
    r.t_stat = 0.0;
    r.p_value = 1.0;
  }

  r.delta = r.slope * static_cast<double>(period_end - period_start);
  return r;
}

TrendClass classify(const TrendResult& result, double significance,
                    double delta_threshold) {
  if (result.p_value < significance) {
    if (result.delta >= delta_threshold) return TrendClass::Hot;
    if (result.delta <= -delta_threshold) return TrendClass::Cold;
  }
  return TrendClass::Flat;
}

std::vector<TrendResult> topic_trends(const YearlyTopicSeries& series,
                                      int period_start, int period_end,
                                      double significance,
                                      double delta_threshold) {
  std::vector<TrendResult> out;
  out.reserve(series.distributions.cols);
  for (std::size_t k = 0; k < series.distributions.cols; ++k) {
    TrendResult r = ols_trend(topic_prevalence_series(series, k), period_start,
                              period_end);
    r.topic = k;
    r.classification = classify(r, significance, delta_threshold);
    out.push_back(r);
  }
  return out;
}

}  // namespace dramascope
