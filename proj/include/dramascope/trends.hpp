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

#include "dramascope/divergence.hpp"

namespace dramascope {

enum class TrendClass { Hot, Cold, Flat };

std::string to_string(TrendClass c);

// OLS fit of a topic's yearly prevalence on the year, plus the
// delta-over-period statistic (slope times period length) that labels
// topics as rising or falling.
struct TrendResult {
  std::size_t topic = 0;
  double mean_prevalence = 0.0;
  double slope = 0.0;         // per year
  double slope_stderr = 0.0;
  double t_stat = 0.0;
  double p_value = 1.0;
  double delta = 0.0;         // slope * (period_end - period_start)
  TrendClass classification = TrendClass::Flat;
};

// One topic's component of each yearly distribution, chronological order.
std::vector<std::pair<int, double>> topic_prevalence_series(
    const YearlyTopicSeries& series, std::size_t topic);

// Ordinary least squares of value on year. Needs >= 3 points with distinct
// years. On a perfect fit the residual variance is zero; the slope then
// gets p = 0 when nonzero and p = 1 when the data are constant.
TrendResult ols_trend(const std::vector<std::pair<int, double>>& points,
                      int period_start, int period_end);

// Hot when significantly rising by at least delta_threshold over the
// period, cold when significantly falling by as much, flat otherwise.
TrendClass classify(const TrendResult& result, double significance = 0.05,
                    double delta_threshold = 0.1);

// Convenience: per-topic trend over a yearly series, classification applied.
std::vector<TrendResult> topic_trends(const YearlyTopicSeries& series,
                                      int period_start, int period_end,
                                      double significance = 0.05,
                                      double delta_threshold = 0.1);

}  // namespace dramascope
