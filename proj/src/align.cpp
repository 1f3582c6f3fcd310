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

#include "dramascope/align.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dramascope/csv.hpp"
#include "dramascope/errors.hpp"

namespace dramascope {

std::string to_string(Normalization n) {
  switch (n) {
    case Normalization::MinMax: return "min-max";
    case Normalization::ZScore: return "z-score";
    default: return "none";
  }
}

Normalization normalization_from_string(const std::string& s) {
  if (s == "min-max" || s == "minmax") return Normalization::MinMax;
  if (s == "z-score" || s == "zscore") return Normalization::ZScore;
  if (s == "none") return Normalization::None;
  throw ConfigError("unknown normalization '" + s +
                    "' (expected min-max, z-score, or none)");
}

void ExternalSeries::validate() const {
  if (points.empty()) throw DataError("external series '" + name + "' is empty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].second))
      throw DataError("external series '" + name + "': non-finite value at year " +
                      std::to_string(points[i].first));
    if (i > 0 && points[i].first <= points[i - 1].first)
      throw DataError("external series '" + name +
                      "': years not strictly increasing near " +
                      std::to_string(points[i].first));
  }
}

ExternalSeries load_series(const std::filesystem::path& path,
                           const LoadSeriesOptions& opt) {
  const CsvTable table = read_csv(path, opt.delimiter);
  const auto col_index = [&](const std::string& name) {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end())
      throw DataError(path.string() + ": missing column \"" + name + "\"");
    return static_cast<std::size_t>(it - table.header.begin());
  };
  const std::size_t year_idx = col_index(opt.year_col);
  const std::size_t value_idx = col_index(opt.value_col);
  const bool filter = !opt.country_col.empty();
  const std::size_t country_idx = filter ? col_index(opt.country_col) : 0;

  std::map<int, double> by_year;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t file_row = r + 2;  // header is row 1
    if (row.size() <= std::max(year_idx, value_idx))
      throw DataError(path.string() + ": row " + std::to_string(file_row) +
                      " has too few fields");
    if (filter && (row.size() <= country_idx || row[country_idx] != opt.country))
      continue;
    if (row[value_idx].empty()) continue;  // gap year
    int year = 0;
    double value = 0.0;
    try {
      std::size_t used = 0;
      year = std::stoi(row[year_idx], &used);
      if (used != row[year_idx].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DataError(path.string() + ": row " + std::to_string(file_row) +
                      ": year '" + row[year_idx] + "' is not an integer");
    }
    try {
      std::size_t used = 0;
      value = std::stod(row[value_idx], &used);
      if (used != row[value_idx].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DataError(path.string() + ": row " + std::to_string(file_row) +
                      ": value '" + row[value_idx] + "' is not a number");
    }
    if (!by_year.emplace(year, value).second)
      throw DataError(path.string() + ": duplicate year " + std::to_string(year) +
                      (filter ? " for country " + opt.country : std::string{}));
  }
  ExternalSeries series;
  series.name = opt.name.empty() ? opt.value_col : opt.name;
  series.unit = opt.unit;
  series.points.assign(by_year.begin(), by_year.end());
  if (series.points.empty())
    throw DataError(path.string() + ": no usable rows" +
                    (filter ? " for country " + opt.country : std::string{}));
  series.validate();
  return series;
}

namespace {

void normalize_in_place(std::vector<double>& values, Normalization norm,
                        const std::string& label,
                        std::vector<std::string>& warnings) {
  if (norm == Normalization::None || values.empty()) return;
  if (norm == Normalization::MinMax) {
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (hi == lo) {
      std::fill(values.begin(), values.end(), 0.0);
      warnings.push_back(label + ": constant series, min-max normalization degenerate; mapped to 0");
      return;
    }
    for (double& v : values) v = (v - lo) / (hi - lo);
    return;
  }
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (const double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  const double sd = std::sqrt(var);
  if (sd == 0.0) {
    std::fill(values.begin(), values.end(), 0.0);
    warnings.push_back(label + ": constant series, z-score normalization degenerate; mapped to 0");
    return;
  }
  for (double& v : values) v = (v - mean) / sd;
}

}  // namespace

AlignedOverlay align(const std::vector<std::pair<int, double>>& topic_series,
                     const ExternalSeries& external, Normalization norm,
                     bool interpolate) {
  external.validate();
  if (topic_series.empty()) throw DataError("align: topic series is empty");

  AlignedOverlay out;
  out.normalization = norm;

  const auto& pts = external.points;
  for (const auto& [year, value] : topic_series) {
    const auto it = std::lower_bound(
        pts.begin(), pts.end(), year,
        [](const std::pair<int, double>& p, int y) { return p.first < y; });
    if (it != pts.end() && it->first == year) {
      out.years.push_back(year);
      out.topic_values.push_back(value);
      out.external_values.push_back(it->second);
      out.interpolated.push_back(false);
    } else if (interpolate && it != pts.end() && it != pts.begin()) {
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double t = static_cast<double>(year - lo.first) /
                       static_cast<double>(hi.first - lo.first);
      out.years.push_back(year);
      out.topic_values.push_back(value);
      out.external_values.push_back(lo.second + t * (hi.second - lo.second));
      out.interpolated.push_back(true);
    }
  }
  if (out.years.empty())
    throw DataError("align: no overlapping years between the topic series (" +
                    std::to_string(topic_series.front().first) + "-" +
                    std::to_string(topic_series.back().first) +
                    ") and " + external.name + " (" +
                    std::to_string(external.min_year()) + "-" +
                    std::to_string(external.max_year()) + ")");

  normalize_in_place(out.topic_values, norm, "topic series", out.warnings);
  normalize_in_place(out.external_values, norm, external.name, out.warnings);
  return out;
}

}  // namespace dramascope
