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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace dramascope {

enum class Normalization { MinMax, ZScore, None };

std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);

// An annual external series (e.g. GDP per capita).
struct ExternalSeries {
  std::string name;
  std::string unit;
  std::vector<std::pair<int, double>> points;  // strictly increasing years

  void validate() const;
  int min_year() const { return points.front().first; }
  int max_year() const { return points.back().first; }
};

struct LoadSeriesOptions {
  std::string year_col = "year";
  std::string value_col = "value";
  std::string country_col;  // empty disables the country filter
  std::string country;
  std::string name;
  std::string unit;
  char delimiter = 0;  // 0 sniffs comma vs tab from the header line
};

// Parses a delimited file with a header row, optionally filtering to one
// country, and returns the series sorted by year.
ExternalSeries load_series(const std::filesystem::path& path,
                           const LoadSeriesOptions& opt);

struct AlignedOverlay {
  std::vector<int> years;
  std::vector<double> topic_values;
  std::vector<double> external_values;
  std::vector<bool> interpolated;  // true where the external value is filled in
  Normalization normalization = Normalization::MinMax;
  std::vector<std::string> warnings;
};

// Joins a topic series with the external series on years. Without
// interpolation only years present in both survive; with it, topic years
// inside the external range get linearly interpolated external values,
// flagged per point. Normalization is applied to each series independently
// over the joined range; a constant series maps to all zeros with a warning.
AlignedOverlay align(const std::vector<std::pair<int, double>>& topic_series,
                     const ExternalSeries& external, Normalization norm,
                     bool interpolate = false);

}  // namespace dramascope
