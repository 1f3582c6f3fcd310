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
#include <vector>

namespace dramascope {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct ScatterPoint {
  double x = 0.0;
  double y = 0.0;
  int group = 0;  // palette index
};

struct TextMark {
  double x = 0.0;
  double y = 0.0;
  std::string text;
};

std::string xml_escape(const std::string& s);

// Multi-series line chart with axes, ticks, and a legend. Output is a
// complete standalone SVG document; rendering is deterministic.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label,
                       const std::vector<Series>& series, int width = 960,
                       int height = 540);

// Scatter plot with optional bold text marks (centroid labels).
std::string scatter_chart(const std::string& title, const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<ScatterPoint>& points,
                          const std::vector<TextMark>& marks, int width = 960,
                          int height = 720);

// Plain table rendered as SVG rows.
std::string table_svg(const std::string& title,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

}  // namespace dramascope
