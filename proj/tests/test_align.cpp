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

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "dramascope/align.hpp"
#include "dramascope/errors.hpp"
#include "test_util.hpp"

namespace {

using namespace dramascope;
namespace tu = dramascope::testutil;

ExternalSeries simple_series() {
  ExternalSeries s;
  s.name = "gdp";
  s.unit = "index";
  s.points = {{1700, 0.0}, {1710, 10.0}, {1720, 40.0}};
  return s;
}

}  // namespace

TEST_SUITE("align") {

TEST_CASE("normalization names round-trip") {
  CHECK(normalization_from_string("min-max") == Normalization::MinMax);
  CHECK(normalization_from_string("minmax") == Normalization::MinMax);
  CHECK(normalization_from_string("z-score") == Normalization::ZScore);
  CHECK(normalization_from_string("zscore") == Normalization::ZScore);
  CHECK(normalization_from_string("none") == Normalization::None);
  CHECK_THROWS_AS(normalization_from_string("log"), ConfigError);
  CHECK(to_string(Normalization::MinMax) == "min-max");
  CHECK(to_string(Normalization::ZScore) == "z-score");
  CHECK(to_string(Normalization::None) == "none");
}

TEST_CASE("series validation") {
  ExternalSeries s = simple_series();
  s.validate();
  CHECK(s.min_year() == 1700);
  CHECK(s.max_year() == 1720);

  s.points.clear();
  CHECK_THROWS_AS(s.validate(), DataError);

  s = simple_series();
  s.points.push_back({1715, 1.0});  // breaks the year ordering
  CHECK_THROWS_AS(s.validate(), DataError);

  s = simple_series();
  s.points[1].second = std::nan("");
  CHECK_THROWS_AS(s.validate(), DataError);
}

TEST_CASE("load_series parses headers, filters, and sorts") {
  tu::TempDir tmp("align");
  const auto path = tmp / "series.csv";
  tu::write_file(path,
                 "country,year,gdppc\n"
                 "France,1820,1135\n"
                 "Italy,1820,1511\n"
                 "France,1700,910\n"
                 "Italy,1700,1100\n");
  LoadSeriesOptions opt;
  opt.year_col = "year";
  opt.value_col = "gdppc";
  opt.country_col = "country";
  opt.country = "France";
  opt.name = "GDP per capita";
  opt.unit = "1990 dollars";
  const ExternalSeries s = load_series(path, opt);
  CHECK(s.name == "GDP per capita");
  CHECK(s.unit == "1990 dollars");
  REQUIRE(s.points.size() == 2);  // Italy rows filtered out
  CHECK(s.points[0] == std::pair<int, double>{1700, 910.0});
  CHECK(s.points[1] == std::pair<int, double>{1820, 1135.0});
}

TEST_CASE("load_series sniffs tab delimiters") {
  tu::TempDir tmp("align_tab");
  const auto path = tmp / "series.tsv";
  tu::write_file(path, "year\tvalue\n1800\t3.5\n1790\t2.5\n");
  const ExternalSeries s = load_series(path, LoadSeriesOptions{});
  REQUIRE(s.points.size() == 2);
  CHECK(s.points[0].first == 1790);  // sorted by year
  CHECK(s.points[1].second == 3.5);
}

TEST_CASE("load_series reports problems precisely") {
  tu::TempDir tmp("align_bad");
  const auto missing_col = tmp / "a.csv";
  tu::write_file(missing_col, "year,gdp\n1800,1\n");
  CHECK_THROWS_WITH_AS(load_series(missing_col, LoadSeriesOptions{}),
                       doctest::Contains("value"), DataError);

  const auto bad_year = tmp / "b.csv";
  tu::write_file(bad_year, "year,value\nn/a,1\n");
  CHECK_THROWS_AS(load_series(bad_year, LoadSeriesOptions{}), DataError);

  const auto bad_value = tmp / "c.csv";
  tu::write_file(bad_value, "year,value\n1800,12x\n");
  CHECK_THROWS_AS(load_series(bad_value, LoadSeriesOptions{}), DataError);

  const auto dup = tmp / "d.csv";
  tu::write_file(dup, "year,value\n1800,1\n1800,2\n");
  CHECK_THROWS_WITH_AS(load_series(dup, LoadSeriesOptions{}),
                       doctest::Contains("duplicate year"), DataError);

  const auto empty = tmp / "e.csv";
  tu::write_file(empty, "year,value\n");
  CHECK_THROWS_WITH_AS(load_series(empty, LoadSeriesOptions{}),
                       doctest::Contains("no usable rows"), DataError);
}

TEST_CASE("exact join keeps only shared years") {
  const std::vector<std::pair<int, double>> topic = {
      {1695, 0.3}, {1700, 0.5}, {1705, 0.6}, {1710, 0.9}, {1730, 0.2}};
  const AlignedOverlay o = align(topic, simple_series(), Normalization::None);
  CHECK(o.years == std::vector<int>{1700, 1710});
  CHECK(o.topic_values == std::vector<double>{0.5, 0.9});
  CHECK(o.external_values == std::vector<double>{0.0, 10.0});
  CHECK(o.interpolated == std::vector<bool>{false, false});
  CHECK(o.warnings.empty());
}

TEST_CASE("interpolation fills interior years and flags them") {
  const std::vector<std::pair<int, double>> topic = {
      {1700, 0.1}, {1705, 0.2}, {1712, 0.3}, {1750, 0.4}};
  const AlignedOverlay o =
      align(topic, simple_series(), Normalization::None, true);
  REQUIRE(o.years == std::vector<int>{1700, 1705, 1712});
  // 1705 is halfway between anchors 1700 (0) and 1710 (10).
  CHECK(o.external_values[1] == doctest::Approx(5.0).epsilon(1e-15));
  // 1712 sits at 0.2 of the way from 1710 (10) to 1720 (40).
  CHECK(o.external_values[2] == doctest::Approx(16.0).epsilon(1e-15));
  CHECK(o.interpolated == std::vector<bool>{false, true, true});
  // 1750 is beyond the last anchor: never extrapolated.
}

TEST_CASE("min-max normalization hits 0 and 1 exactly") {
  const std::vector<std::pair<int, double>> topic = {
      {1700, 0.4}, {1710, 0.1}, {1720, 0.7}};
  const AlignedOverlay o = align(topic, simple_series(), Normalization::MinMax);
  CHECK(o.topic_values[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(o.topic_values[1] == 0.0);
  CHECK(o.topic_values[2] == 1.0);
  CHECK(o.external_values[0] == 0.0);
  CHECK(o.external_values[2] == 1.0);
  CHECK(o.external_values[1] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("z-score normalization uses the population deviation") {
  const std::vector<std::pair<int, double>> topic = {
      {1700, 1.0}, {1710, 2.0}, {1720, 3.0}};
  const AlignedOverlay o = align(topic, simple_series(), Normalization::ZScore);
  // mean 2, population sd sqrt(2/3).
  const double sd = std::sqrt(2.0 / 3.0);
  CHECK(o.topic_values[0] == doctest::Approx(-1.0 / sd).epsilon(1e-12));
  CHECK(o.topic_values[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(o.topic_values[2] == doctest::Approx(1.0 / sd).epsilon(1e-12));
  double mean = 0.0, var = 0.0;
  for (double v : o.topic_values) mean += v;
  mean /= 3.0;
  for (double v : o.topic_values) var += (v - mean) * (v - mean);
  CHECK(std::abs(mean) < 1e-12);
  CHECK(var / 3.0 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("constant series degenerates to zeros with a warning") {
  const std::vector<std::pair<int, double>> topic = {
      {1700, 0.5}, {1710, 0.5}, {1720, 0.5}};
  const AlignedOverlay o = align(topic, simple_series(), Normalization::MinMax);
  for (double v : o.topic_values) CHECK(v == 0.0);
  REQUIRE(!o.warnings.empty());
  CHECK(o.warnings[0].find("constant series") != std::string::npos);
  // The external series is not constant, so it normalizes normally.
  CHECK(o.external_values[2] == 1.0);
}

TEST_CASE("none normalization passes values through untouched") {
  const std::vector<std::pair<int, double>> topic = {{1710, 0.25}};
  const AlignedOverlay o = align(topic, simple_series(), Normalization::None);
  CHECK(o.topic_values == std::vector<double>{0.25});
  CHECK(o.external_values == std::vector<double>{10.0});
}

TEST_CASE("disjoint ranges are an error naming both ranges") {
  const std::vector<std::pair<int, double>> topic = {{1900, 0.5}, {1910, 0.6}};
  CHECK_THROWS_WITH_AS(align(topic, simple_series(), Normalization::None),
                       doctest::Contains("1900"), DataError);
  CHECK_THROWS_AS(align({}, simple_series(), Normalization::None), DataError);
}

}  // TEST_SUITE
