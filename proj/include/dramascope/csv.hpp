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
#include <fstream>
#include <string>
#include <vector>

namespace dramascope {

// Quotes a field when it contains the delimiter, a quote, or a newline.
std::string csv_escape(const std::string& field, char delimiter = ',');

// Splits one record. Handles quoted fields with embedded delimiters and
// doubled quotes; embedded newlines are not supported (records are lines).
std::vector<std::string> csv_split(const std::string& line, char delimiter = ',');

// Formats a double with enough digits to round-trip (%.17g trimmed via
// shortest-exact search), so writing then parsing recovers the same bits.
std::string format_double(double v);

// Fixed-point with `digits` decimals, for human-facing tables.
std::string format_fixed(double v, int digits);

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path, char delimiter = ',');
  void write_row(const std::vector<std::string>& fields);
  void close();

 private:
  std::ofstream out_;
  std::filesystem::path path_;
  char delimiter_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Reads a delimited file. `delimiter` = 0 (the default) sniffs between ','
// and '\t' on the first line; pass an explicit character to skip the sniff.
CsvTable read_csv(const std::filesystem::path& path, char delimiter = 0,
                  bool has_header = true);

}  // namespace dramascope
