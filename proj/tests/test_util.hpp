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

#ifndef DRAMASCOPE_TESTS_TEST_UTIL_HPP_
#define DRAMASCOPE_TESTS_TEST_UTIL_HPP_

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dramascope/matrix.hpp"
#include "dramascope/rng.hpp"

namespace dramascope::testutil {

// Fresh directory under the system temp root, removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("dramascope_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Builds a DocTermMatrix from dense counts, one row per document.
inline DocTermMatrix dense_counts(
    const std::vector<std::vector<std::uint32_t>>& counts) {
  DocTermMatrix m;
  m.num_docs = counts.size();
  m.num_terms = counts.empty() ? 0 : counts.front().size();
  m.row_ptr.assign(1, 0);
  for (std::size_t d = 0; d < counts.size(); ++d) {
    for (std::size_t w = 0; w < counts[d].size(); ++w) {
      if (counts[d][w] == 0) continue;
      m.term.push_back(static_cast<std::uint32_t>(w));
      m.count.push_back(counts[d][w]);
    }
    m.row_ptr.push_back(m.term.size());
    m.doc_ids.push_back("doc" + std::to_string(d));
    m.doc_years.push_back(1800 + static_cast<int>(d));
    m.doc_titles.emplace_back();
  }
  return m;
}

// Random dense matrix with entries in [lo, lo + span).
inline Mat random_mat(std::size_t rows, std::size_t cols, Rng& rng,
                      double lo = 0.0, double span = 1.0) {
  Mat m(rows, cols);
  for (double& x : m.data) x = lo + rng.uniform01() * span;
  return m;
}

// Random probability vector of the given size, strictly positive entries.
inline std::vector<double> random_dist(std::size_t n, Rng& rng) {
  std::vector<double> p(n);
  double s = 0.0;
  for (double& x : p) {
    x = rng.uniform01() + 1e-4;
    s += x;
  }
  for (double& x : p) x /= s;
  return p;
}

}  // namespace dramascope::testutil

#endif  // DRAMASCOPE_TESTS_TEST_UTIL_HPP_
