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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dramascope {

// Dense row-major matrix of doubles.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  double* row(std::size_t i) { return data.data() + i * cols; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }

  bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

// Sparse document-term counts, document-major (CSR). Carries the document
// metadata that every downstream analysis keys on, kept in row order.
struct DocTermMatrix {
  std::size_t num_docs = 0;
  std::size_t num_terms = 0;
  std::vector<std::size_t> row_ptr;    // num_docs + 1 offsets into term/count
  std::vector<std::uint32_t> term;     // term index per stored entry
  std::vector<std::uint32_t> count;    // occurrence count per stored entry
  std::vector<std::string> doc_ids;
  std::vector<int> doc_years;
  std::vector<std::string> doc_titles;

  std::uint64_t doc_total(std::size_t d) const {
    std::uint64_t n = 0;
    for (std::size_t e = row_ptr[d]; e < row_ptr[d + 1]; ++e) n += count[e];
    return n;
  }

  std::uint64_t total_tokens() const {
    std::uint64_t n = 0;
    for (std::uint32_t c : count) n += c;
    return n;
  }

  std::size_t nnz() const { return term.size(); }
};

// Sparse real-valued document-term matrix (e.g. tf-idf weighted counts),
// document-major. Same layout as DocTermMatrix without the metadata.
struct SparseReal {
  std::size_t num_docs = 0;
  std::size_t num_terms = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::uint32_t> term;
  std::vector<double> value;

  std::size_t nnz() const { return term.size(); }
};

// Term-major (CSC) view of a SparseReal, built once where column access
// dominates the work (the NMF H update).
struct TermMajorReal {
  std::vector<std::size_t> col_ptr;    // num_terms + 1
  std::vector<std::uint32_t> doc;
  std::vector<double> value;
};

TermMajorReal term_major(const SparseReal& m);

}  // namespace dramascope
