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
#include <cstring>
#include <vector>

#include "doctest.h"
#include "dramascope/kernels.hpp"
#include "dramascope/matrix.hpp"
#include "dramascope/rng.hpp"
#include "test_util.hpp"

namespace {

using dramascope::Mat;
using dramascope::Rng;
namespace kernels = dramascope::kernels;
namespace tu = dramascope::testutil;

bool bitwise_equal(const Mat& a, const Mat& b) {
  return a.same_shape(b) &&
         std::memcmp(a.data.data(), b.data.data(),
                     a.data.size() * sizeof(double)) == 0;
}

// Sparse random counts; roughly `density` of the cells are nonzero.
dramascope::DocTermMatrix random_counts(std::size_t docs, std::size_t terms,
                                        double density, Rng& rng) {
  std::vector<std::vector<std::uint32_t>> dense(
      docs, std::vector<std::uint32_t>(terms, 0));
  for (std::size_t d = 0; d < docs; ++d)
    for (std::size_t w = 0; w < terms; ++w)
      if (rng.uniform01() < density)
        dense[d][w] = static_cast<std::uint32_t>(1 + rng.uniform_below(9));
  return tu::dense_counts(dense);
}

dramascope::SparseReal to_sparse_real(const dramascope::DocTermMatrix& m) {
  dramascope::SparseReal v;
  v.num_docs = m.num_docs;
  v.num_terms = m.num_terms;
  v.row_ptr = m.row_ptr;
  v.term = m.term;
  v.value.assign(m.count.begin(), m.count.end());
  return v;
}

Mat densify(const dramascope::SparseReal& v) {
  Mat out(v.num_docs, v.num_terms);
  for (std::size_t d = 0; d < v.num_docs; ++d)
    for (std::size_t i = v.row_ptr[d]; i < v.row_ptr[d + 1]; ++i)
      out(d, v.term[i]) += v.value[i];
  return out;
}

Mat matmul_oracle(const Mat& a, const Mat& b) {
  Mat out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) {
      long double acc = 0.0L;
      for (std::size_t t = 0; t < a.cols; ++t)
        acc += static_cast<long double>(a(i, t)) * b(t, j);
      out(i, j) = static_cast<double>(acc);
    }
  return out;
}

void check_close(const Mat& got, const Mat& want, double tol) {
  REQUIRE(got.same_shape(want));
  for (std::size_t i = 0; i < got.data.size(); ++i) {
    const double scale = std::max(1.0, std::fabs(want.data[i]));
    REQUIRE(std::fabs(got.data[i] - want.data[i]) <= tol * scale);
  }
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("matmul matches a long-double oracle and its parallel twin") {
  Rng rng(1);
  for (const auto [m, k, n] : {std::array<std::size_t, 3>{1, 1, 1},
                               {7, 3, 5},
                               {16, 16, 16},
                               {33, 9, 21}}) {
    const Mat a = tu::random_mat(m, k, rng, -0.5);
    const Mat b = tu::random_mat(k, n, rng, -0.5);
    Mat s(m, n), p(m, n);
    kernels::serial::matmul(a, b, s);
    kernels::par::matmul(a, b, p);
    CHECK(bitwise_equal(s, p));
    check_close(s, matmul_oracle(a, b), 1e-12);
  }
}

TEST_CASE("gram matrices match explicit transposed products") {
  Rng rng(2);
  const Mat x = tu::random_mat(40, 7, rng);
  Mat xt(7, 40);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) xt(j, i) = x(i, j);

  Mat s(7, 7), p(7, 7);
  kernels::serial::gram_cols(x, s);
  kernels::par::gram_cols(x, p);
  CHECK(bitwise_equal(s, p));
  check_close(s, matmul_oracle(xt, x), 1e-12);

  const Mat h = tu::random_mat(5, 30, rng);
  Mat ht(30, 5);
  for (std::size_t i = 0; i < h.rows; ++i)
    for (std::size_t j = 0; j < h.cols; ++j) ht(j, i) = h(i, j);
  Mat s2(5, 5), p2(5, 5);
  kernels::serial::gram_rows(h, s2);
  kernels::par::gram_rows(h, p2);
  CHECK(bitwise_equal(s2, p2));
  check_close(s2, matmul_oracle(h, ht), 1e-12);
}

TEST_CASE("sparse products agree with densified matmul") {
  Rng rng(3);
  const auto counts = random_counts(25, 18, 0.3, rng);
  const auto v = to_sparse_real(counts);
  const Mat dense = densify(v);
  const Mat h = tu::random_mat(4, 18, rng);
  Mat ht(18, 4);
  for (std::size_t i = 0; i < h.rows; ++i)
    for (std::size_t j = 0; j < h.cols; ++j) ht(j, i) = h(i, j);

  Mat s(25, 4), p(25, 4);
  kernels::serial::spmm_v_ht(v, h, s);
  kernels::par::spmm_v_ht(v, h, p);
  CHECK(bitwise_equal(s, p));
  check_close(s, matmul_oracle(dense, ht), 1e-12);

  const Mat w = tu::random_mat(25, 4, rng);
  Mat wt(4, 25);
  for (std::size_t i = 0; i < w.rows; ++i)
    for (std::size_t j = 0; j < w.cols; ++j) wt(j, i) = w(i, j);
  Mat s2(4, 18), p2(4, 18);
  const auto tm = dramascope::term_major(v);
  kernels::serial::spmm_wt_v(tm, v.num_terms, w, s2);
  kernels::par::spmm_wt_v(tm, v.num_terms, w, p2);
  CHECK(bitwise_equal(s2, p2));
  check_close(s2, matmul_oracle(wt, dense), 1e-12);
}

TEST_CASE("mu_apply is the elementwise multiplicative update") {
  Rng rng(4);
  Mat target = tu::random_mat(6, 9, rng, 0.1);
  const Mat saved = target;
  const Mat num = tu::random_mat(6, 9, rng, 0.1);
  const Mat den = tu::random_mat(6, 9, rng, 0.1);
  Mat target_par = target;
  kernels::serial::mu_apply(target, num, den, 1e-12);
  kernels::par::mu_apply(target_par, num, den, 1e-12);
  CHECK(bitwise_equal(target, target_par));
  for (std::size_t i = 0; i < target.data.size(); ++i) {
    const double want =
        saved.data[i] * (num.data[i] / (den.data[i] + 1e-12));
    REQUIRE(target.data[i] == want);
  }
}

TEST_CASE("dot_sparse_wh matches a dense inner product") {
  Rng rng(5);
  const auto counts = random_counts(12, 10, 0.4, rng);
  const auto v = to_sparse_real(counts);
  const Mat w = tu::random_mat(12, 3, rng);
  const Mat h = tu::random_mat(3, 10, rng);
  const double got_s = kernels::serial::dot_sparse_wh(v, w, h);
  const double got_p = kernels::par::dot_sparse_wh(v, w, h);
  CHECK(std::memcmp(&got_s, &got_p, sizeof(double)) == 0);

  const Mat dense = densify(v);
  const Mat wh = matmul_oracle(w, h);
  long double want = 0.0L;
  for (std::size_t i = 0; i < dense.data.size(); ++i)
    want += static_cast<long double>(dense.data[i]) * wh.data[i];
  CHECK(std::fabs(got_s - static_cast<double>(want)) <=
        1e-12 * std::max(1.0, std::fabs(static_cast<double>(want))));
}

TEST_CASE("cosine_distances: formula, symmetry, diagonal, clamping") {
  Rng rng(6);
  const Mat rows = tu::random_mat(15, 6, rng, 0.01);
  std::vector<double> norms(rows.rows);
  for (std::size_t i = 0; i < rows.rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < rows.cols; ++j) acc += rows(i, j) * rows(i, j);
    norms[i] = std::sqrt(acc);
  }
  Mat s(15, 15), p(15, 15);
  kernels::serial::cosine_distances(rows, norms, s);
  kernels::par::cosine_distances(rows, norms, p);
  CHECK(bitwise_equal(s, p));
  for (std::size_t i = 0; i < 15; ++i) {
    REQUIRE(s(i, i) == 0.0);
    for (std::size_t j = 0; j < 15; ++j) {
      REQUIRE(s(i, j) == s(j, i));
      REQUIRE(s(i, j) >= 0.0);
      REQUIRE(s(i, j) <= 1.0);
      if (i == j) continue;
      long double dot = 0.0L;
      for (std::size_t t = 0; t < rows.cols; ++t)
        dot += static_cast<long double>(rows(i, t)) * rows(j, t);
      const double want =
          1.0 - static_cast<double>(dot) / (norms[i] * norms[j]);
      REQUIRE(std::fabs(s(i, j) - std::max(0.0, std::min(1.0, want))) <= 1e-12);
    }
  }
}

TEST_CASE("double_center equals -1/2 J D^2 J") {
  Rng rng(7);
  const std::size_t n = 9;
  Mat d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      d(i, j) = d(j, i) = rng.uniform01() + 0.05;
  Mat s(n, n), p(n, n);
  kernels::serial::double_center(d, s);
  kernels::par::double_center(d, p);
  CHECK(bitwise_equal(s, p));

  Mat d2(n, n), jmat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d2(i, j) = d(i, j) * d(i, j);
      jmat(i, j) = (i == j ? 1.0 : 0.0) - 1.0 / static_cast<double>(n);
    }
  Mat want = matmul_oracle(matmul_oracle(jmat, d2), jmat);
  for (double& x : want.data) x *= -0.5;
  check_close(s, want, 1e-10);
}

TEST_CASE("doc_loglik matches a direct per-document sum") {
  Rng rng(8);
  const auto m = random_counts(10, 8, 0.5, rng);
  const std::size_t k = 3;
  Mat theta(m.num_docs, k), phi(k, m.num_terms);
  for (std::size_t d = 0; d < m.num_docs; ++d) {
    const auto row = tu::random_dist(k, rng);
    for (std::size_t t = 0; t < k; ++t) theta(d, t) = row[t];
  }
  for (std::size_t t = 0; t < k; ++t) {
    const auto row = tu::random_dist(m.num_terms, rng);
    for (std::size_t w = 0; w < m.num_terms; ++w) phi(t, w) = row[w];
  }
  std::vector<double> s(m.num_docs), p(m.num_docs);
  kernels::serial::doc_loglik(m, theta, phi, s);
  kernels::par::doc_loglik(m, theta, phi, p);
  CHECK(std::memcmp(s.data(), p.data(), s.size() * sizeof(double)) == 0);
  for (std::size_t d = 0; d < m.num_docs; ++d) {
    long double want = 0.0L;
    for (std::size_t i = m.row_ptr[d]; i < m.row_ptr[d + 1]; ++i) {
      long double pw = 0.0L;
      for (std::size_t t = 0; t < k; ++t)
        pw += static_cast<long double>(theta(d, t)) * phi(t, m.term[i]);
      want += static_cast<long double>(m.count[i]) *
              std::log2(static_cast<double>(pw));
    }
    REQUIRE(std::fabs(s[d] - static_cast<double>(want)) <=
            1e-10 * std::max(1.0, std::fabs(static_cast<double>(want))));
  }
}

TEST_CASE("scale_by_term multiplies each entry by its term weight") {
  Rng rng(9);
  const auto counts = random_counts(8, 6, 0.5, rng);
  auto v = to_sparse_real(counts);
  auto v_par = v;
  std::vector<double> idf(6);
  for (double& x : idf) x = 0.5 + rng.uniform01();
  const auto saved = v.value;
  kernels::serial::scale_by_term(v, idf);
  kernels::par::scale_by_term(v_par, idf);
  CHECK(v.value == v_par.value);
  for (std::size_t d = 0; d < v.num_docs; ++d)
    for (std::size_t i = v.row_ptr[d]; i < v.row_ptr[d + 1]; ++i)
      REQUIRE(v.value[i] == saved[i] * idf[v.term[i]]);
}

TEST_CASE("set_threads round-trips and parallel_active reflects it") {
  const int before = kernels::threads();
  kernels::set_threads(1);
  CHECK(kernels::threads() == 1);
  CHECK_FALSE(kernels::parallel_active());
  kernels::set_threads(before);
}

}  // TEST_SUITE
