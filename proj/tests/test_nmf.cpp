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
#include "dramascope/errors.hpp"
#include "dramascope/nmf.hpp"
#include "dramascope/rng.hpp"
#include "test_util.hpp"

namespace {

using namespace dramascope;
namespace tu = dramascope::testutil;

SparseReal dense_to_sparse(const std::vector<std::vector<double>>& rows) {
  SparseReal v;
  v.num_docs = rows.size();
  v.num_terms = rows.empty() ? 0 : rows[0].size();
  v.row_ptr.push_back(0);
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] != 0.0) {
        v.term.push_back(static_cast<std::uint32_t>(j));
        v.value.push_back(r[j]);
      }
    }
    v.row_ptr.push_back(v.term.size());
  }
  return v;
}

// Straightforward dense ||V - WH||_F^2, long double accumulation.
long double frobenius_error(const SparseReal& v, const Mat& w, const Mat& h) {
  const std::size_t d_n = v.num_docs, t_n = v.num_terms, k = w.cols;
  std::vector<long double> dense(d_n * t_n, 0.0L);
  for (std::size_t d = 0; d < d_n; ++d)
    for (std::size_t e = v.row_ptr[d]; e < v.row_ptr[d + 1]; ++e)
      dense[d * t_n + v.term[e]] = v.value[e];
  long double err = 0.0L;
  for (std::size_t d = 0; d < d_n; ++d) {
    for (std::size_t t = 0; t < t_n; ++t) {
      long double wh = 0.0L;
      for (std::size_t j = 0; j < k; ++j)
        wh += static_cast<long double>(w(d, j)) * h(j, t);
      const long double diff = dense[d * t_n + t] - wh;
      err += diff * diff;
    }
  }
  return err;
}

long double frobenius_norm_sq(const SparseReal& v) {
  long double s = 0.0L;
  for (double x : v.value) s += static_cast<long double>(x) * x;
  return s;
}

SparseReal random_sparse(std::size_t docs, std::size_t terms, Rng& rng) {
  std::vector<std::vector<double>> rows(docs, std::vector<double>(terms, 0.0));
  for (std::size_t d = 0; d < docs; ++d)
    for (std::size_t t = 0; t < terms; ++t)
      if (rng.uniform01() < 0.6) rows[d][t] = rng.uniform01() * 5.0;
  return dense_to_sparse(rows);
}

}  // namespace

TEST_SUITE("nmf") {

TEST_CASE("config validation") {
  NmfConfig cfg;
  cfg.k = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = NmfConfig{};
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = NmfConfig{};
  cfg.tolerance = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.tolerance = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK(weighting_from_string("tfidf") == Weighting::TfIdf);
  CHECK(weighting_from_string("raw") == Weighting::RawCounts);
  CHECK_THROWS_AS(weighting_from_string("bm25"), ConfigError);
  CHECK(to_string(Weighting::TfIdf) == "tfidf");
}

TEST_CASE("rank-1 matrix is reconstructed almost exactly") {
  // V = outer(u, s) has an exact rank-1 factorization; multiplicative
  // updates should drive the objective to a tiny fraction of ||V||^2.
  const std::vector<double> u = {1.0, 2.0, 0.5, 3.0, 1.5, 0.25};
  const std::vector<double> s = {0.2, 1.0, 0.7, 2.0, 0.1};
  std::vector<std::vector<double>> rows;
  for (double a : u) {
    std::vector<double> r;
    for (double b : s) r.push_back(a * b);
    rows.push_back(r);
  }
  const SparseReal v = dense_to_sparse(rows);

  NmfConfig cfg;
  cfg.k = 1;
  cfg.max_iterations = 500;
  cfg.tolerance = 1e-300;  // effectively run until the objective stalls
  cfg.seed = 42;
  const NmfModel model = fit_nmf(v, cfg);

  const long double err = frobenius_error(v, model.w, model.h);
  const long double scale = frobenius_norm_sq(v);
  CAPTURE(static_cast<double>(err / scale));
  CHECK(static_cast<double>(err) <= 1e-8 * static_cast<double>(scale));

  // The trace's final entry agrees with an independent dense evaluation.
  REQUIRE(!model.objective_trace.empty());
  const double reported = model.objective_trace.back();
  CHECK(std::abs(reported - static_cast<double>(err)) <=
        1e-9 * static_cast<double>(scale) + 1e-12);
}

TEST_CASE("objective trace never increases across 100 random problems") {
  Rng meta(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t docs = 5 + meta.uniform_below(26);
    const std::size_t terms = 5 + meta.uniform_below(21);
    Rng rng(1000 + static_cast<std::uint64_t>(trial));
    const SparseReal v = random_sparse(docs, terms, rng);

    NmfConfig cfg;
    cfg.k = 1 + meta.uniform_below(5);
    cfg.max_iterations = 60;
    cfg.tolerance = 1e-300;
    cfg.seed = 9000 + static_cast<std::uint64_t>(trial);
    const NmfModel model = fit_nmf(v, cfg);

    REQUIRE(!model.objective_trace.empty());
    for (std::size_t i = 1; i < model.objective_trace.size(); ++i) {
      const double prev = model.objective_trace[i - 1];
      const double next = model.objective_trace[i];
      // Monotone within floating-point slack proportional to magnitude.
      CHECK(prev - next >= -(prev * 1e-12 + 1e-12));
    }
    for (double x : model.w.data) CHECK(x >= 0.0);
    for (double x : model.h.data) CHECK(x >= 0.0);
  }
}

TEST_CASE("early stop honors the relative tolerance") {
  Rng rng(77);
  const SparseReal v = random_sparse(12, 10, rng);
  NmfConfig cfg;
  cfg.k = 2;
  cfg.max_iterations = 500;
  cfg.tolerance = 1e-3;  // loose: should stop well before the budget
  cfg.seed = 5;
  const NmfModel model = fit_nmf(v, cfg);
  CHECK(model.objective_trace.size() < 500);
  // The stopping step itself satisfied the relative-decrease bound.
  const std::size_t n = model.objective_trace.size();
  REQUIRE(n >= 2);
  const double prev = model.objective_trace[n - 2];
  const double last = model.objective_trace[n - 1];
  CHECK((prev - last) <= cfg.tolerance * prev * (1.0 + 1e-9) + 1e-15);
}

TEST_CASE("idf weights match the published formula") {
  // 3 docs; term 0 in all, term 1 in one, term 2 in two.
  const auto m = tu::dense_counts({{2, 1, 0}, {1, 0, 3}, {4, 0, 1}});
  const auto idf = idf_weights(m);
  REQUIRE(idf.size() == 3);
  CHECK(idf[0] == doctest::Approx(std::log(4.0 / 4.0) + 1.0).epsilon(1e-15));
  CHECK(idf[1] == doctest::Approx(std::log(4.0 / 2.0) + 1.0).epsilon(1e-15));
  CHECK(idf[2] == doctest::Approx(std::log(4.0 / 3.0) + 1.0).epsilon(1e-15));

  const SparseReal raw = apply_weighting(m, Weighting::RawCounts);
  REQUIRE(raw.nnz() == m.nnz());
  CHECK(raw.value[0] == 2.0);

  const SparseReal tf = apply_weighting(m, Weighting::TfIdf);
  REQUIRE(tf.nnz() == m.nnz());
  // Entry order matches the count matrix; first entry is doc0/term0.
  CHECK(tf.value[0] == doctest::Approx(2.0 * idf[0]).epsilon(1e-15));
  CHECK(tf.value[1] == doctest::Approx(1.0 * idf[1]).epsilon(1e-15));
}

TEST_CASE("same seed is bitwise reproducible, different seed is not") {
  Rng rng(31);
  const SparseReal v = random_sparse(15, 12, rng);
  NmfConfig cfg;
  cfg.k = 3;
  cfg.max_iterations = 40;
  cfg.tolerance = 1e-300;
  cfg.seed = 2718;
  const NmfModel a = fit_nmf(v, cfg);
  const NmfModel b = fit_nmf(v, cfg);
  CHECK(std::memcmp(a.w.data.data(), b.w.data.data(),
                    a.w.data.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(a.h.data.data(), b.h.data.data(),
                    a.h.data.size() * sizeof(double)) == 0);
  cfg.seed = 2719;
  const NmfModel c = fit_nmf(v, cfg);
  CHECK(std::memcmp(a.w.data.data(), c.w.data.data(),
                    a.w.data.size() * sizeof(double)) != 0);
}

TEST_CASE("row_normalize handles zero rows") {
  Mat m(3, 4);
  m(0, 0) = 2.0;
  m(0, 2) = 2.0;
  // Row 1 stays all-zero.
  m(2, 1) = 5.0;
  std::vector<std::size_t> degenerate;
  const Mat n = row_normalize(m, &degenerate);
  CHECK(n(0, 0) == 0.5);
  CHECK(n(0, 1) == 0.0);
  CHECK(n(0, 2) == 0.5);
  CHECK(n(1, 0) == 0.25);
  CHECK(n(1, 3) == 0.25);
  CHECK(n(2, 1) == 1.0);
  REQUIRE(degenerate.size() == 1);
  CHECK(degenerate[0] == 1);
}

TEST_CASE("as_topic_model produces stochastic rows") {
  Rng rng(55);
  const SparseReal v = random_sparse(10, 8, rng);
  NmfConfig cfg;
  cfg.k = 2;
  cfg.max_iterations = 50;
  cfg.seed = 7;
  const NmfModel model = fit_nmf(v, cfg);
  const TopicModel tm = as_topic_model(model);
  CHECK(tm.method == Method::Nmf);
  CHECK(tm.seed == cfg.seed);
  REQUIRE(tm.theta.rows == 10);
  REQUIRE(tm.phi.rows == 2);
  REQUIRE(tm.phi.cols == 8);
  tm.validate();  // rows sum to 1, entries nonnegative
}

TEST_CASE("negative entries are rejected") {
  NmfConfig cfg;
  cfg.k = 2;
  SparseReal v = dense_to_sparse({{1.0, -0.5}, {2.0, 3.0}});
  CHECK_THROWS_AS(fit_nmf(v, cfg), DataError);
}

TEST_CASE("all-zero matrix collapses after the first iteration") {
  SparseReal v;
  v.num_docs = 4;
  v.num_terms = 3;
  v.row_ptr = {0, 0, 0, 0, 0};  // no stored entries
  NmfConfig cfg;
  cfg.k = 2;
  cfg.max_iterations = 5;
  cfg.seed = 8;
  const NmfModel model = fit_nmf(v, cfg);
  REQUIRE(!model.objective_trace.empty());
  CHECK(model.objective_trace[0] == 0.0);
  for (double x : model.w.data) CHECK(x == 0.0);
  for (double x : model.h.data) CHECK(x == 0.0);
}

TEST_CASE("matching rank recovers a planted factorization closely") {
  // V = W0 H0 with K = 2; the solver should reconstruct V itself well
  // even though the factors are only identifiable up to scaling.
  Rng rng(404);
  Mat w0(8, 2), h0(2, 7);
  for (double& x : w0.data) x = rng.uniform01() + 0.05;
  for (double& x : h0.data) x = rng.uniform01() + 0.05;
  std::vector<std::vector<double>> rows(8, std::vector<double>(7, 0.0));
  for (std::size_t d = 0; d < 8; ++d)
    for (std::size_t t = 0; t < 7; ++t)
      rows[d][t] = w0(d, 0) * h0(0, t) + w0(d, 1) * h0(1, t);
  const SparseReal v = dense_to_sparse(rows);

  NmfConfig cfg;
  cfg.k = 2;
  cfg.max_iterations = 4000;
  cfg.tolerance = 1e-300;
  cfg.seed = 11;
  const NmfModel model = fit_nmf(v, cfg);
  const long double err = frobenius_error(v, model.w, model.h);
  const long double scale = frobenius_norm_sq(v);
  CHECK(std::sqrt(static_cast<double>(err / scale)) < 1e-3);
}

}  // TEST_SUITE
