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
#include <vector>

#include "dramascope/matrix.hpp"

// Dense/sparse kernels behind the model fits and the semantic map.
//
// Every kernel exists twice: kernels::serial holds the plain reference
// loops, kernels::par the OpenMP variants. The parallel versions only
// distribute independent output elements (each element is produced by the
// same sequential arithmetic as in the reference), so the two variants are
// bit-identical for any thread count, and seeded runs stay reproducible.
// The unqualified wrappers dispatch on the configured thread count.
// tools/bench_kernels compares the two variants head to head.
namespace dramascope::kernels {

// Thread count for the parallel variants. 0 = one thread per core.
// Returns the previous setting.
int set_threads(int n);
int threads();

// True when the dispatching wrappers route to kernels::par.
bool parallel_active();

namespace serial {

// out[d,k] = sum_w v[d,w] * h[k,w]            (v: D×V sparse, h: K×V)
void spmm_v_ht(const SparseReal& v, const Mat& h, Mat& out);

// out[k,t] = sum_d w[d,k] * v[d,t]            (term-major v, w: D×K)
void spmm_wt_v(const TermMajorReal& v, std::size_t num_terms, const Mat& w,
               Mat& out);

// out = x^T x for a tall D×K matrix (out: K×K, symmetric).
void gram_cols(const Mat& x, Mat& out);

// out = h h^T for a wide K×V matrix (out: K×K, symmetric).
void gram_rows(const Mat& h, Mat& out);

// out = a * b (dense).
void matmul(const Mat& a, const Mat& b, Mat& out);

// target[i] *= num[i] / (den[i] + eps), the multiplicative update step.
void mu_apply(Mat& target, const Mat& num, const Mat& den, double eps);

// sum over stored entries of v[d,w] * (w_row[d] · h_col[w]).
// Per-document partials are accumulated in a fixed order so the result is
// identical in both variants.
double dot_sparse_wh(const SparseReal& v, const Mat& w, const Mat& h);

// Pairwise cosine distances between the rows of a nonnegative matrix.
// d(i,j) = 1 - cos(row_i, row_j), clamped to [0,1]; exact zero diagonal.
void cosine_distances(const Mat& rows, const std::vector<double>& row_norms,
                      Mat& out);

// Torgerson double centering: b = -1/2 * J * d∘d * J given the distance
// matrix d (J the centering projector).
void double_center(const Mat& distances, Mat& out);

// Per-document log2 likelihood of the counts under theta/phi; partials[d]
// is document d's sum over stored entries.
void doc_loglik(const DocTermMatrix& m, const Mat& theta, const Mat& phi,
                std::vector<double>& partials);

// value[e] *= idf[term[e]] for every stored entry.
void scale_by_term(SparseReal& m, const std::vector<double>& idf);

}  // namespace serial

namespace par {

void spmm_v_ht(const SparseReal& v, const Mat& h, Mat& out);
void spmm_wt_v(const TermMajorReal& v, std::size_t num_terms, const Mat& w,
               Mat& out);
void gram_cols(const Mat& x, Mat& out);
void gram_rows(const Mat& h, Mat& out);
void matmul(const Mat& a, const Mat& b, Mat& out);
void mu_apply(Mat& target, const Mat& num, const Mat& den, double eps);
double dot_sparse_wh(const SparseReal& v, const Mat& w, const Mat& h);
void cosine_distances(const Mat& rows, const std::vector<double>& row_norms,
                      Mat& out);
void double_center(const Mat& distances, Mat& out);
void doc_loglik(const DocTermMatrix& m, const Mat& theta, const Mat& phi,
                std::vector<double>& partials);
void scale_by_term(SparseReal& m, const std::vector<double>& idf);

}  // namespace par

// Dispatching wrappers.
void spmm_v_ht(const SparseReal& v, const Mat& h, Mat& out);
void spmm_wt_v(const TermMajorReal& v, std::size_t num_terms, const Mat& w,
               Mat& out);
void gram_cols(const Mat& x, Mat& out);
void gram_rows(const Mat& h, Mat& out);
void matmul(const Mat& a, const Mat& b, Mat& out);
void mu_apply(Mat& target, const Mat& num, const Mat& den, double eps);
double dot_sparse_wh(const SparseReal& v, const Mat& w, const Mat& h);
void cosine_distances(const Mat& rows, const std::vector<double>& row_norms,
                      Mat& out);
void double_center(const Mat& distances, Mat& out);
void doc_loglik(const DocTermMatrix& m, const Mat& theta, const Mat& phi,
                std::vector<double>& partials);
void scale_by_term(SparseReal& m, const std::vector<double>& idf);

}  // namespace dramascope::kernels
