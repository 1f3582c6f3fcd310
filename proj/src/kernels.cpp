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

#include "dramascope/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dramascope {

TermMajorReal term_major(const SparseReal& m) {
  TermMajorReal out;
  out.col_ptr.assign(m.num_terms + 1, 0);
  for (std::uint32_t t : m.term) ++out.col_ptr[t + 1];
  for (std::size_t t = 0; t < m.num_terms; ++t) out.col_ptr[t + 1] += out.col_ptr[t];
  out.doc.resize(m.nnz());
  out.value.resize(m.nnz());
  std::vector<std::size_t> cursor(out.col_ptr.begin(), out.col_ptr.end() - 1);
  for (std::size_t d = 0; d < m.num_docs; ++d) {
    for (std::size_t e = m.row_ptr[d]; e < m.row_ptr[d + 1]; ++e) {
      const std::size_t slot = cursor[m.term[e]]++;
      out.doc[slot] = static_cast<std::uint32_t>(d);
      out.value[slot] = m.value[e];
    }
  }
  return out;
}

namespace kernels {

namespace {
int g_threads = 0;  // 0 = OpenMP default
}

int set_threads(int n) {
  const int prev = g_threads;
  g_threads = n < 0 ? 0 : n;
#ifdef _OPENMP
  if (g_threads > 0) omp_set_num_threads(g_threads);
#endif
  return prev;
}

int threads() { return g_threads; }

bool parallel_active() {
#ifdef _OPENMP
  return g_threads != 1;
#else
  return false;
#endif
}

namespace serial {

void spmm_v_ht(const SparseReal& v, const Mat& h, Mat& out) {
  const std::size_t k_dim = h.rows;
  out = Mat(v.num_docs, k_dim);
  for (std::size_t d = 0; d < v.num_docs; ++d) {
    double* out_row = out.row(d);
    for (std::size_t e = v.row_ptr[d]; e < v.row_ptr[d + 1]; ++e) {
      const std::uint32_t w = v.term[e];
      const double x = v.value[e];
      for (std::size_t k = 0; k < k_dim; ++k) out_row[k] += x * h(k, w);
    }
  }
}

void spmm_wt_v(const TermMajorReal& v, std::size_t num_terms, const Mat& w,
               Mat& out) {
  const std::size_t k_dim = w.cols;
  out = Mat(k_dim, num_terms);
  for (std::size_t t = 0; t < num_terms; ++t) {
    for (std::size_t e = v.col_ptr[t]; e < v.col_ptr[t + 1]; ++e) {
      const std::uint32_t d = v.doc[e];
      const double x = v.value[e];
      const double* w_row = w.row(d);
      for (std::size_t k = 0; k < k_dim; ++k) out(k, t) += x * w_row[k];
    }
  }
}

void gram_cols(const Mat& x, Mat& out) {
  const std::size_t k_dim = x.cols;
  out = Mat(k_dim, k_dim);
  for (std::size_t a = 0; a < k_dim; ++a) {
    for (std::size_t b = a; b < k_dim; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.rows; ++i) s += x(i, a) * x(i, b);
      out(a, b) = s;
      out(b, a) = s;
    }
  }
}

void gram_rows(const Mat& h, Mat& out) {
  const std::size_t k_dim = h.rows;
  out = Mat(k_dim, k_dim);
  for (std::size_t a = 0; a < k_dim; ++a) {
    for (std::size_t b = a; b < k_dim; ++b) {
      const double* ra = h.row(a);
      const double* rb = h.row(b);
      double s = 0.0;
      for (std::size_t j = 0; j < h.cols; ++j) s += ra[j] * rb[j];
      out(a, b) = s;
      out(b, a) = s;
    }
  }
}

void matmul(const Mat& a, const Mat& b, Mat& out) {
  out = Mat(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double* out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      const double* b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols; ++j) out_row[j] += aik * b_row[j];
    }
  }
}

void mu_apply(Mat& target, const Mat& num, const Mat& den, double eps) {
  const std::size_t n = target.data.size();
  for (std::size_t i = 0; i < n; ++i) {
    target.data[i] *= num.data[i] / (den.data[i] + eps);
  }
}

double dot_sparse_wh(const SparseReal& v, const Mat& w, const Mat& h) {
  const std::size_t k_dim = w.cols;
  std::vector<double> partials(v.num_docs, 0.0);
  for (std::size_t d = 0; d < v.num_docs; ++d) {
    const double* w_row = w.row(d);
    double s = 0.0;
    for (std::size_t e = v.row_ptr[d]; e < v.row_ptr[d + 1]; ++e) {
      const std::uint32_t t = v.term[e];
      double wh = 0.0;
      for (std::size_t k = 0; k < k_dim; ++k) wh += w_row[k] * h(k, t);
      s += v.value[e] * wh;
    }
    partials[d] = s;
  }
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

void cosine_distances(const Mat& rows, const std::vector<double>& row_norms,
                      Mat& out) {
  const std::size_t n = rows.rows;
  out = Mat(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* ri = rows.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* rj = rows.row(j);
      double dot = 0.0;
      for (std::size_t k = 0; k < rows.cols; ++k) dot += ri[k] * rj[k];
      double d = 1.0 - dot / (row_norms[i] * row_norms[j]);
      if (d < 0.0) d = 0.0;
      if (d > 1.0) d = 1.0;
      out(i, j) = d;
      out(j, i) = d;
    }
  }
}

void double_center(const Mat& distances, Mat& out) {
  const std::size_t n = distances.rows;
  std::vector<double> row_mean(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = distances(i, j);
      s += d * d;
    }
    row_mean[i] = s / static_cast<double>(n);
  }
  double grand = 0.0;
  for (double r : row_mean) grand += r;
  grand /= static_cast<double>(n);
  out = Mat(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = distances(i, j);
      out(i, j) = -0.5 * (d * d - row_mean[i] - row_mean[j] + grand);
    }
  }
}

void doc_loglik(const DocTermMatrix& m, const Mat& theta, const Mat& phi,
                std::vector<double>& partials) {
  const std::size_t k_dim = theta.cols;
  partials.assign(m.num_docs, 0.0);
  for (std::size_t d = 0; d < m.num_docs; ++d) {
    const double* t_row = theta.row(d);
    double s = 0.0;
    for (std::size_t e = m.row_ptr[d]; e < m.row_ptr[d + 1]; ++e) {
      const std::uint32_t w = m.term[e];
      double p = 0.0;
      for (std::size_t k = 0; k < k_dim; ++k) p += t_row[k] * phi(k, w);
      s += static_cast<double>(m.count[e]) * std::log2(p);
    }
    partials[d] = s;
  }
}

void scale_by_term(SparseReal& m, const std::vector<double>& idf) {
  for (std::size_t e = 0; e < m.nnz(); ++e) m.value[e] *= idf[m.term[e]];
}

}  // namespace serial

namespace par {

// The pragmas below only split loops whose iterations write disjoint output
// elements; every element is computed by the same sequential expression as
// in the serial reference, so results match it bit for bit.

void spmm_v_ht(const SparseReal& v, const Mat& h, Mat& out) {
  const std::size_t k_dim = h.rows;
  out = Mat(v.num_docs, k_dim);
  const std::int64_t n = static_cast<std::int64_t>(v.num_docs);
#pragma omp parallel for schedule(static)
  for (std::int64_t d = 0; d < n; ++d) {
    double* out_row = out.row(static_cast<std::size_t>(d));
    for (std::size_t e = v.row_ptr[d]; e < v.row_ptr[d + 1]; ++e) {
      const std::uint32_t w = v.term[e];
      const double x = v.value[e];
      for (std::size_t k = 0; k < k_dim; ++k) out_row[k] += x * h(k, w);
    }
  }
}

void spmm_wt_v(const TermMajorReal& v, std::size_t num_terms, const Mat& w,
               Mat& out) {
  const std::size_t k_dim = w.cols;
  out = Mat(k_dim, num_terms);
  const std::int64_t n = static_cast<std::int64_t>(num_terms);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < n; ++t) {
    for (std::size_t e = v.col_ptr[t]; e < v.col_ptr[t + 1]; ++e) {
      const std::uint32_t d = v.doc[e];
      const double x = v.value[e];
      const double* w_row = w.row(d);
      for (std::size_t k = 0; k < k_dim; ++k)
        out(k, static_cast<std::size_t>(t)) += x * w_row[k];
    }
  }
}

void gram_cols(const Mat& x, Mat& out) {
  const std::size_t k_dim = x.cols;
  out = Mat(k_dim, k_dim);
  const std::int64_t n = static_cast<std::int64_t>(k_dim);
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::size_t b = static_cast<std::size_t>(a); b < k_dim; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.rows; ++i) s += x(i, a) * x(i, b);
      out(a, b) = s;
      out(b, a) = s;
    }
  }
}

void gram_rows(const Mat& h, Mat& out) {
  const std::size_t k_dim = h.rows;
  out = Mat(k_dim, k_dim);
  const std::int64_t n = static_cast<std::int64_t>(k_dim);
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::size_t b = static_cast<std::size_t>(a); b < k_dim; ++b) {
      const double* ra = h.row(a);
      const double* rb = h.row(b);
      double s = 0.0;
      for (std::size_t j = 0; j < h.cols; ++j) s += ra[j] * rb[j];
      out(a, b) = s;
      out(b, a) = s;
    }
  }
}

void matmul(const Mat& a, const Mat& b, Mat& out) {
  out = Mat(a.rows, b.cols);
  const std::int64_t n = static_cast<std::int64_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    double* out_row = out.row(static_cast<std::size_t>(i));
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(static_cast<std::size_t>(i), k);
      const double* b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols; ++j) out_row[j] += aik * b_row[j];
    }
  }
}

void mu_apply(Mat& target, const Mat& num, const Mat& den, double eps) {
  const std::int64_t n = static_cast<std::int64_t>(target.data.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    target.data[i] *= num.data[i] / (den.data[i] + eps);
  }
}

double dot_sparse_wh(const SparseReal& v, const Mat& w, const Mat& h) {
  const std::size_t k_dim = w.cols;
  std::vector<double> partials(v.num_docs, 0.0);
  const std::int64_t n = static_cast<std::int64_t>(v.num_docs);
#pragma omp parallel for schedule(static)
  for (std::int64_t d = 0; d < n; ++d) {
    const double* w_row = w.row(static_cast<std::size_t>(d));
    double s = 0.0;
    for (std::size_t e = v.row_ptr[d]; e < v.row_ptr[d + 1]; ++e) {
      const std::uint32_t t = v.term[e];
      double wh = 0.0;
      for (std::size_t k = 0; k < k_dim; ++k) wh += w_row[k] * h(k, t);
      s += v.value[e] * wh;
    }
    partials[d] = s;
  }
  // Fixed-order final reduction, matching the serial reference.
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

void cosine_distances(const Mat& rows, const std::vector<double>& row_norms,
                      Mat& out) {
  const std::size_t n = rows.rows;
  out = Mat(n, n);
  const std::int64_t ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < ni; ++i) {
    const double* ri = rows.row(static_cast<std::size_t>(i));
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
      const double* rj = rows.row(j);
      double dot = 0.0;
      for (std::size_t k = 0; k < rows.cols; ++k) dot += ri[k] * rj[k];
      double d = 1.0 - dot / (row_norms[i] * row_norms[j]);
      if (d < 0.0) d = 0.0;
      if (d > 1.0) d = 1.0;
      out(i, j) = d;
      out(j, i) = d;
    }
  }
}

void double_center(const Mat& distances, Mat& out) {
  const std::size_t n = distances.rows;
  std::vector<double> row_mean(n, 0.0);
  const std::int64_t ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < ni; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = distances(static_cast<std::size_t>(i), j);
      s += d * d;
    }
    row_mean[i] = s / static_cast<double>(n);
  }
  double grand = 0.0;
  for (double r : row_mean) grand += r;
  grand /= static_cast<double>(n);
  out = Mat(n, n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < ni; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = distances(static_cast<std::size_t>(i), j);
      out(static_cast<std::size_t>(i), j) =
          -0.5 * (d * d - row_mean[i] - row_mean[j] + grand);
    }
  }
}

void doc_loglik(const DocTermMatrix& m, const Mat& theta, const Mat& phi,
                std::vector<double>& partials) {
  const std::size_t k_dim = theta.cols;
  partials.assign(m.num_docs, 0.0);
  const std::int64_t n = static_cast<std::int64_t>(m.num_docs);
#pragma omp parallel for schedule(static)
  for (std::int64_t d = 0; d < n; ++d) {
    const double* t_row = theta.row(static_cast<std::size_t>(d));
    double s = 0.0;
    for (std::size_t e = m.row_ptr[d]; e < m.row_ptr[d + 1]; ++e) {
      const std::uint32_t w = m.term[e];
      double p = 0.0;
      for (std::size_t k = 0; k < k_dim; ++k) p += t_row[k] * phi(k, w);
      s += static_cast<double>(m.count[e]) * std::log2(p);
    }
    partials[d] = s;
  }
}

void scale_by_term(SparseReal& m, const std::vector<double>& idf) {
  const std::int64_t n = static_cast<std::int64_t>(m.nnz());
#pragma omp parallel for schedule(static)
  for (std::int64_t e = 0; e < n; ++e) m.value[e] *= idf[m.term[e]];
}

}  // namespace par

void spmm_v_ht(const SparseReal& v, const Mat& h, Mat& out) {
  parallel_active() ? par::spmm_v_ht(v, h, out) : serial::spmm_v_ht(v, h, out);
}

void spmm_wt_v(const TermMajorReal& v, std::size_t num_terms, const Mat& w,
               Mat& out) {
  parallel_active() ? par::spmm_wt_v(v, num_terms, w, out)
                    : serial::spmm_wt_v(v, num_terms, w, out);
}

void gram_cols(const Mat& x, Mat& out) {
  parallel_active() ? par::gram_cols(x, out) : serial::gram_cols(x, out);
}

void gram_rows(const Mat& h, Mat& out) {
  parallel_active() ? par::gram_rows(h, out) : serial::gram_rows(h, out);
}

void matmul(const Mat& a, const Mat& b, Mat& out) {
  parallel_active() ? par::matmul(a, b, out) : serial::matmul(a, b, out);
}

void mu_apply(Mat& target, const Mat& num, const Mat& den, double eps) {
  parallel_active() ? par::mu_apply(target, num, den, eps)
                    : serial::mu_apply(target, num, den, eps);
}

double dot_sparse_wh(const SparseReal& v, const Mat& w, const Mat& h) {
  return parallel_active() ? par::dot_sparse_wh(v, w, h)
                           : serial::dot_sparse_wh(v, w, h);
}

void cosine_distances(const Mat& rows, const std::vector<double>& row_norms,
                      Mat& out) {
  parallel_active() ? par::cosine_distances(rows, row_norms, out)
                    : serial::cosine_distances(rows, row_norms, out);
}

void double_center(const Mat& distances, Mat& out) {
  parallel_active() ? par::double_center(distances, out)
                    : serial::double_center(distances, out);
}

void doc_loglik(const DocTermMatrix& m, const Mat& theta, const Mat& phi,
                std::vector<double>& partials) {
  parallel_active() ? par::doc_loglik(m, theta, phi, partials)
                    : serial::doc_loglik(m, theta, phi, partials);
}

void scale_by_term(SparseReal& m, const std::vector<double>& idf) {
  parallel_active() ? par::scale_by_term(m, idf)
                    : serial::scale_by_term(m, idf);
}

}  // namespace kernels
}  // namespace dramascope
