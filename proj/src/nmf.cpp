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

#include "dramascope/nmf.hpp"

#include <cmath>

#include "dramascope/errors.hpp"
#include "dramascope/kernels.hpp"
#include "dramascope/rng.hpp"

namespace dramascope {

namespace {

constexpr double kEps = 1e-12;

double inner(const Mat& a, const Mat& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
  return s;
}

}  // namespace

std::string to_string(Weighting w) {
  return w == Weighting::RawCounts ? "raw" : "tfidf";
}

Weighting weighting_from_string(const std::string& s) {
  if (s == "raw") return Weighting::RawCounts;
  if (s == "tfidf") return Weighting::TfIdf;
  throw ConfigError("unknown weighting '" + s + "' (expected raw or tfidf)");
}

void NmfConfig::validate() const {
  if (k < 1) throw ConfigError("nmf: k must be >= 1");
  if (max_iterations < 1) throw ConfigError("nmf: max_iterations must be >= 1");
  if (tolerance <= 0.0) throw ConfigError("nmf: tolerance must be > 0");
}

std::vector<double> idf_weights(const DocTermMatrix& m) {
  std::vector<std::uint32_t> df(m.num_terms, 0);
  for (std::size_t e = 0; e < m.nnz(); ++e) ++df[m.term[e]];
  std::vector<double> idf(m.num_terms);
  const double d1 = 1.0 + static_cast<double>(m.num_docs);
  for (std::size_t w = 0; w < m.num_terms; ++w)
    idf[w] = std::log(d1 / (1.0 + static_cast<double>(df[w]))) + 1.0;
  return idf;
}

SparseReal apply_weighting(const DocTermMatrix& m, Weighting weighting) {
  SparseReal v;
  v.num_docs = m.num_docs;
  v.num_terms = m.num_terms;
  v.row_ptr = m.row_ptr;
  v.term = m.term;
  v.value.resize(m.nnz());
  for (std::size_t e = 0; e < m.nnz(); ++e)
    v.value[e] = static_cast<double>(m.count[e]);
  if (weighting == Weighting::TfIdf)
    kernels::scale_by_term(v, idf_weights(m));
  return v;
}

NmfModel fit_nmf(const SparseReal& v, const NmfConfig& cfg) {
  cfg.validate();
  for (std::size_t e = 0; e < v.nnz(); ++e)
    if (v.value[e] < 0.0)
      throw DataError("nmf: input matrix has a negative entry at position " +
                      std::to_string(e));

  const std::size_t n_docs = v.num_docs;
  const std::size_t n_terms = v.num_terms;
  const std::size_t k = cfg.k;

  NmfModel model;
  model.k = k;
  model.seed = cfg.seed;
  model.weighting = cfg.weighting;
  model.w = Mat(n_docs, k);
  model.h = Mat(k, n_terms);

  // Initialization order is part of the determinism contract:
  // W row-major first, then H row-major, one uniform draw per entry.
  Rng rng(cfg.seed);
  for (double& x : model.w.data) x = rng.uniform01();
  for (double& x : model.h.data) x = rng.uniform01();

  double v_norm2 = 0.0;
  for (const double x : v.value) v_norm2 += x * x;
  const TermMajorReal vt = term_major(v);

  Mat gram_k(k, k);
  Mat num_h(k, n_terms), den_h(k, n_terms);
  Mat num_w(n_docs, k), den_w(n_docs, k);
  Mat gram_w(k, k), gram_h(k, k);

  const auto objective = [&]() {
    kernels::gram_cols(model.w, gram_w);
    kernels::gram_rows(model.h, gram_h);
    return v_norm2 - 2.0 * kernels::dot_sparse_wh(v, model.w, model.h) +
           inner(gram_w, gram_h);
  };

  double prev = objective();
  for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter) {
    // H <- H o (W^T V) / (W^T W H + eps)
    kernels::gram_cols(model.w, gram_k);
    kernels::spmm_wt_v(vt, n_terms, model.w, num_h);
    kernels::matmul(gram_k, model.h, den_h);
    kernels::mu_apply(model.h, num_h, den_h, kEps);

    // W <- W o (V H^T) / (W H H^T + eps)
    kernels::spmm_v_ht(v, model.h, num_w);
    kernels::gram_rows(model.h, gram_k);
    kernels::matmul(model.w, gram_k, den_w);
    kernels::mu_apply(model.w, num_w, den_w, kEps);

    const double obj = objective();
    model.objective_trace.push_back(obj);
    if (prev > 0.0 && (prev - obj) / prev < cfg.tolerance) break;
    prev = obj;
  }
  return model;
}

Mat row_normalize(const Mat& m, std::vector<std::size_t>* degenerate) {
  Mat out(m.rows, m.cols);
  const double uniform = m.cols ? 1.0 / static_cast<double>(m.cols) : 0.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j);
    if (s > 0.0) {
      for (std::size_t j = 0; j < m.cols; ++j) out(i, j) = m(i, j) / s;
    } else {
      for (std::size_t j = 0; j < m.cols; ++j) out(i, j) = uniform;
      if (degenerate) degenerate->push_back(i);
    }
  }
  return out;
}

Mat doc_topic_proportions(const NmfModel& model,
                          std::vector<std::size_t>* degenerate) {
  return row_normalize(model.w, degenerate);
}

TopicModel as_topic_model(const NmfModel& model) {
  TopicModel tm;
  tm.method = Method::Nmf;
  tm.seed = model.seed;
  tm.theta = row_normalize(model.w);
  tm.phi = row_normalize(model.h);
  return tm;
}

}  // namespace dramascope
