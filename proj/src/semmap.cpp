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

#include "dramascope/semmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dramascope/errors.hpp"
#include "dramascope/kernels.hpp"

namespace dramascope {

namespace {

// Householder reduction to tridiagonal form, accumulating the transform in v.
// Classic EISPACK tred2 recurrence.
void tred2(Mat& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.rows;
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0.0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) v(k, j) -= f * e[k] + g * d[k];
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit-shift QL iteration on the tridiagonal system, updating the
// accumulated eigenvector matrix. Eigenvalues come out ascending.
void tql2(Mat& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.rows;
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 64)
          throw PipelineError("eigensolver failed to converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0.0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (std::size_t k = 0; k < n; ++k) {
            h = v(k, i + 1);
            v(k, i + 1) = s * v(k, i) + c * h;
            v(k, i) = c * v(k, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t k = i;
    double p = d[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[j] < p) {
        k = j;
        p = d[j];
      }
    }
    if (k != i) {
      d[k] = d[i];
      d[i] = p;
      for (std::size_t j = 0; j < n; ++j) std::swap(v(j, i), v(j, k));
    }
  }
}

}  // namespace

void symmetric_eigen(const Mat& a, std::vector<double>& eigenvalues, Mat& eigenvectors) {
  if (a.rows != a.cols) throw DataError("symmetric_eigen: matrix not square");
  const std::size_t n = a.rows;
  if (n == 0) throw DataError("symmetric_eigen: empty matrix");
  eigenvectors = a;
  eigenvalues.assign(n, 0.0);
  std::vector<double> e(n, 0.0);
  if (n == 1) {
    eigenvalues[0] = a(0, 0);
    eigenvectors(0, 0) = 1.0;
    return;
  }
  tred2(eigenvectors, eigenvalues, e);
  tql2(eigenvectors, eigenvalues, e);
}

Mat cosine_distance_matrix(const Mat& theta) {
  if (theta.rows == 0) throw DataError("cosine distances: empty matrix");
  std::vector<double> norms(theta.rows);
  for (std::size_t i = 0; i < theta.rows; ++i) {
    double s = 0.0;
    const double* r = theta.row(i);
    for (std::size_t k = 0; k < theta.cols; ++k) s += r[k] * r[k];
    if (s <= 0.0)
      throw DataError("cosine distances: row " + std::to_string(i) +
                      " has zero norm");
    norms[i] = std::sqrt(s);
  }
  Mat out;
  kernels::cosine_distances(theta, norms, out);
  return out;
}

EmbeddingCoords classical_mds(const Mat& distances, std::size_t dims,
                              std::vector<std::string> doc_ids) {
  const std::size_t n = distances.rows;
  if (n == 0 || distances.cols != n)
    throw DataError("mds: distance matrix must be square and non-empty");
  if (dims < 1) throw ConfigError("mds: dims must be >= 1");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(distances(i, i)) > 1e-12)
      throw DataError("mds: diagonal entry " + std::to_string(i) +
                      " is not zero");
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(distances(i, j) - distances(j, i)) > 1e-12)
        throw DataError("mds: distance matrix asymmetric at (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
  }
  if (!doc_ids.empty() && doc_ids.size() != n)
    throw DataError("mds: doc_ids length does not match matrix size");

  Mat b;
  kernels::double_center(distances, b);

  std::vector<double> eigenvalues;
  Mat vectors;
  symmetric_eigen(b, eigenvalues, vectors);  // ascending

  EmbeddingCoords out;
  if (doc_ids.empty()) {
    for (std::size_t i = 0; i < n; ++i) out.doc_ids.push_back("doc" + std::to_string(i));
  } else {
    out.doc_ids = std::move(doc_ids);
  }

  const std::size_t trace_len = std::min<std::size_t>(n, 10);
  for (std::size_t t = 0; t < trace_len; ++t)
    out.eigenvalue_trace.push_back(eigenvalues[n - 1 - t]);

  out.xy = Mat(n, dims);
  for (std::size_t axis = 0; axis < dims && axis < n; ++axis) {
    const std::size_t col = n - 1 - axis;
    const double lambda = std::max(eigenvalues[col], 0.0);
    const double scale = std::sqrt(lambda);
    std::size_t arg_max = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(vectors(i, col));
      if (mag > best) {
        best = mag;
        arg_max = i;
      }
    }
    const double sign = vectors(arg_max, col) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i)
      out.xy(i, axis) = sign * scale * vectors(i, col);
  }
  return out;
}

std::vector<std::string> representative_docs(const Mat& theta,
                                             const std::vector<std::string>& doc_ids,
                                             std::size_t topic, std::size_t n) {
  if (topic >= theta.cols)
    throw DataError("representative_docs: topic " + std::to_string(topic) +
                    " out of range (K=" + std::to_string(theta.cols) + ")");
  if (doc_ids.size() != theta.rows)
    throw DataError("representative_docs: doc_ids length does not match theta");
  if (n > theta.rows)
    throw DataError("representative_docs: asked for " + std::to_string(n) +
                    " documents but only " + std::to_string(theta.rows) +
                    " exist");
  std::vector<std::size_t> idx(theta.rows);
  std::iota(idx.begin(), idx.end(), 0);
  std::partial_sort(idx.begin(), idx.begin() + n, idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double pa = theta(a, topic);
                      const double pb = theta(b, topic);
                      if (pa != pb) return pa > pb;
                      return doc_ids[a] < doc_ids[b];
                    });
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(doc_ids[idx[i]]);
  return out;
}

void place_labels(EmbeddingCoords& coords, const Mat& theta,
                  const std::vector<std::pair<std::size_t, std::string>>& topics) {
  if (theta.rows != coords.xy.rows)
    throw DataError("place_labels: theta and coordinates disagree on D");
  if (coords.xy.cols < 2)
    throw DataError("place_labels: need 2-D coordinates");
  const std::size_t per_label = std::min<std::size_t>(5, theta.rows);
  for (const auto& [topic, text] : topics) {
    const auto ids = representative_docs(theta, coords.doc_ids, topic, per_label);
    if (ids.empty()) throw DataError("place_labels: no documents to anchor a label");
    double cx = 0.0;
    double cy = 0.0;
    for (const auto& id : ids) {
      const auto it = std::find(coords.doc_ids.begin(), coords.doc_ids.end(), id);
      const auto row = static_cast<std::size_t>(it - coords.doc_ids.begin());
      cx += coords.xy(row, 0);
      cy += coords.xy(row, 1);
    }
    const auto n = static_cast<double>(ids.size());
    coords.labels.push_back({topic, text, cx / n, cy / n});
  }
}

}  // namespace dramascope
