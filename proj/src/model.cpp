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

#include "dramascope/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "dramascope/errors.hpp"
#include "dramascope/kernels.hpp"

namespace dramascope {

namespace {

using nlohmann::json;

json mat_to_json(const Mat& m) {
  json j;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  j["data"] = m.data;
  return j;
}

Mat mat_from_json(const json& j, const char* name) {
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw DataError(std::string("model file: ") + name +
                    " needs rows/cols/data");
  Mat m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  const auto& data = j.at("data");
  if (data.size() != m.data.size())
    throw DataError(std::string("model file: ") + name + " declares " +
                    std::to_string(m.rows) + "x" + std::to_string(m.cols) +
                    " but holds " + std::to_string(data.size()) + " values");
  m.data = data.get<std::vector<double>>();
  return m;
}

void check_stochastic_rows(const Mat& m, const char* name, double tol) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) {
      const double v = m(i, j);
      if (v < 0.0)
        throw DataError(std::string(name) + " row " + std::to_string(i) +
                        " has a negative entry");
      s += v;
    }
    if (std::abs(s - 1.0) > tol)
      throw DataError(std::string(name) + " row " + std::to_string(i) +
                      " sums to " + std::to_string(s) + ", expected 1");
  }
}

}  // namespace

std::string to_string(Method m) { return m == Method::Lda ? "lda" : "nmf"; }

Method method_from_string(const std::string& s) {
  if (s == "lda") return Method::Lda;
  if (s == "nmf") return Method::Nmf;
  throw ConfigError("unknown method '" + s + "' (expected lda or nmf)");
}

void TopicModel::validate(double tol) const {
  if (theta.cols != phi.rows)
    throw DataError("model: theta has " + std::to_string(theta.cols) +
                    " topics but phi has " + std::to_string(phi.rows));
  check_stochastic_rows(theta, "theta", tol);
  check_stochastic_rows(phi, "phi", tol);
}

void save_model(const TopicModel& model, const json& config_echo,
                const std::filesystem::path& path, const json* extras) {
  if (model.theta.cols != model.phi.rows)
    throw DataError("model: theta has " + std::to_string(model.theta.cols) +
                    " topics but phi has " + std::to_string(model.phi.rows));
  json j;
  if (extras)
    for (const auto& [key, value] : extras->items()) j[key] = value;
  j["format"] = "dramascope-model";
  j["format_version"] = 1;
  j["method"] = to_string(model.method);
  j["seed"] = model.seed;
  j["config_fingerprint"] = model.config_fingerprint;
  j["vocab_hash"] = model.vocab_hash;
  j["config"] = config_echo;
  j["theta"] = mat_to_json(model.theta);
  j["phi"] = mat_to_json(model.phi);
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file: " + path.string());
  out << j.dump(1) << '\n';
  out.close();
  if (out.fail()) throw DataError("error writing model file: " + path.string());
}

TopicModel load_model(const std::filesystem::path& path, json* config_echo) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": invalid JSON: " + e.what());
  }
  if (j.value("format", std::string{}) != "dramascope-model")
    throw DataError(path.string() + ": not a model file");
  TopicModel model;
  model.method = method_from_string(j.value("method", std::string{"lda"}));
  model.seed = j.value("seed", std::uint64_t{0});
  model.config_fingerprint = j.value("config_fingerprint", std::string{});
  model.vocab_hash = j.value("vocab_hash", std::string{});
  model.theta = mat_from_json(j.at("theta"), "theta");
  model.phi = mat_from_json(j.at("phi"), "phi");
  if (config_echo && j.contains("config")) *config_echo = j.at("config");
  return model;
}

std::vector<std::pair<std::string, double>> top_words(const TopicModel& model,
                                                      const Vocabulary& vocab,
                                                      std::size_t topic,
                                                      std::size_t n) {
  if (topic >= model.phi.rows)
    throw DataError("top_words: topic " + std::to_string(topic) +
                    " out of range (K=" + std::to_string(model.phi.rows) + ")");
  if (vocab.terms.size() != model.phi.cols)
    throw DataError("top_words: vocabulary size " +
                    std::to_string(vocab.terms.size()) +
                    " does not match phi columns " +
                    std::to_string(model.phi.cols));
  if (n == 0) throw ConfigError("top_words: n must be >= 1");
  const std::size_t v = model.phi.cols;
  std::vector<std::uint32_t> idx(v);
  for (std::size_t w = 0; w < v; ++w) idx[w] = static_cast<std::uint32_t>(w);
  const double* row = model.phi.row(topic);
  const std::size_t take = std::min(n, v);
  std::partial_sort(idx.begin(), idx.begin() + take, idx.end(),
                    [&](std::uint32_t a, std::uint32_t b) {
                      if (row[a] != row[b]) return row[a] > row[b];
                      return a < b;
                    });
  std::vector<std::pair<std::string, double>> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i)
    out.emplace_back(vocab.terms[idx[i]], row[idx[i]]);
  return out;
}

double perplexity(const TopicModel& model, const DocTermMatrix& matrix) {
  if (model.phi.cols != matrix.num_terms)
    throw DataError("perplexity: model vocabulary size " +
                    std::to_string(model.phi.cols) +
                    " does not match matrix term count " +
                    std::to_string(matrix.num_terms));
  if (model.theta.rows != matrix.num_docs)
    throw DataError("perplexity: model covers " +
                    std::to_string(model.theta.rows) +
                    " documents but matrix holds " +
                    std::to_string(matrix.num_docs));
  const std::uint64_t total = matrix.total_tokens();
  if (total == 0) throw DataError("perplexity: matrix has no tokens");
  std::vector<double> partials;
  kernels::doc_loglik(matrix, model.theta, model.phi, partials);
  double log2_lik = 0.0;
  for (const double p : partials) log2_lik += p;
  return std::exp2(-log2_lik / static_cast<double>(total));
}

}  // namespace dramascope
