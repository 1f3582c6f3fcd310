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

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dramascope/corpus.hpp"
#include "dramascope/matrix.hpp"

namespace dramascope {

enum class Method { Lda, Nmf };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

// A fitted topic model: row-stochastic doc-topic (theta, D×K) and
// topic-word (phi, K×V) distributions, plus provenance.
struct TopicModel {
  Method method = Method::Lda;
  std::uint64_t seed = 0;
  std::string config_fingerprint;
  std::string vocab_hash;
  Mat theta;
  Mat phi;

  std::size_t num_topics() const { return phi.rows; }
  std::size_t num_docs() const { return theta.rows; }
  std::size_t num_terms() const { return phi.cols; }

  // Every row of theta and phi sums to 1 within tol; all entries >= 0.
  void validate(double tol = 1e-9) const;
};

// Single JSON document: method, seed, fingerprints, echoed config, and both
// matrices row-major at full precision (values round-trip bitwise).
// `extras` entries are merged into the top level (e.g. an objective trace).
void save_model(const TopicModel& model, const nlohmann::json& config_echo,
                const std::filesystem::path& path,
                const nlohmann::json* extras = nullptr);
TopicModel load_model(const std::filesystem::path& path,
                      nlohmann::json* config_echo = nullptr);

// The n highest-probability terms of phi[topic], descending; ties broken by
// vocabulary index ascending. n is clamped to V.
std::vector<std::pair<std::string, double>> top_words(const TopicModel& model,
                                                      const Vocabulary& vocab,
                                                      std::size_t topic,
                                                      std::size_t n);

// exp(-sum_{d,w} count * ln p(w|d) / total tokens) where
// p(w|d) = sum_k theta[d,k] * phi[k,w].
double perplexity(const TopicModel& model, const DocTermMatrix& matrix);

}  // namespace dramascope
