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

#include "dramascope/lda.hpp"

#include <string>

#include "dramascope/errors.hpp"

namespace dramascope {

void LdaConfig::validate() const {
  if (k < 1) throw ConfigError("lda: k must be >= 1");
  if (resolved_alpha() <= 0.0) throw ConfigError("lda: alpha must be > 0");
  if (beta <= 0.0) throw ConfigError("lda: beta must be > 0");
  if (burn_in >= iterations)
    throw ConfigError("lda: burn_in (" + std::to_string(burn_in) +
                      ") must be smaller than iterations (" +
                      std::to_string(iterations) + ")");
  if (sample_lag < 1) throw ConfigError("lda: sample_lag must be >= 1");
  if ((iterations - burn_in) / sample_lag == 0)
    throw ConfigError(
        "lda: no post-burn-in samples; need iterations - burn_in >= "
        "sample_lag");
}

void GibbsState::validate(const DocTermMatrix& m) const {
  const auto fail = [](const std::string& what) {
    throw PipelineError("gibbs state inconsistent: " + what);
  };
  std::uint64_t grand = 0;
  for (std::size_t d = 0; d < num_docs; ++d) {
    std::uint64_t row = 0;
    for (std::size_t k = 0; k < num_topics; ++k) row += n_dk[d * num_topics + k];
    if (row != m.doc_total(d))
      fail("doc " + std::to_string(d) + " topic counts sum to " +
           std::to_string(row) + ", expected " + std::to_string(m.doc_total(d)));
    grand += row;
  }
  std::uint64_t topic_total = 0;
  for (std::size_t k = 0; k < num_topics; ++k) {
    std::uint64_t row = 0;
    for (std::size_t w = 0; w < num_terms; ++w) row += n_kw[k * num_terms + w];
    if (row != n_k[k])
      fail("topic " + std::to_string(k) + " word counts sum to " +
           std::to_string(row) + ", expected n_k=" + std::to_string(n_k[k]));
    topic_total += n_k[k];
  }
  if (grand != m.total_tokens() || topic_total != m.total_tokens())
    fail("totals disagree with the matrix token count");
}

GibbsState init_gibbs(const DocTermMatrix& m, const LdaConfig& cfg, Rng& rng) {
  GibbsState s;
  s.num_docs = m.num_docs;
  s.num_topics = cfg.k;
  s.num_terms = m.num_terms;
  s.n_dk.assign(m.num_docs * cfg.k, 0);
  s.n_kw.assign(cfg.k * m.num_terms, 0);
  s.n_k.assign(cfg.k, 0);
  s.z.reserve(m.total_tokens());
  for (std::size_t d = 0; d < m.num_docs; ++d) {
    for (std::size_t e = m.row_ptr[d]; e < m.row_ptr[d + 1]; ++e) {
      const std::uint32_t w = m.term[e];
      for (std::uint32_t rep = 0; rep < m.count[e]; ++rep) {
        const auto k = static_cast<std::uint32_t>(rng.uniform_below(cfg.k));
        s.z.push_back(k);
        ++s.n_dk[d * cfg.k + k];
        ++s.n_kw[k * m.num_terms + w];
        ++s.n_k[k];
      }
    }
  }
  return s;
}

void gibbs_sweep(const DocTermMatrix& m, const LdaConfig& cfg, GibbsState& s,
                 Rng& rng) {
  const std::size_t k_dim = cfg.k;
  const std::size_t v_dim = m.num_terms;
  const double alpha = cfg.resolved_alpha();
  const double beta = cfg.beta;
  const double v_beta = static_cast<double>(v_dim) * beta;
  std::vector<double> p(k_dim);

  std::size_t token = 0;
  for (std::size_t d = 0; d < m.num_docs; ++d) {
    std::uint32_t* dk = s.n_dk.data() + d * k_dim;
    for (std::size_t e = m.row_ptr[d]; e < m.row_ptr[d + 1]; ++e) {
      const std::uint32_t w = m.term[e];
      for (std::uint32_t rep = 0; rep < m.count[e]; ++rep, ++token) {
        const std::uint32_t old_k = s.z[token];
        --dk[old_k];
        --s.n_kw[old_k * v_dim + w];
        --s.n_k[old_k];

        double total = 0.0;
        for (std::size_t k = 0; k < k_dim; ++k) {
          const double weight =
              (static_cast<double>(dk[k]) + alpha) *
              (static_cast<double>(s.n_kw[k * v_dim + w]) + beta) /
              (static_cast<double>(s.n_k[k]) + v_beta);
          p[k] = weight;
          total += weight;
        }
        double r = rng.uniform01() * total;
        std::uint32_t new_k = static_cast<std::uint32_t>(k_dim - 1);
        for (std::size_t k = 0; k < k_dim; ++k) {
          r -= p[k];
          if (r <= 0.0) {
            new_k = static_cast<std::uint32_t>(k);
            break;
          }
        }

        s.z[token] = new_k;
        ++dk[new_k];
        ++s.n_kw[new_k * v_dim + w];
        ++s.n_k[new_k];
      }
    }
  }
}

TopicModel fit_lda(const DocTermMatrix& m, const LdaConfig& cfg) {
  cfg.validate();
  if (m.num_docs == 0) throw DataError("lda: empty matrix");
  if (m.total_tokens() == 0) throw DataError("lda: matrix has no tokens");
  if (cfg.k > m.num_terms)
    throw DataError("lda: k=" + std::to_string(cfg.k) +
                    " exceeds vocabulary size " + std::to_string(m.num_terms));

  const double alpha = cfg.resolved_alpha();
  const double beta = cfg.beta;
  const double v_beta = static_cast<double>(m.num_terms) * beta;

  Rng rng(cfg.seed);
  GibbsState s = init_gibbs(m, cfg, rng);
  if (cfg.check_invariants) s.validate(m);

  Mat theta_sum(m.num_docs, cfg.k);
  Mat phi_sum(cfg.k, m.num_terms);
  std::size_t samples = 0;

  for (std::size_t sweep = 1; sweep <= cfg.iterations; ++sweep) {
    gibbs_sweep(m, cfg, s, rng);
    if (cfg.check_invariants) s.validate(m);
    if (sweep > cfg.burn_in && (sweep - cfg.burn_in) % cfg.sample_lag == 0) {
      ++samples;
      for (std::size_t d = 0; d < m.num_docs; ++d) {
        const double denom =
            static_cast<double>(m.doc_total(d)) + static_cast<double>(cfg.k) * alpha;
        for (std::size_t k = 0; k < cfg.k; ++k)
          theta_sum(d, k) +=
              (static_cast<double>(s.n_dk[d * cfg.k + k]) + alpha) / denom;
      }
      for (std::size_t k = 0; k < cfg.k; ++k) {
        const double denom = static_cast<double>(s.n_k[k]) + v_beta;
        for (std::size_t w = 0; w < m.num_terms; ++w)
          phi_sum(k, w) +=
              (static_cast<double>(s.n_kw[k * m.num_terms + w]) + beta) / denom;
      }
    }
  }

  TopicModel model;
  model.method = Method::Lda;
  model.seed = cfg.seed;
  model.theta = std::move(theta_sum);
  model.phi = std::move(phi_sum);
  const double inv = 1.0 / static_cast<double>(samples);
  for (double& v : model.theta.data) v *= inv;
  for (double& v : model.phi.data) v *= inv;
  return model;
}

}  // namespace dramascope
