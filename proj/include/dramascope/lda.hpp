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
#include <vector>

#include "dramascope/matrix.hpp"
#include "dramascope/model.hpp"
#include "dramascope/rng.hpp"

namespace dramascope {

struct LdaConfig {
  std::size_t k = 10;
  double alpha = 0.0;  // <= 0 selects the default 50/k
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::size_t burn_in = 500;
  std::size_t sample_lag = 10;
  std::uint64_t seed = 0;
  // Verify count-table conservation after every sweep (slow; tests use it).
  bool check_invariants = false;

  double resolved_alpha() const { return alpha > 0.0 ? alpha : 50.0 / static_cast<double>(k); }
  void validate() const;
};

// Sufficient statistics of the collapsed sampler. Tokens are enumerated
// document by document, matrix entry by entry, repetition by repetition;
// z holds one topic per token in that order.
struct GibbsState {
  std::size_t num_docs = 0;
  std::size_t num_topics = 0;
  std::size_t num_terms = 0;
  std::vector<std::uint32_t> z;
  std::vector<std::uint32_t> n_dk;  // D×K row-major
  std::vector<std::uint32_t> n_kw;  // K×V row-major
  std::vector<std::uint64_t> n_k;

  // Throws unless sum_k n_dk[d,:] equals document d's token count,
  // sum_w n_kw[k,:] equals n_k[k], and sum_k n_k equals the total.
  void validate(const DocTermMatrix& m) const;
};

GibbsState init_gibbs(const DocTermMatrix& m, const LdaConfig& cfg, Rng& rng);

// One full sweep: every token resampled from its conditional
// p(z=k) ∝ (n_dk+alpha)(n_kw+beta)/(n_k+V*beta), own assignment excluded.
void gibbs_sweep(const DocTermMatrix& m, const LdaConfig& cfg, GibbsState& s,
                 Rng& rng);

// Runs the chain and returns posterior-mean theta/phi averaged over
// post-burn-in samples taken every sample_lag sweeps.
TopicModel fit_lda(const DocTermMatrix& m, const LdaConfig& cfg);

}  // namespace dramascope
