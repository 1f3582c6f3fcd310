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
#include <numeric>
#include <vector>

#include "doctest.h"
#include "dramascope/errors.hpp"
#include "dramascope/lda.hpp"
#include "dramascope/model.hpp"
#include "dramascope/rng.hpp"
#include "test_util.hpp"

namespace {

using namespace dramascope;
namespace tu = dramascope::testutil;

// Corpus of `docs` documents over 2 topics with disjoint vocabulary halves
// [0, v/2) and [v/2, v); each document mixes the halves by a random weight.
DocTermMatrix two_topic_corpus(std::size_t docs, std::size_t v,
                               std::size_t tokens_per_doc, Rng& rng,
                               std::vector<double>* mix_out = nullptr) {
  std::vector<std::vector<std::uint32_t>> dense(
      docs, std::vector<std::uint32_t>(v, 0));
  const std::size_t half = v / 2;
  for (std::size_t d = 0; d < docs; ++d) {
    // Push mixtures toward the corners so the halves are identifiable.
    double mix = rng.uniform01();
    mix = mix < 0.5 ? 0.1 + 0.2 * mix : 0.7 + 0.2 * (mix - 0.5);
    if (mix_out) mix_out->push_back(mix);
    for (std::size_t t = 0; t < tokens_per_doc; ++t) {
      const bool first_half = rng.uniform01() < mix;
      const std::size_t base = first_half ? 0 : half;
      const std::size_t w = base + rng.uniform_below(half);
      ++dense[d][w];
    }
  }
  return tu::dense_counts(dense);
}

// Probability mass phi assigns to terms [lo, hi).
double mass_on(const TopicModel& m, std::size_t k, std::size_t lo,
               std::size_t hi) {
  double s = 0.0;
  for (std::size_t w = lo; w < hi; ++w) s += m.phi(k, w);
  return s;
}

LdaConfig small_config(std::uint64_t seed) {
  LdaConfig cfg;
  cfg.k = 2;
  cfg.alpha = 1.0;
  cfg.beta = 0.01;
  cfg.iterations = 220;
  cfg.burn_in = 120;
  cfg.sample_lag = 5;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE("lda") {

TEST_CASE("config validation catches contradictions") {
  LdaConfig cfg;
  cfg.k = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = LdaConfig{};
  cfg.burn_in = cfg.iterations;  // no post-burn-in sample possible
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = LdaConfig{};
  cfg.sample_lag = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = LdaConfig{};
  cfg.beta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = LdaConfig{};
  CHECK(cfg.resolved_alpha() == doctest::Approx(5.0));  // 50/k with k=10
  cfg.alpha = 0.3;
  CHECK(cfg.resolved_alpha() == 0.3);
}

TEST_CASE("degenerate single-topic single-term corpus") {
  const auto m = tu::dense_counts({{5}});
  LdaConfig cfg = small_config(1);
  cfg.k = 1;
  const auto model = fit_lda(m, cfg);
  REQUIRE(model.theta.rows == 1);
  REQUIRE(model.theta.cols == 1);
  CHECK(model.theta(0, 0) == 1.0);
  REQUIRE(model.phi.rows == 1);
  CHECK(model.phi(0, 0) == 1.0);
}

TEST_CASE("gibbs counts are conserved through initialization and sweeps") {
  Rng data_rng(5);
  const auto m = two_topic_corpus(20, 10, 30, data_rng);
  LdaConfig cfg = small_config(3);
  Rng rng(cfg.seed);
  GibbsState s = init_gibbs(m, cfg, rng);
  s.validate(m);  // throws on any miscount
  for (int sweep = 0; sweep < 10; ++sweep) {
    gibbs_sweep(m, cfg, s, rng);
    s.validate(m);
  }
  const std::uint64_t total =
      std::accumulate(s.n_k.begin(), s.n_k.end(), std::uint64_t{0});
  CHECK(total == m.total_tokens());
}

TEST_CASE("two disjoint topics are recovered with >= 0.9 mass") {
  Rng data_rng(11);
  const auto m = two_topic_corpus(200, 40, 80, data_rng);
  LdaConfig cfg = small_config(17);
  cfg.check_invariants = true;  // conservation enforced every sweep
  const auto model = fit_lda(m, cfg);

  // Align fitted topics to vocabulary halves by their mass.
  const double k0_first = mass_on(model, 0, 0, 20);
  const std::size_t first_topic = k0_first >= 0.5 ? 0 : 1;
  const double mass_first = mass_on(model, first_topic, 0, 20);
  const double mass_second = mass_on(model, 1 - first_topic, 20, 40);
  CAPTURE(mass_first);
  CAPTURE(mass_second);
  CHECK(0.5 * (mass_first + mass_second) >= 0.9);

  // Rows of theta and phi are distributions.
  model.validate();
}

TEST_CASE("same seed reproduces theta and phi bitwise") {
  Rng data_rng(7);
  const auto m = two_topic_corpus(50, 20, 40, data_rng);
  const LdaConfig cfg = small_config(123);
  const auto a = fit_lda(m, cfg);
  const auto b = fit_lda(m, cfg);
  CHECK(std::memcmp(a.theta.data.data(), b.theta.data.data(),
                    a.theta.data.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(a.phi.data.data(), b.phi.data.data(),
                    a.phi.data.size() * sizeof(double)) == 0);

  LdaConfig other = cfg;
  other.seed = 124;
  const auto c = fit_lda(m, other);
  CHECK(std::memcmp(a.theta.data.data(), c.theta.data.data(),
                    a.theta.data.size() * sizeof(double)) != 0);
}

TEST_CASE("document order only relabels the solution") {
  Rng data_rng(13);
  std::vector<double> mixes;
  const auto m = two_topic_corpus(80, 20, 60, data_rng, &mixes);

  // The same corpus with documents reversed.
  std::vector<std::vector<std::uint32_t>> dense(
      80, std::vector<std::uint32_t>(20, 0));
  for (std::size_t d = 0; d < 80; ++d)
    for (std::size_t i = m.row_ptr[d]; i < m.row_ptr[d + 1]; ++i)
      dense[79 - d][m.term[i]] = m.count[i];
  const auto rev = tu::dense_counts(dense);

  const LdaConfig cfg = small_config(99);
  const auto a = fit_lda(m, cfg);
  const auto b = fit_lda(rev, cfg);

  // Match topics between runs by phi agreement on the first half.
  const std::size_t a_first = mass_on(a, 0, 0, 10) >= 0.5 ? 0 : 1;
  const std::size_t b_first = mass_on(b, 0, 0, 10) >= 0.5 ? 0 : 1;
  std::size_t agree = 0;
  for (std::size_t d = 0; d < 80; ++d) {
    const bool a_dom = a.theta(d, a_first) >= 0.5;
    const bool b_dom = b.theta(79 - d, b_first) >= 0.5;
    if (a_dom == b_dom) ++agree;
  }
  CHECK(static_cast<double>(agree) / 80.0 >= 0.95);
}

TEST_CASE("fit_lda validates the corpus") {
  LdaConfig cfg = small_config(1);
  DocTermMatrix empty;
  empty.row_ptr = {0};
  CHECK_THROWS_AS(fit_lda(empty, cfg), DataError);

  const auto tiny = tu::dense_counts({{2}});  // V = 1 < k = 2
  CHECK_THROWS_AS(fit_lda(tiny, cfg), DataError);

  // A document with no tokens is tolerated: smoothing makes theta uniform.
  auto zero_doc = tu::dense_counts({{3, 2}, {0, 0}, {1, 4}});
  const auto model = fit_lda(zero_doc, small_config(2));
  CHECK(model.theta(1, 0) == doctest::Approx(0.5));
}

TEST_CASE("perplexity improves over a uniform model") {
  Rng data_rng(21);
  const auto m = two_topic_corpus(60, 20, 50, data_rng);
  const auto model = fit_lda(m, small_config(5));
  const double fitted = perplexity(model, m);
  // A model ignoring structure scores V; the fit must beat it clearly.
  CHECK(fitted < 20.0);
  CHECK(fitted > 1.0);
}

}  // TEST_SUITE
