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
#include <vector>

#include <json.hpp>

#include "dramascope/lda.hpp"
#include "dramascope/nmf.hpp"

namespace dramascope {

struct SourceConfig {
  std::string type = "local";  // "local" or "api"
  std::filesystem::path path;  // local JSONL corpus
  std::string api_base = "https://dracor.org/api/v1";
  std::string corpus = "fre";
  std::filesystem::path cache_dir;
  int concurrency = 4;
};

struct YearRange {
  int min = 1700;
  int max = 1900;
};

struct NormalizerFiles {
  std::vector<std::string> kept_pos = {"NOUN", "PROPN", "VERB", "ADJ"};
  std::filesystem::path stopwords_file;
  std::filesystem::path drop_lemmas_file;
  std::filesystem::path lexicon_file;  // surface<TAB>lemma<TAB>pos entries
  bool lowercase = true;
  std::size_t min_token_length = 2;
  // With no lexicon, annotate raw-text tokens as their own lemma.
  bool surface_fallback = false;
  std::string fallback_pos = "NOUN";
};

struct PruningConfig {
  std::uint32_t min_df = 5;
  double max_df_fraction = 0.5;
  std::uint64_t min_doc_tokens = 20;
};

struct ModelSection {
  std::string method = "lda";  // "lda", "nmf", or "both"
  std::size_t k = 10;
  double lda_alpha = 0.0;  // <= 0 selects 50/k
  double lda_beta = 0.01;
  std::size_t lda_iterations = 1000;
  std::size_t lda_burn_in = 500;
  std::size_t lda_sample_lag = 10;
  std::size_t nmf_max_iterations = 500;
  double nmf_tolerance = 1e-5;
  std::string nmf_weighting = "tfidf";
};

struct AnalysisConfig {
  int period_start = 0;  // 0 means "use the year range"
  int period_end = 0;
  double significance = 0.05;
  double delta_threshold = 0.1;
  std::size_t jsd_smoothing_window = 0;  // 0/1 disables plot smoothing
  std::size_t top_words = 15;
  bool token_weighted_years = false;
  std::vector<std::string> map_labels;  // per-topic; empty entries auto-label
};

struct ExternalConfig {
  std::filesystem::path path;  // empty disables align/overlay
  std::string year_col = "year";
  std::string value_col = "value";
  std::string country_col;
  std::string country;
  std::string name;
  std::string unit;
  std::string normalization = "min-max";
  bool interpolate = false;
  std::vector<std::size_t> topics;  // empty = all topics
};

struct PipelineConfig {
  int config_version = 1;
  SourceConfig source;
  YearRange years;
  NormalizerFiles normalizer;
  PruningConfig pruning;
  ModelSection model;
  std::uint64_t seed = 0;
  AnalysisConfig analysis;
  ExternalConfig external;
  std::filesystem::path out_dir = "out";
  std::filesystem::path base_dir;  // directory of the config file

  // Path fields resolved against base_dir when relative.
  std::filesystem::path resolve(const std::filesystem::path& p) const;

  // Fully explicit configuration, every default spelled out.
  nlohmann::json resolved() const;

  // Collects every violation and throws one ConfigError listing all of them.
  void validate() const;

  int period_start() const { return analysis.period_start ? analysis.period_start : years.min; }
  int period_end() const { return analysis.period_end ? analysis.period_end : years.max; }
  Method primary_method() const { return model.method == "nmf" ? Method::Nmf : Method::Lda; }
};

PipelineConfig load_pipeline_config(const std::filesystem::path& path);

// Stage entry points. Each reads its upstream files from cfg.out_dir, writes
// its own outputs there, and refreshes run_manifest.json.
void stage_ingest(const PipelineConfig& cfg);
void stage_preprocess(const PipelineConfig& cfg);
void stage_fit(const PipelineConfig& cfg);
void stage_trends(const PipelineConfig& cfg);
void stage_divergence(const PipelineConfig& cfg);
void stage_map(const PipelineConfig& cfg);
void stage_align(const PipelineConfig& cfg);
void stage_report(const PipelineConfig& cfg);
void run_all(const PipelineConfig& cfg);

}  // namespace dramascope
