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

#include "dramascope/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>

#include "dramascope/align.hpp"
#include "dramascope/csv.hpp"
#include "dramascope/divergence.hpp"
#include "dramascope/dracor.hpp"
#include "dramascope/errors.hpp"
#include "dramascope/semmap.hpp"
#include "dramascope/serialize.hpp"
#include "dramascope/svg.hpp"
#include "dramascope/trends.hpp"

namespace dramascope {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kDocuments = "documents.jsonl";
constexpr const char* kMatrix = "matrix.txt";
constexpr const char* kVocab = "vocab.txt";
constexpr const char* kDocsMeta = "docs_meta.csv";
constexpr const char* kDropped = "dropped_docs.csv";
constexpr const char* kModelLda = "model_lda.json";
constexpr const char* kModelNmf = "model_nmf.json";
constexpr const char* kTheta = "theta.csv";
constexpr const char* kPhiTopWords = "phi_top_words.csv";
constexpr const char* kYearlyPrevalence = "yearly_prevalence.csv";
constexpr const char* kTrends = "trends.csv";
constexpr const char* kJsd = "jsd.csv";
constexpr const char* kMdsCoords = "mds_coords.csv";
constexpr const char* kMdsLabels = "mds_labels.csv";
constexpr const char* kMdsEigenvalues = "mds_eigenvalues.csv";
constexpr const char* kOverlay = "overlay.csv";
constexpr const char* kManifest = "run_manifest.json";

const char* const kOutputs[] = {
    kDocuments, kMatrix, kVocab, kDocsMeta, kDropped, kModelLda, kModelNmf,
    kTheta, kPhiTopWords, kYearlyPrevalence, kTrends, kJsd, kMdsCoords,
    kMdsLabels, kMdsEigenvalues, kOverlay,
    "report/prevalence.svg", "report/overlay.svg", "report/jsd.svg",
    "report/semantic_map.svg", "report/topic_table.svg",
    "report/topic_table.csv"};

void check_keys(const json& j, const std::string& section,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object())
    throw ConfigError("config: \"" + section + "\" must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end())
      throw ConfigError("config: unknown key \"" + key + "\" in " + section);
  }
}

void require(const fs::path& file, const std::string& stage) {
  if (!fs::exists(file))
    throw PipelineError("missing " + file.string() + ": run " + stage +
                        " first");
}

std::string topic_col(std::size_t k) { return "topic_" + std::to_string(k); }

struct Preprocessed {
  Vocabulary vocab;
  DocTermMatrix matrix;
};

Preprocessed load_preprocessed(const PipelineConfig& cfg) {
  require(cfg.out_dir / kMatrix, "preprocess");
  require(cfg.out_dir / kVocab, "preprocess");
  require(cfg.out_dir / kDocsMeta, "preprocess");
  Preprocessed p;
  auto [vocab, matrix] = load_matrix(cfg.out_dir / kMatrix, cfg.out_dir / kVocab);
  p.vocab = std::move(vocab);
  p.matrix = std::move(matrix);
  load_doc_meta(p.matrix, cfg.out_dir / kDocsMeta);
  return p;
}

fs::path primary_model_file(const PipelineConfig& cfg) {
  return cfg.out_dir /
         (cfg.primary_method() == Method::Nmf ? kModelNmf : kModelLda);
}

TopicModel load_primary_model(const PipelineConfig& cfg) {
  require(primary_model_file(cfg), "fit");
  return load_model(primary_model_file(cfg));
}

YearlyTopicSeries build_yearly_series(const PipelineConfig& cfg,
                                      const TopicModel& model,
                                      const DocTermMatrix& matrix) {
  if (model.theta.rows != matrix.num_docs)
    throw PipelineError(
        "model and preprocessed matrix disagree on document count; re-run fit");
  if (cfg.analysis.token_weighted_years) {
    std::vector<double> weights(matrix.num_docs);
    for (std::size_t d = 0; d < matrix.num_docs; ++d)
      weights[d] = static_cast<double>(matrix.doc_total(d));
    return yearly_distributions(model.theta, matrix.doc_years, &weights);
  }
  return yearly_distributions(model.theta, matrix.doc_years, nullptr);
}

json lda_config_json(const PipelineConfig& cfg) {
  json j;
  j["k"] = cfg.model.k;
  j["alpha"] = cfg.model.lda_alpha;
  j["beta"] = cfg.model.lda_beta;
  j["iterations"] = cfg.model.lda_iterations;
  j["burn_in"] = cfg.model.lda_burn_in;
  j["sample_lag"] = cfg.model.lda_sample_lag;
  j["seed"] = cfg.seed;
  return j;
}

json nmf_config_json(const PipelineConfig& cfg) {
  json j;
  j["k"] = cfg.model.k;
  j["max_iterations"] = cfg.model.nmf_max_iterations;
  j["tolerance"] = cfg.model.nmf_tolerance;
  j["weighting"] = cfg.model.nmf_weighting;
  j["seed"] = cfg.seed;
  return j;
}

void write_manifest(const PipelineConfig& cfg) {
  json m;
  m["format"] = "dramascope-run-manifest";
  m["resolved_config"] = cfg.resolved();
  json inputs = json::object();
  const auto add_input = [&](const fs::path& p) {
    if (p.empty()) return;
    const fs::path r = cfg.resolve(p);
    if (fs::exists(r) && fs::is_regular_file(r))
      inputs[r.string()] = hash_file(r);
  };
  if (cfg.source.type == "local") add_input(cfg.source.path);
  add_input(cfg.normalizer.stopwords_file);
  add_input(cfg.normalizer.drop_lemmas_file);
  add_input(cfg.normalizer.lexicon_file);
  add_input(cfg.external.path);
  m["inputs"] = std::move(inputs);
  json outputs = json::object();
  for (const char* name : kOutputs) {
    const fs::path p = cfg.out_dir / name;
    if (fs::exists(p)) outputs[name] = hash_file(p);
  }
  m["outputs"] = std::move(outputs);
  std::ofstream out(cfg.out_dir / kManifest);
  if (!out)
    throw DataError("cannot write manifest: " +
                    (cfg.out_dir / kManifest).string());
  out << m.dump(1) << '\n';
}

void note(const std::string& line) { std::cerr << line << '\n'; }

std::vector<std::pair<std::size_t, std::string>> topic_labels(
    const PipelineConfig& cfg, const TopicModel& model, const Vocabulary& vocab) {
  std::vector<std::pair<std::size_t, std::string>> labels;
  for (std::size_t k = 0; k < model.num_topics(); ++k) {
    std::string text;
    if (k < cfg.analysis.map_labels.size() && !cfg.analysis.map_labels[k].empty())
      text = cfg.analysis.map_labels[k];
    else
      text = "T" + std::to_string(k) + " " +
             top_words(model, vocab, k, 1).front().first;
    labels.emplace_back(k, std::move(text));
  }
  return labels;
}

double parse_field(const std::vector<std::string>& row, std::size_t idx,
                   const std::string& file) {
  try {
    return std::stod(row.at(idx));
  } catch (const std::exception&) {
    throw DataError(file + ": cannot parse numeric field '" +
                    (idx < row.size() ? row[idx] : std::string{"<missing>"}) +
                    "'");
  }
}

}  // namespace

fs::path PipelineConfig::resolve(const fs::path& p) const {
  if (p.empty() || p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

json PipelineConfig::resolved() const {
  json j;
  j["config_version"] = config_version;
  j["seed"] = seed;
  j["out_dir"] = out_dir.string();
  json src;
  src["type"] = source.type;
  src["path"] = source.path.string();
  src["api_base"] = source.api_base;
  src["corpus"] = source.corpus;
  src["cache_dir"] = source.cache_dir.string();
  src["concurrency"] = source.concurrency;
  j["source"] = std::move(src);
  j["years"] = {{"min", years.min}, {"max", years.max}};
  json norm;
  norm["kept_pos"] = normalizer.kept_pos;
  norm["stopwords_file"] = normalizer.stopwords_file.string();
  norm["drop_lemmas_file"] = normalizer.drop_lemmas_file.string();
  norm["lexicon_file"] = normalizer.lexicon_file.string();
  norm["lowercase"] = normalizer.lowercase;
  norm["min_token_length"] = normalizer.min_token_length;
  norm["surface_fallback"] = normalizer.surface_fallback;
  norm["fallback_pos"] = normalizer.fallback_pos;
  j["normalizer"] = std::move(norm);
  j["pruning"] = {{"min_df", pruning.min_df},
                  {"max_df_fraction", pruning.max_df_fraction},
                  {"min_doc_tokens", pruning.min_doc_tokens}};
  json mdl;
  mdl["method"] = model.method;
  mdl["k"] = model.k;
  mdl["lda"] = {{"alpha", model.lda_alpha},
                {"beta", model.lda_beta},
                {"iterations", model.lda_iterations},
                {"burn_in", model.lda_burn_in},
                {"sample_lag", model.lda_sample_lag}};
  mdl["nmf"] = {{"max_iterations", model.nmf_max_iterations},
                {"tolerance", model.nmf_tolerance},
                {"weighting", model.nmf_weighting}};
  j["model"] = std::move(mdl);
  json ana;
  ana["period"] = {{"start", period_start()}, {"end", period_end()}};
  ana["significance"] = analysis.significance;
  ana["delta_threshold"] = analysis.delta_threshold;
  ana["jsd_smoothing_window"] = analysis.jsd_smoothing_window;
  ana["top_words"] = analysis.top_words;
  ana["token_weighted_years"] = analysis.token_weighted_years;
  ana["map_labels"] = analysis.map_labels;
  j["analysis"] = std::move(ana);
  json ext;
  ext["path"] = external.path.string();
  ext["year_col"] = external.year_col;
  ext["value_col"] = external.value_col;
  ext["country_col"] = external.country_col;
  ext["country"] = external.country;
  ext["name"] = external.name;
  ext["unit"] = external.unit;
  ext["normalization"] = external.normalization;
  ext["interpolate"] = external.interpolate;
  ext["topics"] = external.topics;
  j["external"] = std::move(ext);
  return j;
}

void PipelineConfig::validate() const {
  std::vector<std::string> problems;
  const auto check_file = [&](const fs::path& p, const std::string& what) {
    if (!p.empty() && !fs::exists(resolve(p)))
      problems.push_back(what + " does not exist: " + resolve(p).string());
  };

  if (config_version != 1)
    problems.push_back("config_version must be 1");
  if (source.type != "local" && source.type != "api")
    problems.push_back("source.type must be \"local\" or \"api\"");
  if (source.type == "local") {
    if (source.path.empty())
      problems.push_back("source.path is required for a local corpus");
    else
      check_file(source.path, "source.path");
  } else {
    if (source.api_base.empty()) problems.push_back("source.api_base is empty");
    if (source.corpus.empty()) problems.push_back("source.corpus is empty");
  }
  if (source.concurrency < 1)
    problems.push_back("source.concurrency must be >= 1");
  if (years.min > years.max)
    problems.push_back("years.min exceeds years.max");
  if (normalizer.kept_pos.empty())
    problems.push_back("normalizer.kept_pos must not be empty");
  if (normalizer.min_token_length < 1)
    problems.push_back("normalizer.min_token_length must be >= 1");
  check_file(normalizer.stopwords_file, "normalizer.stopwords_file");
  check_file(normalizer.drop_lemmas_file, "normalizer.drop_lemmas_file");
  check_file(normalizer.lexicon_file, "normalizer.lexicon_file");
  if (pruning.min_df < 1) problems.push_back("pruning.min_df must be >= 1");
  if (!(pruning.max_df_fraction > 0.0) || pruning.max_df_fraction > 1.0)
    problems.push_back("pruning.max_df_fraction must be in (0, 1]");
  if (model.method != "lda" && model.method != "nmf" && model.method != "both")
    problems.push_back("model.method must be lda, nmf, or both");
  if (model.k < 1) problems.push_back("model.k must be >= 1");
  if (model.method != "nmf") {
    LdaConfig lc;
    lc.k = model.k;
    lc.alpha = model.lda_alpha;
    lc.beta = model.lda_beta;
    lc.iterations = model.lda_iterations;
    lc.burn_in = model.lda_burn_in;
    lc.sample_lag = model.lda_sample_lag;
    try {
      lc.validate();
    } catch (const Error& e) {
      problems.emplace_back(e.what());
    }
  }
  if (model.method != "lda") {
    NmfConfig nc;
    nc.k = model.k;
    nc.max_iterations = model.nmf_max_iterations;
    nc.tolerance = model.nmf_tolerance;
    try {
      nc.weighting = weighting_from_string(model.nmf_weighting);
      nc.validate();
    } catch (const Error& e) {
      problems.emplace_back(e.what());
    }
  }
  if (!(analysis.significance > 0.0) || analysis.significance >= 1.0)
    problems.push_back("analysis.significance must be in (0, 1)");
  if (analysis.delta_threshold < 0.0)
    problems.push_back("analysis.delta_threshold must be >= 0");
  if (period_start() >= period_end())
    problems.push_back("analysis.period start must precede end");
  if (analysis.top_words < 1)
    problems.push_back("analysis.top_words must be >= 1");
  if (!external.path.empty()) {
    check_file(external.path, "external.path");
    try {
      normalization_from_string(external.normalization);
    } catch (const Error& e) {
      problems.emplace_back(e.what());
    }
    for (const std::size_t t : external.topics)
      if (t >= model.k)
        problems.push_back("external.topics entry " + std::to_string(t) +
                           " out of range (k=" + std::to_string(model.k) + ")");
  }

  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
}

PipelineConfig load_pipeline_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  check_keys(j, "top level",
             {"config_version", "seed", "out_dir", "source", "years",
              "normalizer", "pruning", "model", "analysis", "external"});

  PipelineConfig cfg;
  cfg.base_dir = fs::absolute(path).parent_path();
  try {
    cfg.config_version = j.value("config_version", 1);
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.out_dir = fs::path(j.value("out_dir", std::string{"out"}));

    if (j.contains("source")) {
      const json& s = j.at("source");
      check_keys(s, "source",
                 {"type", "path", "api_base", "corpus", "cache_dir",
                  "concurrency"});
      cfg.source.type = s.value("type", cfg.source.type);
      cfg.source.path = fs::path(s.value("path", std::string{}));
      cfg.source.api_base = s.value("api_base", cfg.source.api_base);
      cfg.source.corpus = s.value("corpus", cfg.source.corpus);
      cfg.source.cache_dir = fs::path(s.value("cache_dir", std::string{}));
      cfg.source.concurrency = s.value("concurrency", cfg.source.concurrency);
    }
    if (j.contains("years")) {
      const json& y = j.at("years");
      check_keys(y, "years", {"min", "max"});
      cfg.years.min = y.value("min", cfg.years.min);
      cfg.years.max = y.value("max", cfg.years.max);
    }
    if (j.contains("normalizer")) {
      const json& n = j.at("normalizer");
      check_keys(n, "normalizer",
                 {"kept_pos", "stopwords_file", "drop_lemmas_file",
                  "lexicon_file", "lowercase", "min_token_length",
                  "surface_fallback", "fallback_pos"});
      if (n.contains("kept_pos"))
        cfg.normalizer.kept_pos = n.at("kept_pos").get<std::vector<std::string>>();
      cfg.normalizer.stopwords_file = fs::path(n.value("stopwords_file", std::string{}));
      cfg.normalizer.drop_lemmas_file = fs::path(n.value("drop_lemmas_file", std::string{}));
      cfg.normalizer.lexicon_file = fs::path(n.value("lexicon_file", std::string{}));
      cfg.normalizer.lowercase = n.value("lowercase", cfg.normalizer.lowercase);
      cfg.normalizer.min_token_length =
          n.value("min_token_length", cfg.normalizer.min_token_length);
      cfg.normalizer.surface_fallback =
          n.value("surface_fallback", cfg.normalizer.surface_fallback);
      cfg.normalizer.fallback_pos = n.value("fallback_pos", cfg.normalizer.fallback_pos);
    }
    if (j.contains("pruning")) {
      const json& p = j.at("pruning");
      check_keys(p, "pruning", {"min_df", "max_df_fraction", "min_doc_tokens"});
      cfg.pruning.min_df = p.value("min_df", cfg.pruning.min_df);
      cfg.pruning.max_df_fraction =
          p.value("max_df_fraction", cfg.pruning.max_df_fraction);
      cfg.pruning.min_doc_tokens =
          p.value("min_doc_tokens", cfg.pruning.min_doc_tokens);
    }
    if (j.contains("model")) {
      const json& m = j.at("model");
      check_keys(m, "model", {"method", "k", "lda", "nmf"});
      cfg.model.method = m.value("method", cfg.model.method);
      cfg.model.k = m.value("k", cfg.model.k);
      if (m.contains("lda")) {
        const json& l = m.at("lda");
        check_keys(l, "model.lda",
                   {"alpha", "beta", "iterations", "burn_in", "sample_lag"});
        cfg.model.lda_alpha = l.value("alpha", cfg.model.lda_alpha);
        cfg.model.lda_beta = l.value("beta", cfg.model.lda_beta);
        cfg.model.lda_iterations = l.value("iterations", cfg.model.lda_iterations);
        cfg.model.lda_burn_in = l.value("burn_in", cfg.model.lda_burn_in);
        cfg.model.lda_sample_lag = l.value("sample_lag", cfg.model.lda_sample_lag);
      }
      if (m.contains("nmf")) {
        const json& nf = m.at("nmf");
        check_keys(nf, "model.nmf", {"max_iterations", "tolerance", "weighting"});
        cfg.model.nmf_max_iterations =
            nf.value("max_iterations", cfg.model.nmf_max_iterations);
        cfg.model.nmf_tolerance = nf.value("tolerance", cfg.model.nmf_tolerance);
        cfg.model.nmf_weighting = nf.value("weighting", cfg.model.nmf_weighting);
      }
    }
    if (j.contains("analysis")) {
      const json& a = j.at("analysis");
      check_keys(a, "analysis",
                 {"period", "significance", "delta_threshold",
                  "jsd_smoothing_window", "top_words", "token_weighted_years",
                  "map_labels"});
      if (a.contains("period")) {
        const json& p = a.at("period");
        check_keys(p, "analysis.period", {"start", "end"});
        cfg.analysis.period_start = p.value("start", 0);
        cfg.analysis.period_end = p.value("end", 0);
      }
      cfg.analysis.significance = a.value("significance", cfg.analysis.significance);
      cfg.analysis.delta_threshold =
          a.value("delta_threshold", cfg.analysis.delta_threshold);
      cfg.analysis.jsd_smoothing_window =
          a.value("jsd_smoothing_window", cfg.analysis.jsd_smoothing_window);
      cfg.analysis.top_words = a.value("top_words", cfg.analysis.top_words);
      cfg.analysis.token_weighted_years =
          a.value("token_weighted_years", cfg.analysis.token_weighted_years);
      if (a.contains("map_labels"))
        cfg.analysis.map_labels = a.at("map_labels").get<std::vector<std::string>>();
    }
    if (j.contains("external")) {
      const json& e = j.at("external");
      check_keys(e, "external",
                 {"path", "year_col", "value_col", "country_col", "country",
                  "name", "unit", "normalization", "interpolate", "topics"});
      cfg.external.path = fs::path(e.value("path", std::string{}));
      cfg.external.year_col = e.value("year_col", cfg.external.year_col);
      cfg.external.value_col = e.value("value_col", cfg.external.value_col);
      cfg.external.country_col = e.value("country_col", cfg.external.country_col);
      cfg.external.country = e.value("country", cfg.external.country);
      cfg.external.name = e.value("name", cfg.external.name);
      cfg.external.unit = e.value("unit", cfg.external.unit);
      cfg.external.normalization =
          e.value("normalization", cfg.external.normalization);
      cfg.external.interpolate = e.value("interpolate", cfg.external.interpolate);
      if (e.contains("topics"))
        cfg.external.topics = e.at("topics").get<std::vector<std::size_t>>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": malformed config: " + e.what());
  }
  return cfg;
}

void stage_ingest(const PipelineConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);

  std::vector<RawDocument> docs;
  if (cfg.source.type == "local") {
    docs = load_local_corpus(cfg.resolve(cfg.source.path));
  } else {
    FetchOptions opt;
    opt.api_base = cfg.source.api_base;
    opt.corpus_name = cfg.source.corpus;
    opt.cache_dir = cfg.resolve(cfg.source.cache_dir);
    opt.concurrency = cfg.source.concurrency;
    FetchStats stats;
    docs = fetch_corpus(opt, &stats);
    note("ingest: " + std::to_string(stats.plays_listed) + " plays listed, " +
         std::to_string(stats.documents) + " fetched, " +
         std::to_string(stats.skipped) + " skipped, " +
         std::to_string(stats.network_requests) + " network requests, " +
         std::to_string(stats.cache_hits) + " cache hits");
    for (std::size_t i = 0; i < stats.warnings.size() && i < 10; ++i)
      note("ingest: warning: " + stats.warnings[i]);
    if (stats.warnings.size() > 10)
      note("ingest: (" + std::to_string(stats.warnings.size() - 10) +
           " more warnings)");
  }

  const std::size_t before = docs.size();
  docs = filter_by_year(docs, cfg.years.min, cfg.years.max);
  if (docs.empty())
    throw DataError("no documents in year range " +
                    std::to_string(cfg.years.min) + "-" +
                    std::to_string(cfg.years.max));
  for (const auto& d : docs) d.validate();

  save_corpus_jsonl(docs, cfg.out_dir / kDocuments);
  note("ingest: " + std::to_string(docs.size()) + " documents in " +
       std::to_string(cfg.years.min) + "-" + std::to_string(cfg.years.max) +
       " (" + std::to_string(before - docs.size()) + " outside range) -> " +
       (cfg.out_dir / kDocuments).string());
  write_manifest(cfg);
}

void stage_preprocess(const PipelineConfig& cfg) {
  cfg.validate();
  require(cfg.out_dir / kDocuments, "ingest");
  const auto docs = load_local_corpus(cfg.out_dir / kDocuments);

  NormalizerConfig norm;
  norm.kept_pos.clear();
  for (const auto& pos : cfg.normalizer.kept_pos) norm.kept_pos.insert(pos);
  if (!cfg.normalizer.stopwords_file.empty())
    norm.stopwords = load_lemma_set(cfg.resolve(cfg.normalizer.stopwords_file));
  if (!cfg.normalizer.drop_lemmas_file.empty())
    norm.extra_drop_lemmas =
        load_lemma_set(cfg.resolve(cfg.normalizer.drop_lemmas_file));
  norm.lowercase = cfg.normalizer.lowercase;
  norm.min_token_length = cfg.normalizer.min_token_length;

  std::unique_ptr<LemmaProvider> lemmatizer;
  if (!cfg.normalizer.lexicon_file.empty())
    lemmatizer = std::make_unique<LexiconLemmatizer>(
        cfg.resolve(cfg.normalizer.lexicon_file));
  else if (cfg.normalizer.surface_fallback)
    lemmatizer = std::make_unique<SurfaceLemmatizer>(cfg.normalizer.fallback_pos);

  std::vector<std::vector<std::string>> token_lists;
  std::vector<std::string> ids, titles;
  std::vector<int> years;
  token_lists.reserve(docs.size());
  for (const auto& d : docs) {
    token_lists.push_back(normalize(d, norm, lemmatizer.get()));
    ids.push_back(d.id);
    years.push_back(d.year);
    titles.push_back(d.title);
  }

  MatrixBuildOptions opt;
  opt.min_df = cfg.pruning.min_df;
  opt.max_df_fraction = cfg.pruning.max_df_fraction;
  opt.min_doc_tokens = cfg.pruning.min_doc_tokens;
  std::vector<DroppedDoc> dropped;
  auto [vocab, matrix] = build_matrix(token_lists, ids, years, titles, opt, &dropped);

  save_matrix(matrix, vocab, cfg.out_dir / kMatrix, cfg.out_dir / kVocab);
  save_doc_meta(matrix, cfg.out_dir / kDocsMeta);
  CsvWriter drop_out(cfg.out_dir / kDropped);
  drop_out.write_row({"doc_id", "retained_tokens"});
  for (const auto& d : dropped)
    drop_out.write_row({d.id, std::to_string(d.retained_tokens)});
  drop_out.close();

  note("preprocess: " + std::to_string(matrix.num_docs) + " documents, " +
       std::to_string(matrix.num_terms) + " terms, " +
       std::to_string(matrix.total_tokens()) + " tokens, " +
       std::to_string(dropped.size()) + " documents dropped");
  write_manifest(cfg);
}

void stage_fit(const PipelineConfig& cfg) {
  cfg.validate();
  const Preprocessed pre = load_preprocessed(cfg);
  const std::string vhash = vocab_fingerprint(pre.vocab);

  if (cfg.model.method == "lda" || cfg.model.method == "both") {
    LdaConfig lc;
    lc.k = cfg.model.k;
    lc.alpha = cfg.model.lda_alpha;
    lc.beta = cfg.model.lda_beta;
    lc.iterations = cfg.model.lda_iterations;
    lc.burn_in = cfg.model.lda_burn_in;
    lc.sample_lag = cfg.model.lda_sample_lag;
    lc.seed = cfg.seed;
    TopicModel model = fit_lda(pre.matrix, lc);
    model.vocab_hash = vhash;
    const json echo = lda_config_json(cfg);
    model.config_fingerprint = fnv1a64_hex(echo.dump());
    save_model(model, echo, cfg.out_dir / kModelLda);
    note("fit: lda k=" + std::to_string(cfg.model.k) + ", perplexity " +
         format_fixed(perplexity(model, pre.matrix), 2));
  }
  if (cfg.model.method == "nmf" || cfg.model.method == "both") {
    NmfConfig nc;
    nc.k = cfg.model.k;
    nc.max_iterations = cfg.model.nmf_max_iterations;
    nc.tolerance = cfg.model.nmf_tolerance;
    nc.weighting = weighting_from_string(cfg.model.nmf_weighting);
    nc.seed = cfg.seed;
    const SparseReal v = apply_weighting(pre.matrix, nc.weighting);
    const NmfModel nm = fit_nmf(v, nc);
    TopicModel model = as_topic_model(nm);
    model.vocab_hash = vhash;
    const json echo = nmf_config_json(cfg);
    model.config_fingerprint = fnv1a64_hex(echo.dump());
    json extras;
    extras["objective_trace"] = nm.objective_trace;
    save_model(model, echo, cfg.out_dir / kModelNmf, &extras);
    note("fit: nmf k=" + std::to_string(cfg.model.k) + ", " +
         std::to_string(nm.objective_trace.size()) + " iterations, objective " +
         format_fixed(nm.objective_trace.back(), 4));
  }

  const TopicModel primary = load_model(primary_model_file(cfg));

  CsvWriter theta_out(cfg.out_dir / kTheta);
  std::vector<std::string> header = {"doc_id", "year"};
  for (std::size_t k = 0; k < primary.num_topics(); ++k)
    header.push_back(topic_col(k));
  theta_out.write_row(header);
  for (std::size_t d = 0; d < primary.num_docs(); ++d) {
    std::vector<std::string> row = {pre.matrix.doc_ids[d],
                                    std::to_string(pre.matrix.doc_years[d])};
    for (std::size_t k = 0; k < primary.num_topics(); ++k)
      row.push_back(format_double(primary.theta(d, k)));
    theta_out.write_row(row);
  }
  theta_out.close();

  CsvWriter phi_out(cfg.out_dir / kPhiTopWords);
  phi_out.write_row({"topic", "rank", "term", "probability"});
  for (std::size_t k = 0; k < primary.num_topics(); ++k) {
    const auto words = top_words(primary, pre.vocab, k, cfg.analysis.top_words);
    for (std::size_t r = 0; r < words.size(); ++r)
      phi_out.write_row({std::to_string(k), std::to_string(r + 1),
                         words[r].first, format_double(words[r].second)});
  }
  phi_out.close();
  write_manifest(cfg);
}

void stage_trends(const PipelineConfig& cfg) {
  cfg.validate();
  const Preprocessed pre = load_preprocessed(cfg);
  const TopicModel model = load_primary_model(cfg);
  const YearlyTopicSeries series = build_yearly_series(cfg, model, pre.matrix);

  CsvWriter prev_out(cfg.out_dir / kYearlyPrevalence);
  std::vector<std::string> header = {"year", "n_docs"};
  for (std::size_t k = 0; k < model.num_topics(); ++k)
    header.push_back(topic_col(k));
  prev_out.write_row(header);
  for (std::size_t y = 0; y < series.years.size(); ++y) {
    std::vector<std::string> row = {std::to_string(series.years[y]),
                                    std::to_string(series.doc_counts[y])};
    for (std::size_t k = 0; k < model.num_topics(); ++k)
      row.push_back(format_double(series.distributions(y, k)));
    prev_out.write_row(row);
  }
  prev_out.close();

  CsvWriter trend_out(cfg.out_dir / kTrends);
  trend_out.write_row({"topic", "mean_prevalence", "slope", "slope_stderr",
                       "t_stat", "p_value", "delta", "classification"});
  for (std::size_t k = 0; k < model.num_topics(); ++k) {
    const auto points = topic_prevalence_series(series, k);
    TrendResult r = ols_trend(points, cfg.period_start(), cfg.period_end());
    r.topic = k;
    r.classification =
        classify(r, cfg.analysis.significance, cfg.analysis.delta_threshold);
    trend_out.write_row({std::to_string(k), format_double(r.mean_prevalence),
                         format_double(r.slope), format_double(r.slope_stderr),
                         format_double(r.t_stat), format_double(r.p_value),
                         format_double(r.delta), to_string(r.classification)});
  }
  trend_out.close();
  note("trends: " + std::to_string(model.num_topics()) + " topics over " +
       std::to_string(series.years.size()) + " years");
  write_manifest(cfg);
}

void stage_divergence(const PipelineConfig& cfg) {
  cfg.validate();
  const Preprocessed pre = load_preprocessed(cfg);
  const TopicModel model = load_primary_model(cfg);
  const YearlyTopicSeries series = build_yearly_series(cfg, model, pre.matrix);
  const JsdSeries js = jsd_series(series);

  CsvWriter out(cfg.out_dir / kJsd);
  out.write_row({"year_from", "year_to", "gap", "jsd_bits"});
  for (std::size_t i = 0; i < js.values.size(); ++i)
    out.write_row({std::to_string(js.year_pairs[i].first),
                   std::to_string(js.year_pairs[i].second),
                   std::to_string(js.gaps[i]), format_double(js.values[i])});
  out.close();
  note("divergence: " + std::to_string(js.values.size()) + " year pairs");
  write_manifest(cfg);
}

void stage_map(const PipelineConfig& cfg) {
  cfg.validate();
  const Preprocessed pre = load_preprocessed(cfg);
  const TopicModel model = load_primary_model(cfg);

  const Mat dist = cosine_distance_matrix(model.theta);
  EmbeddingCoords coords = classical_mds(dist, 2, pre.matrix.doc_ids);
  place_labels(coords, model.theta, topic_labels(cfg, model, pre.vocab));

  CsvWriter coord_out(cfg.out_dir / kMdsCoords);
  coord_out.write_row({"doc_id", "year", "x", "y", "dominant_topic"});
  for (std::size_t d = 0; d < coords.xy.rows; ++d) {
    std::size_t dom = 0;
    for (std::size_t k = 1; k < model.num_topics(); ++k)
      if (model.theta(d, k) > model.theta(d, dom)) dom = k;
    coord_out.write_row({coords.doc_ids[d],
                         std::to_string(pre.matrix.doc_years[d]),
                         format_double(coords.xy(d, 0)),
                         format_double(coords.xy(d, 1)), std::to_string(dom)});
  }
  coord_out.close();

  CsvWriter label_out(cfg.out_dir / kMdsLabels);
  label_out.write_row({"topic", "label", "x", "y"});
  for (const auto& l : coords.labels)
    label_out.write_row({std::to_string(l.topic), l.text, format_double(l.x),
                         format_double(l.y)});
  label_out.close();

  CsvWriter eig_out(cfg.out_dir / kMdsEigenvalues);
  eig_out.write_row({"rank", "eigenvalue"});
  for (std::size_t i = 0; i < coords.eigenvalue_trace.size(); ++i)
    eig_out.write_row({std::to_string(i + 1),
                       format_double(coords.eigenvalue_trace[i])});
  eig_out.close();
  note("map: " + std::to_string(coords.xy.rows) + " documents embedded");
  write_manifest(cfg);
}

void stage_align(const PipelineConfig& cfg) {
  cfg.validate();
  if (cfg.external.path.empty())
    throw ConfigError("external series not configured; set external.path");
  const Preprocessed pre = load_preprocessed(cfg);
  const TopicModel model = load_primary_model(cfg);
  const YearlyTopicSeries series = build_yearly_series(cfg, model, pre.matrix);

  LoadSeriesOptions opt;
  opt.year_col = cfg.external.year_col;
  opt.value_col = cfg.external.value_col;
  opt.country_col = cfg.external.country_col;
  opt.country = cfg.external.country;
  opt.name = cfg.external.name;
  opt.unit = cfg.external.unit;
  const ExternalSeries ext = load_series(cfg.resolve(cfg.external.path), opt);
  const Normalization norm =
      normalization_from_string(cfg.external.normalization);

  std::vector<std::size_t> topics = cfg.external.topics;
  if (topics.empty())
    for (std::size_t k = 0; k < model.num_topics(); ++k) topics.push_back(k);

  std::vector<AlignedOverlay> overlays;
  for (const std::size_t k : topics) {
    overlays.push_back(align(topic_prevalence_series(series, k), ext, norm,
                             cfg.external.interpolate));
    if (overlays.back().years != overlays.front().years)
      throw PipelineError("aligned year sets diverged between topics");
  }
  for (const auto& w : overlays.front().warnings) note("align: warning: " + w);

  CsvWriter out(cfg.out_dir / kOverlay);
  std::vector<std::string> header = {"year"};
  for (const std::size_t k : topics) header.push_back(topic_col(k));
  header.push_back("external");
  header.push_back("interpolated");
  out.write_row(header);
  const auto& first = overlays.front();
  for (std::size_t i = 0; i < first.years.size(); ++i) {
    std::vector<std::string> row = {std::to_string(first.years[i])};
    for (const auto& ov : overlays) row.push_back(format_double(ov.topic_values[i]));
    row.push_back(format_double(first.external_values[i]));
    row.push_back(first.interpolated[i] ? "1" : "0");
    out.write_row(row);
  }
  out.close();
  note("align: " + std::to_string(first.years.size()) + " years joined with " +
       ext.name + " (" + to_string(norm) + ")");
  write_manifest(cfg);
}

void stage_report(const PipelineConfig& cfg) {
  cfg.validate();
  const fs::path report_dir = cfg.out_dir / "report";
  fs::create_directories(report_dir);

  const auto write_text = [](const fs::path& p, const std::string& body) {
    std::ofstream out(p);
    if (!out) throw DataError("cannot write file: " + p.string());
    out << body;
    out.close();
    if (out.fail()) throw DataError("error writing file: " + p.string());
  };

  // Prevalence lines.
  require(cfg.out_dir / kYearlyPrevalence, "trends");
  {
    const CsvTable t = read_csv(cfg.out_dir / kYearlyPrevalence);
    std::vector<Series> series(t.header.size() > 2 ? t.header.size() - 2 : 0);
    for (std::size_t k = 0; k < series.size(); ++k)
      series[k].label = t.header[k + 2];
    const std::string file = (cfg.out_dir / kYearlyPrevalence).string();
    for (const auto& row : t.rows) {
      const double year = parse_field(row, 0, file);
      for (std::size_t k = 0; k < series.size(); ++k) {
        series[k].x.push_back(year);
        series[k].y.push_back(parse_field(row, k + 2, file));
      }
    }
    write_text(report_dir / "prevalence.svg",
               line_chart("Yearly topic prevalence", "year", "prevalence",
                          series));
  }

  // JSD series.
  require(cfg.out_dir / kJsd, "divergence");
  {
    const CsvTable t = read_csv(cfg.out_dir / kJsd);
    const std::string file = (cfg.out_dir / kJsd).string();
    Series raw;
    raw.label = "JSD";
    for (const auto& row : t.rows) {
      raw.x.push_back(parse_field(row, 1, file));  // pair end year
      raw.y.push_back(parse_field(row, 3, file));
    }
    std::vector<Series> series = {raw};
    if (cfg.analysis.jsd_smoothing_window > 1) {
      Series smooth;
      smooth.label = "rolling mean (" +
                     std::to_string(cfg.analysis.jsd_smoothing_window) + ")";
      smooth.x = raw.x;
      smooth.y = rolling_mean(raw.y, cfg.analysis.jsd_smoothing_window);
      smooth.dashed = true;
      series.push_back(std::move(smooth));
    }
    write_text(report_dir / "jsd.svg",
               line_chart("Consecutive-year topic divergence", "year",
                          "JSD (bits)", series));
  }

  // Semantic map.
  require(cfg.out_dir / kMdsCoords, "map");
  require(cfg.out_dir / kMdsLabels, "map");
  {
    const CsvTable t = read_csv(cfg.out_dir / kMdsCoords);
    const std::string file = (cfg.out_dir / kMdsCoords).string();
    std::vector<ScatterPoint> points;
    for (const auto& row : t.rows) {
      ScatterPoint p;
      p.x = parse_field(row, 2, file);
      p.y = parse_field(row, 3, file);
      p.group = static_cast<int>(parse_field(row, 4, file));
      points.push_back(p);
    }
    const CsvTable lt = read_csv(cfg.out_dir / kMdsLabels);
    const std::string lfile = (cfg.out_dir / kMdsLabels).string();
    std::vector<TextMark> marks;
    for (const auto& row : lt.rows) {
      TextMark m;
      m.text = row.size() > 1 ? row[1] : "";
      m.x = parse_field(row, 2, lfile);
      m.y = parse_field(row, 3, lfile);
      marks.push_back(std::move(m));
    }
    write_text(report_dir / "semantic_map.svg",
               scatter_chart("Semantic map (classical MDS of cosine distances)",
                             "dimension 1", "dimension 2", points, marks));
  }

  // Overlay.
  if (!cfg.external.path.empty()) {
    require(cfg.out_dir / kOverlay, "align");
    const CsvTable t = read_csv(cfg.out_dir / kOverlay);
    const std::string file = (cfg.out_dir / kOverlay).string();
    const std::size_t cols = t.header.size();
    std::vector<Series> series(cols > 3 ? cols - 2 : 1);
    for (std::size_t c = 1; c + 1 < cols; ++c)
      series[c - 1].label = t.header[c];
    if (!series.empty() && !cfg.external.name.empty())
      series.back().label = cfg.external.name;
    if (!series.empty()) series.back().dashed = true;
    for (const auto& row : t.rows) {
      const double year = parse_field(row, 0, file);
      for (std::size_t c = 1; c + 1 < cols; ++c) {
        series[c - 1].x.push_back(year);
        series[c - 1].y.push_back(parse_field(row, c, file));
      }
    }
    write_text(report_dir / "overlay.svg",
               line_chart("Topic prevalence vs " +
                              (cfg.external.name.empty() ? "external series"
                                                         : cfg.external.name),
                          "year",
                          "normalized value (" + cfg.external.normalization + ")",
                          series));
  } else {
    note("report: external series not configured, skipping overlay chart");
  }

  // Topic table.
  require(cfg.out_dir / kTrends, "trends");
  {
    const Preprocessed pre = load_preprocessed(cfg);
    const TopicModel model = load_primary_model(cfg);
    const CsvTable t = read_csv(cfg.out_dir / kTrends);
    const std::string file = (cfg.out_dir / kTrends).string();

    CsvWriter csv_out(report_dir / "topic_table.csv");
    const std::vector<std::string> header = {
        "topic",          "mean_prevalence", "delta",
        "p_value",        "classification",  "top_words",
        "representative_docs"};
    csv_out.write_row(header);
    std::vector<std::vector<std::string>> table_rows;
    for (const auto& row : t.rows) {
      const auto topic = static_cast<std::size_t>(parse_field(row, 0, file));
      const auto words = top_words(model, pre.vocab, topic, cfg.analysis.top_words);
      std::string word_list;
      for (const auto& [term, prob] : words) {
        if (!word_list.empty()) word_list += ' ';
        word_list += term;
      }
      const auto reps =
          representative_docs(model.theta, pre.matrix.doc_ids, topic,
                              std::min<std::size_t>(5, model.num_docs()));
      std::string rep_list;
      for (const auto& id : reps) {
        if (!rep_list.empty()) rep_list += "; ";
        const auto it = std::find(pre.matrix.doc_ids.begin(),
                                  pre.matrix.doc_ids.end(), id);
        const auto d = static_cast<std::size_t>(it - pre.matrix.doc_ids.begin());
        rep_list += pre.matrix.doc_titles[d].empty() ? id : pre.matrix.doc_titles[d];
      }
      const double mean_prev = parse_field(row, 1, file);
      const double delta = parse_field(row, 6, file);
      const double p_value = parse_field(row, 5, file);
      std::vector<std::string> out_row = {
          std::to_string(topic),
          format_fixed(mean_prev, 4),
          (delta >= 0 ? "+" : "") + format_fixed(delta, 3),
          format_fixed(p_value, 4),
          row.size() > 7 ? row[7] : "",
          word_list,
          rep_list};
      csv_out.write_row(out_row);
      table_rows.push_back(std::move(out_row));
    }
    csv_out.close();
    write_text(report_dir / "topic_table.svg",
               table_svg("Topics: prevalence, trend, and top words", header,
                         table_rows));
  }

  note("report: wrote " + (report_dir / "*.svg").string());
  write_manifest(cfg);
}

void run_all(const PipelineConfig& cfg) {
  stage_ingest(cfg);
  stage_preprocess(cfg);
  stage_fit(cfg);
  stage_trends(cfg);
  stage_divergence(cfg);
  stage_map(cfg);
  if (!cfg.external.path.empty()) stage_align(cfg);
  else note("all: external series not configured, skipping align");
  stage_report(cfg);
}

}  // namespace dramascope
