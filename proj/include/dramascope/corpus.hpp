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

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "dramascope/matrix.hpp"

namespace dramascope {

struct Token {
  std::string surface;
  std::string lemma;
  std::string pos;
};

// One play: either raw text (needs a lemmatizer) or a pre-annotated token
// stream, never both.
struct RawDocument {
  std::string id;
  int year = 0;
  std::string title;
  std::optional<std::string> text;
  std::optional<std::vector<Token>> tokens;

  // Throws DataError when the document violates its invariants.
  void validate() const;
};

// Keep plays whose year falls in [year_min, year_max]; order preserved.
std::vector<RawDocument> filter_by_year(const std::vector<RawDocument>& docs,
                                        int year_min, int year_max);

// JSONL corpus: one document object per line, fields
// {"id","year","title","text"} or {"id","year","title","tokens":[[surface,lemma,pos],...]}.
std::vector<RawDocument> load_local_corpus(const std::filesystem::path& path);
void save_corpus_jsonl(const std::vector<RawDocument>& docs,
                       const std::filesystem::path& path);

struct NormalizerConfig {
  std::set<std::string> kept_pos{"NOUN", "PROPN", "VERB", "ADJ"};
  std::set<std::string> stopwords;
  std::set<std::string> extra_drop_lemmas;
  bool lowercase = true;
  std::size_t min_token_length = 2;  // in codepoints, not bytes

  void validate() const;  // kept_pos must be non-empty
};

// Plain-text resource: one entry per line, '#' starts a comment.
std::set<std::string> load_lemma_set(const std::filesystem::path& path);

// Pluggable lemmatization for raw-text documents. Pre-annotated corpora
// bypass this entirely.
class LemmaProvider {
 public:
  virtual ~LemmaProvider() = default;
  // Lemma and POS tag for one surface form; nullopt when unknown.
  virtual std::optional<Token> annotate(const std::string& surface) const = 0;
};

// Dictionary lookup backed by a TSV file (surface<TAB>lemma<TAB>pos).
// Surfaces are matched lowercased. Unknown forms yield nullopt and get
// dropped downstream.
class LexiconLemmatizer : public LemmaProvider {
 public:
  explicit LexiconLemmatizer(const std::filesystem::path& tsv_path);
  std::optional<Token> annotate(const std::string& surface) const override;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::pair<std::string, std::string>> entries_;
};

// Degraded fallback for fully self-contained runs on raw text: every token
// is its own lemma, tagged with a fixed POS so the filter keeps it. Trades
// lemmatization quality for zero external resources.
class SurfaceLemmatizer : public LemmaProvider {
 public:
  explicit SurfaceLemmatizer(std::string assumed_pos = "NOUN")
      : assumed_pos_(std::move(assumed_pos)) {}
  std::optional<Token> annotate(const std::string& surface) const override;

 private:
  std::string assumed_pos_;
};

// Splits raw text into word tokens. Letters (ASCII or accented Latin) make
// up tokens; everything else, apostrophes included, separates them.
std::vector<std::string> tokenize_text(const std::string& text);

// Lowercasing that also folds the accented Latin-1/Latin-Extended-A range.
std::string fold_lower(const std::string& word);

// Filtered lemma stream of one document: lemmas whose POS is kept, not
// stopworded, and long enough, in document order. Raw-text documents
// require a lemmatizer (ConfigError otherwise).
std::vector<std::string> normalize(const RawDocument& doc,
                                   const NormalizerConfig& cfg,
                                   const LemmaProvider* lemmatizer = nullptr);

struct Vocabulary {
  std::vector<std::string> terms;  // lexicographic order
  std::unordered_map<std::string, std::uint32_t> term_to_index;
  std::vector<std::uint32_t> document_frequency;
};

struct MatrixBuildOptions {
  std::size_t min_df = 5;
  double max_df_fraction = 0.5;
  std::size_t min_doc_tokens = 20;  // documents below this are dropped
};

struct DroppedDoc {
  std::string id;
  std::uint64_t retained_tokens;
};

// Prunes the vocabulary to document frequencies in
// [min_df, max_df_fraction * D], counts the retained lemmas, and drops
// documents whose retained total falls below min_doc_tokens. The doc_*
// vectors must parallel `docs` (or be empty, in which case placeholder ids
// are synthesized).
std::pair<Vocabulary, DocTermMatrix> build_matrix(
    const std::vector<std::vector<std::string>>& docs,
    const std::vector<std::string>& doc_ids, const std::vector<int>& doc_years,
    const std::vector<std::string>& doc_titles,
    const MatrixBuildOptions& opt = {},
    std::vector<DroppedDoc>* dropped = nullptr);

std::pair<Vocabulary, DocTermMatrix> build_matrix(
    const std::vector<std::vector<std::string>>& docs,
    const MatrixBuildOptions& opt = {},
    std::vector<DroppedDoc>* dropped = nullptr);

}  // namespace dramascope
