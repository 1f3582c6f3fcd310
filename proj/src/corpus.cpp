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

#include "dramascope/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "dramascope/errors.hpp"

namespace dramascope {

namespace {

using nlohmann::json;

// Decodes the UTF-8 codepoint starting at `i`; advances `i` past it.
// Malformed bytes decode as U+FFFD one byte at a time.
char32_t decode_utf8(const std::string& s, std::size_t& i) {
  const auto byte = [&](std::size_t k) -> unsigned {
    return static_cast<unsigned char>(s[k]);
  };
  const unsigned b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned b = byte(i + k);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_word_codepoint(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  // Latin-1 supplement letters and Latin Extended-A/B cover French
  // (é, à, ç, œ, ...). The multiplication and division signs are the two
  // non-letters inside the Latin-1 letter block.
  if (cp == 0x00D7 || cp == 0x00F7) return false;
  return (cp >= 0x00C0 && cp <= 0x024F);
}

char32_t lower_codepoint(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 32;
  // Latin Extended-A alternates upper/lower (Œ 0x152 -> œ 0x153 etc.).
  if (cp >= 0x0100 && cp <= 0x017F) return (cp % 2 == 0) ? cp + 1 : cp;
  return cp;
}

std::size_t codepoint_length(const std::string& s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size();) {
    decode_utf8(s, i);
    ++n;
  }
  return n;
}

Token parse_token_triple(const json& entry, const std::string& doc_id) {
  if (!entry.is_array() || entry.size() != 3 || !entry[0].is_string() ||
      !entry[1].is_string() || !entry[2].is_string())
    throw DataError("document '" + doc_id +
                    "': token entries must be [surface, lemma, pos] string triples");
  return Token{entry[0].get<std::string>(), entry[1].get<std::string>(),
               entry[2].get<std::string>()};
}

}  // namespace

void RawDocument::validate() const {
  if (id.empty()) throw DataError("document with empty id");
  const bool has_text = text.has_value();
  const bool has_tokens = tokens.has_value();
  if (has_text == has_tokens)
    throw DataError("document '" + id +
                    "': exactly one of text/tokens must be present");
}

std::vector<RawDocument> filter_by_year(const std::vector<RawDocument>& docs,
                                        int year_min, int year_max) {
  std::vector<RawDocument> out;
  out.reserve(docs.size());
  for (const auto& d : docs)
    if (d.year >= year_min && d.year <= year_max) out.push_back(d);
  return out;
}

std::vector<RawDocument> load_local_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path.string());

  std::vector<RawDocument> docs;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": invalid JSON: " + e.what());
    }
    const auto require = [&](const char* field) {
      if (!j.contains(field))
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": missing required field \"" + field + "\"");
    };
    require("id");
    require("year");
    RawDocument d;
    try {
      d.id = j.at("id").get<std::string>();
      d.year = j.at("year").get<int>();
      d.title = j.value("title", std::string{});
      if (j.contains("text")) d.text = j.at("text").get<std::string>();
      if (j.contains("tokens")) {
        std::vector<Token> toks;
        for (const auto& entry : j.at("tokens")) toks.push_back(parse_token_triple(entry, d.id));
        d.tokens = std::move(toks);
      }
    } catch (const json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": malformed document: " + e.what());
    }
    try {
      d.validate();
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen_ids.insert(d.id).second)
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": duplicate document id '" + d.id + "'");
    docs.push_back(std::move(d));
  }
  return docs;
}

void save_corpus_jsonl(const std::vector<RawDocument>& docs,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write corpus file: " + path.string());
  for (const auto& d : docs) {
    json j;
    j["id"] = d.id;
    j["year"] = d.year;
    j["title"] = d.title;
    if (d.text) j["text"] = *d.text;
    if (d.tokens) {
      json toks = json::array();
      for (const auto& t : *d.tokens) toks.push_back({t.surface, t.lemma, t.pos});
      j["tokens"] = std::move(toks);
    }
    out << j.dump() << '\n';
  }
}

void NormalizerConfig::validate() const {
  if (kept_pos.empty())
    throw ConfigError("normalizer: kept_pos must not be empty");
}

std::set<std::string> load_lemma_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lemma list: " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
    if (start < line.size()) out.insert(line.substr(start));
  }
  return out;
}

LexiconLemmatizer::LexiconLemmatizer(const std::filesystem::path& tsv_path) {
  std::ifstream in(tsv_path);
  if (!in) throw DataError("cannot open lemma lexicon: " + tsv_path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos)
      throw DataError(tsv_path.string() + ":" + std::to_string(line_no) +
                      ": expected surface<TAB>lemma<TAB>pos");
    entries_[fold_lower(line.substr(0, tab1))] = {
        line.substr(tab1 + 1, tab2 - tab1 - 1), line.substr(tab2 + 1)};
  }
}

std::optional<Token> LexiconLemmatizer::annotate(const std::string& surface) const {
  const auto it = entries_.find(fold_lower(surface));
  if (it == entries_.end()) return std::nullopt;
  return Token{surface, it->second.first, it->second.second};
}

std::optional<Token> SurfaceLemmatizer::annotate(const std::string& surface) const {
  return Token{surface, fold_lower(surface), assumed_pos_};
}

std::vector<std::string> tokenize_text(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (std::size_t i = 0; i < text.size();) {
    const char32_t cp = decode_utf8(text, i);
    if (is_word_codepoint(cp)) {
      encode_utf8(cp, current);
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::string fold_lower(const std::string& word) {
  std::string out;
  out.reserve(word.size());
  for (std::size_t i = 0; i < word.size();) {
    encode_utf8(lower_codepoint(decode_utf8(word, i)), out);
  }
  return out;
}

std::vector<std::string> normalize(const RawDocument& doc,
                                   const NormalizerConfig& cfg,
                                   const LemmaProvider* lemmatizer) {
  doc.validate();
  cfg.validate();

  const auto keep = [&](const Token& t) -> std::optional<std::string> {
    if (cfg.kept_pos.find(t.pos) == cfg.kept_pos.end()) return std::nullopt;
    std::string lemma = cfg.lowercase ? fold_lower(t.lemma) : t.lemma;
    if (codepoint_length(lemma) < cfg.min_token_length) return std::nullopt;
    if (cfg.stopwords.count(lemma) || cfg.extra_drop_lemmas.count(lemma))
      return std::nullopt;
    return lemma;
  };

  std::vector<std::string> out;
  if (doc.tokens) {
    for (const auto& t : *doc.tokens) {
      if (auto lemma = keep(t)) out.push_back(std::move(*lemma));
    }
    return out;
  }

  if (!lemmatizer)
    throw ConfigError("document '" + doc.id +
                      "' carries raw text but no lemmatizer was supplied");
  for (const auto& surface : tokenize_text(*doc.text)) {
    if (auto tok = lemmatizer->annotate(surface)) {
      if (auto lemma = keep(*tok)) out.push_back(std::move(*lemma));
    }
  }
  return out;
}

std::pair<Vocabulary, DocTermMatrix> build_matrix(
    const std::vector<std::vector<std::string>>& docs,
    const std::vector<std::string>& doc_ids, const std::vector<int>& doc_years,
    const std::vector<std::string>& doc_titles, const MatrixBuildOptions& opt,
    std::vector<DroppedDoc>* dropped) {
  if (opt.min_df < 1) throw ConfigError("build_matrix: min_df must be >= 1");
  if (!(opt.max_df_fraction > 0.0) || opt.max_df_fraction > 1.0)
    throw ConfigError("build_matrix: max_df_fraction must be in (0, 1]");
  const std::size_t n_docs = docs.size();
  if (!doc_ids.empty() && doc_ids.size() != n_docs)
    throw DataError("build_matrix: doc_ids not aligned with docs");
  if (!doc_years.empty() && doc_years.size() != n_docs)
    throw DataError("build_matrix: doc_years not aligned with docs");
  if (!doc_titles.empty() && doc_titles.size() != n_docs)
    throw DataError("build_matrix: doc_titles not aligned with docs");

  // Document frequency over the full input.
  std::map<std::string, std::uint32_t> df;
  for (const auto& tokens : docs) {
    std::set<std::string> uniq(tokens.begin(), tokens.end());
    for (const auto& t : uniq) ++df[t];
  }

  const double max_df = opt.max_df_fraction * static_cast<double>(n_docs);
  Vocabulary vocab;
  for (const auto& [term, freq] : df) {  // std::map: lexicographic order
    if (freq >= opt.min_df && static_cast<double>(freq) <= max_df) {
      vocab.term_to_index.emplace(term, static_cast<std::uint32_t>(vocab.terms.size()));
      vocab.terms.push_back(term);
      vocab.document_frequency.push_back(freq);
    }
  }
  if (vocab.terms.empty())
    throw DataError("build_matrix: pruning left an empty vocabulary (min_df=" +
                    std::to_string(opt.min_df) + ", max_df_fraction=" +
                    std::to_string(opt.max_df_fraction) + ", docs=" +
                    std::to_string(n_docs) + ")");

  DocTermMatrix m;
  m.num_terms = vocab.terms.size();
  m.row_ptr.push_back(0);
  for (std::size_t d = 0; d < n_docs; ++d) {
    std::map<std::uint32_t, std::uint32_t> counts;
    std::uint64_t total = 0;
    for (const auto& t : docs[d]) {
      const auto it = vocab.term_to_index.find(t);
      if (it != vocab.term_to_index.end()) {
        ++counts[it->second];
        ++total;
      }
    }
    const std::string id = doc_ids.empty() ? "doc" + std::to_string(d) : doc_ids[d];
    if (total < opt.min_doc_tokens) {
      if (dropped) dropped->push_back({id, total});
      continue;
    }
    for (const auto& [term_idx, c] : counts) {
      m.term.push_back(term_idx);
      m.count.push_back(c);
    }
    m.row_ptr.push_back(m.term.size());
    m.doc_ids.push_back(id);
    m.doc_years.push_back(doc_years.empty() ? 0 : doc_years[d]);
    m.doc_titles.push_back(doc_titles.empty() ? std::string{} : doc_titles[d]);
    ++m.num_docs;
  }
  return {std::move(vocab), std::move(m)};
}

std::pair<Vocabulary, DocTermMatrix> build_matrix(
    const std::vector<std::vector<std::string>>& docs,
    const MatrixBuildOptions& opt, std::vector<DroppedDoc>* dropped) {
  return build_matrix(docs, {}, {}, {}, opt, dropped);
}

}  // namespace dramascope
