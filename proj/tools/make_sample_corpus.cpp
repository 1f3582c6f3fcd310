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

// Generates the committed sample corpus: 60 pre-annotated documents spread
// over 1700-1900 drawn from two disjoint 50-word themes. Documents before
// the changepoint year lean heavily on the court theme, documents from the
// changepoint on lean on the trade theme, so the pipeline should classify
// the trade topic hot, the court topic cold, and put the divergence peak at
// the year pair straddling the changepoint. A synthetic yearly series with
// smooth growth is emitted alongside for the align stage.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dramascope/corpus.hpp"
#include "dramascope/csv.hpp"
#include "dramascope/rng.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kSeed = 97531;
constexpr int kYearMin = 1700;
constexpr int kYearMax = 1900;
constexpr int kChangepoint = 1800;
constexpr std::size_t kDocs = 60;
constexpr std::size_t kTokensPerDoc = 150;
constexpr double kLowMix = 0.12;   // trade-theme share before the changepoint
constexpr double kHighMix = 0.88;  // and from the changepoint on
constexpr double kJitter = 0.02;

const std::vector<std::string> kTradeWords = {
    "industrie", "commerce",  "usine",     "machine",   "vapeur",
    "charbon",   "ouvrier",   "fabrique",  "marché",    "banque",
    "crédit",    "capital",   "négoce",    "navire",    "port",
    "douane",    "tarif",     "monnaie",   "coton",     "laine",
    "soie",      "drap",      "forge",     "acier",     "houille",
    "filature",  "métier",    "atelier",   "patron",    "salaire",
    "bourse",    "action",    "dette",     "emprunt",   "impôt",
    "octroi",    "péage",     "foire",     "comptoir",  "entrepôt",
    "cargaison", "fret",      "assurance", "change",    "traite",
    "quai",      "chantier",  "canal",     "wagon",     "locomotive"};

const std::vector<std::string> kCourtWords = {
    "roi",       "reine",     "prince",    "duc",        "comte",
    "marquis",   "baron",     "chevalier", "seigneur",   "vassal",
    "fief",      "château",   "cour",      "courtisan",  "noblesse",
    "blason",    "écu",       "épée",      "tournoi",    "chasse",
    "page",      "écuyer",    "héraut",    "trône",      "sceptre",
    "couronne",  "majesté",   "altesse",   "faveur",     "intrigue",
    "duel",      "honneur",   "gloire",    "lignage",    "ancêtre",
    "domaine",   "serf",      "dîme",      "gabelle",    "carrosse",
    "perruque",  "dentelle",  "bal",       "menuet",     "salon",
    "abbé",      "confesseur","aumônier",  "étiquette",  "préséance"};

int doc_year(std::size_t i) {
  const double t = 200.0 * static_cast<double>(i) / 59.0;
  return kYearMin + static_cast<int>(std::lround(t));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <output-directory>\n", argv[0]);
    return 2;
  }
  const fs::path out_dir = argv[1];
  fs::create_directories(out_dir);

  if (kTradeWords.size() != 50 || kCourtWords.size() != 50) {
    std::fprintf(stderr, "theme word lists must hold 50 words each\n");
    return 1;
  }

  dramascope::Rng rng(kSeed);
  std::vector<dramascope::RawDocument> docs;
  for (std::size_t i = 0; i < kDocs; ++i) {
    dramascope::RawDocument d;
    const int year = doc_year(i);
    d.id = "sample-" + std::to_string(year);
    d.year = year;
    d.title = "Pièce de " + std::to_string(year);
    const double base = year >= kChangepoint ? kHighMix : kLowMix;
    const double mix = base + (rng.uniform01() * 2.0 - 1.0) * kJitter;
    std::vector<dramascope::Token> tokens;
    tokens.reserve(kTokensPerDoc);
    for (std::size_t t = 0; t < kTokensPerDoc; ++t) {
      const auto& theme =
          rng.uniform01() < mix ? kTradeWords : kCourtWords;
      const auto& word = theme[rng.uniform_below(theme.size())];
      tokens.push_back({word, word, "NOUN"});
    }
    d.tokens = std::move(tokens);
    docs.push_back(std::move(d));
  }
  dramascope::save_corpus_jsonl(docs, out_dir / "corpus.jsonl");

  {
    dramascope::CsvWriter out(out_dir / "gdp_series.csv");
    out.write_row({"year", "gdp"});
    for (int y = kYearMin; y <= kYearMax; y += 5) {
      const double t = static_cast<double>(y - kYearMin);
      const double gdp =
          1000.0 * std::exp(0.004 * t) * (1.0 + 0.05 * std::sin(t / 15.0));
      out.write_row({std::to_string(y), dramascope::format_fixed(gdp, 3)});
    }
    out.close();
  }

  const auto write_words = [&](const fs::path& p,
                               const std::vector<std::string>& words) {
    std::ofstream out(p);
    for (const auto& w : words) out << w << '\n';
  };
  write_words(out_dir / "trade_words.txt", kTradeWords);
  write_words(out_dir / "court_words.txt", kCourtWords);

  // Planted ground truth consumed by the acceptance checks.
  int pair_from = 0, pair_to = 0;
  std::size_t pair_index = 0;
  for (std::size_t i = 1; i < kDocs; ++i) {
    if (doc_year(i) >= kChangepoint && doc_year(i - 1) < kChangepoint) {
      pair_from = doc_year(i - 1);
      pair_to = doc_year(i);
      pair_index = i - 1;
      break;
    }
  }
  nlohmann::json manifest;
  manifest["seed"] = kSeed;
  manifest["documents"] = kDocs;
  manifest["tokens_per_document"] = kTokensPerDoc;
  manifest["year_min"] = kYearMin;
  manifest["year_max"] = kYearMax;
  manifest["changepoint_year"] = kChangepoint;
  manifest["changepoint_pair"] = {pair_from, pair_to};
  manifest["changepoint_pair_index"] = pair_index;
  manifest["trade_mix_before"] = kLowMix;
  manifest["trade_mix_after"] = kHighMix;
  manifest["mix_jitter"] = kJitter;
  manifest["hot_theme_words"] = kTradeWords;
  manifest["cold_theme_words"] = kCourtWords;
  std::ofstream mf(out_dir / "sample_manifest.json");
  mf << manifest.dump(1) << '\n';
  mf.close();

  std::printf("wrote %zu documents to %s (changepoint pair %d-%d)\n",
              docs.size(), (out_dir / "corpus.jsonl").string().c_str(),
              pair_from, pair_to);
  return 0;
}
