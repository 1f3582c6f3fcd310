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

#include "dramascope/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "dramascope/csv.hpp"
#include "dramascope/errors.hpp"

namespace dramascope {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file for hashing: " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

std::string vocab_fingerprint(const Vocabulary& vocab) {
  std::string joined;
  for (const auto& t : vocab.terms) {
    joined += t;
    joined += '\n';
  }
  return fnv1a64_hex(joined);
}

void save_matrix(const DocTermMatrix& m, const Vocabulary& vocab,
                 const std::filesystem::path& matrix_path,
                 const std::filesystem::path& vocab_path) {
  if (vocab.terms.size() != m.num_terms)
    throw DataError("save_matrix: vocabulary size " +
                    std::to_string(vocab.terms.size()) +
                    " does not match matrix term count " +
                    std::to_string(m.num_terms));
  std::ofstream out(matrix_path);
  if (!out) throw DataError("cannot write file: " + matrix_path.string());
  out << m.num_docs << ' ' << m.num_terms << ' ' << m.nnz() << '\n';
  for (std::size_t d = 0; d < m.num_docs; ++d)
    for (std::size_t e = m.row_ptr[d]; e < m.row_ptr[d + 1]; ++e)
      out << d << ' ' << m.term[e] << ' ' << m.count[e] << '\n';
  out.close();
  if (out.fail()) throw DataError("error writing file: " + matrix_path.string());

  std::ofstream vout(vocab_path);
  if (!vout) throw DataError("cannot write file: " + vocab_path.string());
  for (const auto& t : vocab.terms) vout << t << '\n';
  vout.close();
  if (vout.fail()) throw DataError("error writing file: " + vocab_path.string());
}

std::pair<Vocabulary, DocTermMatrix> load_matrix(
    const std::filesystem::path& matrix_path,
    const std::filesystem::path& vocab_path) {
  std::ifstream in(matrix_path);
  if (!in) throw DataError("cannot open file: " + matrix_path.string());
  std::size_t num_docs = 0, num_terms = 0, nnz = 0;
  if (!(in >> num_docs >> num_terms >> nnz))
    throw DataError(matrix_path.string() +
                    ": header must be three integers \"D V NNZ\"");

  std::vector<std::map<std::uint32_t, std::uint32_t>> rows(num_docs);
  for (std::size_t e = 0; e < nnz; ++e) {
    std::size_t d = 0;
    std::uint64_t w = 0, c = 0;
    if (!(in >> d >> w >> c))
      throw DataError(matrix_path.string() + ": truncated (expected " +
                      std::to_string(nnz) + " entries, got " +
                      std::to_string(e) + ")");
    if (d >= num_docs || w >= num_terms)
      throw DataError(matrix_path.string() + ": entry " + std::to_string(e) +
                      " indexes out of range");
    if (c == 0)
      throw DataError(matrix_path.string() + ": entry " + std::to_string(e) +
                      " has zero count");
    rows[d][static_cast<std::uint32_t>(w)] += static_cast<std::uint32_t>(c);
  }

  DocTermMatrix m;
  m.num_docs = num_docs;
  m.num_terms = num_terms;
  m.row_ptr.push_back(0);
  std::vector<std::uint32_t> df(num_terms, 0);
  for (std::size_t d = 0; d < num_docs; ++d) {
    for (const auto& [w, c] : rows[d]) {
      m.term.push_back(w);
      m.count.push_back(c);
      ++df[w];
    }
    m.row_ptr.push_back(m.term.size());
    m.doc_ids.push_back("doc" + std::to_string(d));
    m.doc_years.push_back(0);
    m.doc_titles.emplace_back();
  }

  Vocabulary vocab;
  std::ifstream vin(vocab_path);
  if (!vin) throw DataError("cannot open file: " + vocab_path.string());
  std::string line;
  while (std::getline(vin, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    vocab.term_to_index.emplace(line, static_cast<std::uint32_t>(vocab.terms.size()));
    vocab.terms.push_back(line);
  }
  if (vocab.terms.size() != num_terms)
    throw DataError(vocab_path.string() + ": " +
                    std::to_string(vocab.terms.size()) +
                    " terms but matrix declares " + std::to_string(num_terms));
  vocab.document_frequency = std::move(df);
  return {std::move(vocab), std::move(m)};
}

void save_doc_meta(const DocTermMatrix& m, const std::filesystem::path& path) {
  CsvWriter out(path);
  out.write_row({"doc_id", "year", "title"});
  for (std::size_t d = 0; d < m.num_docs; ++d)
    out.write_row({m.doc_ids[d], std::to_string(m.doc_years[d]), m.doc_titles[d]});
  out.close();
}

void load_doc_meta(DocTermMatrix& m, const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  if (table.rows.size() != m.num_docs)
    throw DataError(path.string() + ": " + std::to_string(table.rows.size()) +
                    " metadata rows but matrix holds " +
                    std::to_string(m.num_docs) + " documents");
  for (std::size_t d = 0; d < m.num_docs; ++d) {
    const auto& row = table.rows[d];
    if (row.size() < 3)
      throw DataError(path.string() + ": row " + std::to_string(d + 2) +
                      " needs doc_id,year,title");
    m.doc_ids[d] = row[0];
    try {
      m.doc_years[d] = std::stoi(row[1]);
    } catch (const std::exception&) {
      throw DataError(path.string() + ": row " + std::to_string(d + 2) +
                      ": year '" + row[1] + "' is not an integer");
    }
    m.doc_titles[d] = row[2];
  }
}

}  // namespace dramascope
