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
#include <string_view>
#include <utility>

#include "dramascope/corpus.hpp"
#include "dramascope/matrix.hpp"

namespace dramascope {

// FNV-1a over the bytes, 64-bit.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

// Hash of a file's contents (streamed).
std::string hash_file(const std::filesystem::path& path);

// Hash of the vocabulary: terms joined by '\n', trailing newline included.
std::string vocab_fingerprint(const Vocabulary& vocab);

// Sparse triplet text format. First line: three integers "D V NNZ".
// Each following line: "doc term count" with 0-based indices.
// The vocabulary file holds one term per line, index order.
void save_matrix(const DocTermMatrix& m, const Vocabulary& vocab,
                 const std::filesystem::path& matrix_path,
                 const std::filesystem::path& vocab_path);
std::pair<Vocabulary, DocTermMatrix> load_matrix(
    const std::filesystem::path& matrix_path,
    const std::filesystem::path& vocab_path);

// Per-document metadata (doc_id, year, title) as CSV, row order matching the
// matrix. load_doc_meta errors if the row count disagrees with m.num_docs.
void save_doc_meta(const DocTermMatrix& m, const std::filesystem::path& path);
void load_doc_meta(DocTermMatrix& m, const std::filesystem::path& path);

}  // namespace dramascope
