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

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "dramascope/corpus.hpp"

namespace dramascope {

struct FetchOptions {
  std::string api_base = "https://dracor.org/api/v1";
  std::string corpus_name = "fre";
  std::filesystem::path cache_dir;
  int concurrency = 4;
  int retries = 3;
};

struct FetchStats {
  std::size_t plays_listed = 0;
  std::size_t documents = 0;
  std::size_t skipped = 0;
  std::size_t network_requests = 0;
  std::size_t cache_hits = 0;
  std::vector<std::string> warnings;
};

// One drama-corpus play per RawDocument: id and title from the play index,
// year by precedence normalized > printed > premiered (plays with none are
// skipped with a warning), text from the spoken-text endpoint.
//
// Endpoints: GET {api_base}/corpora/{corpus} for the index and
// GET {api_base}/corpora/{corpus}/plays/{play}/spoken-text per play.
// Every response body is cached in cache_dir, one file per URL named by the
// URL hash; a warm cache answers the whole call without network traffic.
// Play texts are fetched by a bounded pool of `concurrency` workers; document
// order always follows the index.
std::vector<RawDocument> fetch_corpus(const FetchOptions& opt,
                                      FetchStats* stats = nullptr);

// Cache filename for a URL (hash hex, no directory).
std::string cache_key(const std::string& url);

}  // namespace dramascope
