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

#include "dramascope/dracor.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "dramascope/errors.hpp"
#include "dramascope/serialize.hpp"

namespace dramascope {

namespace {

using nlohmann::json;

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // leading slash, no trailing slash
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw ConfigError("api base must start with http:// or https://: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  SplitUrl out;
  if (path_start == std::string::npos) {
    out.origin = url;
  } else {
    out.origin = url.substr(0, path_start);
    out.path = url.substr(path_start);
  }
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  return out;
}

std::optional<std::string> cache_read(const std::filesystem::path& dir,
                                      const std::string& url) {
  if (dir.empty()) return std::nullopt;
  const auto file = dir / cache_key(url);
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

void cache_write(const std::filesystem::path& dir, const std::string& url,
                 const std::string& body) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  const auto file = dir / cache_key(url);
  std::ofstream out(file, std::ios::binary);
  if (!out) throw DataError("cannot write cache file: " + file.string());
  out << body;
}

// Fetched body, or a status line for responses that should skip the play
// rather than abort the run.
struct GetResult {
  std::optional<std::string> body;
  int status = 0;
  std::string error;  // non-empty means transport failure after retries
};

GetResult http_get(const SplitUrl& base, const std::string& path, int retries) {
  GetResult out;
  for (int attempt = 0; attempt <= retries; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(200 * attempt));
    httplib::Client client(base.origin);
    client.set_follow_location(true);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(120, 0);
    auto res = client.Get(base.path + path);
    if (!res) {
      out.error = httplib::to_string(res.error());
      continue;
    }
    out.status = res->status;
    out.error.clear();
    if (res->status >= 500) continue;  // retry server errors
    if (res->status == 200) out.body = std::move(res->body);
    return out;
  }
  return out;
}

std::optional<int> parse_year(const json& v) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      ++i;
      ++digits;
    }
    if (digits == 0) return std::nullopt;
    // Leading integer only; ranges like "1775/1776" use the first year.
    return std::stoi(s.substr(start, i - start));
  }
  return std::nullopt;
}

struct PlayEntry {
  std::string name;
  std::string title;
  int year = 0;
};

}  // namespace

std::string cache_key(const std::string& url) { return fnv1a64_hex(url); }

std::vector<RawDocument> fetch_corpus(const FetchOptions& opt,
                                      FetchStats* stats) {
  FetchStats local_stats;
  FetchStats& st = stats ? *stats : local_stats;
  const SplitUrl base = split_url(opt.api_base);

  const auto fetch_url = [&](const std::string& path,
                             std::size_t* net_count) -> GetResult {
    const std::string url = base.origin + base.path + path;
    if (auto cached = cache_read(opt.cache_dir, url)) {
      GetResult r;
      r.status = 200;
      r.body = std::move(*cached);
      return r;
    }
    GetResult r = http_get(base, path, opt.retries);
    if (net_count) ++*net_count;
    if (r.body) cache_write(opt.cache_dir, url, *r.body);
    return r;
  };

  // Play index.
  const std::string index_path = "/corpora/" + opt.corpus_name;
  std::size_t index_net = 0;
  GetResult index_res = fetch_url(index_path, &index_net);
  st.network_requests += index_net;
  if (index_net == 0) ++st.cache_hits;
  if (!index_res.body) {
    if (index_res.status == 404)
      throw DataError("corpus '" + opt.corpus_name + "' not found at " +
                      opt.api_base);
    throw NetworkError("GET " + base.origin + base.path + index_path +
                       " failed: " +
                       (index_res.error.empty()
                            ? "HTTP " + std::to_string(index_res.status)
                            : index_res.error));
  }
  json index;
  try {
    index = json::parse(*index_res.body);
  } catch (const json::exception& e) {
    throw DataError("corpus index for '" + opt.corpus_name +
                    "' is not valid JSON: " + e.what());
  }
  const char* list_key = index.contains("plays") ? "plays" : "dramas";
  if (!index.contains(list_key) || !index.at(list_key).is_array())
    throw DataError("corpus index for '" + opt.corpus_name +
                    "' has no play list");

  std::vector<PlayEntry> plays;
  for (const auto& entry : index.at(list_key)) {
    ++st.plays_listed;
    std::string name;
    if (entry.contains("name") && entry.at("name").is_string())
      name = entry.at("name").get<std::string>();
    else if (entry.contains("id") && entry.at("id").is_string())
      name = entry.at("id").get<std::string>();
    if (name.empty()) {
      ++st.skipped;
      st.warnings.push_back("play entry without name/id skipped");
      continue;
    }
    std::optional<int> year;
    const char* source = nullptr;
    for (const char* field : {"yearNormalized", "yearPrinted", "yearPremiered"}) {
      if (entry.contains(field)) {
        year = parse_year(entry.at(field));
        if (year) {
          source = field;
          break;
        }
      }
    }
    if (!year) {
      ++st.skipped;
      st.warnings.push_back("play '" + name + "' has no usable year, skipped");
      continue;
    }
    if (std::string(source) != "yearNormalized")
      st.warnings.push_back("play '" + name + "': year taken from " + source);
    PlayEntry p;
    p.name = name;
    p.year = *year;
    if (entry.contains("title") && entry.at("title").is_string())
      p.title = entry.at("title").get<std::string>();
    plays.push_back(std::move(p));
  }

  // Spoken text per play, bounded worker pool, results kept in index order.
  struct Slot {
    GetResult res;
    bool from_cache = false;
  };
  std::vector<Slot> slots(plays.size());
  std::atomic<std::size_t> next{0};
  const int workers =
      std::max(1, std::min<int>(opt.concurrency,
                                static_cast<int>(plays.size() ? plays.size() : 1)));
  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plays.size()) return;
      const std::string path =
          "/corpora/" + opt.corpus_name + "/plays/" + plays[i].name +
          "/spoken-text";
      std::size_t net = 0;
      slots[i].res = fetch_url(path, &net);
      slots[i].from_cache = net == 0;
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<RawDocument> docs;
  docs.reserve(plays.size());
  for (std::size_t i = 0; i < plays.size(); ++i) {
    const auto& slot = slots[i];
    if (slot.from_cache) ++st.cache_hits;
    else ++st.network_requests;
    if (!slot.res.body) {
      if (!slot.res.error.empty())
        throw NetworkError("GET spoken text for play '" + plays[i].name +
                           "' failed: " + slot.res.error);
      ++st.skipped;
      st.warnings.push_back("play '" + plays[i].name + "': HTTP " +
                            std::to_string(slot.res.status) +
                            " for spoken text, skipped");
      continue;
    }
    if (slot.res.body->empty()) {
      ++st.skipped;
      st.warnings.push_back("play '" + plays[i].name +
                            "': empty spoken text, skipped");
      continue;
    }
    RawDocument d;
    d.id = plays[i].name;
    d.year = plays[i].year;
    d.title = plays[i].title;
    d.text = std::move(*slots[i].res.body);
    docs.push_back(std::move(d));
  }
  st.documents = docs.size();
  return docs;
}

}  // namespace dramascope
