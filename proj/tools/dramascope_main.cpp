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

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "dramascope/errors.hpp"
#include "dramascope/kernels.hpp"
#include "dramascope/pipeline.hpp"

namespace {

using StageFn = void (*)(const dramascope::PipelineConfig&);

struct CliState {
  std::string config_path;
  std::string out_dir;
  std::string api_base;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
};

void add_common(CLI::App* sub, CliState& st) {
  sub->add_option("-c,--config", st.config_path, "pipeline config JSON file")
      ->required();
  sub->add_option_function<std::uint64_t>(
         "--seed",
         [&st](const std::uint64_t& v) {
           st.seed = v;
           st.seed_given = true;
         },
         "override the seed from the config");
  sub->add_option("--out-dir", st.out_dir, "override the output directory");
  sub->add_option("--threads", st.threads,
                  "worker threads for dense kernels (0 = library default)");
  sub->add_option("--api-base", st.api_base,
                  "override the DraCor API base URL (also: DRAMASCOPE_API_BASE)");
}

int run_stage(StageFn fn, const CliState& st) {
  dramascope::PipelineConfig cfg =
      dramascope::load_pipeline_config(st.config_path);
  if (st.seed_given) cfg.seed = st.seed;
  if (!st.out_dir.empty()) cfg.out_dir = st.out_dir;
  if (!st.api_base.empty()) {
    cfg.source.api_base = st.api_base;
  } else if (const char* env = std::getenv("DRAMASCOPE_API_BASE");
             env != nullptr && *env != '\0') {
    cfg.source.api_base = env;
  }
  if (st.threads > 0) dramascope::kernels::set_threads(st.threads);
  fn(cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dramascope: diachronic topic analysis for time-stamped text corpora"};
  app.set_version_flag("--version", "dramascope 1.0.0");
  app.require_subcommand(1);

  CliState st;
  const std::map<std::string, std::pair<const char*, StageFn>> stages = {
      {"ingest",
       {"fetch or load the corpus and write documents.jsonl",
        &dramascope::stage_ingest}},
      {"preprocess",
       {"normalize tokens and build the document-term matrix",
        &dramascope::stage_preprocess}},
      {"fit",
       {"fit the configured topic model(s)", &dramascope::stage_fit}},
      {"trends",
       {"yearly prevalence and per-topic trend regression",
        &dramascope::stage_trends}},
      {"divergence",
       {"consecutive-year Jensen-Shannon divergence",
        &dramascope::stage_divergence}},
      {"map",
       {"2-D semantic map via classical MDS", &dramascope::stage_map}},
      {"align",
       {"overlay topic prevalence with an external yearly series",
        &dramascope::stage_align}},
      {"report",
       {"render SVG figures and the topic summary table",
        &dramascope::stage_report}},
      {"all", {"run every stage in order", &dramascope::run_all}},
  };
  for (const auto& [name, entry] : stages)
    add_common(app.add_subcommand(name, entry.first), st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    for (const auto& [name, entry] : stages)
      if (app.get_subcommand(name)->parsed()) return run_stage(entry.second, st);
  } catch (const dramascope::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const dramascope::NetworkError& e) {
    std::cerr << "network error: " << e.what() << '\n';
    return 1;
  } catch (const dramascope::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
