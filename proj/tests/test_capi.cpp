/*
 *   Copyright 2026 The journalmap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "journalmap/journalmap.h"

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <set>
#include <string>
#include <unistd.h>

namespace {

std::string fixture(const char* relative) { return std::string(JMAP_FIXTURES) + "/" + relative; }

}  // namespace

TEST_CASE("version and schema") {
  CHECK(std::strlen(jmap_version()) > 0);
  const auto n = jmap_config_key_count();
  REQUIRE(n > 20);
  std::set<std::string> names;
  for (size_t i = 0; i < n; ++i) {
    REQUIRE(jmap_config_key_name(i) != nullptr);
    names.insert(jmap_config_key_name(i));
    CHECK(jmap_config_key_help(i) != nullptr);
    CHECK(jmap_config_key_default(i) != nullptr);
  }
  CHECK(names.size() == n);
  CHECK(names.count("cosine_threshold") == 1);
  CHECK(jmap_config_key_name(n) == nullptr);
  std::set<std::string> commands;
  for (size_t i = 0; i < jmap_command_count(); ++i) commands.insert(jmap_command_name(i));
  CHECK(commands == std::set<std::string>{"ingest", "match", "stats", "basemap", "overlay", "diversity"});
}

TEST_CASE("status codes for bad arguments and settings") {
  CHECK(jmap_config_new(nullptr) == JMAP_ERR_ARGUMENT);
  CHECK(std::strlen(jmap_last_error()) > 0);
  jmap_config* cfg = nullptr;
  REQUIRE(jmap_config_new(&cfg) == JMAP_OK);
  CHECK(jmap_config_set(cfg, "no_such_key", "1") == JMAP_ERR_CONFIG);
  CHECK(std::string(jmap_last_error()).find("no_such_key") != std::string::npos);
  CHECK(jmap_config_set(cfg, nullptr, "1") == JMAP_ERR_ARGUMENT);

  jmap_result* res = reinterpret_cast<jmap_result*>(1);
  CHECK(jmap_run(cfg, "ingest", &res) == JMAP_ERR_CONFIG);
  CHECK(res == nullptr);
  CHECK(jmap_run(cfg, "unknown", &res) == JMAP_ERR_CONFIG);

  CHECK(jmap_config_set(cfg, "journals", fixture("no_such_file.csv").c_str()) == JMAP_OK);
  CHECK(jmap_run(cfg, "ingest", &res) == JMAP_ERR_IO);

  CHECK(jmap_config_set(cfg, "journals", fixture("formats/scopus.ris").c_str()) == JMAP_OK);
  CHECK(jmap_run(cfg, "ingest", &res) == JMAP_ERR_PARSE);

  CHECK(jmap_config_load(cfg, fixture("no_such.ini").c_str(), "ingest") == JMAP_ERR_IO);
  jmap_config_free(cfg);
  jmap_config_free(nullptr);
  jmap_result_free(nullptr);
  CHECK(jmap_result_summary(nullptr) == nullptr);
  CHECK(jmap_result_warning_count(nullptr) == 0);
}

TEST_CASE("run through the C interface") {
  const auto out = std::filesystem::temp_directory_path() / ("jmap_capi_" + std::to_string(::getpid()));
  jmap_config* cfg = nullptr;
  REQUIRE(jmap_config_new(&cfg) == JMAP_OK);
  REQUIRE(jmap_config_set(cfg, "journals", fixture("community12/journals.csv").c_str()) == JMAP_OK);
  REQUIRE(jmap_config_set(cfg, "network", fixture("community12/network.csv").c_str()) == JMAP_OK);
  REQUIRE(jmap_config_set(cfg, "out_dir", out.string().c_str()) == JMAP_OK);
  jmap_result* res = nullptr;
  REQUIRE(jmap_run(cfg, "ingest", &res) == JMAP_OK);
  REQUIRE(res != nullptr);
  CHECK(std::string(jmap_result_summary(res)).size() > 0);
  CHECK(std::string(jmap_result_manifest(res)).find("\"command\": \"ingest\"") != std::string::npos);
  CHECK(jmap_result_warning(res, jmap_result_warning_count(res)) == nullptr);
  CHECK(std::filesystem::exists(out / "manifest_ingest.json"));
  jmap_result_free(res);
  jmap_config_free(cfg);
  std::filesystem::remove_all(out);
}

TEST_CASE("helpers") {
  CHECK(jmap_gestalt_similarity("WIKIMEDIA", "WIKIMANIA") == doctest::Approx(14.0 / 18.0));
  CHECK(jmap_gestalt_similarity(nullptr, nullptr) == 1.0);
  CHECK(jmap_density(20172, 6672033) == doctest::Approx(0.0164).epsilon(0.006));
}
