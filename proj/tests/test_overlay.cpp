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

#include "oracles.hpp"
#include "overlay.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace jmap;

namespace {

BaseMap small_map() {
  return BaseMap({{1, "Journal of Alpha Studies", "J ALPHA STUD", -1, 0, 0, 1, {}},
                  {2, "Journal of Beta Studies", "", 0, 1, 0, 1, {}},
                  {7, "Journal of Eta Studies", "J ETA STUD", 1, -1, 1, 1, {}}});
}

}  // namespace

TEST_CASE("resolution by title, abbreviation, registry alias and fuzzy fallback") {
  const auto map = small_map();
  DocumentSet docs;
  docs.entries = {{"JOURNAL OF ALPHA STUDIES", 2}, {"J ETA STUD", 1}, {"Beta Studies Quarterly", 4},
                  {"Journal of Beta Studie", 3}, {"Unknown Venue", 5}};
  auto r = resolve_document_set(docs, map);
  CHECK(r.counts == std::vector<std::uint64_t>{2, 0, 1});
  CHECK(r.total_documents == 15);
  CHECK(r.resolved_documents() == 3);
  CHECK(r.unresolved.size() == 3);

  std::vector<JournalRecord> recs(1);
  recs[0].id = 2;
  recs[0].full_title = "Journal of Beta Studies";
  recs[0].alias_titles = {"Beta Studies Quarterly"};
  const JournalRegistry reg(recs);
  r = resolve_document_set(docs, map, &reg);
  CHECK(r.counts == std::vector<std::uint64_t>{2, 4, 1});
  REQUIRE(r.resolution_log.size() == 1);
  CHECK(r.resolution_log[0].reason == "registry_title");

  r = resolve_document_set(docs, map, &reg, {true, 0.9});
  CHECK(r.counts == std::vector<std::uint64_t>{2, 7, 1});
  CHECK(r.unresolved == std::map<std::string, std::uint64_t>{{"Unknown Venue", 5}});
  CHECK_THROWS_AS(resolve_document_set(docs, map, nullptr, {true, 1.5}), ContractError);
}

TEST_CASE("overlay weights") {
  OverlayCounts c;
  c.counts = {0, 3, 1};
  const auto o = build_overlay(c, small_map());
  CHECK(o.at(0).weight == 0.0);
  CHECK(o.at(1).weight == doctest::Approx(std::log(4.0)));
  CHECK(o.at(2).x == 1);
  CHECK(write_overlay_csv(o, c) ==
        "journal,count,weight,cluster\nJournal of Beta Studies,3,1.386294,1\nJournal of Eta Studies,1,0.693147,2\n");
  c.counts = {1};
  CHECK_THROWS_AS(build_overlay(c, small_map()), ContractError);
}

TEST_CASE("rao-stirling cases") {
  const SimilarityGraph none(3, {});
  const std::vector<std::uint64_t> single{0, 5, 0};
  CHECK(rao_stirling(single, none, "raw").delta == 0.0);
  const std::vector<std::uint64_t> pair{4, 4, 0};
  CHECK(std::abs(rao_stirling(pair, none, "raw").delta - 0.5) <= 1e-12);

  const SimilarityGraph g(3, {{0, 1, 0.25}, {1, 2, 0.6}});
  const std::vector<std::uint64_t> counts{3, 2, 5}, scaled{30, 20, 50};
  const auto d = rao_stirling(counts, g, "raw");
  CHECK(std::abs(d.delta - rao_stirling(scaled, g, "raw").delta) <= 1e-15);
  CHECK(d.nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(d.p[2] == 0.5);
  CHECK(d.distance_source == "raw");
  CHECK(std::abs(d.delta - oracle::rao(counts, oracle::dense(g))) <= 1e-12);

  CHECK_THROWS_AS(rao_stirling(std::vector<std::uint64_t>{0, 0, 0}, g, "raw"), ContractError);
  CHECK_THROWS_AS(rao_stirling(std::vector<std::uint64_t>{1}, g, "raw"), ContractError);

  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    const auto m = oracle::random_matrix(rng, n, 0.3, 9, false);
    const auto sim = cosine_similarity_graph(oracle::to_network(m));
    std::vector<std::uint64_t> c(n);
    for (auto& v : c) v = rng() % 4;
    c[0] += 1;
    CHECK(std::abs(rao_stirling(c, sim, "raw").delta - oracle::rao(c, oracle::cosine(m))) <= 1e-12);
  }
}

TEST_CASE("rao.txt") {
  CHECK(format_rao(0.7198041) == "0.719804\n");
  CHECK(parse_rao(format_rao(0.5)) == 0.5);
  CHECK(parse_rao(format_rao(0.123456)) == 0.123456);
  CHECK_THROWS_AS(parse_rao("n/a"), ParseError);
}

TEST_CASE("overlay outputs land in the directory") {
  OverlayCounts c;
  c.counts = {2, 0, 1};
  c.unresolved = {{"Nowhere", 4}};
  const auto map = small_map();
  const auto overlay = build_overlay(c, map);
  const auto report = rao_stirling(c.counts, SimilarityGraph(3, {}), "raw");
  const auto dir = testing::scratch("overlay") / "nested";
  const auto files = write_overlay_outputs(overlay, c, report, dir);
  CHECK(files.written.size() == 4);
  CHECK(read_map_file(read_file(dir / "overlay.txt")).size() == 3);
  CHECK(parse_rao(read_file(dir / "rao.txt")) == doctest::Approx(report.delta).epsilon(1e-6));
  CHECK(read_file(dir / "unresolved.csv") == "journal,count\nNowhere,4\n");
  const auto without = write_overlay_outputs(overlay, c, report, testing::scratch("diversity"), false);
  CHECK(without.written.size() == 3);
}
