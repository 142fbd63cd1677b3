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

#include "mapcore.hpp"
#include "oracles.hpp"
#include "overlay.hpp"
#include "pipeline.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>

using namespace jmap;
namespace fs = std::filesystem;

TEST_CASE("config keys, defaults and typed access") {
  RunConfig cfg;
  CHECK(cfg.real("cosine_threshold") == 0.2);
  CHECK(cfg.integer("seed") == 1);
  CHECK_FALSE(cfg.flag("auto_outliers"));
  CHECK_FALSE(cfg.path("basemap").has_value());
  CHECK_THROWS_AS(cfg.set("no_such_key", "1"), ConfigError);
  cfg.set("seed", "abc");
  CHECK_THROWS_AS(cfg.integer("seed"), ConfigError);
  cfg.set("flip_x", "maybe");
  CHECK_THROWS_AS(cfg.flag("flip_x"), ConfigError);
  cfg.set("exclude_ids", "4, 9,12");
  CHECK(cfg.id_list("exclude_ids") == std::vector<std::int64_t>{4, 9, 12});
  try {
    cfg.require_path("journals");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("--journals") != std::string::npos);
  }
  cfg.set("journals", "/some/where/journals.csv");
  CHECK(cfg.snapshot().at("journals") == "journals.csv");
  for (const auto& key : RunConfig::schema()) CHECK(RunConfig::find_key(key.name) == &key);
}

TEST_CASE("config file: top-level keys, then the command's section") {
  const auto dir = testing::scratch("config");
  write_file(dir / "run.ini", "seed = 7\nmin_weight = 3\n[basemap]\nseed = 11\n[overlay]\nfuzzy_resolve = true\n");
  RunConfig cfg;
  cfg.load_file(dir / "run.ini", "basemap");
  CHECK(cfg.integer("seed") == 11);
  CHECK(cfg.integer("min_weight") == 3);
  CHECK_FALSE(cfg.flag("fuzzy_resolve"));
  RunConfig other;
  other.load_file(dir / "run.ini", "stats");
  CHECK(other.integer("seed") == 7);

  write_file(dir / "bad.ini", "[basemap]\nsed = 3\n");
  CHECK_THROWS_AS(RunConfig().load_file(dir / "bad.ini", "stats"), ConfigError);
  CHECK_THROWS_AS(RunConfig().load_file(dir / "missing.ini", "stats"), IoError);
}

TEST_CASE("unknown command") { CHECK_THROWS_AS(run_command("frobnicate", RunConfig()), ConfigError); }

TEST_CASE("single-database pipeline on the community fixture") {
  const auto root = testing::scratch("community");
  RunConfig cfg;
  cfg.set("journals", testing::fixture("community12/journals.csv").string());
  cfg.set("network", testing::fixture("community12/network.csv").string());
  cfg.set("documents", testing::fixture("community12/documents.ris").string());
  cfg.set("format", "ris");
  cfg.set("out_dir", (root / "ingest").string());
  const auto ingest = run_command("ingest", cfg);
  CHECK(fs::exists(root / "ingest/network.net"));
  CHECK(fs::exists(root / "ingest/documents.csv"));
  const auto manifest = nlohmann::json::parse(ingest.manifest);
  CHECK(manifest.at("command") == "ingest");
  CHECK(manifest.at("counts").at("journals") == 12);
  for (const char* key : {"tool", "version", "config", "inputs", "outputs", "counts", "notes", "warnings"})
    CHECK(manifest.contains(key));
  CHECK(manifest.at("inputs").at("journals").at("file") == "journals.csv");
  CHECK(manifest.at("inputs").at("journals").at("sha256").get<std::string>().size() == 64);

  RunConfig st;
  st.set("journals", (root / "ingest/journals.csv").string());
  st.set("network", (root / "ingest/network.net").string());
  st.set("out_dir", (root / "stats").string());
  run_command("stats", st);
  const auto stats = nlohmann::json::parse(read_file(root / "stats/stats.json"));
  CHECK(stats.at("Overall").at("n_journals") == 12);
  CHECK(stats.at("Overall").at("n_links") == 66);
  CHECK(read_file(root / "stats/stats.csv").find("Indegree centralization") != std::string::npos);

  RunConfig bm;
  bm.set("journals", (root / "ingest/journals.csv").string());
  bm.set("network", (root / "ingest/network.net").string());
  bm.set("min_weight", "1");
  bm.set("cosine_threshold", "0");
  bm.set("out_dir", (root / "basemap").string());
  const auto basemap = run_command("basemap", bm);
  const auto map = read_map_file(read_file(root / "basemap/basemap.txt"));
  CHECK(map.size() == 12);
  // The two planted communities end up in different clusters.
  for (std::size_t i = 0; i < 12; ++i) {
    const auto& n = map.at(i);
    const auto& first = map.at(*map.position_of(n.id <= 6 ? 1 : 7));
    CHECK(n.cluster == first.cluster);
  }
  CHECK(map.at(*map.position_of(1)).cluster != map.at(*map.position_of(7)).cluster);

  RunConfig ov;
  ov.set("basemap", (root / "basemap/basemap.txt").string());
  ov.set("journals", (root / "ingest/journals.csv").string());
  ov.set("documents", (root / "ingest/documents.csv").string());
  ov.set("out_dir", (root / "overlay").string());
  const auto overlay = run_command("overlay", ov);
  CHECK(overlay.summary.find("Rao-Stirling diversity") != std::string::npos);
  const auto counts = read_csv(read_file(root / "overlay/overlay_journals.csv"));
  REQUIRE(counts.size() == 3);
  CHECK(counts[1].fields[1] == "3");
  CHECK(counts[2].fields[1] == "2");
  const double delta = parse_rao(read_file(root / "overlay/rao.txt"));
  CHECK(delta > 0.0);
  CHECK(delta < 0.5);

  ov.set("out_dir", (root / "diversity").string());
  run_command("diversity", ov);
  CHECK_FALSE(fs::exists(root / "diversity/overlay.txt"));
  CHECK(read_file(root / "diversity/rao.txt") == read_file(root / "overlay/rao.txt"));
}

TEST_CASE("overlay failures are reported with their own error kinds") {
  const auto root = testing::scratch("overlay_failures");
  RunConfig ov;
  ov.set("basemap", testing::fixture("community12/basemap.txt").string());
  ov.set("documents", testing::fixture("community12/unresolved.csv").string());
  ov.set("out_dir", (root / "none").string());
  try {
    run_command("overlay", ov);
    FAIL("expected ContractError");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("JOURNAL OF NOWHERE") != std::string::npos);
  }

  write_file(root / "one.csv", "journal,count\nJournal of Alpha Studies,2\nJOURNAL OF ETA STUDIES,2\n");
  ov.set("documents", (root / "one.csv").string());
  ov.set("out_dir", (root / "ok").string());
  run_command("overlay", ov);
  // Alpha and Eta share a cosine of 0 in the fixture: two equal, orthogonal journals.
  CHECK(parse_rao(read_file(root / "ok/rao.txt")) == 0.5);

  ov.set("format", "bibtex");
  CHECK_THROWS_AS(run_command("overlay", ov), ConfigError);
  ov.set("format", "csv");
  ov.set("basemap", (root / "absent.txt").string());
  CHECK_THROWS_AS(run_command("overlay", ov), IoError);
}

namespace {

// Journal list and edge CSV for a dense matrix; journal k gets id base + k.
void write_database(const fs::path& dir, const oracle::Matrix& m, std::int64_t base, const std::string& stem,
                    std::size_t shared) {
  fs::create_directories(dir);
  std::string journals = "id,title,abbrev,issns\n";
  for (std::size_t k = 0; k < m.size(); ++k) {
    const auto issn = k < shared ? "1000-" + std::to_string(1000 + k) : std::to_string(2000 + base) + "-" +
                                                                             std::to_string(1000 + k);
    journals += std::to_string(base + static_cast<std::int64_t>(k)) + "," + stem + " " + std::to_string(k) + ",," +
                issn + "\n";
  }
  write_file(dir / "journals.csv", journals);
  std::string edges = "citing,cited,count\n";
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j])
        edges += std::to_string(base + static_cast<std::int64_t>(i)) + "," +
                 std::to_string(base + static_cast<std::int64_t>(j)) + "," + std::to_string(m[i][j]) + "\n";
  write_file(dir / "network.csv", edges);
}

oracle::Matrix induced(const oracle::Matrix& m, const std::vector<std::size_t>& keep) {
  oracle::Matrix out(keep.size(), std::vector<std::uint64_t>(keep.size(), 0));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) out[i][j] = m[keep[i]][keep[j]];
  return out;
}

void check_column(const nlohmann::json& col, const oracle::Matrix& whole, const std::vector<std::size_t>& keep) {
  const auto s = oracle::stats(induced(whole, keep));
  CHECK(col.at("n_journals") == s.n);
  CHECK(col.at("n_links") == s.links);
  CHECK(col.at("sum_citations") == s.sum);
  CHECK(col.at("self_citations") == s.self);
  CHECK(col.at("density").get<double>() == doctest::Approx(s.density));
  CHECK(col.at("avg_indegree").get<double>() == doctest::Approx(s.avg_indegree));
  CHECK(col.at("indegree_centralization").get<double>() == doctest::Approx(s.centralization));
  CHECK(col.at("n_weak_components") == s.components);
  CHECK(col.at("largest_component_share").get<double>() == doctest::Approx(s.largest_share));
  CHECK(col.at("n_isolates") == s.isolates);
  CHECK(col.at("avg_citations_received_within").get<double>() == doctest::Approx(s.avg_received));
  CHECK(col.at("share_of_database").get<double>() ==
        doctest::Approx(static_cast<double>(keep.size()) / static_cast<double>(whole.size())));
  double received = 0;
  for (auto v : keep)
    for (std::size_t i = 0; i < whole.size(); ++i) received += static_cast<double>(whole[i][v]);
  CHECK(col.at("avg_citations_received_whole_network").get<double>() ==
        doctest::Approx(keep.empty() ? 0.0 : received / static_cast<double>(keep.size())));
}

oracle::Matrix read_edge_matrix(const fs::path& file, std::size_t n) {
  oracle::Matrix m(n, std::vector<std::uint64_t>(n, 0));
  const auto rows = read_csv(read_file(file));
  for (std::size_t r = 1; r < rows.size(); ++r)
    m[std::stoul(rows[r].fields[0]) - 1][std::stoul(rows[r].fields[1]) - 1] = std::stoull(rows[r].fields[2]);
  return m;
}

}  // namespace

TEST_CASE("two-database statistics agree with brute force on every cell") {
  constexpr std::size_t n = 8, shared = 5;
  const std::vector<std::size_t> shared_pos{0, 1, 2, 3, 4}, unique_pos{5, 6, 7}, all{0, 1, 2, 3, 4, 5, 6, 7};
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    CAPTURE(seed);
    std::mt19937_64 rng(seed);
    auto a = oracle::random_matrix(rng, n, 0.4, 5, true);
    auto b = oracle::random_matrix(rng, n, 0.4, 5, true);
    const auto root = testing::scratch("stats8_" + std::to_string(seed));
    write_database(root / "a", a, 1, "ALPHA JOURNAL", shared);
    write_database(root / "b", b, 101, "BETA REVIEW", shared);

    RunConfig mc;
    mc.set("journals_a", (root / "a/journals.csv").string());
    mc.set("journals_b", (root / "b/journals.csv").string());
    mc.set("out_dir", (root / "match").string());
    run_command("match", mc);

    RunConfig st;
    st.set("journals_a", (root / "a/journals.csv").string());
    st.set("network_a", (root / "a/network.csv").string());
    st.set("journals_b", (root / "b/journals.csv").string());
    st.set("network_b", (root / "b/network.csv").string());
    st.set("match", (root / "match/match.csv").string());
    st.set("label_a", "A");
    st.set("label_b", "B");
    st.set("out_dir", (root / "stats").string());
    run_command("stats", st);
    const auto report = nlohmann::json::parse(read_file(root / "stats/stats.json"));

    // The command drops links below min_weight (default 2) before anything else.
    for (auto* m : {&a, &b})
      for (auto& row : *m)
        for (auto& cell : row)
          if (cell < 2) cell = 0;

    const auto& cols = report.at("columns");
    check_column(cols.at("A shared"), a, shared_pos);
    check_column(cols.at("A unique"), a, unique_pos);
    check_column(cols.at("A overall"), a, all);
    check_column(cols.at("B shared"), b, shared_pos);
    check_column(cols.at("B unique"), b, unique_pos);
    check_column(cols.at("B overall"), b, all);

    std::vector<bool> is_shared(n, false);
    for (auto v : shared_pos) is_shared[v] = true;
    for (auto [label, m] : {std::pair{"A", &a}, std::pair{"B", &b}}) {
      auto loopless = *m;
      for (std::size_t v = 0; v < n; ++v) loopless[v][v] = 0;
      const auto f = oracle::flows(loopless, is_shared);
      const auto& got = report.at("flows").at(label);
      CHECK(got.at("shared_to_shared") == f.ss);
      CHECK(got.at("shared_to_unique") == f.su);
      CHECK(got.at("unique_to_shared") == f.us);
      CHECK(got.at("unique_to_unique") == f.uu);
    }

    std::vector<double> ia, ib;
    for (auto v : shared_pos) {
      double da = 0, db = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == v) continue;
        da += a[i][v] ? 1 : 0;
        db += b[i][v] ? 1 : 0;
      }
      ia.push_back(da);
      ib.push_back(db);
    }
    const double rho = oracle::spearman(ia, ib);
    const auto& got = report.at("spearman").at("indegree");
    if (std::isfinite(rho))
      CHECK(got.get<double>() == doctest::Approx(rho));
    else
      CHECK(got.is_null());
  }
}

TEST_CASE("raising the cosine threshold never grows the base map") {
  const auto root = testing::scratch("threshold_order");
  std::size_t previous = 0;
  bool first = true;
  for (const char* t : {"0", "0.1", "0.2", "0.4"}) {
    CAPTURE(t);
    RunConfig bm;
    bm.set("journals", testing::fixture("community12/journals.csv").string());
    bm.set("network", testing::fixture("community12/network.csv").string());
    bm.set("min_weight", "1");
    bm.set("cosine_threshold", t);
    bm.set("out_dir", (root / t).string());
    run_command("basemap", bm);
    const auto size = read_map_file(read_file(root / t / "basemap.txt")).size();
    if (!first) CHECK(size <= previous);
    previous = size;
    first = false;
  }
}

TEST_CASE("tagged export and analyze table give the same overlay") {
  const auto root = testing::scratch("format_equivalence");
  fs::create_directories(root / "map");
  write_file(root / "map/basemap.txt",
             "id\tlabel\tx\ty\tcluster\tweight\n"
             "1\tJOURNAL OF INFORMETRICS\t0.000000\t0.000000\t1\t1.000000\n"
             "2\tSCIENTOMETRICS\t0.200000\t0.000000\t1\t1.000000\n"
             "3\tJOURNAL OF THE AMERICAN SOCIETY FOR INFORMATION SCIENCE AND TECHNOLOGY\t0.500000\t0.300000\t2\t"
             "1.000000\n");
  write_file(root / "map/cosine.csv", "source,target,cosine\n1,2,0.7\n1,3,0.3\n2,3,0.25\n");
  std::map<std::string, std::string> format{{"savedrecs.txt", "wos-tagged"}, {"analyze.txt", "wos-analyze"}};
  for (const auto& [file, fmt] : format) {
    RunConfig ov;
    ov.set("basemap", (root / "map/basemap.txt").string());
    ov.set("documents", testing::fixture("formats/" + file).string());
    ov.set("format", fmt);
    ov.set("out_dir", (root / fmt).string());
    run_command("overlay", ov);
  }
  CHECK(read_file(root / "wos-tagged/overlay_journals.csv") == read_file(root / "wos-analyze/overlay_journals.csv"));
  CHECK(read_file(root / "wos-tagged/rao.txt") == read_file(root / "wos-analyze/rao.txt"));
  // p = (1/2, 1/4, 1/4) over journals 1, 2, 3.
  const double expected = 2 * (0.5 * 0.25 * 0.3 + 0.5 * 0.25 * 0.7 + 0.25 * 0.25 * 0.75);
  CHECK(parse_rao(read_file(root / "wos-tagged/rao.txt")) == doctest::Approx(expected));
}

TEST_CASE("overlay diversity from RIS records matches a dense recomputation") {
  const auto root = testing::scratch("ris_delta");
  RunConfig bm;
  bm.set("journals", testing::fixture("community12/journals.csv").string());
  bm.set("network", testing::fixture("community12/network.csv").string());
  bm.set("min_weight", "1");
  bm.set("cosine_threshold", "0");
  bm.set("out_dir", (root / "map").string());
  run_command("basemap", bm);
  REQUIRE(read_map_file(read_file(root / "map/basemap.txt")).size() == 12);

  RunConfig ov;
  ov.set("basemap", (root / "map/basemap.txt").string());
  ov.set("journals", testing::fixture("community12/journals.csv").string());
  ov.set("documents", testing::fixture("community12/documents.ris").string());
  ov.set("format", "ris");
  ov.set("out_dir", (root / "overlay").string());
  run_command("overlay", ov);

  const auto registry = parse_journal_csv(read_file(testing::fixture("community12/journals.csv")), Source::A);
  std::vector<std::uint64_t> counts(12, 0);
  const auto rows = read_csv(read_file(root / "overlay/overlay_journals.csv"));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::int64_t id = 0;
    for (std::size_t k = 0; k < registry.size(); ++k)
      if (registry.at(k).full_title == rows[r].fields[0]) id = registry.at(k).id;
    REQUIRE(id > 0);
    counts[static_cast<std::size_t>(id - 1)] = std::stoull(rows[r].fields[1]);
  }
  const auto cos = oracle::cosine(read_edge_matrix(testing::fixture("community12/network.csv"), 12));
  CHECK(parse_rao(read_file(root / "overlay/rao.txt")) == doctest::Approx(oracle::rao(counts, cos)).epsilon(1e-6));
}
