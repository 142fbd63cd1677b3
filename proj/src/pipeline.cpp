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

#include "pipeline.hpp"

#include "ingest.hpp"
#include "mapcore.hpp"
#include "match.hpp"
#include "network.hpp"
#include "overlay.hpp"
#include "text.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>
#include <set>
#include <system_error>

#ifndef JMAP_VERSION
#define JMAP_VERSION "0.0.0"
#endif

namespace jmap {

namespace fs = std::filesystem;
using nlohmann::json;

// --- configuration ---------------------------------------------------------

const std::vector<ConfigKey>& RunConfig::schema() {
  static const std::vector<ConfigKey> keys = {
      {"out_dir", KeyKind::path, "jmap_out", "directory receiving all outputs"},
      {"journals", KeyKind::path, "", "journal list CSV (single database)"},
      {"network", KeyKind::path, "", "citation network: edge CSV or Pajek .net (single database)"},
      {"journals_a", KeyKind::path, "", "journal list CSV of database A"},
      {"network_a", KeyKind::path, "", "citation network of database A"},
      {"journals_b", KeyKind::path, "", "journal list CSV of database B"},
      {"network_b", KeyKind::path, "", "citation network of database B"},
      {"label_a", KeyKind::text, "A", "column label for database A"},
      {"label_b", KeyKind::text, "B", "column label for database B"},
      {"match", KeyKind::path, "", "match table CSV written by the match command"},
      {"side", KeyKind::text, "a", "which side of the match table the base map belongs to (a or b)"},
      {"issn_variants", KeyKind::path, "", "print/electronic ISSN equivalences, CSV issn_1,issn_2"},
      {"fuzzy_threshold", KeyKind::real, "0.9", "minimum gestalt similarity for fuzzy title matches"},
      {"documents", KeyKind::path, "", "document download to overlay"},
      {"format", KeyKind::text, "csv", "document format: wos-tagged, wos-analyze, ris or csv"},
      {"basemap", KeyKind::path, "", "base map file"},
      {"cosine", KeyKind::path, "", "cosine CSV of the base map (default: cosine.csv beside the base map)"},
      {"distance", KeyKind::text, "raw", "cosine values used for diversity distances: raw or thresholded"},
      {"min_weight", KeyKind::integer, "2", "drop citation links with fewer citations"},
      {"include_self_citations", KeyKind::flag, "false", "keep journal self-citations in citing vectors and flows"},
      {"cosine_threshold", KeyKind::real, "0.2", "keep similarity edges with cosine strictly above this"},
      {"min_component_share", KeyKind::real, "0", "warn when the giant component holds a smaller share"},
      {"resolution", KeyKind::real, "1", "modularity resolution for clustering"},
      {"seed", KeyKind::integer, "1", "seed for clustering and layout"},
      {"max_iter", KeyKind::integer, "500", "maximum layout iterations"},
      {"exclude_ids", KeyKind::id_list, "", "comma-separated journal ids removed from the map"},
      {"auto_outliers", KeyKind::flag, "false", "remove nodes far from the map centroid"},
      {"outlier_factor", KeyKind::real, "10", "automatic outliers lie beyond this multiple of the median distance"},
      {"rotate", KeyKind::real, "0", "counter-clockwise rotation of the map in degrees"},
      {"flip_x", KeyKind::flag, "false", "mirror the map horizontally"},
      {"flip_y", KeyKind::flag, "false", "mirror the map vertically"},
      {"fuzzy_resolve", KeyKind::flag, "false", "resolve unmatched document titles by gestalt similarity"},
      {"resolve_threshold", KeyKind::real, "0.9", "minimum similarity for fuzzy title resolution"},
      {"top_k", KeyKind::integer, "20", "rows in the rank-difference tables (0 = all)"},
  };
  return keys;
}

const ConfigKey* RunConfig::find_key(std::string_view name) {
  for (const auto& k : schema())
    if (name == k.name) return &k;
  return nullptr;
}

void RunConfig::set(std::string_view key, std::string value) {
  if (!find_key(key)) throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  values_[std::string(key)] = std::move(value);
}

void RunConfig::load_file(const fs::path& file, std::string_view command) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(file.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    if (!fs::exists(file)) throw IoError("cannot open config file " + file.string());
    throw ParseError(file.filename().string(), e.line(), e.message());
  }
  std::vector<std::pair<std::string, std::string>> section;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      set(name, node.data());
      continue;
    }
    for (const auto& [key, leaf] : node) {
      if (!find_key(key)) throw ConfigError("unknown configuration key '" + key + "' in section [" + name + "]");
      if (name == command) section.emplace_back(key, leaf.data());
    }
  }
  for (auto& [k, v] : section) set(k, std::move(v));
}

bool RunConfig::is_set(std::string_view key) const {
  auto it = values_.find(key);
  return it != values_.end() && !it->second.empty();
}

std::string RunConfig::text(std::string_view key) const {
  const auto* k = find_key(key);
  if (!k) throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  auto it = values_.find(key);
  return it != values_.end() ? it->second : std::string(k->default_value);
}

double RunConfig::real(std::string_view key) const {
  const auto v = parse_double(trim(text(key)));
  if (!v || !std::isfinite(*v)) throw ConfigError(std::string(key) + ": expected a number, got '" + text(key) + "'");
  return *v;
}

std::int64_t RunConfig::integer(std::string_view key) const {
  const auto v = parse_int(trim(text(key)));
  if (!v) throw ConfigError(std::string(key) + ": expected an integer, got '" + text(key) + "'");
  return *v;
}

bool RunConfig::flag(std::string_view key) const {
  auto v = trim(text(key));
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off" || v.empty()) return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" + text(key) + "'");
}

std::vector<std::int64_t> RunConfig::id_list(std::string_view key) const {
  std::vector<std::int64_t> ids;
  for (const auto& part : split(text(key), ',')) {
    const auto t = trim(part);
    if (t.empty()) continue;
    const auto v = parse_int(t);
    if (!v) throw ConfigError(std::string(key) + ": '" + t + "' is not a journal id");
    ids.push_back(*v);
  }
  return ids;
}

std::optional<fs::path> RunConfig::path(std::string_view key) const {
  const auto v = text(key);
  if (v.empty()) return std::nullopt;
  return fs::path(v);
}

fs::path RunConfig::require_path(std::string_view key) const {
  auto p = path(key);
  if (!p) throw ConfigError("missing required setting '" + std::string(key) + "' (--" + [&] {
                              std::string flag(key);
                              std::replace(flag.begin(), flag.end(), '_', '-');
                              return flag;
                            }() + ")");
  return *p;
}

std::map<std::string, std::string> RunConfig::snapshot() const {
  std::map<std::string, std::string> out;
  for (const auto& k : schema()) {
    auto v = text(k.name);
    if (k.kind == KeyKind::path && !v.empty()) v = fs::path(v).filename().string();
    out[k.name] = v;
  }
  return out;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"ingest", "match", "stats", "basemap", "overlay", "diversity"};
  return names;
}

// --- run bookkeeping -------------------------------------------------------

namespace {

class Run {
 public:
  Run(std::string command, const RunConfig& config) : command_(std::move(command)), config_(config) {
    out_dir_ = config.require_path("out_dir");
    std::error_code ec;
    fs::create_directories(out_dir_, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir_.string() + ": " + ec.message());
  }

  const RunConfig& config() const { return config_; }
  Diagnostics* diag() { return &diag_; }
  const fs::path& out_dir() const { return out_dir_; }

  std::string read_input(std::string_view key) { return read_path(key, config_.require_path(key)); }

  std::string read_path(std::string_view key, const fs::path& p) {
    auto text = read_file(p);
    inputs_[std::string(key)] = {{"file", p.filename().string()}, {"sha256", sha256_hex(text)}};
    return text;
  }

  void emit(const std::string& name, const std::string& content) {
    const auto p = out_dir_ / name;
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    write_file(p, content);
    record_output(name, content);
  }

  // For files written by a library routine.
  void adopt(const fs::path& written) {
    const auto name = fs::relative(written, out_dir_).generic_string();
    record_output(name, read_file(written));
  }

  json& counts() { return counts_; }
  void note(std::string text) { notes_.push_back(std::move(text)); }
  void say(const std::string& line) { summary_ += line + "\n"; }

  RunResult finish() {
    json manifest;
    manifest["tool"] = "journalmap";
    manifest["version"] = JMAP_VERSION;
    manifest["command"] = command_;
    manifest["config"] = config_.snapshot();
    manifest["inputs"] = inputs_;
    manifest["outputs"] = outputs_;
    manifest["counts"] = counts_;
    manifest["notes"] = notes_;
    manifest["warnings"] = diag_.warnings();
    RunResult result;
    result.manifest = manifest.dump(2) + "\n";
    const auto path = out_dir_ / ("manifest_" + command_ + ".json");
    write_file(path, result.manifest);
    result.outputs = outputs_list_;
    result.outputs.push_back(path);
    result.summary = summary_;
    result.warnings = diag_.warnings();
    return result;
  }

 private:
  void record_output(const std::string& name, const std::string& content) {
    outputs_[name] = sha256_hex(content);
    outputs_list_.push_back(out_dir_ / name);
  }

  std::string command_;
  const RunConfig& config_;
  fs::path out_dir_;
  Diagnostics diag_;
  json inputs_ = json::object();
  json outputs_ = json::object();
  json counts_ = json::object();
  std::vector<std::string> notes_;
  std::vector<fs::path> outputs_list_;
  std::string summary_;
};

JournalRegistry load_registry(Run& run, std::string_view key, Source source) {
  return parse_journal_csv(run.read_input(key), source, run.diag());
}

// Network file read against `registry`: Pajek vertices must list the registry
// journals in order, edge CSVs resolve ids or titles.
ParsedNetwork load_network_input(Run& run, std::string_view key, const JournalRegistry& registry) {
  const auto text = run.read_input(key);
  const auto p = run.config().require_path(key);
  if (p.extension() == ".net") {
    auto graph = parse_pajek(text, run.diag());
    if (graph.registry.size() != registry.size())
      throw ContractError(p.filename().string() + " has " + std::to_string(graph.registry.size()) +
                          " vertices but the journal list has " + std::to_string(registry.size()) + " journals");
    std::size_t mismatched = 0;
    for (std::size_t i = 0; i < registry.size(); ++i)
      if (normalize_title(graph.registry.at(i).full_title) != normalize_title(registry.at(i).full_title)) ++mismatched;
    if (mismatched)
      run.diag()->warn(p.filename().string() + ": " + std::to_string(mismatched) +
                       " vertex labels differ from the journal list titles");
    return ParsedNetwork{graph.network, {}, 0, 0};
  }
  return parse_edge_csv(text, registry);
}

std::string fixed(double v) { return format_fixed(v, 6); }

// Matched journal pairs as (position in A, position in B), ordered by id_a.
struct SharedSets {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<NodeId> shared_a, unique_a, shared_b, unique_b;
};

std::vector<NodeId> complement(std::size_t n, const std::vector<NodeId>& sorted) {
  std::vector<NodeId> out;
  std::size_t k = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (k < sorted.size() && sorted[k] == v)
      ++k;
    else
      out.push_back(v);
  }
  return out;
}

SharedSets shared_sets(const std::vector<MatchCsvRow>& rows, const JournalRegistry& a, const JournalRegistry* b) {
  SharedSets s;
  std::set<NodeId> seen_a, seen_b;
  for (const auto& r : rows) {
    if (r.status != "matched") continue;
    if (!r.id_a || !r.id_b) throw ParseError("match csv", 0, "matched row without id_a/id_b columns");
    const auto pa = a.position_of(*r.id_a);
    if (!pa) throw ContractError("match table names journal id " + std::to_string(*r.id_a) + " absent from database A");
    NodeId pb = 0;
    if (b) {
      const auto q = b->position_of(*r.id_b);
      if (!q) throw ContractError("match table names journal id " + std::to_string(*r.id_b) + " absent from database B");
      pb = static_cast<NodeId>(*q);
    }
    if (!seen_a.insert(static_cast<NodeId>(*pa)).second || (b && !seen_b.insert(pb).second))
      throw ContractError("match table is not one-to-one");
    s.pairs.emplace_back(static_cast<NodeId>(*pa), pb);
  }
  s.shared_a.assign(seen_a.begin(), seen_a.end());
  s.unique_a = complement(a.size(), s.shared_a);
  if (b) {
    s.shared_b.assign(seen_b.begin(), seen_b.end());
    s.unique_b = complement(b->size(), s.shared_b);
  }
  return s;
}

// Shared journals on one side of a match table, by journal id.
std::set<std::int64_t> matched_ids(const std::vector<MatchCsvRow>& rows, bool side_a) {
  std::set<std::int64_t> ids;
  for (const auto& r : rows) {
    if (r.status != "matched") continue;
    const auto& id = side_a ? r.id_a : r.id_b;
    if (!id) throw ParseError("match csv", 0, "matched row without id_a/id_b columns");
    ids.insert(*id);
  }
  return ids;
}

// --- ingest ----------------------------------------------------------------

void cmd_ingest(Run& run) {
  const auto original = load_registry(run, "journals", Source::A);
  auto dedupe = dedupe_registry(original);
  const auto parsed = load_network_input(run, "network", original);
  const auto network = remap_network(parsed.network, original, dedupe.registry);

  run.emit("journals.csv", write_journal_csv(dedupe.registry));
  run.emit("merge_log.csv", write_report_csv(dedupe.log));
  run.emit("network.net", write_pajek(network, dedupe.registry, run.diag()));
  run.emit("drops.csv", write_report_csv(parsed.drops));

  std::size_t single = 0;
  for (const auto& e : network.edges())
    if (e.count == 1 && e.citing != e.cited) ++single;

  auto& c = run.counts();
  c["journals_read"] = original.size();
  c["journals"] = dedupe.registry.size();
  c["duplicates_merged"] = original.size() - dedupe.registry.size();
  c["links"] = network.edges().size();
  c["citations"] = network.total_citations();
  c["self_citations"] = network.self_citations();
  c["single_citation_links"] = single;
  c["rows_all_others"] = parsed.missing;
  c["rows_invalid"] = parsed.invalid;

  run.say("journals: " + std::to_string(dedupe.registry.size()) + " (" +
          std::to_string(original.size() - dedupe.registry.size()) + " duplicates merged)");
  run.say("links: " + std::to_string(network.edges().size()) + ", citations: " +
          std::to_string(network.total_citations()) + ", self-citations: " + std::to_string(network.self_citations()));
  run.say("dropped rows: " + std::to_string(parsed.missing) + " 'All others', " + std::to_string(parsed.invalid) +
          " invalid");

  if (run.config().is_set("documents")) {
    const auto format_name = run.config().text("format");
    const auto format = doc_format_from_string(format_name);
    if (!format) throw ConfigError("format: unknown document format '" + format_name + "'");
    const auto docs = parse_documents(run.read_input("documents"), *format, run.diag());
    run.emit("documents.csv", write_document_csv(docs));
    c["document_records"] = docs.records;
    c["documents"] = docs.documents();
    c["records_without_title"] = docs.missing_title;
    run.say("documents: " + std::to_string(docs.documents()) + " in " + std::to_string(docs.entries.size()) +
            " journals (" + std::to_string(docs.missing_title) + " records without source title)");
  }
}

// --- match -----------------------------------------------------------------

JournalRegistry deduped(Run& run, const JournalRegistry& registry, const std::string& label) {
  auto result = dedupe_registry(registry);
  if (!result.log.empty())
    run.diag()->warn(label + ": merged " + std::to_string(registry.size() - result.registry.size()) +
                     " journals sharing ISSNs before matching");
  return std::move(result.registry);
}

void cmd_match(Run& run) {
  const auto a = deduped(run, load_registry(run, "journals_a", Source::A), "journals_a");
  const auto b = deduped(run, load_registry(run, "journals_b", Source::B), "journals_b");
  IssnVariants variants;
  if (run.config().is_set("issn_variants")) variants = parse_issn_variants(run.read_input("issn_variants"), run.diag());

  MatchOptions options;
  options.fuzzy_threshold = run.config().real("fuzzy_threshold");
  options.variants = &variants;
  const auto table = build_match_table(a, b, options);

  run.emit("match.csv", export_match_csv(table, a, b));
  run.emit("match_review.csv", export_review_csv(table, a, b));

  const auto stage = [&](MatchMethod m) {
    auto it = table.stage_counts.find(m);
    return it == table.stage_counts.end() ? std::size_t{0} : it->second;
  };
  auto& c = run.counts();
  c["journals_a"] = a.size();
  c["journals_b"] = b.size();
  c["matched_issn"] = stage(MatchMethod::issn);
  c["matched_exact_title"] = stage(MatchMethod::exact_title);
  c["matched_fuzzy_confirmed"] = stage(MatchMethod::fuzzy_confirmed);
  c["matched"] = table.matches().size();
  c["review_candidates"] = table.candidates().size();
  c["unique_a"] = table.unmatched_a.size();
  c["unique_b"] = table.unmatched_b.size();

  run.say("matched: " + std::to_string(table.matches().size()) + " (issn " + std::to_string(stage(MatchMethod::issn)) +
          ", exact title " + std::to_string(stage(MatchMethod::exact_title)) + ", fuzzy " +
          std::to_string(stage(MatchMethod::fuzzy_confirmed)) + ")");
  run.say("unique: " + std::to_string(table.unmatched_a.size()) + " in A, " +
          std::to_string(table.unmatched_b.size()) + " in B; review candidates: " +
          std::to_string(table.candidates().size()));
}

// --- stats -----------------------------------------------------------------

struct StatsColumn {
  std::string name;
  NetworkStats stats;
  double share = 0;           // of the database's journals
  double citations_received;  // mean over the column's journals, whole network
};

StatsColumn stats_column(std::string name, const CitationNetwork& whole, const std::vector<NodeId>* subset,
                         Diagnostics* diag) {
  StatsColumn col;
  col.name = std::move(name);
  const auto received = weighted_indegree(whole, true);
  std::vector<NodeId> all;
  if (!subset) {
    all.resize(whole.size());
    for (NodeId v = 0; v < whole.size(); ++v) all[v] = v;
    subset = &all;
  }
  col.stats = subset == &all ? network_stats(whole, diag) : network_stats(induced_subnetwork(whole, *subset, diag).network, diag);
  col.share = whole.size() ? static_cast<double>(subset->size()) / static_cast<double>(whole.size()) : 0.0;
  double sum = 0;
  for (auto v : *subset) sum += static_cast<double>(received[v]);
  col.citations_received = subset->empty() ? 0.0 : sum / static_cast<double>(subset->size());
  return col;
}

std::string stats_csv(const std::vector<StatsColumn>& cols) {
  std::vector<std::string> header{"row"};
  for (const auto& c : cols) header.push_back(c.name);
  std::string out = csv_line(header);
  auto row = [&](const std::string& name, auto value) {
    std::vector<std::string> fields{name};
    for (const auto& c : cols) fields.push_back(value(c));
    out += csv_line(fields);
  };
  row("Journals: Number", [](const StatsColumn& c) { return std::to_string(c.stats.n_journals); });
  row("Journals: % of overall network", [](const StatsColumn& c) { return fixed(100.0 * c.share); });
  row("Average number of citations received (per journal)", [](const StatsColumn& c) { return fixed(c.citations_received); });
  row("Density", [](const StatsColumn& c) { return fixed(c.stats.density); });
  row("Average indegree", [](const StatsColumn& c) { return fixed(c.stats.avg_indegree); });
  row("Indegree centralization", [](const StatsColumn& c) { return fixed(c.stats.indegree_centralization); });
  row("Number of weak components", [](const StatsColumn& c) { return std::to_string(c.stats.n_weak_components); });
  row("Size of largest weak component (% of Journals)",
      [](const StatsColumn& c) { return fixed(100.0 * c.stats.largest_component_share); });
  row("Number of isolates", [](const StatsColumn& c) { return std::to_string(c.stats.n_isolates); });
  row("Number of links", [](const StatsColumn& c) { return std::to_string(c.stats.n_links); });
  row("Sum of citations", [](const StatsColumn& c) { return std::to_string(c.stats.sum_citations); });
  row("Self-citations", [](const StatsColumn& c) { return std::to_string(c.stats.self_citations); });
  return out;
}

json stats_json(const StatsColumn& c) {
  const auto& s = c.stats;
  return {{"n_journals", s.n_journals},
          {"share_of_database", c.share},
          {"avg_citations_received_whole_network", c.citations_received},
          {"n_links", s.n_links},
          {"sum_citations", s.sum_citations},
          {"self_citations", s.self_citations},
          {"density", s.density},
          {"avg_indegree", s.avg_indegree},
          {"indegree_centralization", s.indegree_centralization},
          {"n_weak_components", s.n_weak_components},
          {"largest_component_share", s.largest_component_share},
          {"n_isolates", s.n_isolates},
          {"avg_citations_received_within", s.avg_citations_received}};
}

std::string flow_row(const std::string& name, const FlowSummary& f) {
  return csv_line({name, std::to_string(f.shared_to_shared), std::to_string(f.shared_to_unique),
                   std::to_string(f.unique_to_shared), std::to_string(f.unique_to_unique), std::to_string(f.total()),
                   fixed(f.share(f.shared_to_shared)), fixed(f.share(f.shared_to_unique)),
                   fixed(f.share(f.unique_to_shared)), fixed(f.share(f.unique_to_unique))});
}

json flow_json(const FlowSummary& f) {
  return {{"shared_to_shared", f.shared_to_shared},
          {"shared_to_unique", f.shared_to_unique},
          {"unique_to_shared", f.unique_to_shared},
          {"unique_to_unique", f.unique_to_unique},
          {"total", f.total()}};
}

std::string rank_csv(const std::vector<RankRow>& rows, std::size_t limit) {
  std::string out = csv_line({"journal", "metric_a", "metric_b", "rank_a", "rank_b", "abs_diff"});
  for (std::size_t i = 0; i < rows.size() && (limit == 0 || i < limit); ++i) {
    const auto& r = rows[i];
    out += csv_line({r.journal, format_shortest(r.metric_a), format_shortest(r.metric_b), format_shortest(r.rank_a),
                     format_shortest(r.rank_b), format_shortest(r.abs_diff)});
  }
  return out;
}

std::string rank_distribution_csv(const std::vector<RankRow>& rows) {
  std::string out = "abs_diff\n";
  for (const auto& r : rows) out += format_shortest(r.abs_diff) + "\n";
  return out;
}

void cmd_stats(Run& run) {
  const auto& cfg = run.config();
  const auto min_weight = cfg.integer("min_weight");
  if (min_weight < 1) throw ConfigError("min_weight must be at least 1");
  const bool include_loops = cfg.flag("include_self_citations");
  const bool two = cfg.is_set("network_b") || cfg.is_set("journals_b");

  auto load = [&](const char* net_key, const char* reg_key, Source source) {
    auto registry = load_registry(run, reg_key, source);
    auto net = filter_min_weight(load_network_input(run, net_key, registry).network,
                                 static_cast<std::uint64_t>(min_weight));
    return std::pair{std::move(registry), std::move(net)};
  };
  auto flows_net = [&](const CitationNetwork& n) { return include_loops ? n : remove_self_loops(n).network; };

  json report;
  auto& c = run.counts();
  if (!two) {
    const bool single_keys = cfg.is_set("network");
    auto [registry, net] = load(single_keys ? "network" : "network_a", single_keys ? "journals" : "journals_a", Source::A);
    std::vector<StatsColumn> cols{stats_column("Overall", net, nullptr, run.diag())};
    run.emit("stats.csv", stats_csv(cols));
    report["Overall"] = stats_json(cols[0]);
    run.emit("stats.json", report.dump(2) + "\n");
    c["journals"] = net.size();
    c["links"] = cols[0].stats.n_links;
    c["citations"] = cols[0].stats.sum_citations;
    run.say("single-database mode: " + std::to_string(net.size()) + " journals, density " + fixed(cols[0].stats.density));
    return;
  }

  if (!cfg.is_set("match"))
    throw ContractError("two-database statistics need a match table (--match)");
  auto [reg_a, net_a] = load("network_a", "journals_a", Source::A);
  auto [reg_b, net_b] = load("network_b", "journals_b", Source::B);
  const auto rows = parse_match_csv(run.read_input("match"));
  const auto sets = shared_sets(rows, reg_a, &reg_b);

  const auto la = cfg.text("label_a"), lb = cfg.text("label_b");
  std::vector<StatsColumn> cols{
      stats_column(la + " shared", net_a, &sets.shared_a, run.diag()),
      stats_column(la + " unique", net_a, &sets.unique_a, run.diag()),
      stats_column(la + " overall", net_a, nullptr, run.diag()),
      stats_column(lb + " shared", net_b, &sets.shared_b, run.diag()),
      stats_column(lb + " unique", net_b, &sets.unique_b, run.diag()),
      stats_column(lb + " overall", net_b, nullptr, run.diag()),
  };
  run.emit("stats.csv", stats_csv(cols));
  for (const auto& col : cols) report["columns"][col.name] = stats_json(col);

  const auto flow_a = cross_flows(flows_net(net_a), sets.shared_a, sets.unique_a);
  const auto flow_b = cross_flows(flows_net(net_b), sets.shared_b, sets.unique_b);
  run.emit("flows.csv", csv_line({"database", "shared_to_shared", "shared_to_unique", "unique_to_shared",
                                  "unique_to_unique", "total", "share_shared_to_shared", "share_shared_to_unique",
                                  "share_unique_to_shared", "share_unique_to_unique"}) +
                            flow_row(la, flow_a) + flow_row(lb, flow_b));
  report["flows"][la] = flow_json(flow_a);
  report["flows"][lb] = flow_json(flow_b);

  // Ranks of the shared journals, taken from each database's whole network.
  const auto indeg_a = indegree(net_a), indeg_b = indegree(net_b);
  const auto cites_a = weighted_indegree(net_a, true), cites_b = weighted_indegree(net_b, true);
  std::vector<std::int64_t> ids;
  std::vector<std::string> names;
  std::vector<double> ia, ib, ca, cb;
  for (auto [pa, pb] : sets.pairs) {
    ids.push_back(reg_a.at(pa).id);
    names.push_back(reg_a.at(pa).full_title);
    ia.push_back(static_cast<double>(indeg_a[pa]));
    ib.push_back(static_cast<double>(indeg_b[pb]));
    ca.push_back(static_cast<double>(cites_a[pa]));
    cb.push_back(static_cast<double>(cites_b[pb]));
  }

  std::string spearman = csv_line({"metric", "rho", "n", "note"});
  for (auto [metric, x, y] : {std::tuple{"indegree", &ia, &ib}, std::tuple{"total_citations", &ca, &cb}}) {
    Correlation rho;
    if (x->size() >= 2)
      rho = spearman_rho(*x, *y);
    else
      rho.error = "fewer than two shared journals";
    spearman += csv_line({metric, rho.ok() ? format_fixed(rho.value, 6) : "", std::to_string(x->size()), rho.error});
    report["spearman"][metric] = rho.ok() ? json(rho.value) : json(nullptr);
    c[std::string("spearman_") + metric] = rho.ok() ? json(rho.value) : json(nullptr);
    run.say(std::string("Spearman rho (") + metric + "): " + (rho.ok() ? format_fixed(rho.value, 3) : rho.error));
  }
  run.emit("spearman.csv", spearman);

  const auto top_k = cfg.integer("top_k");
  if (top_k < 0) throw ConfigError("top_k must be non-negative");
  const auto rank_in = rank_difference_table(ids, names, ia, ib);
  const auto rank_ci = rank_difference_table(ids, names, ca, cb);
  run.emit("rank_diff_indegree.csv", rank_csv(rank_in, static_cast<std::size_t>(top_k)));
  run.emit("rank_diff_indegree_distribution.csv", rank_distribution_csv(rank_in));
  run.emit("rank_diff_citations.csv", rank_csv(rank_ci, static_cast<std::size_t>(top_k)));
  run.emit("rank_diff_citations_distribution.csv", rank_distribution_csv(rank_ci));
  run.emit("stats.json", report.dump(2) + "\n");

  c["shared"] = sets.pairs.size();
  c["unique_a"] = sets.unique_a.size();
  c["unique_b"] = sets.unique_b.size();
  c["links_a"] = cols[2].stats.n_links;
  c["links_b"] = cols[5].stats.n_links;
  run.say(la + ": " + std::to_string(net_a.size()) + " journals (" + std::to_string(sets.shared_a.size()) +
          " shared), density " + fixed(cols[2].stats.density));
  run.say(lb + ": " + std::to_string(net_b.size()) + " journals (" + std::to_string(sets.shared_b.size()) +
          " shared), density " + fixed(cols[5].stats.density));
}

// --- basemap ---------------------------------------------------------------

BaseMap status_map(const BaseMap& map, JournalStatus keep) {
  auto nodes = map.nodes();
  for (auto& n : nodes) n.weight = n.status == keep ? 1.0 : 0.0;
  return BaseMap(std::move(nodes));
}

void cmd_basemap(Run& run) {
  const auto& cfg = run.config();
  const auto min_weight = cfg.integer("min_weight");
  if (min_weight < 1) throw ConfigError("min_weight must be at least 1");
  const auto max_iter = cfg.integer("max_iter");
  if (max_iter < 0) throw ConfigError("max_iter must be non-negative");
  const bool include_loops = cfg.flag("include_self_citations");

  const auto registry = load_registry(run, "journals", Source::A);
  auto net = filter_min_weight(load_network_input(run, "network", registry).network,
                               static_cast<std::uint64_t>(min_weight));
  std::uint64_t loops_removed = 0;
  if (!include_loops) {
    auto r = remove_self_loops(net);
    net = std::move(r.network);
    loops_removed = r.removed;
  }

  const auto raw = cosine_similarity_graph(net, {include_loops});
  const auto threshold = cfg.real("cosine_threshold");
  const auto graph = apply_cosine_threshold(raw, threshold);
  const auto giant = giant_component(graph);
  if (giant.nodes.empty()) throw ContractError("the network is empty; no base map to build");
  const auto min_share = cfg.real("min_component_share");
  if (giant.share < min_share)
    run.diag()->warn("giant component holds " + format_fixed(100.0 * giant.share, 1) + "% of the journals, below " +
                     format_fixed(100.0 * min_share, 1) + "%");
  const auto sub = induced_subgraph(graph, giant.nodes);

  const auto seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  const auto clusters = louvain_cluster(sub.graph, cfg.real("resolution"), seed, run.diag());
  LayoutConfig lc;
  lc.seed = seed;
  lc.max_iter = static_cast<std::size_t>(max_iter);
  auto placed = layout(sub.graph, lc);
  orient(placed.coords, cfg.real("rotate"), cfg.flag("flip_x"), cfg.flag("flip_y"));

  std::vector<std::uint64_t> given(net.size(), 0);
  for (const auto& e : net.edges()) given[e.citing] += e.count;
  std::vector<MapNode> nodes;
  for (std::size_t k = 0; k < sub.original_ids.size(); ++k) {
    const auto& rec = registry.at(sub.original_ids[k]);
    MapNode n;
    n.id = rec.id;
    n.label = rec.full_title;
    n.abbrev = rec.abbrev_title;
    n.x = placed.coords[k].x;
    n.y = placed.coords[k].y;
    n.cluster = clusters.assignment[k];
    n.weight = static_cast<double>(given[sub.original_ids[k]]);
    nodes.push_back(std::move(n));
  }

  OutlierOptions oo;
  oo.manual_ids = cfg.id_list("exclude_ids");
  oo.automatic = cfg.flag("auto_outliers");
  oo.factor = cfg.real("outlier_factor");
  auto trimmed = exclude_outliers(BaseMap(std::move(nodes)), oo, run.diag());
  auto map = std::move(trimmed.map);

  std::size_t shared_on_map = 0;
  if (cfg.is_set("match")) {
    const auto side = cfg.text("side");
    if (side != "a" && side != "b") throw ConfigError("side: expected a or b, got '" + side + "'");
    const auto shared = matched_ids(parse_match_csv(run.read_input("match")), side == "a");
    std::string status = csv_line({"id", "label", "status"});
    for (std::size_t i = 0; i < map.size(); ++i) {
      const bool is_shared = shared.count(map.at(i).id) > 0;
      map.set_status(i, is_shared ? JournalStatus::shared : JournalStatus::unique);
      shared_on_map += is_shared;
      status += csv_line({std::to_string(map.at(i).id), map.at(i).label, is_shared ? "1" : "0"});
    }
    run.emit("status.csv", status);
    run.emit("status_shared.txt", write_map_file(status_map(map, JournalStatus::shared), run.diag()));
    run.emit("status_unique.txt", write_map_file(status_map(map, JournalStatus::unique), run.diag()));
  }

  std::vector<NodeId> keep;
  std::vector<std::int64_t> ids;
  for (const auto& n : map.nodes()) {
    keep.push_back(static_cast<NodeId>(*registry.position_of(n.id)));
    ids.push_back(n.id);
  }
  const auto raw_on_map = induced_subgraph(raw, keep);

  run.emit("basemap.txt", write_map_file(map, run.diag()));
  run.emit("cosine.csv", write_cosine_csv(raw_on_map.graph, ids));
  run.emit("outliers.csv", write_report_csv(trimmed.removed));

  auto& c = run.counts();
  c["journals"] = net.size();
  c["links"] = net.edges().size();
  c["self_citations_removed"] = loops_removed;
  c["zero_vector_journals"] = raw.zero_vector_nodes().size();
  c["cosine_pairs"] = raw.edges().size();
  c["cosine_pairs_above_threshold"] = graph.edges().size();
  c["giant_component"] = giant.nodes.size();
  c["giant_component_share"] = giant.share;
  c["clusters"] = clusters.n_clusters;
  c["modularity"] = clusters.q;
  c["modularity_per_pass"] = clusters.pass_q;
  c["layout_iterations"] = placed.iterations;
  c["layout_stress"] = placed.stress_history.empty() ? 0.0 : placed.stress_history.back();
  c["layout_converged"] = placed.converged;
  c["outliers_removed"] = trimmed.removed.size();
  c["map_journals"] = map.size();
  if (cfg.is_set("match")) c["shared_on_map"] = shared_on_map;
  run.note("clustering: Louvain modularity optimization with a resolution parameter, in place of the VOSviewer clustering");
  run.note("layout: weighted stress majorization (w = cosine, d = 1 - cosine), in place of the VOS mapping technique");

  run.say("giant component: " + std::to_string(giant.nodes.size()) + " of " + std::to_string(net.size()) +
          " journals (" + format_fixed(100.0 * giant.share, 1) + "%)");
  run.say("clusters: " + std::to_string(clusters.n_clusters) + ", modularity Q = " + format_fixed(clusters.q, 3));
  run.say("map journals: " + std::to_string(map.size()) + " (" + std::to_string(trimmed.removed.size()) +
          " outliers removed)");
}

// --- overlay / diversity ---------------------------------------------------

void cmd_overlay(Run& run, bool with_map) {
  const auto& cfg = run.config();
  auto map = read_map_file(run.read_input("basemap"));
  std::optional<JournalRegistry> registry;
  if (cfg.is_set("journals")) {
    registry = load_registry(run, "journals", Source::A);
    map.attach_abbreviations(*registry);
  }

  const auto format_name = cfg.text("format");
  const auto format = doc_format_from_string(format_name);
  if (!format) throw ConfigError("format: unknown document format '" + format_name + "'");
  const auto docs = parse_documents(run.read_input("documents"), *format, run.diag());

  ResolveOptions ro;
  ro.fuzzy = cfg.flag("fuzzy_resolve");
  ro.fuzzy_threshold = cfg.real("resolve_threshold");
  const auto counts = resolve_document_set(docs, map, registry ? &*registry : nullptr, ro);
  if (counts.resolved_documents() == 0) {
    std::string titles;
    for (const auto& [title, n] : counts.unresolved) titles += "\n  " + title + " (" + std::to_string(n) + ")";
    throw ContractError("no document title resolved against the base map; unresolved titles:" + titles);
  }

  std::string cosine_text;
  if (cfg.is_set("cosine")) {
    cosine_text = run.read_input("cosine");
  } else {
    const auto beside = cfg.require_path("basemap").parent_path() / "cosine.csv";
    if (!fs::exists(beside)) throw ConfigError("missing required setting 'cosine' (--cosine)");
    cosine_text = run.read_path("cosine", beside);
  }
  auto similarity = read_cosine_csv(cosine_text, map, run.diag());

  const auto distance = cfg.text("distance");
  std::string source;
  if (distance == "raw") {
    source = "raw cosine";
  } else if (distance == "thresholded") {
    const auto t = cfg.real("cosine_threshold");
    similarity = apply_cosine_threshold(similarity, t);
    source = "cosine > " + format_shortest(t);
  } else {
    throw ConfigError("distance: expected raw or thresholded, got '" + distance + "'");
  }

  const auto report = rao_stirling(counts.counts, similarity, source);
  const auto overlay = build_overlay(counts, map);
  const auto files = write_overlay_outputs(overlay, counts, report, run.out_dir(), with_map, run.diag());
  for (const auto& f : files.written) run.adopt(f);
  run.emit("resolution_log.csv", write_report_csv(counts.resolution_log));

  std::uint64_t unresolved_docs = 0;
  for (const auto& [t, n] : counts.unresolved) unresolved_docs += n;
  auto& c = run.counts();
  c["documents"] = counts.total_documents;
  c["documents_resolved"] = counts.resolved_documents();
  c["documents_unresolved"] = unresolved_docs;
  c["titles_unresolved"] = counts.unresolved.size();
  c["journals_with_documents"] = report.nodes.size();
  c["rao_stirling"] = format_fixed(report.delta, 6);
  c["distance_source"] = report.distance_source;

  run.say("Rao-Stirling diversity: " + format_fixed(report.delta, 6) + " (" + report.distance_source + ")");
  run.say("documents: " + std::to_string(counts.resolved_documents()) + " of " +
          std::to_string(counts.total_documents) + " resolved onto " + std::to_string(report.nodes.size()) +
          " journals");
  if (!counts.unresolved.empty()) {
    run.say("unresolved titles:");
    for (const auto& [title, n] : counts.unresolved) run.say("  " + title + " (" + std::to_string(n) + ")");
  }
}

}  // namespace

RunResult run_command(std::string_view command, const RunConfig& config) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end())
    throw ConfigError("unknown command '" + std::string(command) + "'");
  Run run{std::string(command), config};
  if (command == "ingest")
    cmd_ingest(run);
  else if (command == "match")
    cmd_match(run);
  else if (command == "stats")
    cmd_stats(run);
  else if (command == "basemap")
    cmd_basemap(run);
  else
    cmd_overlay(run, command == "overlay");
  return run.finish();
}

}  // namespace jmap
