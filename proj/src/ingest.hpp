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

// Readers for journal registries, citation matrices and bibliographic
// downloads, plus the Pajek writer and the report CSVs.

#pragma once

#include "errors.hpp"
#include "network.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace jmap {

enum class Source { A, B };

struct JournalRecord {
  std::int64_t id = 0;
  std::string full_title;
  std::string abbrev_title;
  std::vector<std::string> issns;  // cleaned, sorted, unique
  Source source = Source::A;
  // Filled by dedupe_registry: identities of records folded into this one.
  std::vector<std::int64_t> alias_ids;
  std::vector<std::string> alias_titles;
};

/// Ordered journal list with ISSN and normalized-title indexes. Network node
/// ids are positions in this list.
class JournalRegistry {
 public:
  JournalRegistry() = default;
  /// Throws ContractError on duplicate ids (including alias ids) or titles
  /// that normalize to the empty string.
  explicit JournalRegistry(std::vector<JournalRecord> records);

  const std::vector<JournalRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  const JournalRecord& at(std::size_t position) const { return records_.at(position); }

  /// Position of a record by id; alias ids resolve to the surviving record.
  std::optional<std::size_t> position_of(std::int64_t id) const;
  /// Positions whose normalized full title (then alias title) equals
  /// normalize_title(title).
  std::vector<std::size_t> positions_for_title(std::string_view title) const;

  const std::map<std::string, std::set<std::int64_t>>& issn_index() const noexcept { return issn_index_; }
  const std::map<std::string, std::set<std::int64_t>>& title_index() const noexcept { return title_index_; }

 private:
  std::vector<JournalRecord> records_;
  std::map<std::int64_t, std::size_t> position_;
  std::map<std::string, std::set<std::int64_t>> issn_index_;
  std::map<std::string, std::set<std::int64_t>> title_index_;
  std::map<std::string, std::set<std::int64_t>> alias_title_index_;
};

/// Journal list CSV: header `id,title,abbrev,issns`; issns separated by ';'.
/// Invalid ISSNs are dropped with a warning.
JournalRegistry parse_journal_csv(std::string_view text, Source source, Diagnostics* diag = nullptr);
std::string write_journal_csv(const JournalRegistry& registry);

/// One line of a drop report, merge log or similar audit CSV.
struct ReportEntry {
  std::string reason;
  std::string record;  // line number or record id
  std::string detail;
};
std::string write_report_csv(const std::vector<ReportEntry>& entries);

struct ParsedNetwork {
  CitationNetwork network;
  std::vector<ReportEntry> drops;
  std::size_t missing = 0;  // rows naming the "All others" category
  std::size_t invalid = 0;  // rows naming journals absent from the registry
};

/// Edge CSV with header columns citing, cited, count (any order). Endpoints
/// are registry ids or full titles.
ParsedNetwork parse_edge_csv(std::string_view text, const JournalRegistry& registry);
std::string write_edge_csv(const CitationNetwork& network, const JournalRegistry& registry);

struct PajekGraph {
  JournalRegistry registry;  // ids 0..n-1, titles from the vertex labels
  CitationNetwork network;
};

PajekGraph parse_pajek(std::string_view text, Diagnostics* diag = nullptr);
std::string write_pajek(const CitationNetwork& network, const JournalRegistry& registry,
                        Diagnostics* diag = nullptr);

/// Reads a `.net` file or an edge CSV (which needs `registry`). A Pajek file
/// read alongside a registry must list the registry's journals in order.
ParsedNetwork load_network(const std::filesystem::path& path, const JournalRegistry* registry,
                           JournalRegistry* pajek_registry = nullptr, Diagnostics* diag = nullptr);

enum class DocFormat { wos_tagged, wos_analyze, scopus_ris, plain_csv };

std::optional<DocFormat> doc_format_from_string(std::string_view name);
std::string to_string(DocFormat format);

/// Journal title -> number of documents published in it.
struct DocumentSet {
  std::map<std::string, std::uint64_t> entries;
  DocFormat provenance = DocFormat::plain_csv;
  std::uint64_t records = 0;        // source records seen
  std::uint64_t missing_title = 0;  // records without a source title

  std::uint64_t documents() const noexcept;
};

DocumentSet parse_wos_tagged(std::string_view text, Diagnostics* diag = nullptr);
DocumentSet parse_wos_analyze(std::string_view text, Diagnostics* diag = nullptr);
DocumentSet parse_scopus_ris(std::string_view text, Diagnostics* diag = nullptr);
/// Header `journal,count`.
DocumentSet parse_document_csv(std::string_view text, Diagnostics* diag = nullptr);
DocumentSet parse_documents(std::string_view text, DocFormat format, Diagnostics* diag = nullptr);
std::string write_document_csv(const DocumentSet& docs);

struct DedupeResult {
  JournalRegistry registry;
  std::vector<ReportEntry> log;
};

/// Merges records that share any ISSN (transitively). The survivor keeps the
/// smallest id and the longest title; the others become aliases.
DedupeResult dedupe_registry(const JournalRegistry& registry);

/// Re-expresses `network` (indexed by positions in `from`) over `to`, summing
/// rows and columns of journals that `to` merged.
CitationNetwork remap_network(const CitationNetwork& network, const JournalRegistry& from,
                              const JournalRegistry& to);

}  // namespace jmap
