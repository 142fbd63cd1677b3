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

#include "ingest.hpp"

#include "text.hpp"
#include "union_find.hpp"

#include <algorithm>
#include <cmath>

namespace jmap {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines = split(text, '\n');
  for (auto& l : lines)
    if (!l.empty() && l.back() == '\r') l.pop_back();
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  return out;
}

/// Maps header names to column positions; throws when a required one is absent.
class HeaderMap {
 public:
  HeaderMap(const CsvRow& header, std::string_view source) : source_(source) {
    for (std::size_t i = 0; i < header.fields.size(); ++i) columns_[lower(trim(header.fields[i]))] = i;
  }

  std::size_t require(const std::string& name) const {
    auto it = columns_.find(name);
    if (it == columns_.end()) throw ParseError(std::string(source_), 1, "missing column '" + name + "'");
    return it->second;
  }

  std::optional<std::size_t> optional(const std::string& name) const {
    auto it = columns_.find(name);
    if (it == columns_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t width() const noexcept { return columns_.size(); }

 private:
  std::string_view source_;
  std::map<std::string, std::size_t> columns_;
};

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

// --- JournalRegistry -------------------------------------------------------

JournalRegistry::JournalRegistry(std::vector<JournalRecord> records) : records_(std::move(records)) {
  for (std::size_t p = 0; p < records_.size(); ++p) {
    auto& r = records_[p];
    std::sort(r.issns.begin(), r.issns.end());
    r.issns.erase(std::unique(r.issns.begin(), r.issns.end()), r.issns.end());

    const auto key = normalize_title(r.full_title);
    if (key.empty()) throw ContractError("journal " + std::to_string(r.id) + " has an empty title");

    auto claim = [&](std::int64_t id) {
      if (!position_.emplace(id, p).second)
        throw ContractError("duplicate journal id " + std::to_string(id));
    };
    claim(r.id);
    for (auto alias : r.alias_ids) claim(alias);

    for (const auto& issn : r.issns) issn_index_[issn].insert(r.id);
    title_index_[key].insert(r.id);
    for (const auto& t : r.alias_titles) {
      const auto k = normalize_title(t);
      if (!k.empty()) alias_title_index_[k].insert(r.id);
    }
  }
}

std::optional<std::size_t> JournalRegistry::position_of(std::int64_t id) const {
  auto it = position_.find(id);
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> JournalRegistry::positions_for_title(std::string_view title) const {
  const auto key = normalize_title(title);
  std::vector<std::size_t> out;
  auto collect = [&](const std::map<std::string, std::set<std::int64_t>>& index) {
    auto it = index.find(key);
    if (it == index.end()) return;
    for (auto id : it->second) out.push_back(position_.at(id));
  };
  collect(title_index_);
  if (out.empty()) collect(alias_title_index_);
  std::sort(out.begin(), out.end());
  return out;
}

JournalRegistry parse_journal_csv(std::string_view text, Source source, Diagnostics* diag) {
  const auto rows = read_csv(strip_bom(text));
  if (rows.empty()) throw ParseError("journal csv", 1, "missing header");
  HeaderMap header(rows.front(), "journal csv");
  const auto c_id = header.require("id");
  const auto c_title = header.require("title");
  const auto c_abbrev = header.optional("abbrev");
  const auto c_issns = header.optional("issns");
  const auto c_alias_ids = header.optional("alias_ids");
  const auto c_alias_titles = header.optional("alias_titles");

  std::vector<JournalRecord> records;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != rows.front().fields.size())
      throw ParseError("journal csv", row.line,
                       "expected " + std::to_string(rows.front().fields.size()) + " fields, got " +
                           std::to_string(row.fields.size()));
    JournalRecord r;
    r.source = source;
    const auto id = parse_int(row.fields[c_id]);
    if (!id) throw ParseError("journal csv", row.line, "id is not an integer");
    r.id = *id;
    r.full_title = trim(row.fields[c_title]);
    if (normalize_title(r.full_title).empty()) throw ParseError("journal csv", row.line, "empty title");
    if (c_abbrev) r.abbrev_title = trim(row.fields[*c_abbrev]);
    if (c_issns) {
      for (const auto& raw : split(row.fields[*c_issns], ';')) {
        if (trim(raw).empty()) continue;
        if (auto issn = clean_issn(raw))
          r.issns.push_back(*issn);
        else
          warn(diag, "journal csv:" + std::to_string(row.line) + ": invalid ISSN '" + trim(raw) + "' dropped");
      }
    }
    if (c_alias_ids) {
      for (const auto& raw : split(row.fields[*c_alias_ids], ';')) {
        if (trim(raw).empty()) continue;
        const auto alias = parse_int(raw);
        if (!alias) throw ParseError("journal csv", row.line, "alias id is not an integer");
        r.alias_ids.push_back(*alias);
      }
    }
    if (c_alias_titles) {
      for (const auto& t : split(row.fields[*c_alias_titles], '|'))
        if (!trim(t).empty()) r.alias_titles.push_back(trim(t));
    }
    records.push_back(std::move(r));
  }
  try {
    return JournalRegistry(std::move(records));
  } catch (const ContractError& e) {
    throw ParseError("journal csv", 0, e.what());
  }
}

std::string write_journal_csv(const JournalRegistry& registry) {
  std::string out = "id,title,abbrev,issns,alias_ids,alias_titles\n";
  for (const auto& r : registry.records()) {
    std::vector<std::string> ids;
    for (auto a : r.alias_ids) ids.push_back(std::to_string(a));
    out += csv_line({std::to_string(r.id), r.full_title, r.abbrev_title, join(r.issns, ';'), join(ids, ';'),
                     join(r.alias_titles, '|')});
  }
  return out;
}

std::string write_report_csv(const std::vector<ReportEntry>& entries) {
  std::string out = "reason,record,detail\n";
  for (const auto& e : entries) out += csv_line({e.reason, e.record, e.detail});
  return out;
}

// --- citation matrices -----------------------------------------------------

ParsedNetwork parse_edge_csv(std::string_view text, const JournalRegistry& registry) {
  const auto rows = read_csv(strip_bom(text));
  if (rows.empty()) throw ParseError("edge csv", 1, "missing header");
  HeaderMap header(rows.front(), "edge csv");
  const auto c_citing = header.require("citing");
  const auto c_cited = header.require("cited");
  const auto c_count = header.require("count");
  const auto width = rows.front().fields.size();

  ParsedNetwork out;
  std::vector<Edge> edges;

  enum class Outcome { resolved, missing, invalid };
  auto resolve = [&](const std::string& field, std::size_t& position) -> Outcome {
    if (is_all_others(field)) return Outcome::missing;
    if (auto id = parse_int(field)) {
      if (auto p = registry.position_of(*id)) {
        position = *p;
        return Outcome::resolved;
      }
    }
    const auto hits = registry.positions_for_title(field);
    if (hits.size() == 1) {
      position = hits.front();
      return Outcome::resolved;
    }
    return Outcome::invalid;
  };

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != width)
      throw ParseError("edge csv", row.line,
                       "expected " + std::to_string(width) + " fields, got " + std::to_string(row.fields.size()));
    const auto count = parse_int(row.fields[c_count]);
    if (!count || *count < 1)
      throw ParseError("edge csv", row.line, "count '" + row.fields[c_count] + "' is not a positive integer");

    std::size_t citing = 0, cited = 0;
    const auto a = resolve(row.fields[c_citing], citing);
    const auto b = resolve(row.fields[c_cited], cited);
    const auto line = std::to_string(row.line);
    if (a == Outcome::missing || b == Outcome::missing) {
      ++out.missing;
      out.drops.push_back({"all_others", line, row.fields[c_citing] + " -> " + row.fields[c_cited]});
      continue;
    }
    if (a == Outcome::invalid || b == Outcome::invalid) {
      ++out.invalid;
      const auto& bad = a == Outcome::invalid ? row.fields[c_citing] : row.fields[c_cited];
      out.drops.push_back({"invalid_relation", line, "unresolved journal '" + bad + "'"});
      continue;
    }
    edges.push_back({static_cast<NodeId>(citing), static_cast<NodeId>(cited), static_cast<std::uint64_t>(*count)});
  }
  out.network = CitationNetwork(registry.size(), std::move(edges));
  return out;
}

std::string write_edge_csv(const CitationNetwork& network, const JournalRegistry& registry) {
  if (network.size() != registry.size()) throw ContractError("network and registry sizes differ");
  std::string out = "citing,cited,count\n";
  for (const auto& e : network.edges()) {
    out += csv_line({std::to_string(registry.at(e.citing).id), std::to_string(registry.at(e.cited).id),
                     std::to_string(e.count)});
  }
  return out;
}

PajekGraph parse_pajek(std::string_view text, Diagnostics* diag) {
  const auto lines = split_lines(strip_bom(text));
  enum class Section { none, vertices, arcs } section = Section::none;
  std::optional<std::size_t> n;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  bool saw_arcs = false;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto lineno = li + 1;
    const auto line = trim(lines[li]);
    if (line.empty() || line.front() == '%') continue;

    if (line.front() == '*') {
      const auto words = split(line, ' ');
      const auto keyword = lower(words.front());
      if (keyword == "*vertices") {
        if (n) throw ParseError("pajek", lineno, "second *Vertices section");
        const auto count = words.size() > 1 ? parse_int(words[1]) : std::nullopt;
        if (!count || *count < 0) throw ParseError("pajek", lineno, "*Vertices needs a vertex count");
        n = static_cast<std::size_t>(*count);
        labels.assign(*n, std::string());
        section = Section::vertices;
      } else if (keyword == "*arcs") {
        if (!n) throw ParseError("pajek", lineno, "*Arcs before *Vertices");
        section = Section::arcs;
        saw_arcs = true;
      } else {
        throw ParseError("pajek", lineno, "unsupported section " + words.front());
      }
      continue;
    }

    if (section == Section::vertices) {
      const auto space = line.find_first_of(" \t");
      const auto index = parse_int(line.substr(0, space));
      if (!index || *index < 1 || static_cast<std::size_t>(*index) > *n)
        throw ParseError("pajek", lineno, "vertex index out of range 1.." + std::to_string(*n));
      std::string rest = space == std::string::npos ? std::string() : trim(line.substr(space));
      std::string label;
      if (!rest.empty() && rest.front() == '"') {
        const auto close = rest.find('"', 1);
        if (close == std::string::npos) throw ParseError("pajek", lineno, "unterminated vertex label");
        label = rest.substr(1, close - 1);
      } else {
        label = rest.substr(0, rest.find_first_of(" \t"));
      }
      labels[static_cast<std::size_t>(*index - 1)] = label;
    } else if (section == Section::arcs) {
      std::vector<std::string> fields;
      for (auto& f : split(line, ' '))
        for (auto& g : split(f, '\t'))
          if (!g.empty()) fields.push_back(g);
      if (fields.size() < 2) throw ParseError("pajek", lineno, "arc needs source and target");
      const auto s = parse_int(fields[0]);
      const auto t = parse_int(fields[1]);
      const auto in_range = [&](const std::optional<std::int64_t>& v) {
        return v && *v >= 1 && static_cast<std::size_t>(*v) <= *n;
      };
      if (!in_range(s) || !in_range(t))
        throw ParseError("pajek", lineno, "vertex index out of range 1.." + std::to_string(*n));
      std::uint64_t w = 1;
      if (fields.size() > 2) {
        const auto wv = parse_double(fields[2]);
        if (!wv || *wv < 1 || std::floor(*wv) != *wv)
          throw ParseError("pajek", lineno, "arc weight '" + fields[2] + "' is not a positive integer");
        w = static_cast<std::uint64_t>(*wv);
      }
      edges.push_back({static_cast<NodeId>(*s - 1), static_cast<NodeId>(*t - 1), w});
    } else {
      throw ParseError("pajek", lineno, "data outside any section");
    }
  }

  if (!n) throw ParseError("pajek", 0, "missing *Vertices section");
  if (!saw_arcs) warn(diag, "pajek: no *Arcs section; network is empty");

  std::vector<JournalRecord> records(*n);
  for (std::size_t i = 0; i < *n; ++i) {
    records[i].id = static_cast<std::int64_t>(i);
    records[i].full_title = labels[i];
    if (normalize_title(labels[i]).empty()) records[i].full_title = std::to_string(i + 1);
  }
  PajekGraph out;
  out.registry = JournalRegistry(std::move(records));
  out.network = CitationNetwork(*n, std::move(edges));
  return out;
}

std::string write_pajek(const CitationNetwork& network, const JournalRegistry& registry, Diagnostics* diag) {
  if (network.size() != registry.size()) throw ContractError("network and registry sizes differ");
  std::string out = "*Vertices " + std::to_string(network.size()) + "\n";
  for (std::size_t i = 0; i < registry.size(); ++i) {
    std::string label = registry.at(i).full_title;
    if (label.find('"') != std::string::npos) {
      std::replace(label.begin(), label.end(), '"', '\'');
      warn(diag, "pajek: double quotes in label of vertex " + std::to_string(i + 1) + " replaced");
    }
    out += std::to_string(i + 1) + " \"" + label + "\"\n";
  }
  out += "*Arcs\n";
  for (const auto& e : network.edges())
    out += std::to_string(e.citing + 1) + " " + std::to_string(e.cited + 1) + " " + std::to_string(e.count) + "\n";
  return out;
}

ParsedNetwork load_network(const std::filesystem::path& path, const JournalRegistry* registry,
                           JournalRegistry* pajek_registry, Diagnostics* diag) {
  const auto text = read_file(path);
  if (lower(path.extension().string()) == ".net") {
    auto graph = parse_pajek(text, diag);
    if (registry) {
      if (graph.registry.size() != registry->size())
        throw ContractError(path.string() + " has " + std::to_string(graph.registry.size()) +
                            " vertices but the journal list has " + std::to_string(registry->size()));
      for (std::size_t i = 0; i < registry->size(); ++i) {
        if (normalize_title(graph.registry.at(i).full_title) != normalize_title(registry->at(i).full_title))
          warn(diag, path.string() + ": vertex " + std::to_string(i + 1) + " label differs from journal list");
      }
    }
    if (pajek_registry) *pajek_registry = graph.registry;
    ParsedNetwork out;
    out.network = std::move(graph.network);
    return out;
  }
  if (!registry) throw ContractError(path.string() + ": an edge CSV needs a journal list");
  return parse_edge_csv(text, *registry);
}

// --- document downloads ----------------------------------------------------

std::optional<DocFormat> doc_format_from_string(std::string_view name) {
  if (name == "wos-tagged") return DocFormat::wos_tagged;
  if (name == "wos-analyze") return DocFormat::wos_analyze;
  if (name == "ris") return DocFormat::scopus_ris;
  if (name == "csv") return DocFormat::plain_csv;
  return std::nullopt;
}

std::string to_string(DocFormat format) {
  switch (format) {
    case DocFormat::wos_tagged: return "wos-tagged";
    case DocFormat::wos_analyze: return "wos-analyze";
    case DocFormat::scopus_ris: return "ris";
    case DocFormat::plain_csv: return "csv";
  }
  return "csv";
}

std::uint64_t DocumentSet::documents() const noexcept {
  std::uint64_t t = 0;
  for (const auto& [_, c] : entries) t += c;
  return t;
}

DocumentSet parse_wos_tagged(std::string_view text, Diagnostics* diag) {
  DocumentSet docs;
  docs.provenance = DocFormat::wos_tagged;
  const auto lines = split_lines(strip_bom(text));

  auto is_tag_line = [](const std::string& l) {
    if (l.size() < 2) return false;
    for (int k = 0; k < 2; ++k) {
      const char c = l[k];
      if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'))) return false;
    }
    return l.size() == 2 || l[2] == ' ';
  };

  std::string tag;
  std::optional<std::string> source_title;
  bool in_source = false;
  bool saw_terminator = false;

  for (const auto& line : lines) {
    if (is_tag_line(line)) {
      tag = line.substr(0, 2);
      in_source = false;
      if (tag == "ER") {
        saw_terminator = true;
        ++docs.records;
        if (source_title && !source_title->empty())
          ++docs.entries[*source_title];
        else
          ++docs.missing_title;
        source_title.reset();
      } else if (tag == "SO" && !source_title) {
        source_title = trim(line.substr(2));
        in_source = true;
      }
    } else if (!line.empty() && line.front() == ' ' && in_source) {
      const auto more = trim(line);
      if (!more.empty()) *source_title += (source_title->empty() ? "" : " ") + more;
    }
  }
  if (!saw_terminator) throw ParseError("wos tagged", 0, "not a tagged export (no ER record terminators)");
  if (source_title) warn(diag, "wos tagged: trailing record without ER terminator ignored");
  return docs;
}

DocumentSet parse_wos_analyze(std::string_view text, Diagnostics* diag) {
  DocumentSet docs;
  docs.provenance = DocFormat::wos_analyze;
  const auto lines = split_lines(strip_bom(text));
  std::size_t data_rows = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto fields = split(lines[i], '\t');
    const auto where = "analyze:" + std::to_string(i + 1);
    if (fields.size() < 2) {
      warn(diag, where + ": skipped row without a count column");
      continue;
    }
    const auto title = trim(fields[0]);
    const auto count = parse_int(fields[1]);
    if (!count || *count < 1 || title.empty()) {
      warn(diag, where + ": skipped row with count '" + trim(fields[1]) + "'");
      continue;
    }
    docs.entries[title] += static_cast<std::uint64_t>(*count);
    docs.records += static_cast<std::uint64_t>(*count);
    ++data_rows;
  }
  if (data_rows == 0) throw ParseError("wos analyze", 0, "no data rows");
  return docs;
}

DocumentSet parse_scopus_ris(std::string_view text, Diagnostics* diag) {
  DocumentSet docs;
  docs.provenance = DocFormat::scopus_ris;
  const auto lines = split_lines(strip_bom(text));

  bool in_record = false;
  bool saw_marker = false;
  std::map<std::string, std::string> titles;  // first value per title tag

  auto close_record = [&] {
    ++docs.records;
    std::optional<std::string> title;
    for (const char* tag : {"T2", "JF", "JO"}) {
      auto it = titles.find(tag);
      if (it != titles.end() && !it->second.empty()) {
        title = it->second;
        break;
      }
    }
    if (title)
      ++docs.entries[*title];
    else
      ++docs.missing_title;
    titles.clear();
    in_record = false;
  };

  for (const auto& raw : lines) {
    if (raw.size() < 5 || raw.compare(2, 3, "  -") != 0) continue;
    const auto tag = raw.substr(0, 2);
    const auto value = trim(raw.substr(5));
    if (tag == "TY") {
      saw_marker = true;
      if (in_record) {
        warn(diag, "ris: record without ER closed at next TY");
        close_record();
      }
      in_record = true;
    } else if (tag == "ER") {
      saw_marker = true;
      if (in_record) close_record();
    } else if (in_record && (tag == "T2" || tag == "JF" || tag == "JO")) {
      titles.emplace(tag, value);
    }
  }
  if (!saw_marker) throw ParseError("ris", 0, "not an RIS file (no TY/ER markers)");
  if (in_record) {
    warn(diag, "ris: final record without ER");
    close_record();
  }
  return docs;
}

DocumentSet parse_document_csv(std::string_view text, Diagnostics*) {
  DocumentSet docs;
  docs.provenance = DocFormat::plain_csv;
  const auto rows = read_csv(strip_bom(text));
  if (rows.empty()) throw ParseError("document csv", 1, "missing header");
  HeaderMap header(rows.front(), "document csv");
  const auto c_journal = header.require("journal");
  const auto c_count = header.require("count");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != rows.front().fields.size())
      throw ParseError("document csv", row.line, "wrong number of fields");
    const auto count = parse_int(row.fields[c_count]);
    if (!count || *count < 1) throw ParseError("document csv", row.line, "count is not a positive integer");
    const auto title = trim(row.fields[c_journal]);
    docs.records += static_cast<std::uint64_t>(*count);
    if (title.empty())
      docs.missing_title += static_cast<std::uint64_t>(*count);
    else
      docs.entries[title] += static_cast<std::uint64_t>(*count);
  }
  return docs;
}

DocumentSet parse_documents(std::string_view text, DocFormat format, Diagnostics* diag) {
  switch (format) {
    case DocFormat::wos_tagged: return parse_wos_tagged(text, diag);
    case DocFormat::wos_analyze: return parse_wos_analyze(text, diag);
    case DocFormat::scopus_ris: return parse_scopus_ris(text, diag);
    case DocFormat::plain_csv: return parse_document_csv(text, diag);
  }
  throw ContractError("unknown document format");
}

std::string write_document_csv(const DocumentSet& docs) {
  std::string out = "journal,count\n";
  for (const auto& [title, count] : docs.entries) out += csv_line({title, std::to_string(count)});
  return out;
}

// --- duplicate ISSNs -------------------------------------------------------

DedupeResult dedupe_registry(const JournalRegistry& registry) {
  const auto& records = registry.records();
  DisjointSets sets(records.size());
  for (const auto& [issn, ids] : registry.issn_index()) {
    const auto first = *registry.position_of(*ids.begin());
    for (auto id : ids) sets.unite(first, *registry.position_of(id));
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;  // keyed by smallest position
  for (std::size_t p = 0; p < records.size(); ++p) groups[sets.find(p)].push_back(p);

  DedupeResult out;
  std::vector<JournalRecord> merged;
  for (const auto& [root, members] : groups) {
    if (members.size() == 1) {
      merged.push_back(records[root]);
      continue;
    }
    std::size_t title_from = members.front();
    std::int64_t min_id = records[members.front()].id;
    for (auto p : members) {
      if (records[p].full_title.size() > records[title_from].full_title.size()) title_from = p;
      min_id = std::min(min_id, records[p].id);
    }
    JournalRecord r = records[title_from];
    r.id = min_id;
    r.alias_ids.clear();
    r.alias_titles.clear();
    if (r.abbrev_title.empty()) {
      for (auto p : members)
        if (!records[p].abbrev_title.empty()) {
          r.abbrev_title = records[p].abbrev_title;
          break;
        }
    }
    for (auto p : members) {
      const auto& m = records[p];
      r.issns.insert(r.issns.end(), m.issns.begin(), m.issns.end());
      if (m.id != min_id) r.alias_ids.push_back(m.id);
      r.alias_ids.insert(r.alias_ids.end(), m.alias_ids.begin(), m.alias_ids.end());
      if (p != title_from) r.alias_titles.push_back(m.full_title);
      r.alias_titles.insert(r.alias_titles.end(), m.alias_titles.begin(), m.alias_titles.end());
      if (m.id != min_id || p != title_from) {
        out.log.push_back({"merged_duplicate_issn", std::to_string(min_id),
                           "id=" + std::to_string(m.id) + " title=" + m.full_title + " issns=" + join(m.issns, ';')});
      }
    }
    std::sort(r.alias_ids.begin(), r.alias_ids.end());
    std::sort(r.alias_titles.begin(), r.alias_titles.end());
    r.alias_titles.erase(std::unique(r.alias_titles.begin(), r.alias_titles.end()), r.alias_titles.end());
    std::erase(r.alias_titles, r.full_title);
    merged.push_back(std::move(r));
  }
  out.registry = JournalRegistry(std::move(merged));
  return out;
}

CitationNetwork remap_network(const CitationNetwork& network, const JournalRegistry& from,
                              const JournalRegistry& to) {
  if (network.size() != from.size()) throw ContractError("network and registry sizes differ");
  std::vector<NodeId> target(from.size());
  for (std::size_t p = 0; p < from.size(); ++p) {
    const auto q = to.position_of(from.at(p).id);
    if (!q) throw ContractError("journal " + std::to_string(from.at(p).id) + " missing from target registry");
    target[p] = static_cast<NodeId>(*q);
  }
  std::vector<Edge> edges;
  edges.reserve(network.edges().size());
  for (const auto& e : network.edges()) edges.push_back({target[e.citing], target[e.cited], e.count});
  return CitationNetwork(to.size(), std::move(edges), network.loops_included());
}

}  // namespace jmap
