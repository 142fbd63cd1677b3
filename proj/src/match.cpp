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

#include "match.hpp"

#include "text.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <tuple>

namespace jmap {

// --- gestalt similarity ----------------------------------------------------

namespace {

struct Block {
  std::size_t a = 0, b = 0, size = 0;
};

// Longest common substring of a[alo, ahi) and b[blo, bhi). Scanning end
// positions in increasing order and only replacing on a strictly longer run
// keeps the leftmost occurrence in `a`, then in `b`.
Block longest_common_block(std::string_view a, std::size_t alo, std::size_t ahi, std::string_view b,
                           std::size_t blo, std::size_t bhi, std::vector<std::size_t>& prev,
                           std::vector<std::size_t>& cur) {
  Block best{alo, blo, 0};
  const std::size_t width = bhi - blo;
  prev.assign(width + 1, 0);
  cur.assign(width + 1, 0);
  for (std::size_t i = alo; i < ahi; ++i) {
    for (std::size_t j = blo; j < bhi; ++j) {
      const std::size_t k = j - blo + 1;
      if (a[i] == b[j]) {
        cur[k] = prev[k - 1] + 1;
        if (cur[k] > best.size) best = {i + 1 - cur[k], j + 1 - cur[k], cur[k]};
      } else {
        cur[k] = 0;
      }
    }
    std::swap(prev, cur);
  }
  return best;
}

}  // namespace

std::size_t gestalt_matched_chars(std::string_view a, std::string_view b) {
  struct Range {
    std::size_t alo, ahi, blo, bhi;
  };
  std::vector<Range> stack{{0, a.size(), 0, b.size()}};
  std::vector<std::size_t> prev, cur;
  std::size_t matched = 0;
  while (!stack.empty()) {
    const auto r = stack.back();
    stack.pop_back();
    if (r.alo >= r.ahi || r.blo >= r.bhi) continue;
    const auto block = longest_common_block(a, r.alo, r.ahi, b, r.blo, r.bhi, prev, cur);
    if (block.size == 0) continue;
    matched += block.size;
    stack.push_back({r.alo, block.a, r.blo, block.b});
    stack.push_back({block.a + block.size, r.ahi, block.b + block.size, r.bhi});
  }
  return matched;
}

double gestalt_similarity(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  const auto m = gestalt_matched_chars(a, b);
  return 2.0 * static_cast<double>(m) / static_cast<double>(a.size() + b.size());
}

namespace {

// Upper bound on gestalt similarity from character multisets.
double quick_ratio(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  std::array<std::size_t, 256> counts{};
  for (unsigned char c : a) ++counts[c];
  std::size_t common = 0;
  for (unsigned char c : b) {
    if (counts[c] > 0) {
      --counts[c];
      ++common;
    }
  }
  return 2.0 * static_cast<double>(common) / static_cast<double>(a.size() + b.size());
}

}  // namespace

// --- ISSN variants ---------------------------------------------------------

std::string IssnVariants::root(const std::string& issn) const {
  std::string cur = issn;
  for (;;) {
    auto it = parent_.find(cur);
    if (it == parent_.end() || it->second == cur) return cur;
    cur = it->second;
  }
}

void IssnVariants::link(const std::string& issn_1, const std::string& issn_2) {
  auto r1 = root(issn_1);
  auto r2 = root(issn_2);
  parent_.try_emplace(r1, r1);
  parent_.try_emplace(r2, r2);
  if (r1 != r2) {
    if (r2 < r1) std::swap(r1, r2);
    parent_[r2] = r1;
  }
  ++pairs_;
}

bool IssnVariants::linked(const std::vector<std::string>& a, const std::vector<std::string>& b) const {
  std::set<std::string> roots;
  for (const auto& x : a) roots.insert(root(x));
  for (const auto& y : b)
    if (roots.count(root(y))) return true;
  return false;
}

IssnVariants parse_issn_variants(std::string_view text, Diagnostics* diag) {
  const auto rows = read_csv(strip_bom(text));
  if (rows.empty()) throw ParseError("issn variants", 1, "missing header");
  IssnVariants variants;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != 2) throw ParseError("issn variants", row.line, "expected issn_1,issn_2");
    const auto x = clean_issn(row.fields[0]);
    const auto y = clean_issn(row.fields[1]);
    if (!x || !y) {
      warn(diag, "issn variants:" + std::to_string(row.line) + ": invalid ISSN skipped");
      continue;
    }
    variants.link(*x, *y);
  }
  return variants;
}

// --- match table -----------------------------------------------------------

std::string to_string(MatchMethod method) {
  switch (method) {
    case MatchMethod::issn: return "issn";
    case MatchMethod::exact_title: return "exact_title";
    case MatchMethod::fuzzy_confirmed: return "fuzzy_confirmed";
    case MatchMethod::candidate_review: return "candidate_review";
  }
  return "candidate_review";
}

std::optional<MatchMethod> match_method_from_string(std::string_view name) {
  for (auto m : {MatchMethod::issn, MatchMethod::exact_title, MatchMethod::fuzzy_confirmed,
                 MatchMethod::candidate_review})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

std::vector<MatchEntry> MatchTable::matches() const {
  std::vector<MatchEntry> out;
  for (const auto& e : entries)
    if (e.method != MatchMethod::candidate_review) out.push_back(e);
  return out;
}

std::vector<MatchEntry> MatchTable::candidates() const {
  std::vector<MatchEntry> out;
  for (const auto& e : entries)
    if (e.method == MatchMethod::candidate_review) out.push_back(e);
  return out;
}

MatchTable build_match_table(const JournalRegistry& a, const JournalRegistry& b, const MatchOptions& options) {
  if (!(options.fuzzy_threshold >= 0.0 && options.fuzzy_threshold <= 1.0))
    throw ContractError("fuzzy threshold must lie in [0, 1]");

  auto rec_a = [&](std::int64_t id) -> const JournalRecord& { return a.at(*a.position_of(id)); };
  auto rec_b = [&](std::int64_t id) -> const JournalRecord& { return b.at(*b.position_of(id)); };
  const auto title_similarity = [&](std::int64_t ia, std::int64_t ib) {
    return gestalt_similarity(normalize_title(rec_a(ia).full_title), normalize_title(rec_b(ib).full_title));
  };

  MatchTable table;
  std::set<std::int64_t> used_a, used_b;
  std::vector<MatchEntry> review;

  auto accept = [&](std::int64_t ia, std::int64_t ib, MatchMethod method, double sim) {
    table.entries.push_back({ia, ib, method, sim, {}});
    used_a.insert(ia);
    used_b.insert(ib);
  };

  // Stage 1: shared ISSNs. Pairs sharing more ISSNs win conflicts.
  {
    std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> shared;
    for (const auto& [issn, ids_a] : a.issn_index()) {
      auto it = b.issn_index().find(issn);
      if (it == b.issn_index().end()) continue;
      for (auto ia : ids_a)
        for (auto ib : it->second) ++shared[{ia, ib}];
    }
    std::vector<std::tuple<std::size_t, std::int64_t, std::int64_t>> pairs;
    for (const auto& [ids, n] : shared) pairs.emplace_back(n, ids.first, ids.second);
    std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
      if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
      return std::tie(std::get<1>(x), std::get<2>(x)) < std::tie(std::get<1>(y), std::get<2>(y));
    });
    for (const auto& [n, ia, ib] : pairs) {
      if (!used_a.count(ia) && !used_b.count(ib))
        accept(ia, ib, MatchMethod::issn, 1.0);
      else
        review.push_back({ia, ib, MatchMethod::candidate_review, title_similarity(ia, ib), "issn_conflict"});
    }
  }

  // Stage 2: identical normalized full titles, only when unambiguous.
  {
    std::map<std::string, std::vector<std::int64_t>> titles_a, titles_b;
    for (const auto& r : a.records())
      if (!used_a.count(r.id)) titles_a[normalize_title(r.full_title)].push_back(r.id);
    for (const auto& r : b.records())
      if (!used_b.count(r.id)) titles_b[normalize_title(r.full_title)].push_back(r.id);
    for (auto& [title, ids_a] : titles_a) {
      auto it = titles_b.find(title);
      if (it == titles_b.end()) continue;
      auto& ids_b = it->second;
      if (ids_a.size() == 1 && ids_b.size() == 1) {
        accept(ids_a.front(), ids_b.front(), MatchMethod::exact_title, 1.0);
        continue;
      }
      std::sort(ids_a.begin(), ids_a.end());
      std::sort(ids_b.begin(), ids_b.end());
      for (auto ia : ids_a)
        for (auto ib : ids_b) review.push_back({ia, ib, MatchMethod::candidate_review, 1.0, "ambiguous_title"});
    }
  }

  // Stage 3: fuzzy titles, confirmed only through ISSN linkage.
  {
    std::vector<std::pair<std::int64_t, std::string>> rest_a, rest_b;
    for (const auto& r : a.records())
      if (!used_a.count(r.id)) rest_a.emplace_back(r.id, normalize_title(r.full_title));
    for (const auto& r : b.records())
      if (!used_b.count(r.id)) rest_b.emplace_back(r.id, normalize_title(r.full_title));
    std::sort(rest_a.begin(), rest_a.end());
    std::sort(rest_b.begin(), rest_b.end());

    const bool a_is_input = a.size() >= b.size();
    IssnVariants none;
    const IssnVariants& variants = options.variants ? *options.variants : none;

    std::vector<MatchEntry> linked;
    for (const auto& [ia, ta] : rest_a) {
      for (const auto& [ib, tb] : rest_b) {
        const std::string_view first = a_is_input ? ta : tb;
        const std::string_view second = a_is_input ? tb : ta;
        if (quick_ratio(first, second) < options.fuzzy_threshold) continue;
        const double sim = gestalt_similarity(first, second);
        if (sim < options.fuzzy_threshold) continue;
        if (variants.linked(rec_a(ia).issns, rec_b(ib).issns))
          linked.push_back({ia, ib, MatchMethod::fuzzy_confirmed, sim, {}});
        else
          review.push_back({ia, ib, MatchMethod::candidate_review, sim, "no_issn_link"});
      }
    }
    std::sort(linked.begin(), linked.end(), [](const MatchEntry& x, const MatchEntry& y) {
      if (x.similarity != y.similarity) return x.similarity > y.similarity;
      return std::tie(x.id_a, x.id_b) < std::tie(y.id_a, y.id_b);
    });
    for (auto& e : linked) {
      if (!used_a.count(e.id_a) && !used_b.count(e.id_b)) {
        accept(e.id_a, e.id_b, MatchMethod::fuzzy_confirmed, e.similarity);
      } else {
        e.method = MatchMethod::candidate_review;
        e.note = "one_to_one_conflict";
        review.push_back(e);
      }
    }
  }

  std::stable_sort(table.entries.begin(), table.entries.end(), [](const MatchEntry& x, const MatchEntry& y) {
    return std::tie(x.method, x.id_a, x.id_b) < std::tie(y.method, y.id_a, y.id_b);
  });
  std::sort(review.begin(), review.end(), [](const MatchEntry& x, const MatchEntry& y) {
    return std::tie(x.id_a, x.id_b, x.note) < std::tie(y.id_a, y.id_b, y.note);
  });

  for (auto m : {MatchMethod::issn, MatchMethod::exact_title, MatchMethod::fuzzy_confirmed}) table.stage_counts[m] = 0;
  for (const auto& e : table.entries) ++table.stage_counts[e.method];
  table.entries.insert(table.entries.end(), review.begin(), review.end());

  for (const auto& r : a.records())
    if (!used_a.count(r.id)) table.unmatched_a.push_back(r.id);
  for (const auto& r : b.records())
    if (!used_b.count(r.id)) table.unmatched_b.push_back(r.id);
  std::sort(table.unmatched_a.begin(), table.unmatched_a.end());
  std::sort(table.unmatched_b.begin(), table.unmatched_b.end());
  return table;
}

// --- CSV exchange ----------------------------------------------------------

namespace {

std::string join_issns(const std::vector<std::string>& issns) {
  std::string out;
  for (std::size_t i = 0; i < issns.size(); ++i) {
    if (i) out += ';';
    out += issns[i];
  }
  return out;
}

const char* const kMatchHeader =
    "status,title_a,abbrev_a,issns_a,title_b,abbrev_b,issns_b,method,similarity,id_a,id_b\n";

}  // namespace

std::string export_match_csv(const MatchTable& table, const JournalRegistry& a, const JournalRegistry& b) {
  struct Row {
    std::string status, title;
    std::int64_t id_a, id_b;
    std::vector<std::string> fields;
  };
  std::vector<Row> rows;

  auto side = [](const JournalRecord* r) -> std::vector<std::string> {
    if (!r) return {"", "", ""};
    return {r->full_title, r->abbrev_title, join_issns(r->issns)};
  };
  auto lookup = [](const JournalRegistry& reg, std::int64_t id) -> const JournalRecord* {
    const auto p = reg.position_of(id);
    if (!p) throw ContractError("match table names unknown journal id " + std::to_string(id));
    return &reg.at(*p);
  };

  for (const auto& e : table.matches()) {
    const auto* ra = lookup(a, e.id_a);
    const auto* rb = lookup(b, e.id_b);
    std::vector<std::string> f{"matched"};
    for (auto& s : side(ra)) f.push_back(s);
    for (auto& s : side(rb)) f.push_back(s);
    f.push_back(to_string(e.method));
    f.push_back(format_fixed(e.similarity, 6));
    f.push_back(std::to_string(e.id_a));
    f.push_back(std::to_string(e.id_b));
    rows.push_back({"matched", ra->full_title, e.id_a, e.id_b, std::move(f)});
  }
  for (auto id : table.unmatched_a) {
    const auto* ra = lookup(a, id);
    std::vector<std::string> f{"unique_a"};
    for (auto& s : side(ra)) f.push_back(s);
    for (auto& s : side(nullptr)) f.push_back(s);
    f.insert(f.end(), {"", "", std::to_string(id), ""});
    rows.push_back({"unique_a", ra->full_title, id, 0, std::move(f)});
  }
  for (auto id : table.unmatched_b) {
    const auto* rb = lookup(b, id);
    std::vector<std::string> f{"unique_b"};
    for (auto& s : side(nullptr)) f.push_back(s);
    for (auto& s : side(rb)) f.push_back(s);
    f.insert(f.end(), {"", "", "", std::to_string(id)});
    rows.push_back({"unique_b", rb->full_title, 0, id, std::move(f)});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return std::tie(x.status, x.title, x.id_a, x.id_b) < std::tie(y.status, y.title, y.id_a, y.id_b);
  });

  std::string out = kMatchHeader;
  for (const auto& r : rows) out += csv_line(r.fields);
  return out;
}

std::string export_review_csv(const MatchTable& table, const JournalRegistry& a, const JournalRegistry& b) {
  std::string out = "id_a,title_a,id_b,title_b,similarity,reason\n";
  for (const auto& e : table.candidates()) {
    out += csv_line({std::to_string(e.id_a), a.at(*a.position_of(e.id_a)).full_title, std::to_string(e.id_b),
                     b.at(*b.position_of(e.id_b)).full_title, format_fixed(e.similarity, 6), e.note});
  }
  return out;
}

std::vector<MatchCsvRow> parse_match_csv(std::string_view text) {
  const auto rows = read_csv(strip_bom(text));
  if (rows.empty()) throw ParseError("match csv", 1, "missing header");
  const std::vector<std::string> expected = split(std::string_view(kMatchHeader).substr(0, std::string_view(kMatchHeader).size() - 1), ',');
  if (rows.front().fields != expected) throw ParseError("match csv", 1, "unexpected header");

  std::vector<MatchCsvRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i].fields;
    if (f.size() != expected.size()) throw ParseError("match csv", rows[i].line, "wrong number of fields");
    MatchCsvRow r;
    r.status = f[0];
    if (r.status != "matched" && r.status != "unique_a" && r.status != "unique_b")
      throw ParseError("match csv", rows[i].line, "unknown status '" + r.status + "'");
    r.title_a = f[1];
    r.abbrev_a = f[2];
    r.issns_a = f[3];
    r.title_b = f[4];
    r.abbrev_b = f[5];
    r.issns_b = f[6];
    if (!f[7].empty()) {
      r.method = match_method_from_string(f[7]);
      if (!r.method) throw ParseError("match csv", rows[i].line, "unknown method '" + f[7] + "'");
    }
    if (!f[8].empty()) r.similarity = parse_double(f[8]);
    if (!f[9].empty()) r.id_a = parse_int(f[9]);
    if (!f[10].empty()) r.id_b = parse_int(f[10]);
    if (r.status == "matched" && (!r.method || !r.id_a || !r.id_b))
      throw ParseError("match csv", rows[i].line, "matched row lacks method or ids");
    out.push_back(std::move(r));
  }
  return out;
}

std::map<MatchMethod, std::size_t> stage_counts_from(const std::vector<MatchCsvRow>& rows) {
  std::map<MatchMethod, std::size_t> counts;
  for (auto m : {MatchMethod::issn, MatchMethod::exact_title, MatchMethod::fuzzy_confirmed}) counts[m] = 0;
  for (const auto& r : rows)
    if (r.status == "matched" && r.method) ++counts[*r.method];
  return counts;
}

}  // namespace jmap
