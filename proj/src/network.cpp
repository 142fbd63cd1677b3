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

#include "network.hpp"

#include "union_find.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace jmap {

CitationNetwork::CitationNetwork(std::size_t n, std::vector<Edge> edges, bool loops_included)
    : n_(n), loops_included_(loops_included) {
  for (const auto& e : edges) {
    if (e.count == 0) throw ContractError("citation count must be >= 1");
    if (e.citing >= n || e.cited >= n)
      throw ContractError("edge endpoint outside [0, " + std::to_string(n) + ")");
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.citing, a.cited) < std::tie(b.citing, b.cited);
  });
  for (const auto& e : edges) {
    if (!edges_.empty() && edges_.back().citing == e.citing && edges_.back().cited == e.cited)
      edges_.back().count += e.count;
    else
      edges_.push_back(e);
  }
  if (!loops_included_) {
    std::erase_if(edges_, [](const Edge& e) { return e.citing == e.cited; });
  }
}

std::uint64_t CitationNetwork::total_citations() const noexcept {
  std::uint64_t t = 0;
  for (const auto& e : edges_) t += e.count;
  return t;
}

std::uint64_t CitationNetwork::self_citations() const noexcept {
  std::uint64_t t = 0;
  for (const auto& e : edges_)
    if (e.citing == e.cited) t += e.count;
  return t;
}

CitationNetwork filter_min_weight(const CitationNetwork& network, std::uint64_t min_count) {
  if (min_count < 1) throw ContractError("minimum edge weight must be >= 1");
  std::vector<Edge> kept;
  kept.reserve(network.edges().size());
  for (const auto& e : network.edges())
    if (e.count >= min_count) kept.push_back(e);
  return CitationNetwork(network.size(), std::move(kept), network.loops_included());
}

LoopRemoval remove_self_loops(const CitationNetwork& network) {
  LoopRemoval out;
  out.removed = network.self_citations();
  out.network = CitationNetwork(network.size(), network.edges(), false);
  return out;
}

std::vector<std::uint64_t> indegree(const CitationNetwork& network) {
  std::vector<std::uint64_t> deg(network.size(), 0);
  for (const auto& e : network.edges())
    if (e.citing != e.cited) ++deg[e.cited];
  return deg;
}

std::vector<std::uint64_t> weighted_indegree(const CitationNetwork& network, bool include_loops) {
  std::vector<std::uint64_t> deg(network.size(), 0);
  for (const auto& e : network.edges())
    if (include_loops || e.citing != e.cited) deg[e.cited] += e.count;
  return deg;
}

double density(std::uint64_t n, std::uint64_t links) {
  if (n < 2) return 0.0;
  return static_cast<double>(links) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

NetworkStats network_stats(const CitationNetwork& network, Diagnostics* diag) {
  NetworkStats s;
  const std::size_t n = network.size();
  s.n_journals = n;
  s.sum_citations = network.total_citations();
  s.self_citations = network.self_citations();

  DisjointSets sets(n);
  std::vector<bool> touched(n, false);
  for (const auto& e : network.edges()) {
    if (e.citing == e.cited) continue;
    ++s.n_links;
    sets.unite(e.citing, e.cited);
    touched[e.citing] = touched[e.cited] = true;
  }

  s.density = density(n, s.n_links);
  if (n > 0) {
    s.avg_indegree = static_cast<double>(s.n_links) / static_cast<double>(n);
    s.avg_citations_received = static_cast<double>(s.sum_citations) / static_cast<double>(n);
  }

  if (n < 2) {
    warn(diag, "indegree centralization undefined for fewer than 2 journals; reported as 0");
  } else {
    const auto deg = indegree(network);
    const auto max_deg = *std::max_element(deg.begin(), deg.end());
    std::uint64_t variation = 0;
    for (auto d : deg) variation += max_deg - d;
    const double denom = static_cast<double>(n - 1) * static_cast<double>(n - 1);
    s.indegree_centralization = static_cast<double>(variation) / denom;
  }

  std::vector<std::size_t> component_size(n, 0);
  for (std::size_t v = 0; v < n; ++v) ++component_size[sets.find(v)];
  std::size_t largest = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (component_size[v] > 0) ++s.n_weak_components;
    largest = std::max(largest, component_size[v]);
    if (!touched[v]) ++s.n_isolates;
  }
  if (n > 0) s.largest_component_share = static_cast<double>(largest) / static_cast<double>(n);
  return s;
}

Subnetwork induced_subnetwork(const CitationNetwork& network, std::span<const NodeId> nodes,
                              Diagnostics* diag) {
  constexpr auto absent = static_cast<NodeId>(-1);
  std::vector<NodeId> remap(network.size(), absent);
  for (auto v : nodes) {
    if (v >= network.size()) throw ContractError("node set not contained in [0, n)");
    remap[v] = 0;
  }
  Subnetwork out;
  for (std::size_t v = 0; v < network.size(); ++v) {
    if (remap[v] == absent) continue;
    remap[v] = static_cast<NodeId>(out.original_ids.size());
    out.original_ids.push_back(static_cast<NodeId>(v));
  }
  if (out.original_ids.empty()) warn(diag, "induced subnetwork of an empty node set");

  std::vector<Edge> edges;
  for (const auto& e : network.edges()) {
    if (remap[e.citing] == absent || remap[e.cited] == absent) continue;
    edges.push_back({remap[e.citing], remap[e.cited], e.count});
  }
  out.network = CitationNetwork(out.original_ids.size(), std::move(edges), network.loops_included());
  return out;
}

FlowSummary cross_flows(const CitationNetwork& network, std::span<const NodeId> shared,
                        std::span<const NodeId> unique) {
  enum : std::uint8_t { unassigned, is_shared, is_unique };
  std::vector<std::uint8_t> side(network.size(), unassigned);
  auto assign = [&](std::span<const NodeId> set, std::uint8_t tag) {
    for (auto v : set) {
      if (v >= network.size()) throw ContractError("flow partition names a node outside [0, n)");
      if (side[v] != unassigned) throw ContractError("shared and unique sets overlap at node " + std::to_string(v));
      side[v] = tag;
    }
  };
  assign(shared, is_shared);
  assign(unique, is_unique);
  if (std::find(side.begin(), side.end(), unassigned) != side.end())
    throw ContractError("shared and unique sets do not cover every node");

  FlowSummary f;
  for (const auto& e : network.edges()) {
    const bool from_shared = side[e.citing] == is_shared;
    const bool to_shared = side[e.cited] == is_shared;
    if (from_shared && to_shared) f.shared_to_shared += e.count;
    else if (from_shared) f.shared_to_unique += e.count;
    else if (to_shared) f.unique_to_shared += e.count;
    else f.unique_to_unique += e.count;
  }
  return f;
}

std::vector<double> average_ranks(std::span<const double> values, bool descending) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? values[a] > values[b] : values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double mean = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mean;
    i = j;
  }
  return ranks;
}

Correlation spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractError("spearman_rho: vectors differ in length");
  if (x.size() < 2) throw ContractError("spearman_rho: need at least two observations");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(rx.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mx, dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  Correlation c;
  if (sxx == 0.0 || syy == 0.0) {
    c.value = std::nan("");
    c.error = "spearman_rho undefined: zero variance in ranked values";
    return c;
  }
  c.value = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return c;
}

std::vector<RankRow> rank_difference_table(std::span<const std::int64_t> journal_ids,
                                           std::span<const std::string> journals,
                                           std::span<const double> metric_a,
                                           std::span<const double> metric_b) {
  const auto n = journal_ids.size();
  if (journals.size() != n || metric_a.size() != n || metric_b.size() != n)
    throw ContractError("rank_difference_table: input lengths differ");
  const auto ra = average_ranks(metric_a, true);
  const auto rb = average_ranks(metric_b, true);
  std::vector<RankRow> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i] = {journal_ids[i], journals[i], metric_a[i], metric_b[i], ra[i], rb[i],
               std::abs(ra[i] - rb[i])};
  }
  std::sort(rows.begin(), rows.end(), [](const RankRow& a, const RankRow& b) {
    if (a.abs_diff != b.abs_diff) return a.abs_diff > b.abs_diff;
    return a.journal_id < b.journal_id;
  });
  return rows;
}

}  // namespace jmap
