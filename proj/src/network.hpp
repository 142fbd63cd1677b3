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

#pragma once

#include "errors.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace jmap {

using NodeId = std::uint32_t;

/// One cell of the aggregated citing x cited matrix.
struct Edge {
  NodeId citing = 0;
  NodeId cited = 0;
  std::uint64_t count = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Sparse directed weighted journal-journal citation network. Journal
/// self-citations sit on the diagonal while `loops_included()` holds.
///
/// Edges are kept sorted by (citing, cited) with duplicates summed, so two
/// networks built from the same multiset of cells compare equal.
class CitationNetwork {
 public:
  CitationNetwork() = default;
  /// Throws ContractError for counts of zero or endpoints outside [0, n).
  CitationNetwork(std::size_t n, std::vector<Edge> edges, bool loops_included = true);

  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool loops_included() const noexcept { return loops_included_; }

  std::uint64_t total_citations() const noexcept;
  std::uint64_t self_citations() const noexcept;

  friend bool operator==(const CitationNetwork&, const CitationNetwork&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  bool loops_included_ = true;
};

CitationNetwork filter_min_weight(const CitationNetwork& network, std::uint64_t min_count);

struct LoopRemoval {
  CitationNetwork network;
  std::uint64_t removed = 0;  // citations on the removed diagonal
};
LoopRemoval remove_self_loops(const CitationNetwork& network);

/// Distinct citing journals per node, diagonal excluded.
std::vector<std::uint64_t> indegree(const CitationNetwork& network);
/// Citations received per node; the diagonal counts when `include_loops`.
std::vector<std::uint64_t> weighted_indegree(const CitationNetwork& network, bool include_loops);

/// L / (n (n - 1)); 0 for n < 2.
double density(std::uint64_t n, std::uint64_t links);

/// Row set of the network-comparison table. Density, degrees, centralization,
/// components and isolates ignore the diagonal; citation totals do not.
struct NetworkStats {
  std::size_t n_journals = 0;
  std::size_t n_links = 0;
  std::uint64_t sum_citations = 0;
  std::uint64_t self_citations = 0;
  double density = 0;
  double avg_indegree = 0;
  double indegree_centralization = 0;
  std::size_t n_weak_components = 0;
  double largest_component_share = 0;
  std::size_t n_isolates = 0;
  double avg_citations_received = 0;
};

NetworkStats network_stats(const CitationNetwork& network, Diagnostics* diag = nullptr);

struct Subnetwork {
  CitationNetwork network;
  std::vector<NodeId> original_ids;  // new id -> id in the parent network
};

/// Keeps edges with both endpoints in `nodes`; new ids follow ascending
/// original id.
Subnetwork induced_subnetwork(const CitationNetwork& network, std::span<const NodeId> nodes,
                              Diagnostics* diag = nullptr);

/// Citation totals between shared and unique journals, citing -> cited.
struct FlowSummary {
  std::uint64_t shared_to_shared = 0;
  std::uint64_t shared_to_unique = 0;
  std::uint64_t unique_to_shared = 0;
  std::uint64_t unique_to_unique = 0;

  std::uint64_t total() const noexcept {
    return shared_to_shared + shared_to_unique + unique_to_shared + unique_to_unique;
  }
  double share(std::uint64_t cell) const noexcept {
    const auto t = total();
    return t ? static_cast<double>(cell) / static_cast<double>(t) : 0.0;
  }
};

/// `shared` and `unique` must partition the node set (ContractError otherwise).
FlowSummary cross_flows(const CitationNetwork& network, std::span<const NodeId> shared,
                        std::span<const NodeId> unique);

/// Ranks with ties receiving the mean of the positions they span. Rank 1 goes
/// to the smallest value unless `descending`.
std::vector<double> average_ranks(std::span<const double> values, bool descending = false);

struct Correlation {
  double value = 0;
  std::string error;  // non-empty when the coefficient is undefined
  bool ok() const noexcept { return error.empty(); }
};

/// Pearson correlation of average ranks. Throws ContractError for length
/// mismatch or fewer than two observations.
Correlation spearman_rho(std::span<const double> x, std::span<const double> y);

struct RankRow {
  std::int64_t journal_id = 0;
  std::string journal;
  double metric_a = 0;
  double metric_b = 0;
  double rank_a = 0;
  double rank_b = 0;
  double abs_diff = 0;
};

/// All rows, sorted by |rank_a - rank_b| descending then journal id. Ranks are
/// descending (rank 1 = largest metric) with average ranks for ties.
std::vector<RankRow> rank_difference_table(std::span<const std::int64_t> journal_ids,
                                           std::span<const std::string> journals,
                                           std::span<const double> metric_a,
                                           std::span<const double> metric_b);

}  // namespace jmap
