#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "pcddp/graph.hpp"

namespace pcddp {

inline constexpr unsigned kMinCliqueOrder = 3;
inline constexpr unsigned kMaxCliqueOrder = 6;

/// Per-vertex k-clique tallies split by whether the whole clique lies
/// inside the vertex's protection region.
struct CliqueCounts {
  VertexId vertex = 0;
  unsigned k = 3;
  std::uint64_t total = 0;
  std::uint64_t inside = 0;
  std::uint64_t outside = 0;
};

/// Number of k-cliques of G containing v. k must lie in [3, 6].
std::uint64_t count_cliques_at(const Graph& g, VertexId v, unsigned k);

/// Splits the k-cliques through v into those entirely within `region` and
/// the rest. v must belong to `region`.
CliqueCounts split_counts(const Graph& g, VertexId v, const VertexSet& region, unsigned k);

/// max over u ∈ region∖{v} of |N(v) ∩ N(u) ∩ region|; 0 for a singleton region.
std::size_t max_common_neighbors_in(const Graph& g, VertexId v, const VertexSet& region);

/// Σ_v total(v). Every k-clique appears once per member, so the sum is k
/// times the number of distinct k-cliques when one entry per vertex is given.
std::uint64_t total_count_report(std::span<const CliqueCounts> counts, unsigned k);

}  // namespace pcddp
