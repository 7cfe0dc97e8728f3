#include "pcddp/counting.hpp"

#include <algorithm>
#include <iterator>
#include <string>
#include <vector>

namespace pcddp {

namespace {

void check_order(unsigned k) {
  if (k < kMinCliqueOrder || k > kMaxCliqueOrder) {
    throw ContractError("clique order must lie in [" + std::to_string(kMinCliqueOrder) + ", " +
                        std::to_string(kMaxCliqueOrder) + "], got " + std::to_string(k));
  }
}

std::vector<VertexId> intersect(std::span<const VertexId> a, std::span<const VertexId> b) {
  std::vector<VertexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Counts `depth`-cliques within the sorted candidate list, each clique
// enumerated once in ascending id order.
std::uint64_t count_within(const Graph& g, std::span<const VertexId> candidates, unsigned depth) {
  if (depth == 0) return 1;
  if (depth == 1) return candidates.size();
  if (candidates.size() < depth) return 0;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i + depth <= candidates.size(); ++i) {
    auto later = candidates.subspan(i + 1);
    auto next = intersect(later, g.neighbors(candidates[i]));
    if (depth == 2) {
      total += next.size();
    } else {
      total += count_within(g, next, depth - 1);
    }
  }
  return total;
}

}  // namespace

std::uint64_t count_cliques_at(const Graph& g, VertexId v, unsigned k) {
  check_order(k);
  return count_within(g, g.neighbors(v), k - 1);
}

CliqueCounts split_counts(const Graph& g, VertexId v, const VertexSet& region, unsigned k) {
  check_order(k);
  region.check_within(g.num_vertices());
  if (!region.contains(v)) {
    throw ContractError("vertex " + std::to_string(v) + " is not in its region");
  }
  CliqueCounts c;
  c.vertex = v;
  c.k = k;
  c.total = count_cliques_at(g, v, k);
  // Restricting the first candidate list to the region suffices: every
  // deeper list is a subset of it.
  auto local = intersect(g.neighbors(v), region.members());
  c.inside = count_within(g, local, k - 1);
  c.outside = c.total - c.inside;
  return c;
}

std::size_t max_common_neighbors_in(const Graph& g, VertexId v, const VertexSet& region) {
  region.check_within(g.num_vertices());
  if (!region.contains(v)) {
    throw ContractError("vertex " + std::to_string(v) + " is not in its region");
  }
  auto local = intersect(g.neighbors(v), region.members());
  std::size_t best = 0;
  for (VertexId u : region) {
    if (u == v) continue;
    auto nu = g.neighbors(u);
    std::size_t shared = 0;
    auto a = local.begin();
    auto b = nu.begin();
    while (a != local.end() && b != nu.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++shared;
        ++a;
        ++b;
      }
    }
    best = std::max(best, shared);
  }
  return best;
}

std::uint64_t total_count_report(std::span<const CliqueCounts> counts, unsigned k) {
  check_order(k);
  std::uint64_t sum = 0;
  for (const auto& c : counts) {
    if (c.k != k) {
      throw ContractError("clique counts mix orders " + std::to_string(c.k) + " and " +
                          std::to_string(k));
    }
    sum += c.total;
  }
  return sum;
}

}  // namespace pcddp
