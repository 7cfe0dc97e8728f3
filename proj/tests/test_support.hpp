#pragma once

// Test-only graph generators and brute-force oracles. Nothing here calls
// into the library's algorithms; oracles work from adjacency matrices.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "pcddp/graph.hpp"

namespace pcddp::testing {

inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Erdős–Rényi G(n, prob) with a fixed seed.
inline Graph random_graph(std::size_t n, double prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (unit_uniform(rng) < prob) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (VertexId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, edges);
}

/// Dense adjacency matrix, the representation every oracle below uses.
class Matrix {
 public:
  explicit Matrix(const Graph& g) : n_(g.num_vertices()), bits_(n_ * n_, 0) {
    for (auto [u, v] : g.edges()) {
      bits_[u * n_ + v] = 1;
      bits_[v * n_ + u] = 1;
    }
  }
  std::size_t size() const { return n_; }
  bool adjacent(std::size_t u, std::size_t v) const { return bits_[u * n_ + v] != 0; }
  std::size_t degree(std::size_t v) const {
    std::size_t d = 0;
    for (std::size_t u = 0; u < n_; ++u) d += adjacent(v, u);
    return d;
  }

 private:
  std::size_t n_;
  std::vector<char> bits_;
};

/// ⌈tenths/10 · degree⌉ in exact integer arithmetic.
inline std::size_t required_tenths(std::size_t degree, unsigned tenths) {
  return (tenths * degree + 9) / 10;
}

/// Independent p-cohesion check: query membership, every member's degree
/// ratio, and connectivity by BFS over the matrix.
inline bool oracle_is_p_cohesion(const Matrix& a, const std::vector<VertexId>& members,
                                 VertexId q, unsigned p_tenths) {
  if (std::find(members.begin(), members.end(), q) == members.end()) return false;
  std::vector<char> in(a.size(), 0);
  for (auto v : members) in[v] = 1;
  for (auto v : members) {
    std::size_t local = 0;
    for (std::size_t u = 0; u < a.size(); ++u) local += in[u] && a.adjacent(v, u);
    if (local < required_tenths(a.degree(v), p_tenths)) return false;
  }
  std::vector<char> seen(a.size(), 0);
  std::vector<std::size_t> stack{q};
  seen[q] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (std::size_t u = 0; u < a.size(); ++u) {
      if (in[u] && !seen[u] && a.adjacent(v, u)) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == members.size();
}

/// True when some proper subset of `members` containing q is itself a
/// connected p-cohesion. Enumerates all 2^(|members|-1) subsets.
inline bool has_smaller_p_cohesion(const Matrix& a, const std::vector<VertexId>& members,
                                   VertexId q, unsigned p_tenths) {
  std::vector<VertexId> others;
  for (auto v : members) {
    if (v != q) others.push_back(v);
  }
  const std::uint64_t full = (std::uint64_t{1} << others.size()) - 1;
  for (std::uint64_t mask = 0; mask < full; ++mask) {
    std::vector<VertexId> subset{q};
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (mask >> i & 1) subset.push_back(others[i]);
    }
    if (oracle_is_p_cohesion(a, subset, q, p_tenths)) return true;
  }
  return false;
}

/// k-cliques through v by testing every (k-1)-subset of the other vertices.
inline std::uint64_t naive_cliques_at(const Matrix& a, std::size_t v, unsigned k,
                                      const std::vector<char>* region = nullptr) {
  std::vector<std::size_t> others;
  for (std::size_t u = 0; u < a.size(); ++u) {
    if (u != v && (!region || (*region)[u])) others.push_back(u);
  }
  const std::size_t r = k - 1;
  if (others.size() < r) return 0;
  std::vector<std::size_t> pick(r);
  std::iota(pick.begin(), pick.end(), 0);
  std::uint64_t count = 0;
  while (true) {
    bool clique = true;
    for (std::size_t i = 0; i < r && clique; ++i) {
      clique = a.adjacent(v, others[pick[i]]);
      for (std::size_t j = i + 1; j < r && clique; ++j) {
        clique = a.adjacent(others[pick[i]], others[pick[j]]);
      }
    }
    count += clique;
    // Next combination.
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == others.size() - r + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  return count;
}

/// Distinct triangles by iterating edges (u<v) and third vertices w>v.
inline std::uint64_t edge_iterator_triangles(const Matrix& a) {
  std::uint64_t t = 0;
  for (std::size_t u = 0; u < a.size(); ++u) {
    for (std::size_t v = u + 1; v < a.size(); ++v) {
      if (!a.adjacent(u, v)) continue;
      for (std::size_t w = v + 1; w < a.size(); ++w) t += a.adjacent(u, w) && a.adjacent(v, w);
    }
  }
  return t;
}

/// max over u ≠ v in region of common neighbors inside region, by scanning.
inline std::size_t pairwise_common_neighbors(const Matrix& a, std::size_t v,
                                             const std::vector<VertexId>& region) {
  std::size_t best = 0;
  for (auto u : region) {
    if (u == v) continue;
    std::size_t shared = 0;
    for (auto w : region) shared += a.adjacent(v, w) && a.adjacent(u, w);
    best = std::max(best, shared);
  }
  return best;
}

// --- exhaustive small connected graphs ------------------------------------

/// Canonical code of an n ≤ 8 vertex graph given as row bitmasks: the
/// minimum pair-bit encoding over all relabelings that respect a
/// degree-based vertex ordering.
inline std::uint32_t canonical_code(const std::vector<std::uint8_t>& rows) {
  const std::size_t n = rows.size();
  std::vector<int> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = __builtin_popcount(rows[v]);
  std::vector<std::pair<int, int>> key(n);
  for (std::size_t v = 0; v < n; ++v) {
    int neighbor_sum = 0;
    for (std::size_t u = 0; u < n; ++u) {
      if (rows[v] >> u & 1) neighbor_sum += deg[u];
    }
    key[v] = {-deg[v], -neighbor_sum};
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return key[a] < key[b]; });
  // Cells of equal key; permute within each cell.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && key[order[j]] == key[order[i]]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }
  std::uint32_t best = UINT32_MAX;
  auto encode = [&] {
    std::uint32_t code = 0;
    int bit = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j, ++bit) {
        if (rows[order[i]] >> order[j] & 1) code |= 1u << bit;
      }
    }
    return code;
  };
  auto recurse = [&](auto&& self, std::size_t cell) -> void {
    if (cell == cells.size()) {
      best = std::min(best, encode());
      return;
    }
    auto [lo, hi] = cells[cell];
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(hi));
    do {
      self(self, cell + 1);
    } while (std::next_permutation(order.begin() + static_cast<std::ptrdiff_t>(lo),
                                   order.begin() + static_cast<std::ptrdiff_t>(hi)));
  };
  recurse(recurse, 0);
  return best;
}

/// One representative per isomorphism class of connected graphs on exactly
/// `n` vertices, for n in [1, 8]. Every connected graph has a vertex whose
/// removal leaves it connected, so each level extends the previous one by a
/// vertex attached to a non-empty neighbor subset.
inline std::vector<std::vector<std::vector<std::uint8_t>>> connected_graphs_up_to(std::size_t max_n) {
  std::vector<std::vector<std::vector<std::uint8_t>>> levels(max_n + 1);
  levels[1].push_back({0});
  for (std::size_t n = 2; n <= max_n; ++n) {
    std::set<std::uint32_t> seen;
    for (const auto& base : levels[n - 1]) {
      for (std::uint32_t subset = 1; subset < (1u << (n - 1)); ++subset) {
        std::vector<std::uint8_t> rows(base);
        rows.push_back(static_cast<std::uint8_t>(subset));
        for (std::size_t u = 0; u + 1 < n; ++u) {
          if (subset >> u & 1) rows[u] |= static_cast<std::uint8_t>(1u << (n - 1));
        }
        if (seen.insert(canonical_code(rows)).second) levels[n].push_back(std::move(rows));
      }
    }
  }
  return levels;
}

inline Graph graph_from_rows(const std::vector<std::uint8_t>& rows) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < rows.size(); ++u) {
    for (VertexId v = u + 1; v < rows.size(); ++v) {
      if (rows[u] >> v & 1) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(rows.size(), edges);
}

inline std::vector<VertexId> as_vector(const VertexSet& s) {
  return {s.begin(), s.end()};
}

}  // namespace pcddp::testing
