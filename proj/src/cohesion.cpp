#include "pcddp/cohesion.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <string>

namespace pcddp {

void CohesionParams::validate() const {
  if (!(p > 0.0 && p < 1.0)) {
    throw ContractError("p must lie in (0, 1), got " + std::to_string(p));
  }
}

std::size_t required_degree(std::size_t degree, double p) {
  const double x = p * static_cast<double>(degree);
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-9) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(x));
}

namespace {

CohesionResult make_result(const Graph& g, VertexId q, VertexSet members, bool minimal) {
  CohesionResult r;
  r.query = q;
  r.is_minimal = minimal;
  if (members.size() >= 2) r.density = density(induced(g, members));
  r.members = std::move(members);
  return r;
}

// Growing vertex set plus, for every vertex of G, its number of neighbors
// inside the set. Scores read only these counters, so they are always
// current for the set as it stands.
class Expansion {
 public:
  Expansion(const Graph& g, VertexId q, double p)
      : g_(g), q_(q), p_(p), in_set_(g.num_vertices(), 0), inside_(g.num_vertices(), 0),
        q_adjacent_(g.num_vertices(), 0) {
    for (VertexId u : g.neighbors(q)) q_adjacent_[u] = 1;
  }

  void add(VertexId v) {
    assert(!in_set_[v]);
    in_set_[v] = 1;
    members_.push_back(v);
    for (VertexId u : g_.neighbors(v)) ++inside_[u];
  }

  bool contains(VertexId v) const { return in_set_[v] != 0; }
  std::size_t inside(VertexId v) const { return inside_[v]; }
  std::size_t required(VertexId v) const { return required_degree(g_.degree(v), p_); }
  std::size_t shortfall(VertexId v) const {
    auto need = required(v);
    return need > inside_[v] ? need - inside_[v] : 0;
  }

  double merit(VertexId w) const {
    const auto deg = static_cast<double>(g_.degree(w));
    std::size_t din = 0;
    std::size_t common = 0;
    std::size_t unsatisfied = 0;
    for (VertexId u : g_.neighbors(w)) {
      if (!in_set_[u]) continue;
      ++din;
      if (q_adjacent_[u]) ++common;
      if (inside_[u] < required(u)) ++unsatisfied;
    }
    return (static_cast<double>(din) / deg) * (static_cast<double>(common) / deg) *
           (static_cast<double>(unsatisfied) / deg);
  }

  double penalty(VertexId w) const {
    const auto l = shortfall(w);
    if (l == 0) return 0.0;
    const auto deg = static_cast<double>(g_.degree(w));
    std::vector<std::size_t> outside;
    outside.reserve(g_.degree(w));
    for (VertexId o : g_.neighbors(w)) {
      if (!in_set_[o]) outside.push_back(inside_[o]);
    }
    // Neighbors are visited in ascending id, so a stable descending sort
    // breaks ties by smaller id.
    std::stable_sort(outside.begin(), outside.end(), std::greater<>());
    std::size_t sum = 0;
    for (std::size_t i = 0; i < std::min(l, outside.size()); ++i) sum += outside[i];
    if (sum == 0) return deg;
    return (static_cast<double>(l) / deg) / (static_cast<double>(sum) / deg);
  }

  ScoreBreakdown score(VertexId w) const {
    assert(g_.degree(w) > 0);
    ScoreBreakdown s;
    s.merit = merit(w);
    s.penalty = penalty(w);
    s.total = s.merit - s.penalty;
    return s;
  }

  VertexSet members() const { return VertexSet(members_); }

 private:
  const Graph& g_;
  VertexId q_;
  double p_;
  std::vector<char> in_set_;
  std::vector<std::size_t> inside_;
  std::vector<char> q_adjacent_;
  std::vector<VertexId> members_;
};

Expansion expansion_from(const Graph& g, const VertexSet& vp, VertexId q, VertexId w,
                         const CohesionParams& params) {
  params.validate();
  vp.check_within(g.num_vertices());
  g.check_vertex(q);
  g.check_vertex(w);
  if (vp.contains(w)) {
    throw ContractError("candidate " + std::to_string(w) + " is already in the partial cohesion");
  }
  if (g.degree(w) == 0) {
    throw ContractError("candidate " + std::to_string(w) + " has no neighbors");
  }
  Expansion state(g, q, params.p);
  for (VertexId v : vp) state.add(v);
  return state;
}

}  // namespace

double merit(const Graph& g, const VertexSet& vp, VertexId q, VertexId w,
             const CohesionParams& params) {
  return expansion_from(g, vp, q, w, params).merit(w);
}

double penalty(const Graph& g, const VertexSet& vp, VertexId w, const CohesionParams& params) {
  // q only feeds the merit term; any valid id will do.
  return expansion_from(g, vp, w, w, params).penalty(w);
}

ScoreBreakdown score(const Graph& g, const VertexSet& vp, VertexId q, VertexId w,
                     const CohesionParams& params) {
  return expansion_from(g, vp, q, w, params).score(w);
}

CohesionResult expand(const Graph& g, VertexId q, const CohesionParams& params,
                      const ExpandOptions& options) {
  params.validate();
  g.check_vertex(q);

  Expansion state(g, q, params.p);
  state.add(q);
  std::vector<VertexId> queue{q};

  std::vector<double> scores;
  auto refresh_all = [&] {
    scores.assign(g.num_vertices(), 0.0);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (!state.contains(v) && g.degree(v) > 0) scores[v] = state.score(v).total;
    }
  };
  if (options.strict_refresh) refresh_all();

  struct Candidate {
    double score;
    VertexId id;
  };
  std::vector<Candidate> candidates;

  while (!queue.empty()) {
    // Highest inside-degree first, smaller id on ties.
    auto best = std::min_element(queue.begin(), queue.end(), [&](VertexId a, VertexId b) {
      if (state.inside(a) != state.inside(b)) return state.inside(a) > state.inside(b);
      return a < b;
    });
    const VertexId u = *best;
    queue.erase(best);

    const auto b = state.shortfall(u);
    if (b == 0) continue;

    candidates.clear();
    for (VertexId w : g.neighbors(u)) {
      if (state.contains(w)) continue;
      candidates.push_back({options.strict_refresh ? scores[w] : state.score(w).total, w});
    }
    assert(candidates.size() >= b);
    const auto take = std::min(b, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                      candidates.end(), [](const Candidate& x, const Candidate& y) {
                        if (x.score != y.score) return x.score > y.score;
                        return x.id < y.id;
                      });
    for (std::size_t i = 0; i < take; ++i) state.add(candidates[i].id);
    for (std::size_t i = 0; i < take; ++i) {
      const auto w = candidates[i].id;
      if (state.shortfall(w) > 0) queue.push_back(w);
    }
    if (options.strict_refresh) refresh_all();
  }

  return make_result(g, q, state.members(), false);
}

CohesionResult shrink(const Graph& g, const CohesionResult& cp, VertexId q,
                      const CohesionParams& params) {
  params.validate();
  if (!is_p_cohesion(g, cp.members, q, params)) {
    throw ContractError("shrink input is not a p-cohesion containing the query vertex");
  }

  // Work on local indices into the sorted member list.
  const auto members = cp.members.members();
  const std::size_t count = members.size();
  std::vector<std::vector<std::size_t>> adjacency(count);
  std::vector<std::size_t> required(count);
  for (std::size_t i = 0; i < count; ++i) {
    required[i] = required_degree(g.degree(members[i]), params.p);
    for (VertexId w : g.neighbors(members[i])) {
      auto it = std::lower_bound(members.begin(), members.end(), w);
      if (it != members.end() && *it == w) {
        adjacency[i].push_back(static_cast<std::size_t>(it - members.begin()));
      }
    }
  }

  enum Tag : std::uint8_t { kUntried = 0, kDeleted = 1, kMustKeep = 2 };
  std::vector<char> alive(count, 1);
  std::vector<std::size_t> inside(count);
  std::vector<Tag> tag(count, kUntried);
  for (std::size_t i = 0; i < count; ++i) inside[i] = adjacency[i].size();
  const auto q_index = static_cast<std::size_t>(
      std::lower_bound(members.begin(), members.end(), q) - members.begin());
  tag[q_index] = kMustKeep;

  struct Removal {
    std::size_t index;
    Tag previous;
  };
  std::vector<Removal> log;
  std::vector<std::size_t> pending;

  auto remove = [&](std::size_t i) {
    log.push_back({i, tag[i]});
    alive[i] = 0;
    tag[i] = kDeleted;
    for (auto j : adjacency[i]) {
      if (!alive[j]) continue;
      --inside[j];
      if (inside[j] < required[j]) pending.push_back(j);
    }
  };
  auto rollback = [&] {
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
      alive[it->index] = 1;
      tag[it->index] = it->previous;
      for (auto j : adjacency[it->index]) {
        if (alive[j]) ++inside[j];
      }
    }
  };

  bool untried = true;
  while (untried) {
    for (std::size_t v = 0; v < count; ++v) {
      if (tag[v] != kUntried) continue;
      log.clear();
      pending.clear();
      remove(v);
      bool hit_must_keep = false;
      while (!pending.empty() && !hit_must_keep) {
        auto u = pending.back();
        pending.pop_back();
        if (!alive[u] || inside[u] >= required[u]) continue;
        hit_must_keep = tag[u] == kMustKeep;
        remove(u);
      }
      if (hit_must_keep) {
        rollback();
        tag[v] = kMustKeep;
      }
    }
    untried = std::find(tag.begin(), tag.end(), kUntried) != tag.end();
  }

  std::vector<VertexId> kept;
  for (std::size_t i = 0; i < count; ++i) {
    if (alive[i]) kept.push_back(members[i]);
  }
  return make_result(g, q, VertexSet(std::move(kept)), true);
}

CohesionResult minimal_p_cohesion(const Graph& g, VertexId q, const CohesionParams& params,
                                  const ExpandOptions& options) {
  return shrink(g, expand(g, q, params, options), q, params);
}

CohesionResult elv(const Graph& g, VertexId q) {
  return make_result(g, q, two_hop_neighborhood(g, q), false);
}

bool satisfies_degree_ratio(const Graph& g, const VertexSet& s, const CohesionParams& params) {
  auto sub = induced(g, s);
  auto degrees = sub.local_degrees();
  std::size_t i = 0;
  for (VertexId v : s) {
    if (degrees[i++] < required_degree(g.degree(v), params.p)) return false;
  }
  return true;
}

bool is_p_cohesion(const Graph& g, const VertexSet& s, VertexId q, const CohesionParams& params) {
  return s.contains(q) && is_connected(g, s) && satisfies_degree_ratio(g, s, params);
}

std::vector<VertexSet> brute_force_minimal(const Graph& g, VertexId q,
                                           const CohesionParams& params) {
  params.validate();
  g.check_vertex(q);
  const auto n = g.num_vertices();
  if (n > 16) {
    throw ContractError("brute_force_minimal supports at most 16 vertices, got " +
                        std::to_string(n));
  }
  std::vector<std::uint32_t> adjacency(n, 0);
  std::vector<std::size_t> required(n);
  for (VertexId v = 0; v < n; ++v) {
    required[v] = required_degree(g.degree(v), params.p);
    for (VertexId w : g.neighbors(v)) adjacency[v] |= 1u << w;
  }
  auto connected = [&](std::uint32_t mask) {
    std::uint32_t seen = 1u << q;
    std::uint32_t frontier = seen;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) {
        next |= adjacency[static_cast<std::size_t>(std::countr_zero(f))];
      }
      next &= mask & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == mask;
  };
  auto valid = [&](std::uint32_t mask) {
    for (std::uint32_t m = mask; m; m &= m - 1) {
      auto v = static_cast<std::size_t>(std::countr_zero(m));
      if (static_cast<std::size_t>(std::popcount(adjacency[v] & mask)) < required[v]) return false;
    }
    return connected(mask);
  };

  std::vector<std::uint32_t> found;
  const std::uint32_t q_bit = 1u << q;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if ((mask & q_bit) && valid(mask)) found.push_back(mask);
  }
  std::stable_sort(found.begin(), found.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<std::uint32_t> minimal;
  for (auto mask : found) {
    bool dominated = std::any_of(minimal.begin(), minimal.end(),
                                 [&](std::uint32_t s) { return (mask & s) == s; });
    if (!dominated) minimal.push_back(mask);
  }

  std::vector<VertexSet> out;
  for (auto mask : minimal) {
    std::vector<VertexId> ids;
    for (std::uint32_t m = mask; m; m &= m - 1) ids.push_back(static_cast<VertexId>(std::countr_zero(m)));
    out.emplace_back(std::move(ids));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pcddp
