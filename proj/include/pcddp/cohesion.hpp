#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pcddp/graph.hpp"

namespace pcddp {

/// Fraction of each member's global neighbors that must stay inside a
/// p-cohesion. Valid range is the open interval (0, 1).
struct CohesionParams {
  double p = 0.1;

  /// Throws ContractError when p is outside (0, 1).
  void validate() const;
};

/// ⌈p · degree⌉, with products that land within 1e-9 of an integer snapped
/// to it so that e.g. 0.3 · 10 yields 3 rather than 4.
std::size_t required_degree(std::size_t degree, double p);

struct CohesionResult {
  VertexId query = 0;
  VertexSet members;
  bool is_minimal = false;
  /// Absent for singleton results, where density is undefined.
  std::optional<double> density;

  std::size_t size() const noexcept { return members.size(); }
};

struct ScoreBreakdown {
  double merit = 0.0;
  double penalty = 0.0;
  double total = 0.0;
};

/// Merit of adding `w` to the partial cohesion `vp` grown from `q`:
/// (deg_in(w)/deg(w)) · (|common neighbors with q in vp|/deg(w)) ·
/// (|neighbors of w in vp still short of their requirement|/deg(w)).
double merit(const Graph& g, const VertexSet& vp, VertexId q, VertexId w,
             const CohesionParams& params);

/// Penalty of adding `w`: l / Σ deg_in(o_i) over the l best-connected
/// outside neighbors o_i, where l is w's remaining shortfall. Zero when w is
/// already satisfied; deg(w) when the sum is zero.
double penalty(const Graph& g, const VertexSet& vp, VertexId w, const CohesionParams& params);

ScoreBreakdown score(const Graph& g, const VertexSet& vp, VertexId q, VertexId w,
                     const CohesionParams& params);

struct ExpandOptions {
  /// Recompute every outside vertex's score after each round instead of
  /// scoring candidates on demand. Produces identical output; kept for
  /// differential testing.
  bool strict_refresh = false;
};

/// Greedy bottom-up growth of a p-cohesion around `q`.
CohesionResult expand(const Graph& g, VertexId q, const CohesionParams& params,
                      const ExpandOptions& options = {});

/// Strips redundant members from the p-cohesion `cp` until no member other
/// than those whose deletion would cascade into removing `q` remains.
CohesionResult shrink(const Graph& g, const CohesionResult& cp, VertexId q,
                      const CohesionParams& params);

CohesionResult minimal_p_cohesion(const Graph& g, VertexId q, const CohesionParams& params,
                                  const ExpandOptions& options = {});

/// Two-hop extended local view baseline.
CohesionResult elv(const Graph& g, VertexId q);

/// True when every member v has deg(v, G(s)) ≥ ⌈p·deg(v, G)⌉.
bool satisfies_degree_ratio(const Graph& g, const VertexSet& s, const CohesionParams& params);

/// Degree ratio, connectivity, and membership of q.
bool is_p_cohesion(const Graph& g, const VertexSet& s, VertexId q, const CohesionParams& params);

/// Every inclusion-minimal connected p-cohesion containing q, found by
/// exhaustive subset enumeration. Refuses graphs with more than 16 vertices.
std::vector<VertexSet> brute_force_minimal(const Graph& g, VertexId q,
                                           const CohesionParams& params);

}  // namespace pcddp
