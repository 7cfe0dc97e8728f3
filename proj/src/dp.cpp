#include "pcddp/dp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pcddp/counting.hpp"

namespace pcddp {

double sample_laplace(double scale, std::mt19937_64& rng) {
  if (scale < 0.0 || std::isnan(scale)) {
    throw ContractError("Laplace scale must be non-negative");
  }
  // Uniform on the open interval (0, 1) from the top 53 bits.
  const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  if (scale == 0.0) return 0.0;
  if (u < 0.5) return scale * std::log(2.0 * u);
  return -scale * std::log(2.0 * (1.0 - u));
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SeededNoise::laplace(VertexId v, NoiseStage stage, double scale) const {
  std::mt19937_64 rng(mix_seed(mix_seed(seed_, v), static_cast<std::uint64_t>(stage)));
  return sample_laplace(scale, rng);
}

double ZeroNoise::laplace(VertexId, NoiseStage, double scale) const {
  if (scale < 0.0) throw ContractError("Laplace scale must be non-negative");
  return 0.0;
}

double ScriptedNoise::laplace(VertexId v, NoiseStage stage, double scale) const {
  if (scale < 0.0) throw ContractError("Laplace scale must be non-negative");
  auto it = draws_.find({v, stage});
  return it == draws_.end() ? 0.0 : it->second * scale;
}

// --- budget ---------------------------------------------------------------

PrivacyParams PrivacyParams::with_defaults(double epsilon, double delta, unsigned h, unsigned k) {
  PrivacyParams p;
  p.epsilon = epsilon;
  p.epsilon1 = 0.1 * epsilon;
  p.delta = delta;
  p.h = h;
  p.k = k;
  return p;
}

double PrivacyParams::offset(double scale) const {
  return scale * std::log(1.0 / (2.0 * delta_prime()));
}

void PrivacyParams::validate() const {
  if (!(epsilon > 0.0) || std::isinf(epsilon)) {
    throw BudgetError("epsilon must be positive and finite");
  }
  if (!(epsilon1 > 0.0)) throw BudgetError("epsilon1 must be positive");
  if (!(epsilon1 < epsilon)) {
    throw BudgetError("epsilon1 must be below epsilon so that epsilon2 = epsilon - epsilon1 > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw BudgetError("delta must lie in (0, 1)");
  if (h < 1) throw ContractError("h must be at least 1");
  if (k < kMinCliqueOrder || k > kMaxCliqueOrder) {
    throw ContractError("clique order k must lie in [3, 6]");
  }
}

BudgetReport budget_check(const PrivacyParams& params) {
  params.validate();
  BudgetReport r;
  r.epsilon = params.epsilon;
  r.epsilon1 = params.epsilon1;
  r.epsilon2 = params.epsilon2();
  r.delta = params.delta;
  if (r.epsilon1 + r.epsilon2 > r.epsilon * (1.0 + 1e-12)) {
    throw BudgetError("phase budgets exceed the total epsilon");
  }
  std::ostringstream claim;
  claim << "(" << r.epsilon1 + r.epsilon2 << ", " << r.delta << ")-DDP";
  r.claim = claim.str();
  return r;
}

double floor_binomial(double x, unsigned r) {
  if (std::isnan(x)) throw ContractError("binomial argument is NaN");
  const double n = std::floor(x);
  if (n < static_cast<double>(r)) return 0.0;
  double result = 1.0;
  for (unsigned i = 0; i < r; ++i) {
    result = result * (n - static_cast<double>(i)) / static_cast<double>(i + 1);
  }
  return result;
}

// --- phases ---------------------------------------------------------------

Phase1Outcome phase1(const Graph& g, std::span<const VertexSet> regions,
                     const PrivacyParams& params, const NoiseSource& noise) {
  params.validate();
  const auto n = g.num_vertices();
  if (n == 0) throw ContractError("phase1 requires a non-empty graph");
  if (regions.size() != n) throw ContractError("phase1 needs exactly one region per vertex");

  const double lambda_d = params.lambda_degree();
  const double lambda_c = params.lambda_common();
  const double offset_d = params.offset(lambda_d);
  const double offset_c = params.offset(lambda_c);

  Phase1Outcome out;
  out.upper_bounds.resize(n);
  // Client side: noisy degree inside the region.
  for (VertexId v = 0; v < n; ++v) {
    const auto& region = regions[v];
    if (!region.contains(v)) throw ContractError("region does not contain its vertex");
    const auto local = static_cast<double>(induced(g, region).local_degree(v));
    out.upper_bounds[v] =
        local + noise.laplace(v, NoiseStage::kDegreeBound, lambda_d) + offset_d;
  }

  // Server side: the h largest bounds (smaller id on ties) are refined.
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  const auto top = std::min<std::size_t>(params.h, n);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                    [&](VertexId a, VertexId b) {
                      if (out.upper_bounds[a] != out.upper_bounds[b]) {
                        return out.upper_bounds[a] > out.upper_bounds[b];
                      }
                      return a < b;
                    });
  out.top_set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top));

  for (VertexId v : out.top_set) {
    const auto cn = static_cast<double>(max_common_neighbors_in(g, v, regions[v]));
    const double cn_star = cn + noise.laplace(v, NoiseStage::kCommonNeighbor, lambda_c) + offset_c;
    out.upper_bounds[v] = std::min(cn_star, out.upper_bounds[v]);
  }

  out.max_upper_bound = *std::max_element(out.upper_bounds.begin(), out.upper_bounds.end());
  out.ls_estimate = static_cast<double>(params.k) * floor_binomial(out.max_upper_bound, params.k - 2);
  out.noise_scale = out.ls_estimate / params.epsilon2();
  out.zero_sensitivity = out.ls_estimate == 0.0;
  return out;
}

std::vector<PerturbedResponse> phase2(std::span<const CliqueCounts> counts, double noise_scale,
                                      const NoiseSource& noise) {
  if (noise_scale < 0.0 || std::isnan(noise_scale)) {
    throw ContractError("noise scale must be non-negative");
  }
  std::vector<PerturbedResponse> out;
  out.reserve(counts.size());
  for (const auto& c : counts) {
    PerturbedResponse r;
    r.vertex = c.vertex;
    r.true_total = c.total;
    r.reported = static_cast<double>(c.inside) +
                 noise.laplace(c.vertex, NoiseStage::kRelease, noise_scale) +
                 static_cast<double>(c.outside);
    out.push_back(r);
  }
  return out;
}

double lambda_for_k4(double lambda3) {
  if (lambda3 < 0.0 || std::isnan(lambda3)) {
    throw ContractError("lambda must be non-negative");
  }
  return lambda3 * 4.0 / 3.0;
}

}  // namespace pcddp
