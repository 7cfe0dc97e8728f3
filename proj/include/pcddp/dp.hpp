#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "pcddp/counting.hpp"
#include "pcddp/graph.hpp"

namespace pcddp {

/// Refusal to run because the privacy budget is inconsistent.
class BudgetError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// One draw from Laplace(0, scale) by inverse-CDF sampling. scale == 0
/// returns exactly 0; negative scales throw ContractError.
double sample_laplace(double scale, std::mt19937_64& rng);

/// splitmix64 finalizer, used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

enum class NoiseStage : std::uint8_t {
  kDegreeBound = 1,     // Phase-1 degree report
  kCommonNeighbor = 2,  // Phase-1 refined common-neighbor report
  kRelease = 3,         // Phase-2 perturbed count
};

/// Source of the Laplace draws each participant makes. Every (vertex, stage)
/// pair draws at most once per protocol run, so a draw is a pure function of
/// its key and parallel execution cannot reorder the noise.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual double laplace(VertexId v, NoiseStage stage, double scale) const = 0;
};

/// Seeded per-(vertex, stage) substreams.
class SeededNoise final : public NoiseSource {
 public:
  explicit SeededNoise(std::uint64_t seed) : seed_(seed) {}
  double laplace(VertexId v, NoiseStage stage, double scale) const override;
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Test hook: every draw is 0.
class ZeroNoise final : public NoiseSource {
 public:
  double laplace(VertexId, NoiseStage, double scale) const override;
};

/// Test hook: replays scripted unit-scale draws (multiplied by the requested
/// scale); unscripted keys draw 0.
class ScriptedNoise final : public NoiseSource {
 public:
  void set(VertexId v, NoiseStage stage, double unit_draw) { draws_[{v, stage}] = unit_draw; }
  double laplace(VertexId v, NoiseStage stage, double scale) const override;

 private:
  std::map<std::pair<VertexId, NoiseStage>, double> draws_;
};

struct PrivacyParams {
  double epsilon = 1.0;
  double epsilon1 = 0.1;
  double delta = 0.01;
  unsigned h = 3;
  unsigned k = 3;

  /// ε₁ defaults to 0.1·ε.
  static PrivacyParams with_defaults(double epsilon, double delta, unsigned h, unsigned k);

  double epsilon2() const noexcept { return epsilon - epsilon1; }
  double lambda_degree() const noexcept { return 2.0 / (0.5 * epsilon1); }
  double lambda_common() const noexcept { return static_cast<double>(h) / (0.5 * epsilon1); }
  double delta_prime() const noexcept { return delta / (2.0 * h + 2.0); }
  /// λ·ln(1/(2δ′)) for the given scale.
  double offset(double scale) const;

  /// Throws BudgetError (ε₁ ∉ (0, ε), δ ∉ (0,1)) or ContractError.
  void validate() const;
};

/// The composed guarantee attached to every experiment output.
struct BudgetReport {
  double epsilon = 0.0;
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
  double delta = 0.0;
  std::string claim;
};

/// Refuses (BudgetError) on any overdraw; otherwise reports the
/// (ε₁+ε₂, δ) guarantee.
BudgetReport budget_check(const PrivacyParams& params);

/// C(⌊x⌋, r), 0 when ⌊x⌋ < r.
double floor_binomial(double x, unsigned r);

struct Phase1Outcome {
  std::vector<double> upper_bounds;
  std::vector<VertexId> top_set;
  double max_upper_bound = 0.0;
  double ls_estimate = 0.0;
  double noise_scale = 0.0;
  /// Set when LS~ collapsed to 0, so Phase-2 adds no noise at all.
  bool zero_sensitivity = false;
};

/// Noise-scale estimation. `regions[v]` is v's protection region.
Phase1Outcome phase1(const Graph& g, std::span<const VertexSet> regions,
                     const PrivacyParams& params, const NoiseSource& noise);

struct PerturbedResponse {
  VertexId vertex = 0;
  double reported = 0.0;
  std::uint64_t true_total = 0;
};

/// Each participant perturbs only its inside count: inside + Lap(λ) + outside.
std::vector<PerturbedResponse> phase2(std::span<const CliqueCounts> counts, double noise_scale,
                                      const NoiseSource& noise);

/// λ₄ = (4/3)·λ₃.
double lambda_for_k4(double lambda3);

}  // namespace pcddp
