#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pcddp/cohesion.hpp"
#include "pcddp/counting.hpp"
#include "pcddp/dp.hpp"
#include "pcddp/graph.hpp"

namespace pcddp {

enum class RegionMethod { kPCohesion, kElv };

std::string to_string(RegionMethod m);
/// Accepts "p-cohesion" and "elv".
RegionMethod parse_region_method(const std::string& name);

struct ExperimentConfig {
  std::string dataset;
  RegionMethod method = RegionMethod::kPCohesion;
  double p = 0.1;
  double epsilon = 10.0;
  /// Defaults to 0.1·ε.
  std::optional<double> epsilon1;
  /// Defaults to 1/n.
  std::optional<double> delta;
  unsigned h = 3;
  unsigned k = 3;
  unsigned runs = 100;
  std::uint64_t seed = 1;
  std::string output;
  /// Draw Phase-1 once and reuse its λ across runs.
  bool freeze_phase1 = false;
  bool strict_refresh = false;
  unsigned threads = 1;

  /// Throws ContractError on any out-of-range field.
  void validate() const;
  PrivacyParams privacy(std::size_t num_vertices) const;
  /// Seed of this configuration's noise, derived from the master seed and
  /// the parameters that shape the output; independent of grid position.
  std::uint64_t point_seed() const;
};

/// Runs fn(i) for i in [0, count) over `threads` workers. Each index is
/// handled exactly once; fn must only write to slots owned by its index.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

std::vector<CohesionResult> extract_regions(const Graph& g, RegionMethod method,
                                            const CohesionParams& params,
                                            const ExpandOptions& options = {},
                                            unsigned threads = 1);

std::vector<CliqueCounts> count_all(const Graph& g, std::span<const VertexSet> regions, unsigned k,
                                    unsigned threads = 1);

struct Quantiles {
  double min = 0.0;
  double p25 = 0.0;
  double median = 0.0;
  double p75 = 0.0;
  double max = 0.0;
};

/// Linear-interpolation quantiles of a non-empty sample.
Quantiles quantiles(std::vector<double> values);

struct DistributionSummary {
  std::size_t regions = 0;
  std::size_t singletons = 0;
  Quantiles size;
  /// Over non-singleton regions only; absent when every region is a singleton.
  std::optional<Quantiles> density;
  std::vector<std::size_t> sizes;
  std::vector<std::optional<double>> densities;
};

DistributionSummary stats_report(const Graph& g, std::span<const CohesionResult> regions);

struct RunRecord {
  unsigned run = 0;
  double reported = 0.0;
  std::uint64_t truth = 0;
  double noise_scale = 0.0;
  double mre = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  BudgetReport budget;
  std::uint64_t truth = 0;
  std::vector<RunRecord> runs;
  double mean_mre = 0.0;
  /// True when the truth is 0 and the mre column holds absolute error.
  bool absolute_error = false;
  /// Some run released counts without noise because LS~ was 0.
  bool zero_sensitivity = false;
  DistributionSummary regions;
};

/// Graph plus memoized regions and clique counts, shared by the points of
/// a sweep. Thread-safe.
class ExperimentContext {
 public:
  explicit ExperimentContext(Graph graph, unsigned threads = 1, bool strict_refresh = false)
      : graph_(std::move(graph)), threads_(threads), strict_refresh_(strict_refresh) {}

  const Graph& graph() const noexcept { return graph_; }
  const std::vector<CohesionResult>& regions(RegionMethod method, double p);
  const std::vector<CliqueCounts>& counts(RegionMethod method, double p, unsigned k);

 private:
  Graph graph_;
  unsigned threads_;
  bool strict_refresh_;
  std::mutex mutex_;
  std::map<std::pair<RegionMethod, double>, std::unique_ptr<std::vector<CohesionResult>>> regions_;
  std::map<std::tuple<RegionMethod, double, unsigned>, std::unique_ptr<std::vector<CliqueCounts>>>
      counts_;
};

ExperimentResult run_experiment(ExperimentContext& ctx, const ExperimentConfig& cfg);
/// Loads cfg.dataset and runs.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct SweepGrid {
  std::vector<RegionMethod> methods;
  std::vector<double> ps;
  std::vector<double> epsilons;
  /// Empty means the 0.1·ε default at each point.
  std::vector<double> epsilon1s;
  std::vector<unsigned> hs;
  std::vector<unsigned> ks;

  /// Cartesian product over `base`, ordered method, p, ε, ε₁, h, k with the
  /// last varying fastest. Empty axes keep the base value.
  std::vector<ExperimentConfig> points(const ExperimentConfig& base) const;
};

std::vector<ExperimentResult> sweep(ExperimentContext& ctx, const ExperimentConfig& base,
                                    const SweepGrid& grid);

// --- reporting ------------------------------------------------------------

inline constexpr const char* kRunCsvHeader = "method,p,eps,eps1,h,k,run,reported,truth,mre";

void write_runs_csv(std::ostream& out, std::span<const ExperimentResult> results);
void write_summary(std::ostream& out, const ExperimentResult& result);
void write_distribution_csv(std::ostream& out, const Graph& g,
                            std::span<const CohesionResult> regions);

/// Reads an ExperimentConfig (and optional sweep grid) from a JSON file.
ExperimentConfig load_config(const std::string& path, SweepGrid* grid = nullptr);

}  // namespace pcddp
