#include "pcddp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

namespace pcddp {

std::string to_string(RegionMethod m) {
  return m == RegionMethod::kPCohesion ? "p-cohesion" : "elv";
}

RegionMethod parse_region_method(const std::string& name) {
  if (name == "p-cohesion" || name == "pcohesion") return RegionMethod::kPCohesion;
  if (name == "elv") return RegionMethod::kElv;
  throw ContractError("unknown method '" + name + "' (expected p-cohesion or elv)");
}

void ExperimentConfig::validate() const {
  if (method == RegionMethod::kPCohesion) CohesionParams{p}.validate();
  if (k != 3 && k != 4) throw ContractError("experiments support k = 3 or 4");
  if (runs < 1) throw ContractError("runs must be at least 1");
  if (threads < 1) throw ContractError("threads must be at least 1");
  // Range checks on the budget need n for the δ default; 0.5 stands in.
  auto probe = *this;
  if (!probe.delta) probe.delta = 0.5;
  probe.privacy(2).validate();
}

PrivacyParams ExperimentConfig::privacy(std::size_t num_vertices) const {
  PrivacyParams pp;
  pp.epsilon = epsilon;
  pp.epsilon1 = epsilon1.value_or(0.1 * epsilon);
  pp.delta = delta.value_or(num_vertices > 0 ? 1.0 / static_cast<double>(num_vertices) : 0.0);
  pp.h = h;
  pp.k = k;
  return pp;
}

std::uint64_t ExperimentConfig::point_seed() const {
  const auto key = fmt::format("{}|{}|{}|{}|{}|{}|{}|{}", to_string(method), p, epsilon,
                               epsilon1 ? fmt::format("{}", *epsilon1) : "default",
                               delta ? fmt::format("{}", *delta) : "default", h, k,
                               freeze_phase1 ? "frozen" : "fresh");
  // FNV-1a, stable across platforms unlike std::hash.
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : key) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return mix_seed(seed, hash);
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const auto workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<CohesionResult> extract_regions(const Graph& g, RegionMethod method,
                                            const CohesionParams& params,
                                            const ExpandOptions& options, unsigned threads) {
  std::vector<CohesionResult> out(g.num_vertices());
  parallel_for(g.num_vertices(), threads, [&](std::size_t v) {
    const auto q = static_cast<VertexId>(v);
    out[v] = method == RegionMethod::kElv ? elv(g, q) : minimal_p_cohesion(g, q, params, options);
  });
  return out;
}

std::vector<CliqueCounts> count_all(const Graph& g, std::span<const VertexSet> regions, unsigned k,
                                    unsigned threads) {
  if (regions.size() != g.num_vertices()) {
    throw ContractError("count_all needs exactly one region per vertex");
  }
  std::vector<CliqueCounts> out(g.num_vertices());
  parallel_for(g.num_vertices(), threads, [&](std::size_t v) {
    out[v] = split_counts(g, static_cast<VertexId>(v), regions[v], k);
  });
  return out;
}

Quantiles quantiles(std::vector<double> values) {
  if (values.empty()) throw ContractError("quantiles of an empty sample");
  std::sort(values.begin(), values.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  return {values.front(), at(0.25), at(0.5), at(0.75), values.back()};
}

DistributionSummary stats_report(const Graph& g, std::span<const CohesionResult> regions) {
  (void)g;
  DistributionSummary s;
  s.regions = regions.size();
  std::vector<double> sizes;
  std::vector<double> densities;
  for (const auto& r : regions) {
    s.sizes.push_back(r.size());
    s.densities.push_back(r.density);
    sizes.push_back(static_cast<double>(r.size()));
    if (r.density) {
      densities.push_back(*r.density);
    } else {
      ++s.singletons;
    }
  }
  if (!sizes.empty()) s.size = quantiles(sizes);
  if (!densities.empty()) s.density = quantiles(densities);
  return s;
}

// --- context --------------------------------------------------------------

const std::vector<CohesionResult>& ExperimentContext::regions(RegionMethod method, double p) {
  std::lock_guard lock(mutex_);
  // ELV ignores p; share one entry.
  const auto key = std::make_pair(method, method == RegionMethod::kElv ? 0.0 : p);
  auto& slot = regions_[key];
  if (!slot) {
    ExpandOptions options;
    options.strict_refresh = strict_refresh_;
    slot = std::make_unique<std::vector<CohesionResult>>(
        extract_regions(graph_, method, CohesionParams{p}, options, threads_));
  }
  return *slot;
}

const std::vector<CliqueCounts>& ExperimentContext::counts(RegionMethod method, double p,
                                                           unsigned k) {
  const auto& rs = regions(method, p);
  std::lock_guard lock(mutex_);
  const auto key = std::make_tuple(method, method == RegionMethod::kElv ? 0.0 : p, k);
  auto& slot = counts_[key];
  if (!slot) {
    std::vector<VertexSet> sets;
    sets.reserve(rs.size());
    for (const auto& r : rs) sets.push_back(r.members);
    slot = std::make_unique<std::vector<CliqueCounts>>(count_all(graph_, sets, k, threads_));
  }
  return *slot;
}

// --- experiments ----------------------------------------------------------

namespace {

enum SeedTag : std::uint64_t { kPhase1Tag = 1, kPhase2Tag = 2 };

double estimate_noise_scale(const Graph& g, std::span<const VertexSet> regions,
                            const PrivacyParams& privacy, std::uint64_t seed, bool* zero) {
  // k = 4 reuses the triangle estimate scaled by 4/3.
  auto base = privacy;
  base.k = 3;
  auto outcome = phase1(g, regions, base, SeededNoise(seed));
  *zero = outcome.zero_sensitivity;
  return privacy.k == 4 ? lambda_for_k4(outcome.noise_scale) : outcome.noise_scale;
}

}  // namespace

ExperimentResult run_experiment(ExperimentContext& ctx, const ExperimentConfig& cfg) {
  cfg.validate();
  const Graph& g = ctx.graph();
  const auto privacy = cfg.privacy(g.num_vertices());

  ExperimentResult result;
  result.config = cfg;
  result.budget = budget_check(privacy);

  const auto& regions = ctx.regions(cfg.method, cfg.p);
  const auto& counts = ctx.counts(cfg.method, cfg.p, cfg.k);
  std::vector<VertexSet> sets;
  sets.reserve(regions.size());
  for (const auto& r : regions) sets.push_back(r.members);
  result.regions = stats_report(g, regions);
  result.truth = total_count_report(counts, cfg.k);
  result.absolute_error = result.truth == 0;

  const auto point = cfg.point_seed();
  double frozen_lambda = 0.0;
  if (cfg.freeze_phase1) {
    bool zero = false;
    frozen_lambda = estimate_noise_scale(g, sets, privacy, mix_seed(point, kPhase1Tag), &zero);
    result.zero_sensitivity = zero;
  }

  const auto truth = static_cast<double>(result.truth);
  double mre_sum = 0.0;
  for (unsigned run = 0; run < cfg.runs; ++run) {
    const auto run_seed = mix_seed(point, run);
    double lambda = frozen_lambda;
    if (!cfg.freeze_phase1) {
      bool zero = false;
      lambda = estimate_noise_scale(g, sets, privacy, mix_seed(run_seed, kPhase1Tag), &zero);
      result.zero_sensitivity = result.zero_sensitivity || zero;
    }
    auto responses = phase2(counts, lambda, SeededNoise(mix_seed(run_seed, kPhase2Tag)));
    double aggregate = 0.0;
    for (const auto& r : responses) aggregate += r.reported;

    RunRecord rec;
    rec.run = run;
    rec.reported = aggregate;
    rec.truth = result.truth;
    rec.noise_scale = lambda;
    const double error = std::abs(aggregate - truth);
    rec.mre = result.absolute_error ? error : error / truth;
    mre_sum += rec.mre;
    result.runs.push_back(rec);
  }
  result.mean_mre = mre_sum / static_cast<double>(cfg.runs);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentContext ctx(load_edge_list(cfg.dataset), cfg.threads, cfg.strict_refresh);
  return run_experiment(ctx, cfg);
}

std::vector<ExperimentConfig> SweepGrid::points(const ExperimentConfig& base) const {
  auto or_base = [](const auto& axis, auto value) {
    using T = std::decay_t<decltype(value)>;
    return axis.empty() ? std::vector<T>{value} : std::vector<T>(axis.begin(), axis.end());
  };
  std::vector<ExperimentConfig> out;
  for (auto m : or_base(methods, base.method)) {
    for (auto p : or_base(ps, base.p)) {
      for (auto eps : or_base(epsilons, base.epsilon)) {
        std::vector<std::optional<double>> eps1_axis;
        if (epsilon1s.empty()) {
          eps1_axis.push_back(base.epsilon1);
        } else {
          eps1_axis.assign(epsilon1s.begin(), epsilon1s.end());
        }
        for (auto eps1 : eps1_axis) {
          for (auto h : or_base(hs, base.h)) {
            for (auto k : or_base(ks, base.k)) {
              auto cfg = base;
              cfg.method = m;
              cfg.p = p;
              cfg.epsilon = eps;
              cfg.epsilon1 = eps1;
              cfg.h = h;
              cfg.k = k;
              out.push_back(cfg);
            }
          }
        }
      }
    }
  }
  return out;
}

std::vector<ExperimentResult> sweep(ExperimentContext& ctx, const ExperimentConfig& base,
                                    const SweepGrid& grid) {
  auto configs = grid.points(base);
  if (configs.empty()) throw ContractError("sweep grid is empty");
  for (const auto& cfg : configs) cfg.validate();
  // Fill the caches first so the parallel phase only reads them.
  for (const auto& cfg : configs) ctx.counts(cfg.method, cfg.p, cfg.k);
  std::vector<ExperimentResult> out(configs.size());
  parallel_for(configs.size(), base.threads,
               [&](std::size_t i) { out[i] = run_experiment(ctx, configs[i]); });
  return out;
}

// --- reporting ------------------------------------------------------------

void write_runs_csv(std::ostream& out, std::span<const ExperimentResult> results) {
  out << kRunCsvHeader << '\n';
  for (const auto& r : results) {
    const auto& c = r.config;
    const auto eps1 = c.epsilon1.value_or(0.1 * c.epsilon);
    for (const auto& run : r.runs) {
      fmt::print(out, "{},{},{},{},{},{},{},{},{},{}\n", to_string(c.method), c.p, c.epsilon, eps1,
                 c.h, c.k, run.run, run.reported, run.truth, run.mre);
    }
  }
}

void write_summary(std::ostream& out, const ExperimentResult& r) {
  const auto& c = r.config;
  fmt::print(out, "method={} p={} eps={} eps1={} h={} k={} runs={} seed={}\n", to_string(c.method),
             c.p, c.epsilon, r.budget.epsilon1, c.h, c.k, c.runs, c.seed);
  fmt::print(out, "guarantee: {} (eps1={}, eps2={})\n", r.budget.claim, r.budget.epsilon1,
             r.budget.epsilon2);
  fmt::print(out, "truth={} mean_{}={}\n", r.truth, r.absolute_error ? "abs_error" : "mre",
             r.mean_mre);
  if (!r.runs.empty()) fmt::print(out, "lambda(run 0)={}\n", r.runs.front().noise_scale);
  if (r.absolute_error) {
    fmt::print(out, "note: true count is 0; the mre column holds absolute error\n");
  }
  if (r.zero_sensitivity) {
    fmt::print(out, "WARNING: estimated sensitivity was 0 in some run; counts released without noise\n");
  }
  const auto& s = r.regions;
  fmt::print(out, "region size: min={} p25={} median={} p75={} max={}\n", s.size.min, s.size.p25,
             s.size.median, s.size.p75, s.size.max);
  if (s.density) {
    fmt::print(out, "region density: min={} p25={} median={} p75={} max={} (singletons={})\n",
               s.density->min, s.density->p25, s.density->median, s.density->p75, s.density->max,
               s.singletons);
  } else {
    fmt::print(out, "region density: n/a (singletons={})\n", s.singletons);
  }
}

void write_distribution_csv(std::ostream& out, const Graph& g,
                            std::span<const CohesionResult> regions) {
  auto s = stats_report(g, regions);
  out << "statistic,min,p25,median,p75,max,count\n";
  fmt::print(out, "size,{},{},{},{},{},{}\n", s.size.min, s.size.p25, s.size.median, s.size.p75,
             s.size.max, s.regions);
  if (s.density) {
    fmt::print(out, "density,{},{},{},{},{},{}\n", s.density->min, s.density->p25,
               s.density->median, s.density->p75, s.density->max, s.regions - s.singletons);
  } else {
    out << "density,,,,,,0\n";
  }
  fmt::print(out, "singletons,,,,,,{}\n", s.singletons);
}

ExperimentConfig load_config(const std::string& path, SweepGrid* grid) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ContractError("config '" + path + "': " + e.what());
  }
  static const std::vector<std::string> known = {
      "dataset", "method", "p",       "epsilon", "epsilon1",      "delta",          "h",
      "k",       "runs",   "seed",    "output",  "freeze_phase1", "strict_refresh", "threads",
      "sweep"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ContractError("config '" + path + "': unknown key '" + key + "'");
    }
  }

  ExperimentConfig cfg;
  try {
    if (j.contains("dataset")) {
      std::filesystem::path dataset = j.at("dataset").get<std::string>();
      if (dataset.is_relative()) dataset = std::filesystem::path(path).parent_path() / dataset;
      cfg.dataset = dataset.string();
    }
    if (j.contains("method")) cfg.method = parse_region_method(j.at("method").get<std::string>());
    cfg.p = j.value("p", cfg.p);
    cfg.epsilon = j.value("epsilon", cfg.epsilon);
    if (j.contains("epsilon1")) cfg.epsilon1 = j.at("epsilon1").get<double>();
    if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
    cfg.h = j.value("h", cfg.h);
    cfg.k = j.value("k", cfg.k);
    cfg.runs = j.value("runs", cfg.runs);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.output = j.value("output", cfg.output);
    cfg.freeze_phase1 = j.value("freeze_phase1", cfg.freeze_phase1);
    cfg.strict_refresh = j.value("strict_refresh", cfg.strict_refresh);
    cfg.threads = j.value("threads", cfg.threads);

    if (grid && j.contains("sweep")) {
      const auto& s = j.at("sweep");
      if (s.contains("method")) {
        for (const auto& m : s.at("method")) grid->methods.push_back(parse_region_method(m.get<std::string>()));
      }
      if (s.contains("p")) grid->ps = s.at("p").get<std::vector<double>>();
      if (s.contains("epsilon")) grid->epsilons = s.at("epsilon").get<std::vector<double>>();
      if (s.contains("epsilon1")) grid->epsilon1s = s.at("epsilon1").get<std::vector<double>>();
      if (s.contains("h")) grid->hs = s.at("h").get<std::vector<unsigned>>();
      if (s.contains("k")) grid->ks = s.at("k").get<std::vector<unsigned>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ContractError("config '" + path + "': " + e.what());
  }
  return cfg;
}

}  // namespace pcddp
