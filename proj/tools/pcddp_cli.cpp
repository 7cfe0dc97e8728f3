// Command-line front end: dataset statistics, region extraction, clique
// counting, and private-release experiments.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "pcddp/harness.hpp"

namespace {

using namespace pcddp;

// Writes to the named file, or stdout when the name is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ContractError("cannot open output '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool to_stdout() const { return !file_; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct GraphArgs {
  std::string path;
  bool header = false;

  Graph load() const {
    EdgeListOptions opts;
    opts.size_header = header;
    return load_edge_list(path, opts);
  }
};

void add_graph_args(CLI::App* cmd, GraphArgs& args) {
  cmd->add_option("graph", args.path, "Edge-list file")->required();
  cmd->add_flag("--header", args.header, "First data line is an \"n m\" size line");
}

struct RegionArgs {
  std::string method = "p-cohesion";
  double p = 0.1;
  unsigned threads = 1;
  bool strict_refresh = false;
};

void add_region_args(CLI::App* cmd, RegionArgs& args) {
  cmd->add_option("--method", args.method, "p-cohesion or elv")->capture_default_str();
  cmd->add_option("--p", args.p, "Cohesion ratio in (0,1)")->capture_default_str();
  cmd->add_option("--threads", args.threads, "Worker threads")->capture_default_str();
  cmd->add_flag("--strict-refresh", args.strict_refresh,
                "Recompute every score after each expansion round");
}

std::vector<CohesionResult> regions_for(const Graph& g, const RegionArgs& args) {
  ExpandOptions opts;
  opts.strict_refresh = args.strict_refresh;
  return extract_regions(g, parse_region_method(args.method), CohesionParams{args.p}, opts,
                         args.threads);
}

void add_experiment_args(CLI::App* cmd, ExperimentConfig& cfg, std::string& method,
                         std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file; flags given explicitly override it");
  cmd->add_option("--dataset", cfg.dataset, "Edge-list file");
  cmd->add_option("--method", method, "p-cohesion or elv");
  cmd->add_option("--p", cfg.p, "Cohesion ratio in (0,1)");
  cmd->add_option("--eps", cfg.epsilon, "Total privacy budget");
  cmd->add_option("--eps1", cfg.epsilon1, "Phase-1 budget (default 0.1*eps)");
  cmd->add_option("--delta", cfg.delta, "Failure probability (default 1/n)");
  cmd->add_option("--h", cfg.h, "Vertices refined with common-neighbor bounds");
  cmd->add_option("--k", cfg.k, "Clique order, 3 or 4");
  cmd->add_option("--runs", cfg.runs, "Repetitions averaged into the MRE");
  cmd->add_option("--seed", cfg.seed, "Master seed");
  cmd->add_option("-o,--output", cfg.output, "CSV output path (stdout if omitted)");
  cmd->add_flag("--freeze-phase1", cfg.freeze_phase1, "Estimate lambda once and reuse it");
  cmd->add_flag("--strict-refresh", cfg.strict_refresh,
                "Recompute every score after each expansion round");
  cmd->add_option("--threads", cfg.threads, "Worker threads");
}

// Config file values first, then any flag the user passed on top.
ExperimentConfig resolve(CLI::App* cmd, const ExperimentConfig& flags, const std::string& method,
                         const std::string& config_path, SweepGrid* grid) {
  ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path, grid);
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--dataset")) cfg.dataset = flags.dataset;
  if (given("--method")) cfg.method = parse_region_method(method);
  if (given("--p")) cfg.p = flags.p;
  if (given("--eps")) cfg.epsilon = flags.epsilon;
  if (given("--eps1")) cfg.epsilon1 = flags.epsilon1;
  if (given("--delta")) cfg.delta = flags.delta;
  if (given("--h")) cfg.h = flags.h;
  if (given("--k")) cfg.k = flags.k;
  if (given("--runs")) cfg.runs = flags.runs;
  if (given("--seed")) cfg.seed = flags.seed;
  if (given("--output")) cfg.output = flags.output;
  if (given("--freeze-phase1")) cfg.freeze_phase1 = flags.freeze_phase1;
  if (given("--strict-refresh")) cfg.strict_refresh = flags.strict_refresh;
  if (given("--threads")) cfg.threads = flags.threads;
  if (cfg.dataset.empty()) throw ContractError("no dataset given (--dataset or config)");
  cfg.validate();
  return cfg;
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::istringstream field(item);
    T value{};
    if (!(field >> value) || !field.eof()) throw ContractError("bad list entry '" + item + "'");
    out.push_back(value);
  }
  return out;
}

void emit_results(const ExperimentConfig& cfg, std::span<const ExperimentResult> results) {
  Output out(cfg.output);
  write_runs_csv(out.stream(), results);
  // Keep stdout machine-readable when the CSV goes there.
  std::ostream& summary = out.to_stdout() ? std::cerr : std::cout;
  for (const auto& r : results) write_summary(summary, r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal p-cohesion regions and decentralized private k-clique counting"};
  app.require_subcommand(1);
  // "--h" is the refinement count, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");

  // stats
  GraphArgs stats_graph;
  RegionArgs stats_regions;
  std::string stats_out;
  auto* stats = app.add_subcommand("stats", "Dataset statistics and region size/density summary");
  add_graph_args(stats, stats_graph);
  add_region_args(stats, stats_regions);
  stats->add_option("-o,--output", stats_out, "Distribution CSV path (stdout if omitted)");
  bool stats_dataset_only = false;
  stats->add_flag("--dataset-only", stats_dataset_only, "Only print n, m, d_avg, d_max");

  // extract
  GraphArgs extract_graph;
  RegionArgs extract_regions_args;
  std::string extract_vertex;
  std::string extract_out;
  auto* extract = app.add_subcommand("extract", "Per-vertex minimal p-cohesion or ELV region");
  add_graph_args(extract, extract_graph);
  add_region_args(extract, extract_regions_args);
  extract->add_option("--vertex", extract_vertex, "Only this vertex (external label)");
  extract->add_option("-o,--output", extract_out, "CSV path (stdout if omitted)");

  // count
  GraphArgs count_graph;
  RegionArgs count_regions;
  unsigned count_k = 3;
  std::string count_out;
  auto* count = app.add_subcommand("count", "Per-vertex k-clique counts inside/outside regions");
  add_graph_args(count, count_graph);
  add_region_args(count, count_regions);
  count->add_option("--k", count_k, "Clique order in [3,6]")->capture_default_str();
  count->add_option("-o,--output", count_out, "CSV path (stdout if omitted)");

  // run / sweep
  ExperimentConfig run_flags;
  std::string run_method;
  std::string run_config;
  auto* run = app.add_subcommand("run", "One experiment: Phase-1, Phase-2, MRE over runs");
  add_experiment_args(run, run_flags, run_method, run_config);

  ExperimentConfig sweep_flags;
  std::string sweep_method;
  std::string sweep_config;
  std::string grid_methods;
  std::string grid_p;
  std::string grid_eps;
  std::string grid_eps1;
  std::string grid_h;
  std::string grid_k;
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid of experiments sharing one master seed");
  add_experiment_args(sweep_cmd, sweep_flags, sweep_method, sweep_config);
  sweep_cmd->add_option("--method-grid", grid_methods, "Comma-separated methods");
  sweep_cmd->add_option("--p-grid", grid_p, "Comma-separated p values");
  sweep_cmd->add_option("--eps-grid", grid_eps, "Comma-separated epsilon values");
  sweep_cmd->add_option("--eps1-grid", grid_eps1, "Comma-separated epsilon1 values");
  sweep_cmd->add_option("--h-grid", grid_h, "Comma-separated h values");
  sweep_cmd->add_option("--k-grid", grid_k, "Comma-separated k values");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*stats) {
      const auto g = stats_graph.load();
      fmt::print("n={} m={} d_avg={:.2f} d_max={}\n", g.num_vertices(), g.num_edges(),
                 g.average_degree(), g.max_degree());
      if (!stats_dataset_only) {
        auto regions = regions_for(g, stats_regions);
        Output out(stats_out);
        write_distribution_csv(out.stream(), g, regions);
      }
    } else if (*extract) {
      const auto g = extract_graph.load();
      ExpandOptions opts;
      opts.strict_refresh = extract_regions_args.strict_refresh;
      const auto method = parse_region_method(extract_regions_args.method);
      const CohesionParams params{extract_regions_args.p};
      std::vector<CohesionResult> regions;
      if (!extract_vertex.empty()) {
        auto v = g.find_label(extract_vertex);
        if (!v) throw ContractError("unknown vertex label '" + extract_vertex + "'");
        regions.push_back(method == RegionMethod::kElv ? elv(g, *v)
                                                       : minimal_p_cohesion(g, *v, params, opts));
      } else {
        regions = extract_regions(g, method, params, opts, extract_regions_args.threads);
      }
      Output out(extract_out);
      out.stream() << "vertex,size,density,members\n";
      for (const auto& r : regions) {
        std::string members;
        for (VertexId m : r.members) {
          if (!members.empty()) members += ' ';
          members += g.label(m);
        }
        fmt::print(out.stream(), "{},{},{},{}\n", g.label(r.query), r.size(),
                   r.density ? fmt::format("{}", *r.density) : "", members);
      }
    } else if (*count) {
      const auto g = count_graph.load();
      auto regions = regions_for(g, count_regions);
      std::vector<VertexSet> sets;
      for (const auto& r : regions) sets.push_back(r.members);
      auto counts = count_all(g, sets, count_k, count_regions.threads);
      Output out(count_out);
      out.stream() << "vertex,k,total,inside,outside\n";
      for (const auto& c : counts) {
        fmt::print(out.stream(), "{},{},{},{},{}\n", g.label(c.vertex), c.k, c.total, c.inside,
                   c.outside);
      }
      if (!out.to_stdout()) {
        fmt::print("k={} aggregate={}\n", count_k, total_count_report(counts, count_k));
      }
    } else if (*run) {
      auto cfg = resolve(run, run_flags, run_method, run_config, nullptr);
      auto result = run_experiment(cfg);
      emit_results(cfg, std::span(&result, 1));
    } else if (*sweep_cmd) {
      SweepGrid grid;
      auto cfg = resolve(sweep_cmd, sweep_flags, sweep_method, sweep_config, &grid);
      if (!grid_methods.empty()) {
        grid.methods.clear();
        for (const auto& m : parse_list<std::string>(grid_methods)) {
          grid.methods.push_back(parse_region_method(m));
        }
      }
      if (!grid_p.empty()) grid.ps = parse_list<double>(grid_p);
      if (!grid_eps.empty()) grid.epsilons = parse_list<double>(grid_eps);
      if (!grid_eps1.empty()) grid.epsilon1s = parse_list<double>(grid_eps1);
      if (!grid_h.empty()) grid.hs = parse_list<unsigned>(grid_h);
      if (!grid_k.empty()) grid.ks = parse_list<unsigned>(grid_k);
      ExperimentContext ctx(load_edge_list(cfg.dataset), cfg.threads, cfg.strict_refresh);
      auto results = sweep(ctx, cfg, grid);
      emit_results(cfg, results);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
