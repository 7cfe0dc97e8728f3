#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcddp/cohesion.hpp"
#include "pcddp/counting.hpp"
#include "pcddp/dp.hpp"
#include "pcddp/graph.hpp"
#include "pcddp/harness.hpp"

namespace py = pybind11;
using namespace pcddp;

namespace {

std::vector<VertexId> to_list(const VertexSet& s) { return {s.begin(), s.end()}; }

std::vector<VertexSet> to_sets(const std::vector<std::vector<VertexId>>& lists) {
  std::vector<VertexSet> out;
  out.reserve(lists.size());
  for (const auto& l : lists) out.emplace_back(l);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimal p-cohesion regions and decentralized private k-clique counting";

  // Translators run newest first, so the base class goes in before BudgetError.
  auto contract = py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", contract.ptr());
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def_static(
          "from_edges",
          [](std::size_t n, const std::vector<Edge>& edges) { return Graph::from_edges(n, edges); },
          py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("max_degree", &Graph::max_degree)
      .def_property_readonly("average_degree", &Graph::average_degree)
      .def("degree", &Graph::degree, py::arg("v"))
      .def(
          "neighbors",
          [](const Graph& g, VertexId v) {
            auto span = g.neighbors(v);
            return std::vector<VertexId>(span.begin(), span.end());
          },
          py::arg("v"))
      .def("label", &Graph::label, py::arg("v"))
      .def("find_label", &Graph::find_label, py::arg("label"))
      .def("edges", &Graph::edges)
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.num_vertices()) +
               " m=" + std::to_string(g.num_edges()) + ">";
      });

  m.def(
      "load_edge_list",
      [](const std::string& path, bool size_header) {
        return load_edge_list(path, EdgeListOptions{size_header});
      },
      py::arg("path"), py::arg("size_header") = false);

  py::class_<CohesionResult>(m, "CohesionResult")
      .def_readonly("query", &CohesionResult::query)
      .def_property_readonly("members", [](const CohesionResult& r) { return to_list(r.members); })
      .def_readonly("is_minimal", &CohesionResult::is_minimal)
      .def_readonly("density", &CohesionResult::density)
      .def("__len__", &CohesionResult::size);

  m.def(
      "expand",
      [](const Graph& g, VertexId q, double p, bool strict_refresh) {
        return expand(g, q, CohesionParams{p}, ExpandOptions{strict_refresh});
      },
      py::arg("graph"), py::arg("q"), py::arg("p"), py::arg("strict_refresh") = false);
  m.def(
      "shrink",
      [](const Graph& g, const std::vector<VertexId>& members, VertexId q, double p) {
        CohesionResult cp;
        cp.query = q;
        cp.members = VertexSet(members);
        return shrink(g, cp, q, CohesionParams{p});
      },
      py::arg("graph"), py::arg("members"), py::arg("q"), py::arg("p"));
  m.def(
      "minimal_p_cohesion",
      [](const Graph& g, VertexId q, double p, bool strict_refresh) {
        return minimal_p_cohesion(g, q, CohesionParams{p}, ExpandOptions{strict_refresh});
      },
      py::arg("graph"), py::arg("q"), py::arg("p"), py::arg("strict_refresh") = false);
  m.def("elv", &elv, py::arg("graph"), py::arg("q"));
  m.def(
      "is_p_cohesion",
      [](const Graph& g, const std::vector<VertexId>& members, VertexId q, double p) {
        return is_p_cohesion(g, VertexSet(members), q, CohesionParams{p});
      },
      py::arg("graph"), py::arg("members"), py::arg("q"), py::arg("p"));

  py::class_<CliqueCounts>(m, "CliqueCounts")
      .def_readonly("vertex", &CliqueCounts::vertex)
      .def_readonly("k", &CliqueCounts::k)
      .def_readonly("total", &CliqueCounts::total)
      .def_readonly("inside", &CliqueCounts::inside)
      .def_readonly("outside", &CliqueCounts::outside);

  m.def("count_cliques_at", &count_cliques_at, py::arg("graph"), py::arg("v"), py::arg("k"));
  m.def(
      "split_counts",
      [](const Graph& g, VertexId v, const std::vector<VertexId>& region, unsigned k) {
        return split_counts(g, v, VertexSet(region), k);
      },
      py::arg("graph"), py::arg("v"), py::arg("region"), py::arg("k"));

  py::class_<PrivacyParams>(m, "PrivacyParams")
      .def(py::init([](double epsilon, double delta, std::optional<double> epsilon1, unsigned h,
                       unsigned k) {
             auto pp = PrivacyParams::with_defaults(epsilon, delta, h, k);
             if (epsilon1) pp.epsilon1 = *epsilon1;
             pp.validate();
             return pp;
           }),
           py::arg("epsilon"), py::arg("delta"), py::arg("epsilon1") = py::none(),
           py::arg("h") = 3, py::arg("k") = 3)
      .def_readonly("epsilon", &PrivacyParams::epsilon)
      .def_readonly("epsilon1", &PrivacyParams::epsilon1)
      .def_readonly("delta", &PrivacyParams::delta)
      .def_readonly("h", &PrivacyParams::h)
      .def_readonly("k", &PrivacyParams::k)
      .def_property_readonly("epsilon2", &PrivacyParams::epsilon2)
      .def_property_readonly("lambda_degree", &PrivacyParams::lambda_degree)
      .def_property_readonly("lambda_common", &PrivacyParams::lambda_common)
      .def_property_readonly("delta_prime", &PrivacyParams::delta_prime);

  py::class_<Phase1Outcome>(m, "Phase1Outcome")
      .def_readonly("upper_bounds", &Phase1Outcome::upper_bounds)
      .def_readonly("top_set", &Phase1Outcome::top_set)
      .def_readonly("max_upper_bound", &Phase1Outcome::max_upper_bound)
      .def_readonly("ls_estimate", &Phase1Outcome::ls_estimate)
      .def_readonly("noise_scale", &Phase1Outcome::noise_scale)
      .def_readonly("zero_sensitivity", &Phase1Outcome::zero_sensitivity);

  py::class_<PerturbedResponse>(m, "PerturbedResponse")
      .def_readonly("vertex", &PerturbedResponse::vertex)
      .def_readonly("reported", &PerturbedResponse::reported)
      .def_readonly("true_total", &PerturbedResponse::true_total);

  m.def(
      "phase1",
      [](const Graph& g, const std::vector<std::vector<VertexId>>& regions,
         const PrivacyParams& params, std::optional<std::uint64_t> seed) {
        auto sets = to_sets(regions);
        if (!seed) return phase1(g, sets, params, ZeroNoise());
        return phase1(g, sets, params, SeededNoise(*seed));
      },
      py::arg("graph"), py::arg("regions"), py::arg("params"), py::arg("seed"),
      "Noise-scale estimation. seed=None draws no noise.");
  m.def(
      "phase2",
      [](const std::vector<CliqueCounts>& counts, double noise_scale, std::uint64_t seed) {
        return phase2(counts, noise_scale, SeededNoise(seed));
      },
      py::arg("counts"), py::arg("noise_scale"), py::arg("seed"));
  m.def("lambda_for_k4", &lambda_for_k4, py::arg("lambda3"));
  m.def(
      "sample_laplace",
      [](double scale, std::size_t count, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::vector<double> out(count);
        for (auto& x : out) x = sample_laplace(scale, rng);
        return out;
      },
      py::arg("scale"), py::arg("count"), py::arg("seed"));

  py::enum_<RegionMethod>(m, "RegionMethod")
      .value("P_COHESION", RegionMethod::kPCohesion)
      .value("ELV", RegionMethod::kElv);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("dataset", &ExperimentConfig::dataset)
      .def_readwrite("method", &ExperimentConfig::method)
      .def_readwrite("p", &ExperimentConfig::p)
      .def_readwrite("epsilon", &ExperimentConfig::epsilon)
      .def_readwrite("epsilon1", &ExperimentConfig::epsilon1)
      .def_readwrite("delta", &ExperimentConfig::delta)
      .def_readwrite("h", &ExperimentConfig::h)
      .def_readwrite("k", &ExperimentConfig::k)
      .def_readwrite("runs", &ExperimentConfig::runs)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("freeze_phase1", &ExperimentConfig::freeze_phase1)
      .def_readwrite("strict_refresh", &ExperimentConfig::strict_refresh)
      .def_readwrite("threads", &ExperimentConfig::threads)
      .def("validate", &ExperimentConfig::validate);

  m.def("load_config", [](const std::string& path) { return load_config(path); },
        py::arg("path"));

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("run", &RunRecord::run)
      .def_readonly("reported", &RunRecord::reported)
      .def_readonly("truth", &RunRecord::truth)
      .def_readonly("noise_scale", &RunRecord::noise_scale)
      .def_readonly("mre", &RunRecord::mre);

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("config", &ExperimentResult::config)
      .def_property_readonly("guarantee",
                             [](const ExperimentResult& r) { return r.budget.claim; })
      .def_readonly("truth", &ExperimentResult::truth)
      .def_readonly("runs", &ExperimentResult::runs)
      .def_readonly("mean_mre", &ExperimentResult::mean_mre)
      .def_readonly("absolute_error", &ExperimentResult::absolute_error)
      .def_readonly("zero_sensitivity", &ExperimentResult::zero_sensitivity)
      .def("runs_csv", [](const ExperimentResult& r) {
        std::ostringstream out;
        write_runs_csv(out, std::span<const ExperimentResult>(&r, 1));
        return out.str();
      });

  m.def(
      "run_experiment",
      [](const ExperimentConfig& cfg, const Graph* graph) {
        py::gil_scoped_release release;
        if (!graph) return run_experiment(cfg);
        ExperimentContext ctx(*graph, cfg.threads, cfg.strict_refresh);
        return run_experiment(ctx, cfg);
      },
      py::arg("config"), py::arg("graph") = nullptr,
      "Runs one experiment on `graph`, or on config.dataset when graph is None.");
}
