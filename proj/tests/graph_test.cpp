#include "pcddp/graph.hpp"

#include <cmath>
#include <queue>
#include <sstream>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace pcddp {
namespace {

using testing::complete_graph;
using testing::path_graph;
using testing::random_graph;
using testing::star_graph;

Graph parse(const std::string& text, EdgeListOptions opts = {}) {
  std::istringstream in(text);
  return parse_edge_list(in, opts);
}

TEST(EdgeListTest, DropsDuplicatesAndSelfLoops) {
  auto g = parse("0 1\n1 0\n1 1\n");
  EXPECT_EQ(g.num_vertices(), 2u);
  EXPECT_EQ(g.num_edges(), 1u);
}

TEST(EdgeListTest, SkipsCommentsAndExtraColumns) {
  auto g = parse("% konect header\n# another\n\n1 2 1 1700000000\n2 3 1\n");
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
}

TEST(EdgeListTest, IntegerLabelsGetNumericOrder) {
  auto g = parse("10 2\n2 7\n");
  ASSERT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.label(0), "2");
  EXPECT_EQ(g.label(1), "7");
  EXPECT_EQ(g.label(2), "10");
  EXPECT_TRUE(g.has_edge(0, 2));
}

TEST(EdgeListTest, StringLabelsKeepFirstAppearance) {
  auto g = parse("bob alice\nalice carol\n");
  EXPECT_EQ(g.label(0), "bob");
  EXPECT_EQ(g.label(1), "alice");
  EXPECT_EQ(*g.find_label("carol"), 2u);
  EXPECT_FALSE(g.find_label("dave").has_value());
}

TEST(EdgeListTest, MatrixMarketHeaderDeclaresIsolatedVertices) {
  auto g = parse("%%MatrixMarket matrix coordinate pattern symmetric\n5 5 2\n1 2\n2 3\n");
  EXPECT_EQ(g.num_vertices(), 5u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.degree(4), 0u);
}

TEST(EdgeListTest, PlainSizeHeaderIsIgnoredForStructure) {
  EdgeListOptions opts;
  opts.size_header = true;
  auto g = parse("4 2\n0 1\n1 2\n", opts);
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
}

TEST(EdgeListTest, MalformedLineReportsLineNumber) {
  try {
    parse("0 1\n# c\n7\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(EdgeListTest, EmptyInputIsAnError) {
  EXPECT_THROW(parse("% nothing\n"), ParseError);
  EXPECT_THROW(load_edge_list("/nonexistent/graph.txt"), ParseError);
}

TEST(EdgeListTest, RoundTripPreservesAdjacency) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = random_graph(30, 0.2, seed);
    std::ostringstream out;
    write_edge_list(g, out);
    auto reloaded = parse(out.str());
    // Isolated vertices have no edge line to carry them.
    std::vector<std::pair<std::string, std::string>> a;
    std::vector<std::pair<std::string, std::string>> b;
    for (auto [u, v] : g.edges()) a.emplace_back(g.label(u), g.label(v));
    for (auto [u, v] : reloaded.edges()) b.emplace_back(reloaded.label(u), reloaded.label(v));
    EXPECT_EQ(a, b) << "seed " << seed;
  }
}

TEST(GraphTest, InvariantsHoldOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = random_graph(40, 0.15, seed);
    std::size_t degree_sum = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      auto nv = g.neighbors(v);
      degree_sum += nv.size();
      EXPECT_TRUE(std::is_sorted(nv.begin(), nv.end()));
      EXPECT_EQ(std::adjacent_find(nv.begin(), nv.end()), nv.end());
      for (VertexId u : nv) {
        EXPECT_NE(u, v);
        EXPECT_TRUE(g.has_edge(u, v));
      }
    }
    EXPECT_EQ(degree_sum, 2 * g.num_edges());
  }
}

TEST(GraphTest, Degree) {
  auto k4 = complete_graph(4);
  for (VertexId v = 0; v < 4; ++v) EXPECT_EQ(k4.degree(v), 3u);
  EXPECT_EQ(path_graph(3).degree(1), 2u);
  EXPECT_THROW(k4.degree(4), ContractError);
}

TEST(GraphTest, DegreeMatchesBfsDistanceOne) {
  auto g = random_graph(35, 0.12, 99);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    std::vector<int> dist(g.num_vertices(), -1);
    std::queue<VertexId> bfs;
    dist[v] = 0;
    bfs.push(v);
    while (!bfs.empty()) {
      auto x = bfs.front();
      bfs.pop();
      if (dist[x] == 2) continue;
      for (auto y : g.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          bfs.push(y);
        }
      }
    }
    auto hood = two_hop_neighborhood(g, v);
    std::size_t at_one = 0;
    for (auto u : hood) at_one += dist[u] == 1;
    EXPECT_EQ(at_one, g.degree(v));
    for (VertexId u = 0; u < g.num_vertices(); ++u) {
      EXPECT_EQ(hood.contains(u), dist[u] >= 0 && dist[u] <= 2);
    }
  }
}

TEST(InducedTest, TriangleInsideK4) {
  auto k4 = complete_graph(4);
  auto sub = induced(k4, VertexSet{0, 1, 2});
  EXPECT_EQ(sub.num_edges(), 3u);
  for (auto v : {0u, 1u, 2u}) EXPECT_EQ(sub.local_degree(v), 2u);
  EXPECT_THROW(sub.local_degree(3), ContractError);
}

TEST(InducedTest, SingletonHasNoEdges) {
  auto g = random_graph(10, 0.5, 3);
  auto sub = induced(g, VertexSet::single(4));
  EXPECT_EQ(sub.num_vertices(), 1u);
  EXPECT_EQ(sub.num_edges(), 0u);
}

TEST(InducedTest, EdgeCountMatchesPairScan) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = random_graph(20, 0.3, seed);
    VertexSet s{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    testing::Matrix a(g);
    std::size_t pairs = 0;
    for (VertexId u = 0; u < 10; ++u) {
      for (VertexId v = u + 1; v < 10; ++v) pairs += a.adjacent(u, v);
    }
    auto sub = induced(g, s);
    EXPECT_EQ(sub.num_edges(), pairs);
    for (auto v : s) {
      std::size_t local = 0;
      for (auto u : s) local += a.adjacent(u, v);
      EXPECT_EQ(sub.local_degree(v), local);
    }
  }
}

TEST(InducedTest, RejectsOutOfRangeMembers) {
  auto g = complete_graph(3);
  EXPECT_THROW(induced(g, VertexSet{0, 5}), ContractError);
}

TEST(TwoHopTest, Examples) {
  auto path = path_graph(4);
  EXPECT_EQ(two_hop_neighborhood(path, 0), (VertexSet{0, 1, 2}));
  auto isolated = Graph::from_edges(3, std::vector<Edge>{{0, 1}});
  EXPECT_EQ(two_hop_neighborhood(isolated, 2), VertexSet::single(2));
  auto star = star_graph(5);
  EXPECT_EQ(two_hop_neighborhood(star, 0), VertexSet::all(6));
  EXPECT_THROW(two_hop_neighborhood(star, 6), ContractError);
}

TEST(DensityTest, Examples) {
  auto k3 = complete_graph(3);
  EXPECT_DOUBLE_EQ(density(induced(k3, VertexSet::all(3))), 1.0);
  auto star = star_graph(3);  // 4 vertices, 3 edges
  EXPECT_DOUBLE_EQ(density(induced(star, VertexSet::all(4))), 0.5);
  EXPECT_THROW(density(induced(k3, VertexSet::single(0))), ContractError);
}

TEST(DensityTest, CompleteGraphsAndTrees) {
  for (std::size_t t = 2; t <= 8; ++t) {
    EXPECT_DOUBLE_EQ(density(induced(complete_graph(t), VertexSet::all(t))), 1.0);
    auto tree = path_graph(t);
    const double expected = 2.0 * static_cast<double>(t - 1) / static_cast<double>(t * (t - 1));
    EXPECT_DOUBLE_EQ(density(induced(tree, VertexSet::all(t))), expected);
  }
}

TEST(DensityTest, CelegansSizedGraph) {
  // Direct evaluation of 2m / (n(n-1)) for n = 453, m = 2025.
  EXPECT_NEAR(2.0 * 2025 / (453.0 * 452.0), 0.019779, 1e-6);
}

TEST(ConnectivityTest, Basics) {
  auto g = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {1, 2}, {3, 4}});
  EXPECT_TRUE(is_connected(g, VertexSet{0, 1, 2}));
  EXPECT_FALSE(is_connected(g, VertexSet{0, 2}));
  EXPECT_FALSE(is_connected(g, VertexSet{0, 1, 3}));
  EXPECT_TRUE(is_connected(g, VertexSet::single(4)));
  EXPECT_FALSE(is_connected(g, VertexSet{}));
}

}  // namespace
}  // namespace pcddp
