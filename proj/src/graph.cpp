#include "pcddp/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace pcddp {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != n) {
    throw ContractError("label count does not match vertex count");
  }
  if (n > std::size_t{std::numeric_limits<VertexId>::max()}) {
    throw ContractError("too many vertices");
  }
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ContractError("edge endpoint out of range");
    }
    if (u == v) continue;
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : directed) ++g.offsets_[u + 1];
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.targets_.reserve(directed.size());
  for (auto [u, v] : directed) g.targets_.push_back(v);

  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  g.labels_ = std::move(labels);
  return g;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v + 1 < offsets_.size(); ++v) {
    best = std::max(best, offsets_[v + 1] - offsets_[v]);
  }
  return best;
}

double Graph::average_degree() const noexcept {
  if (num_vertices() == 0) return 0.0;
  return 2.0 * static_cast<double>(num_edges()) / static_cast<double>(num_vertices());
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto nu = neighbors(u);
  check_vertex(v);
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::optional<VertexId> Graph::find_label(std::string_view label) const {
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == label) return static_cast<VertexId>(v);
  }
  return std::nullopt;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (VertexId u = 0; u < num_vertices(); ++u) {
    for (VertexId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

// --- VertexSet ------------------------------------------------------------

VertexSet::VertexSet(std::vector<VertexId> ids) : members_(std::move(ids)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::all(std::size_t n) {
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  return VertexSet(std::move(ids));
}

bool VertexSet::contains(VertexId v) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), v);
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

void VertexSet::check_within(std::size_t n) const {
  if (!members_.empty() && members_.back() >= n) {
    throw ContractError("vertex set member " + std::to_string(members_.back()) +
                        " out of range [0, " + std::to_string(n) + ")");
  }
}

// --- InducedSubgraph ------------------------------------------------------

InducedSubgraph::InducedSubgraph(const Graph& parent, VertexSet members)
    : parent_(&parent), members_(std::move(members)) {
  members_.check_within(parent.num_vertices());
  local_degree_.reserve(members_.size());
  std::size_t twice_edges = 0;
  for (VertexId v : members_) {
    auto nv = parent.neighbors(v);
    std::size_t d = 0;
    // Merge the two sorted lists.
    auto a = nv.begin();
    auto b = members_.begin();
    while (a != nv.end() && b != members_.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++d;
        ++a;
        ++b;
      }
    }
    local_degree_.push_back(d);
    twice_edges += d;
  }
  num_edges_ = twice_edges / 2;
}

std::size_t InducedSubgraph::local_degree(VertexId v) const {
  auto span = members_.members();
  auto it = std::lower_bound(span.begin(), span.end(), v);
  if (it == span.end() || *it != v) {
    throw ContractError("vertex " + std::to_string(v) + " is not a member of the subgraph");
  }
  return local_degree_[static_cast<std::size_t>(it - span.begin())];
}

InducedSubgraph induced(const Graph& g, VertexSet s) { return InducedSubgraph(g, std::move(s)); }

VertexSet two_hop_neighborhood(const Graph& g, VertexId v) {
  std::vector<VertexId> out{v};
  for (VertexId u : g.neighbors(v)) {
    out.push_back(u);
    for (VertexId w : g.neighbors(u)) out.push_back(w);
  }
  return VertexSet(std::move(out));
}

double density(const InducedSubgraph& sub) {
  const auto n = sub.num_vertices();
  if (n < 2) {
    throw ContractError("density is undefined for fewer than two vertices");
  }
  return 2.0 * static_cast<double>(sub.num_edges()) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

bool is_connected(const Graph& g, const VertexSet& s) {
  if (s.empty()) return false;
  s.check_within(g.num_vertices());
  auto members = s.members();
  std::vector<char> seen(members.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (VertexId w : g.neighbors(members[i])) {
      auto it = std::lower_bound(members.begin(), members.end(), w);
      if (it == members.end() || *it != w) continue;
      auto j = static_cast<std::size_t>(it - members.begin());
      if (!seen[j]) {
        seen[j] = 1;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == members.size();
}

// --- edge-list I/O --------------------------------------------------------

namespace {

bool is_canonical_uint(std::string_view s) {
  if (s.empty() || s.size() > 19) return false;
  if (s.size() > 1 && s.front() == '0') return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::uint64_t to_uint(std::string_view s) {
  std::uint64_t value = 0;
  std::from_chars(s.data(), s.data() + s.size(), value);
  return value;
}

class LabelTable {
 public:
  VertexId intern(const std::string& label) {
    auto [it, inserted] = ids_.try_emplace(label, static_cast<VertexId>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
  }
  std::size_t size() const { return labels_.size(); }

  // Renumbers ids so that integer labels come out in ascending numeric
  // order. Returns the old→new mapping (identity if any label is not a
  // canonical unsigned integer).
  std::vector<VertexId> numeric_order() const {
    std::vector<VertexId> remap(labels_.size());
    std::iota(remap.begin(), remap.end(), VertexId{0});
    if (!std::all_of(labels_.begin(), labels_.end(), is_canonical_uint)) return remap;
    std::vector<VertexId> order(labels_.size());
    std::iota(order.begin(), order.end(), VertexId{0});
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
      return to_uint(labels_[a]) < to_uint(labels_[b]);
    });
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      remap[order[rank]] = static_cast<VertexId>(rank);
    }
    return remap;
  }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::unordered_map<std::string, VertexId> ids_;
  std::vector<std::string> labels_;
};

}  // namespace

Graph parse_edge_list(std::istream& in, const EdgeListOptions& options) {
  LabelTable table;
  std::vector<Edge> edges;
  bool expect_header = options.size_header;
  bool matrix_market = false;
  bool seen_data = false;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '%' || line[first] == '#') {
      if (!seen_data && line.compare(first, 14, "%%MatrixMarket") == 0) {
        expect_header = true;
        matrix_market = true;
      }
      continue;
    }
    std::istringstream fields(line);
    std::string a;
    std::string b;
    if (!(fields >> a >> b)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected two vertex labels",
                       line_no);
    }
    if (!seen_data && expect_header) {
      seen_data = true;
      if (!is_canonical_uint(a) || !is_canonical_uint(b)) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed size header",
                         line_no);
      }
      // MatrixMarket ids are 1-based and the header declares all of them,
      // so isolated vertices survive. Plain "n m" headers carry no labels.
      if (matrix_market) {
        auto rows = std::max(to_uint(a), to_uint(b));
        for (std::uint64_t i = 1; i <= rows; ++i) table.intern(std::to_string(i));
      }
      continue;
    }
    seen_data = true;
    const auto u = table.intern(a);
    edges.emplace_back(u, table.intern(b));
  }

  if (table.size() == 0) {
    throw ParseError("edge list contains no vertices", 0);
  }
  auto remap = table.numeric_order();
  std::vector<std::string> labels(table.size());
  for (std::size_t old = 0; old < remap.size(); ++old) labels[remap[old]] = table.labels()[old];
  for (auto& [u, v] : edges) {
    u = remap[u];
    v = remap[v];
  }
  const auto n = labels.size();
  return Graph::from_edges(n, edges, std::move(labels));
}

Graph load_edge_list(const std::string& path, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open edge list '" + path + "'", 0);
  }
  return parse_edge_list(in, options);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

}  // namespace pcddp
