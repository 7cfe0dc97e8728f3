#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pcddp {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Raised for malformed edge-list input. Carries the 1-based line number
/// (0 when the error is not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised when a caller violates an operation's precondition.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable undirected simple graph in compressed sparse row form.
///
/// Vertices carry dense ids in [0, n). Each neighbor list is sorted
/// ascending, symmetric, and free of self-loops and duplicates. The
/// external label of every vertex is retained for reporting.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph over `n` vertices. Self-loops and duplicate edges
  /// (in either orientation) are dropped. `labels`, when non-empty, must
  /// hold exactly `n` entries; otherwise labels default to the dense ids.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<std::string> labels = {});

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const {
    check_vertex(v);
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }

  std::size_t degree(VertexId v) const {
    check_vertex(v);
    return offsets_[v + 1] - offsets_[v];
  }

  std::size_t max_degree() const noexcept;
  double average_degree() const noexcept;

  /// O(log deg) membership probe on the sorted adjacency.
  bool has_edge(VertexId u, VertexId v) const;

  const std::string& label(VertexId v) const {
    check_vertex(v);
    return labels_[v];
  }
  std::optional<VertexId> find_label(std::string_view label) const;

  /// Every undirected edge once, as (u, v) with u < v, in ascending order.
  std::vector<Edge> edges() const;

  void check_vertex(VertexId v) const {
    if (v >= num_vertices()) {
      throw ContractError("vertex id " + std::to_string(v) + " out of range [0, " +
                          std::to_string(num_vertices()) + ")");
    }
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> targets_;
  std::vector<std::string> labels_;
};

/// Sorted, duplicate-free set of dense vertex ids.
class VertexSet {
 public:
  VertexSet() = default;

  /// Sorts and deduplicates `ids`.
  explicit VertexSet(std::vector<VertexId> ids);
  VertexSet(std::initializer_list<VertexId> ids) : VertexSet(std::vector<VertexId>(ids)) {}

  static VertexSet single(VertexId v) { return VertexSet(std::vector<VertexId>{v}); }
  static VertexSet all(std::size_t n);

  bool contains(VertexId v) const noexcept;
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::span<const VertexId> members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  bool is_subset_of(const VertexSet& other) const;

  /// Throws ContractError unless every member is below `n`.
  void check_within(std::size_t n) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<VertexId> members_;
};

/// A vertex subset viewed together with its induced edges.
class InducedSubgraph {
 public:
  InducedSubgraph(const Graph& parent, VertexSet members);

  const Graph& parent() const noexcept { return *parent_; }
  const VertexSet& members() const noexcept { return members_; }
  std::size_t num_vertices() const noexcept { return members_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }

  /// deg(v, G(members)); v must be a member.
  std::size_t local_degree(VertexId v) const;
  std::span<const std::size_t> local_degrees() const noexcept { return local_degree_; }

 private:
  const Graph* parent_;
  VertexSet members_;
  std::vector<std::size_t> local_degree_;  // parallel to members_
  std::size_t num_edges_ = 0;
};

InducedSubgraph induced(const Graph& g, VertexSet s);

/// {v} ∪ N(v) ∪ N(N(v)).
VertexSet two_hop_neighborhood(const Graph& g, VertexId v);

/// 2|E| / (|V|(|V|-1)). Throws ContractError below two members, where the
/// ratio is undefined.
double density(const InducedSubgraph& sub);

/// True when `s` induces a connected subgraph (the empty set is not).
bool is_connected(const Graph& g, const VertexSet& s);

// --- edge-list I/O --------------------------------------------------------

struct EdgeListOptions {
  /// Treat the first data line as an "n m" (or MatrixMarket "rows cols nnz")
  /// size line. Auto-enabled when a MatrixMarket banner is present.
  bool size_header = false;
};

/// Parses whitespace-separated edge lines. Lines starting with '%' or '#'
/// are comments; columns past the second (weights, timestamps) are ignored.
/// Integer-only label sets get dense ids in ascending numeric order, other
/// label sets in first-appearance order.
Graph parse_edge_list(std::istream& in, const EdgeListOptions& options = {});
Graph load_edge_list(const std::string& path, const EdgeListOptions& options = {});

/// Writes "label label" lines, one per undirected edge, ascending by id.
void write_edge_list(const Graph& g, std::ostream& out);

}  // namespace pcddp
