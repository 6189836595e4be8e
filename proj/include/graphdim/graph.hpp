#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace graphdim {

/// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<int> members);
  static VertexSet range(int n);

  bool contains(int v) const;
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  const std::vector<int>& members() const { return members_; }

  VertexSet set_union(const VertexSet& other) const;
  VertexSet set_minus(const VertexSet& other) const;
  VertexSet set_intersect(const VertexSet& other) const;

  bool operator==(const VertexSet&) const = default;
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

 private:
  std::vector<int> members_;
};

/// Simple undirected graph on dense vertex ids 0..n-1. Immutable after
/// construction. Self-loops and parallel edges are rejected; every edge is
/// stored once as (u, v) with u < v, and that pair also fixes the edge
/// orientation u -> v used by the homology code.
class Graph {
 public:
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const;
  bool has_edge(int u, int v) const;
  // Position of {u, v} in the sorted edge list, -1 when absent.
  int edge_index(int u, int v) const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// View of the subgraph of `parent` induced by `vertices`; the edge set is
/// always derived from the parent, never stored.
struct InducedSubgraph {
  const Graph* parent;
  VertexSet vertices;

  int degree_of(int v) const;  // degree within the induced subgraph
  std::vector<std::pair<int, int>> edges() const;
  int edge_count() const;
  // Relabeled copy on 0..k-1; vertices()[i] of the view becomes vertex i.
  Graph materialize() const;
};

InducedSubgraph induced(const Graph& g, const VertexSet& s);

std::vector<VertexSet> components(const Graph& g);
std::vector<VertexSet> components(const InducedSubgraph& h);

struct ForestSummary {
  bool is_forest;
  VertexSet leaves;    // induced degree 1
  VertexSet isolated;  // induced degree 0
  int component_count;
};

ForestSummary forest_summary(const InducedSubgraph& h);
inline bool is_forest(const InducedSubgraph& h) { return forest_summary(h).is_forest; }

// Graph families. All are deterministic; erdos_renyi is deterministic in
// (n, p, seed) across platforms.
Graph path_graph(int n);
Graph cycle_graph(int n);  // n >= 3
Graph star_graph(int n);   // center 0, leaves 1..n-1
Graph complete_graph(int n);
Graph complete_bipartite_graph(int a, int b);
Graph complete_binary_tree(int depth);  // depth >= 1, 2^depth - 1 vertices
Graph grid2_graph(int cols);            // 2 x cols grid, vertex (r, c) = 2c + r
Graph petersen_graph();
Graph erdos_renyi(int n, double p, std::uint64_t seed);

}  // namespace graphdim
