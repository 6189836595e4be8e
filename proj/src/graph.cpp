#include "graphdim/graph.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace graphdim {

VertexSet::VertexSet(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::range(int n) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) m[i] = i;
  VertexSet s;
  s.members_ = std::move(m);
  return s;
}

bool VertexSet::contains(int v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet VertexSet::set_union(const VertexSet& other) const {
  std::vector<int> out;
  out.reserve(members_.size() + other.members_.size());
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out));
  VertexSet s;
  s.members_ = std::move(out);
  return s;
}

VertexSet VertexSet::set_minus(const VertexSet& other) const {
  std::vector<int> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out));
  VertexSet s;
  s.members_ = std::move(out);
  return s;
}

VertexSet VertexSet::set_intersect(const VertexSet& other) const {
  std::vector<int> out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out));
  VertexSet s;
  s.members_ = std::move(out);
  return s;
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 1) throw std::invalid_argument("graph must have at least one vertex");
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loop rejected");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("parallel edge rejected");
  edges_ = std::move(edges);
  adjacency_.assign(n_, {});
  for (auto [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& a : adjacency_) std::sort(a.begin(), a.end());
}

const std::vector<int>& Graph::neighbors(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("vertex id out of range");
  return adjacency_[v];
}

int Graph::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

bool Graph::has_edge(int u, int v) const {
  const auto& a = neighbors(u);
  return v != u && std::binary_search(a.begin(), a.end(), v);
}

int Graph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
  if (it == edges_.end() || *it != std::make_pair(u, v)) return -1;
  return static_cast<int>(it - edges_.begin());
}

InducedSubgraph induced(const Graph& g, const VertexSet& s) {
  for (int v : s)
    if (v < 0 || v >= g.vertex_count())
      throw std::out_of_range("induced: vertex id out of range");
  return InducedSubgraph{&g, s};
}

int InducedSubgraph::degree_of(int v) const {
  if (!vertices.contains(v)) throw std::out_of_range("vertex not in subgraph");
  int d = 0;
  for (int w : parent->neighbors(v))
    if (vertices.contains(w)) ++d;
  return d;
}

std::vector<std::pair<int, int>> InducedSubgraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (auto [u, v] : parent->edges())
    if (vertices.contains(u) && vertices.contains(v)) out.emplace_back(u, v);
  return out;
}

int InducedSubgraph::edge_count() const { return static_cast<int>(edges().size()); }

Graph InducedSubgraph::materialize() const {
  std::vector<int> index(parent->vertex_count(), -1);
  const auto& m = vertices.members();
  for (std::size_t i = 0; i < m.size(); ++i) index[m[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> es;
  for (auto [u, v] : edges()) es.emplace_back(index[u], index[v]);
  if (m.empty()) throw std::invalid_argument("cannot materialize an empty subgraph");
  return Graph(static_cast<int>(m.size()), std::move(es));
}

namespace {

std::vector<VertexSet> components_of(const std::vector<int>& verts,
                                     const std::vector<std::vector<int>>& adj) {
  std::vector<VertexSet> out;
  std::vector<char> seen(adj.size(), 0);
  std::vector<char> member(adj.size(), 0);
  for (int v : verts) member[v] = 1;
  for (int v : verts) {
    if (seen[v]) continue;
    std::vector<int> comp;
    std::vector<int> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int w : adj[u]) {
        if (member[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    out.emplace_back(std::move(comp));
  }
  // BFS over sorted vertices already yields smallest-member order.
  return out;
}

}  // namespace

std::vector<VertexSet> components(const Graph& g) {
  std::vector<std::vector<int>> adj(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) adj[v] = g.neighbors(v);
  return components_of(VertexSet::range(g.vertex_count()).members(), adj);
}

std::vector<VertexSet> components(const InducedSubgraph& h) {
  std::vector<std::vector<int>> adj(h.parent->vertex_count());
  for (int v : h.vertices)
    for (int w : h.parent->neighbors(v))
      if (h.vertices.contains(w)) adj[v].push_back(w);
  return components_of(h.vertices.members(), adj);
}

ForestSummary forest_summary(const InducedSubgraph& h) {
  std::vector<int> leaves;
  std::vector<int> isolated;
  for (int v : h.vertices) {
    int d = h.degree_of(v);
    if (d == 1) leaves.push_back(v);
    if (d == 0) isolated.push_back(v);
  }
  const int c = static_cast<int>(components(h).size());
  const bool forest = h.edge_count() == h.vertices.size() - c;
  return ForestSummary{forest, VertexSet(std::move(leaves)),
                       VertexSet(std::move(isolated)), c};
}

Graph path_graph(int n) {
  if (n < 1) throw std::invalid_argument("path: n >= 1 required");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle: n >= 3 required");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(e));
}

Graph star_graph(int n) {
  if (n < 1) throw std::invalid_argument("star: n >= 1 required");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(0, i);
  return Graph(n, std::move(e));
}

Graph complete_graph(int n) {
  if (n < 1) throw std::invalid_argument("complete: n >= 1 required");
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, std::move(e));
}

Graph complete_bipartite_graph(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("complete-bipartite: both sides >= 1");
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) e.emplace_back(u, a + v);
  return Graph(a + b, std::move(e));
}

Graph complete_binary_tree(int depth) {
  if (depth < 1) throw std::invalid_argument("complete-binary-tree: depth >= 1");
  if (depth > 20) throw std::invalid_argument("complete-binary-tree: depth too large");
  const int n = (1 << depth) - 1;
  std::vector<std::pair<int, int>> e;
  for (int v = 1; v < n; ++v) e.emplace_back((v - 1) / 2, v);
  return Graph(n, std::move(e));
}

Graph grid2_graph(int cols) {
  if (cols < 1) throw std::invalid_argument("grid: cols >= 1 required");
  std::vector<std::pair<int, int>> e;
  for (int c = 0; c < cols; ++c) {
    e.emplace_back(2 * c, 2 * c + 1);  // rung
    if (c + 1 < cols) {
      e.emplace_back(2 * c, 2 * c + 2);
      e.emplace_back(2 * c + 1, 2 * c + 3);
    }
  }
  return Graph(2 * cols, std::move(e));
}

Graph petersen_graph() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, std::move(e));
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("er: n >= 1 required");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("er: p in [0,1] required");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      // (rng >> 11) * 2^-53 is uniform in [0,1) and identical on every
      // platform, unlike std::uniform_real_distribution.
      const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (r < p) e.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(e));
}

}  // namespace graphdim
