#include "graphdim/cycles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "graphdim/exactq.hpp"

namespace graphdim {

IncidenceMatrix incidence(const Graph& g) {
  IncidenceMatrix b;
  b.n = g.vertex_count();
  b.m = g.edge_count();
  b.b.assign(b.n, std::vector<int>(b.m, 0));
  for (int j = 0; j < b.m; ++j) {
    const auto [u, v] = g.edges()[j];
    b.b[u][j] = -1;  // tail
    b.b[v][j] = +1;  // head
  }
  return b;
}

void validate_cycle(const Graph& g, const OrientedCycle& c) {
  const int m = g.edge_count();
  if (static_cast<int>(c.coeff.size()) != m)
    throw std::invalid_argument("cycle: coefficient vector has wrong length");
  for (int x : c.coeff)
    if (x < -1 || x > 1) throw std::invalid_argument("cycle: coefficient outside {-1,0,1}");
  if (c.walk.size() < 2) throw std::invalid_argument("cycle: walk too short");

  std::vector<int> traversed(m, 0);
  const int k = static_cast<int>(c.walk.size());
  for (int i = 0; i < k; ++i) {
    const int x = c.walk[i];
    const int y = c.walk[(i + 1) % k];
    const int j = g.edge_index(x, y);
    if (j < 0) throw std::invalid_argument("cycle: walk step is not an edge");
    if (traversed[j] != 0) throw std::invalid_argument("cycle: repeated edge in walk");
    traversed[j] = x < y ? +1 : -1;
  }
  if (traversed != c.coeff)
    throw std::invalid_argument("cycle: coefficients do not match the walk");

  // Kernel condition B * c = 0, in integers.
  const IncidenceMatrix b = incidence(g);
  for (int v = 0; v < b.n; ++v) {
    long s = 0;
    for (int j = 0; j < m; ++j) s += static_cast<long>(b.b[v][j]) * c.coeff[j];
    if (s != 0) throw std::invalid_argument("cycle: not in the kernel of the incidence matrix");
  }
}

HomologyDims homology_dims(const Graph& g) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  const int c = static_cast<int>(components(g).size());
  HomologyDims dims{c, m - n + c};

  // Cross-validation by exact rank: nullity(B^t) = n - rank, nullity(B) = m - rank.
  exactq::IntMatrix b(n, std::vector<exactq::Int>(m, exactq::Int(0)));
  for (int j = 0; j < m; ++j) {
    const auto [u, v] = g.edges()[j];
    b[u][j] = -1;
    b[v][j] = 1;
  }
  const int rank = exactq::rank_bareiss(std::move(b));
  if (n - rank != dims.h0 || m - rank != dims.h1)
    throw std::logic_error("homology dimensions disagree with exact rank");
  return dims;
}

namespace {

OrientedCycle cycle_from_walk(const Graph& g, std::vector<int> walk) {
  OrientedCycle c;
  c.coeff.assign(g.edge_count(), 0);
  const int k = static_cast<int>(walk.size());
  for (int i = 0; i < k; ++i) {
    const int x = walk[i];
    const int y = walk[(i + 1) % k];
    const int j = g.edge_index(x, y);
    c.coeff[j] = x < y ? +1 : -1;
  }
  c.walk = std::move(walk);
  return c;
}

// Closed walk from a kernel vector with entries in {-1,0,1} (Hierholzer).
// Returns an empty walk when the support is empty or disconnected.
std::vector<int> walk_from_coeff(const Graph& g, const std::vector<int>& coeff) {
  std::map<int, std::vector<std::pair<int, int>>> out_edges;  // tail -> (head, edge)
  std::set<int> support_vertices;
  int support_size = 0;
  for (int j = 0; j < g.edge_count(); ++j) {
    if (coeff[j] == 0) continue;
    ++support_size;
    auto [u, v] = g.edges()[j];
    if (coeff[j] < 0) std::swap(u, v);  // traverse head -> tail
    out_edges[u].emplace_back(v, j);
    support_vertices.insert(u);
    support_vertices.insert(v);
  }
  if (support_size == 0) return {};
  for (auto& [u, outs] : out_edges) std::sort(outs.begin(), outs.end());

  // Connectivity of the support.
  {
    std::set<int> seen;
    std::vector<int> stack{*support_vertices.begin()};
    seen.insert(stack[0]);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int j = 0; j < g.edge_count(); ++j) {
        if (coeff[j] == 0) continue;
        const auto [a, b] = g.edges()[j];
        int other = -1;
        if (a == u) other = b;
        if (b == u) other = a;
        if (other >= 0 && !seen.count(other)) {
          seen.insert(other);
          stack.push_back(other);
        }
      }
    }
    if (seen.size() != support_vertices.size()) return {};
  }

  // Hierholzer, smallest start vertex, smallest head first.
  std::map<int, std::size_t> next_out;
  std::vector<int> circuit;
  std::vector<int> stack{*support_vertices.begin()};
  while (!stack.empty()) {
    const int u = stack.back();
    auto& outs = out_edges[u];
    std::size_t& idx = next_out[u];
    if (idx < outs.size()) {
      stack.push_back(outs[idx].first);
      ++idx;
    } else {
      circuit.push_back(u);
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  if (static_cast<int>(circuit.size()) != support_size + 1) return {};  // not a single circuit
  circuit.pop_back();  // drop the repeated start
  return circuit;
}

}  // namespace

std::vector<OrientedCycle> fundamental_cycle_basis(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> parent(n, -2);
  std::vector<std::pair<int, int>> non_tree;

  // Deterministic DFS forest, smallest neighbor first.
  for (int root = 0; root < n; ++root) {
    if (parent[root] != -2) continue;
    parent[root] = -1;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i >= g.neighbors(v).size()) {
        stack.pop_back();
        continue;
      }
      const int w = g.neighbors(v)[i++];
      if (parent[w] == -2) {
        parent[w] = v;
        stack.emplace_back(w, 0);
      } else if (w != parent[v] && v < w) {
        non_tree.emplace_back(v, w);  // recorded once per chord
      }
    }
  }
  // Chords in edge-list order for a deterministic basis.
  std::sort(non_tree.begin(), non_tree.end(),
            [&](auto a, auto b) { return g.edge_index(a.first, a.second) <
                                         g.edge_index(b.first, b.second); });

  auto path_to_root = [&](int v) {
    std::vector<int> path{v};
    while (parent[path.back()] >= 0) path.push_back(parent[path.back()]);
    return path;
  };

  std::vector<OrientedCycle> basis;
  for (auto [a, b] : non_tree) {
    std::vector<int> pa = path_to_root(a);
    std::vector<int> pb = path_to_root(b);
    // Strip the common tail above the meeting point.
    while (pa.size() > 1 && pb.size() > 1 && pa[pa.size() - 2] == pb[pb.size() - 2]) {
      pa.pop_back();
      pb.pop_back();
    }
    // walk: b .. lca .. a, closed by the chord a -> b.
    std::vector<int> walk(pb.begin(), pb.end());
    for (auto it = pa.rbegin() + 1; it != pa.rend(); ++it) walk.push_back(*it);
    OrientedCycle c = cycle_from_walk(g, std::move(walk));
    validate_cycle(g, c);
    basis.push_back(std::move(c));
  }
  const HomologyDims dims = homology_dims(g);
  if (static_cast<int>(basis.size()) != dims.h1)
    throw std::logic_error("fundamental basis size disagrees with dim H1");
  return basis;
}

CycleIntersection cycle_intersection_graph(const Graph& g,
                                           const std::vector<OrientedCycle>& cycles) {
  const int k = static_cast<int>(cycles.size());
  if (k == 0) throw std::invalid_argument("cycle intersection: no cycles given");
  for (const auto& c : cycles) validate_cycle(g, c);
  std::vector<std::vector<int>> counts(k, std::vector<int>(k, 0));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      int shared = 0;
      for (int e = 0; e < g.edge_count(); ++e)
        if (cycles[i].coeff[e] != 0 && cycles[j].coeff[e] != 0) ++shared;
      counts[i][j] = counts[j][i] = shared;
      if (shared > 0) edges.emplace_back(i, j);
    }
  }
  return CycleIntersection{Graph(k, std::move(edges)), std::move(counts)};
}

long cycle_forest_bound_value(int dim_h0, int dim_h1, int forest_size,
                              int leaf_selection_size) {
  return static_cast<long>(dim_h0) + dim_h1 - forest_size + leaf_selection_size;
}

CycleForestCertificate cycle_forest_bound(const Graph& g,
                                          const std::vector<OrientedCycle>& cycles) {
  CycleIntersection inter = cycle_intersection_graph(g, cycles);
  const int k = static_cast<int>(cycles.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (inter.shared_edge_counts[i][j] > 1)
        throw std::invalid_argument("cycles " + std::to_string(i) + " and " +
                                    std::to_string(j) + " share " +
                                    std::to_string(inter.shared_edge_counts[i][j]) +
                                    " edges (at most one allowed)");
  const InducedSubgraph whole = induced(inter.graph, VertexSet::range(k));
  const ForestSummary summary = forest_summary(whole);
  if (!summary.is_forest)
    throw std::invalid_argument("cycle intersection graph is not a forest");
  if (!summary.isolated.empty())
    throw std::invalid_argument("cycle " + std::to_string(summary.isolated.members()[0]) +
                                " is isolated in the intersection graph");
  const VertexSet l = leaf_selection(whole);
  const HomologyDims dims = homology_dims(g);
  const long bound = cycle_forest_bound_value(dims.h0, dims.h1, k, l.size());
  return CycleForestCertificate{cycles, inter.graph, l, dims.h0, dims.h1, bound};
}

std::optional<OrientedCycle> cycle_from_coefficients(const Graph& g, std::vector<int> coeff) {
  if (static_cast<int>(coeff.size()) != g.edge_count()) return std::nullopt;
  for (int x : coeff)
    if (x < -1 || x > 1) return std::nullopt;
  std::vector<int> walk = walk_from_coeff(g, coeff);
  if (walk.empty()) return std::nullopt;
  OrientedCycle c = cycle_from_walk(g, std::move(walk));
  if (c.coeff != coeff) return std::nullopt;
  return c;
}

namespace {

// Sign-normalized candidate: first nonzero coefficient positive.
std::optional<OrientedCycle> make_candidate(const Graph& g, std::vector<int> coeff) {
  auto first = std::find_if(coeff.begin(), coeff.end(), [](int x) { return x != 0; });
  if (first == coeff.end()) return std::nullopt;
  if (*first < 0)
    for (int& x : coeff) x = -x;
  return cycle_from_coefficients(g, std::move(coeff));
}

}  // namespace

CycleSearchResult search_cycle_forest(const Graph& g, const SearchBudget& budget) {
  std::vector<OrientedCycle> basis = fundamental_cycle_basis(g);
  std::vector<OrientedCycle> candidates;
  std::set<std::vector<int>> seen;
  auto add_candidate = [&](std::vector<int> coeff) {
    if (auto c = make_candidate(g, std::move(coeff))) {
      if (seen.insert(c->coeff).second) candidates.push_back(std::move(*c));
    }
  };
  for (const auto& c : basis) add_candidate(c.coeff);
  const int nb = static_cast<int>(basis.size());
  for (int i = 0; i < nb; ++i) {
    for (int j = i + 1; j < nb; ++j) {
      std::vector<int> sum(g.edge_count()), diff(g.edge_count());
      for (int e = 0; e < g.edge_count(); ++e) {
        sum[e] = basis[i].coeff[e] + basis[j].coeff[e];
        diff[e] = basis[i].coeff[e] - basis[j].coeff[e];
      }
      add_candidate(std::move(sum));
      add_candidate(std::move(diff));
    }
  }

  CycleSearchResult result;
  const int k = static_cast<int>(candidates.size());
  if (k < 2) return result;  // nothing can avoid an isolated vertex

  // Pairwise shared-edge counts once.
  std::vector<std::vector<int>> shared(k, std::vector<int>(k, 0));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      int s = 0;
      for (int e = 0; e < g.edge_count(); ++e)
        if (candidates[i].coeff[e] != 0 && candidates[j].coeff[e] != 0) ++s;
      shared[i][j] = shared[j][i] = s;
    }

  auto evaluate = [&](const std::vector<int>& subset) -> std::optional<long> {
    // Pairwise constraint and forest/isolated structure on the subset.
    const int s = static_cast<int>(subset.size());
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < s; ++a)
      for (int b = a + 1; b < s; ++b) {
        const int count = shared[subset[a]][subset[b]];
        if (count > 1) return std::nullopt;
        if (count == 1) edges.emplace_back(a, b);
      }
    Graph ig(s, std::move(edges));
    const InducedSubgraph whole = induced(ig, VertexSet::range(s));
    const ForestSummary summary = forest_summary(whole);
    if (!summary.is_forest || !summary.isolated.empty()) return std::nullopt;
    const VertexSet l = leaf_selection(whole);
    return static_cast<long>(s) - l.size();  // maximize |F| - |L|
  };

  long best_gain = -1;
  std::vector<int> best_subset;
  if (k <= 18) {
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<int> subset;
      for (int i = 0; i < k; ++i)
        if (mask & (1u << i)) subset.push_back(i);
      if (subset.size() < 2) continue;
      if (auto gain = evaluate(subset); gain && *gain > best_gain) {
        best_gain = *gain;
        best_subset = subset;
      }
    }
  } else {
    // Greedy chain growth from every start pair, budget-limited.
    result.exhaustive = false;
    long ticks = 0;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (shared[i][j] != 1) continue;
        if (++ticks > budget.node_limit) break;
        std::vector<int> subset{i, j};
        bool grew = true;
        while (grew) {
          grew = false;
          for (int c = 0; c < k; ++c) {
            if (std::find(subset.begin(), subset.end(), c) != subset.end()) continue;
            std::vector<int> trial = subset;
            trial.push_back(c);
            auto gain = evaluate(trial);
            if (gain && *gain > *evaluate(subset)) {
              subset = std::move(trial);
              grew = true;
              break;
            }
          }
        }
        if (auto gain = evaluate(subset); gain && *gain > best_gain) {
          best_gain = *gain;
          best_subset = subset;
        }
      }
    }
  }

  if (best_gain < 0) return result;
  std::vector<OrientedCycle> chosen;
  for (int i : best_subset) chosen.push_back(candidates[i]);
  result.best = cycle_forest_bound(g, chosen);
  return result;
}

}  // namespace graphdim
