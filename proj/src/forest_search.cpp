#include "graphdim/forest_search.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>

namespace graphdim {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point end;
  long node_limit;
  long nodes = 0;
  bool exhausted = false;

  explicit Deadline(const SearchBudget& b)
      : end(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(b.time_limit_seconds))),
        node_limit(b.node_limit) {}

  // Checks the time limit every 4096 nodes.
  bool tick() {
    if (exhausted) return false;
    if (++nodes > node_limit || ((nodes & 4095) == 0 && Clock::now() > end))
      exhausted = true;
    return !exhausted;
  }
};

// Union-find with a rollback trail, for incremental acyclicity checks.
struct RollbackDsu {
  std::vector<int> parent;
  std::vector<int> rank_;
  std::vector<std::pair<int*, int>> trail;

  explicit RollbackDsu(int n) : parent(n), rank_(n, 0) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int v) const {
    while (parent[v] != v) v = parent[v];
    return v;
  }
  std::size_t mark() const { return trail.size(); }
  void record(int* slot) { trail.emplace_back(slot, *slot); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    record(&parent[b]);
    parent[b] = a;
    if (rank_[a] == rank_[b]) {
      record(&rank_[a]);
      ++rank_[a];
    }
    return true;
  }
  void rollback(std::size_t to) {
    while (trail.size() > to) {
      *trail.back().first = trail.back().second;
      trail.pop_back();
    }
  }
};

struct ForestObjective {
  long bound;
  int forest_size;  // |chosen|, larger preferred on ties

  bool better_than(const ForestObjective& other) const {
    if (bound != other.bound) return bound < other.bound;
    return forest_size > other.forest_size;
  }
};

// Bound of an acyclic chosen set (weak mode requires no isolated vertices;
// callers guarantee that). Returns |G| - sum over components of their
// contribution: s - l + 1 for a component with s >= 2 vertices and l leaves,
// 1 per isolated vertex in strong mode.
long bound_of(const Graph& g, const VertexSet& chosen, BoundMode mode) {
  const InducedSubgraph h = induced(g, chosen);
  long m = 0;
  for (const auto& comp : components(h)) {
    if (comp.size() == 1) {
      if (mode == BoundMode::strong) m += 1;
      continue;
    }
    int leaves = 0;
    for (int v : comp)
      if (h.degree_of(v) == 1) ++leaves;
    m += comp.size() - leaves + 1;
  }
  return g.vertex_count() - m;
}

ForestCertificate make_certificate(const Graph& g, const VertexSet& chosen, BoundMode mode,
                                   bool optimal) {
  const InducedSubgraph h = induced(g, chosen);
  const ForestSummary summary = forest_summary(h);
  if (!summary.is_forest) throw std::logic_error("certificate construction: not a forest");
  if (mode == BoundMode::weak && !summary.isolated.empty())
    throw std::logic_error("certificate construction: weak mode with isolated vertices");
  ForestCertificate cert;
  cert.mode = mode;
  cert.optimal = optimal;
  cert.forest = chosen;
  cert.isolated = summary.isolated;
  cert.leaf_selection = chosen.empty() ? VertexSet{} : leaf_selection(h);
  const long n = g.vertex_count();
  const long f_size = chosen.size() - summary.isolated.size();
  const long l = summary.leaves.size();
  const long c_nontrivial = summary.component_count - summary.isolated.size();
  cert.weak_bound = n - f_size + l - c_nontrivial;
  cert.strong_bound = cert.weak_bound - summary.isolated.size();
  return cert;
}

struct ExactSearch {
  const Graph& g;
  BoundMode mode;
  Deadline deadline;
  int n;
  std::vector<char> chosen;
  std::vector<int> chosen_degree;
  RollbackDsu dsu;
  int chosen_count = 0;
  ForestObjective best;
  std::vector<int> best_set;

  ExactSearch(const Graph& graph, BoundMode m, const SearchBudget& budget)
      : g(graph),
        mode(m),
        deadline(budget),
        n(graph.vertex_count()),
        chosen(n, 0),
        chosen_degree(n, 0),
        dsu(n),
        best{graph.vertex_count(), 0} {}  // the empty forest is always feasible

  void evaluate_complete() {
    // Objective contribution m: per nontrivial component s - l + 1, counted
    // as +1 per vertex, -1 per leaf, +1 per DSU root; isolated vertices add 1
    // in strong mode and are infeasible in weak mode.
    long m = 0;
    for (int v = 0; v < n; ++v) {
      if (!chosen[v]) continue;
      if (chosen_degree[v] == 0) {
        if (mode == BoundMode::weak) return;
        m += 1;
        continue;
      }
      m += 1;
      if (chosen_degree[v] == 1) m -= 1;
      if (dsu.find(v) == v) m += 1;
    }
    const long obj = n - m;
    const ForestObjective cand{obj, chosen_count};
    if (cand.better_than(best)) {
      best = cand;
      best_set.clear();
      for (int v = 0; v < n; ++v)
        if (chosen[v]) best_set.push_back(v);
    }
  }

  void dfs(int v) {
    if (!deadline.tick()) return;
    const int rem = n - v;
    // Optimistic objective if every undecided vertex still joins.
    long optimistic_m;
    if (mode == BoundMode::strong) {
      optimistic_m = chosen_count + rem;
    } else {
      optimistic_m = chosen_count + rem >= 2 ? chosen_count + rem - 1 : 0;
    }
    const long optimistic_obj = n - optimistic_m;
    if (optimistic_obj > best.bound) return;
    if (optimistic_obj == best.bound && chosen_count + rem < best.forest_size) return;
    if (v == n) {
      evaluate_complete();
      return;
    }

    // Include v when it closes no cycle; include-first keeps ties
    // lexicographically smallest.
    bool acyclic = true;
    const std::size_t mark = dsu.mark();
    std::vector<int> bumped;
    for (int w : g.neighbors(v)) {
      if (w >= v || !chosen[w]) continue;
      if (!dsu.unite(v, w)) {
        acyclic = false;
        break;
      }
      ++chosen_degree[w];
      ++chosen_degree[v];
      bumped.push_back(w);
    }
    if (acyclic) {
      chosen[v] = 1;
      ++chosen_count;
      dfs(v + 1);
      --chosen_count;
      chosen[v] = 0;
    }
    for (int w : bumped) {
      --chosen_degree[w];
      --chosen_degree[v];
    }
    dsu.rollback(mark);

    dfs(v + 1);
  }
};

int degree_in(const Graph& g, const std::vector<char>& in_set, int v) {
  int d = 0;
  for (int w : g.neighbors(v))
    if (in_set[w]) ++d;
  return d;
}

bool addition_keeps_acyclic(const Graph& g, const std::vector<char>& in_set, int v) {
  // v may join at most one existing component; walk components via BFS.
  std::vector<int> hits;
  for (int w : g.neighbors(v))
    if (in_set[w]) hits.push_back(w);
  if (hits.size() <= 1) return true;
  // Two chosen neighbors in one component would close a cycle.
  std::vector<char> seen(g.vertex_count(), 0);
  int in_first = 0;
  std::vector<int> stack{hits[0]};
  seen[hits[0]] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(u)) {
      if (!in_set[w] || seen[w]) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  for (int h : hits)
    if (seen[h]) ++in_first;
  if (in_first > 1) return false;
  // Remaining neighbors must lie in pairwise different components.
  for (std::size_t i = 1; i < hits.size(); ++i) {
    if (seen[hits[i]]) continue;
    std::vector<int> stack2{hits[i]};
    seen[hits[i]] = 1;
    while (!stack2.empty()) {
      const int u = stack2.back();
      stack2.pop_back();
      for (int w : g.neighbors(u)) {
        if (!in_set[w] || seen[w]) continue;
        seen[w] = 1;
        stack2.push_back(w);
      }
    }
    for (std::size_t j = i + 1; j < hits.size(); ++j)
      if (seen[hits[j]]) return false;
  }
  return true;
}

std::vector<int> degeneracy_order(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> deg(n);
  std::vector<char> removed(n, 0);
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (!removed[v] && (pick < 0 || deg[v] < deg[pick])) pick = v;
    removed[pick] = 1;
    order.push_back(pick);
    for (int w : g.neighbors(pick))
      if (!removed[w]) --deg[w];
  }
  return order;
}

VertexSet drop_isolated(const Graph& g, const std::vector<char>& in_set) {
  std::vector<int> keep;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (in_set[v] && degree_in(g, in_set, v) > 0) keep.push_back(v);
  return VertexSet(std::move(keep));
}

ForestCertificate heuristic_forest(const Graph& g, BoundMode mode, const SearchBudget& budget) {
  const int n = g.vertex_count();
  Deadline deadline(budget);
  std::vector<char> in_set(n, 0);
  for (int v : degeneracy_order(g)) {
    if (addition_keeps_acyclic(g, in_set, v)) in_set[v] = 1;
  }

  auto current_bound = [&](const std::vector<char>& s) {
    const VertexSet chosen =
        mode == BoundMode::weak
            ? drop_isolated(g, s)
            : [&] {
                std::vector<int> m;
                for (int v = 0; v < n; ++v)
                  if (s[v]) m.push_back(v);
                return VertexSet(std::move(m));
              }();
    return bound_of(g, chosen, mode);
  };

  long bound = current_bound(in_set);
  bool improved = true;
  while (improved && deadline.tick()) {
    improved = false;
    for (int v = 0; v < n && !improved; ++v) {
      if (in_set[v]) continue;
      if (!addition_keeps_acyclic(g, in_set, v)) continue;
      in_set[v] = 1;
      const long b = current_bound(in_set);
      if (b < bound) {
        bound = b;
        improved = true;
      } else {
        in_set[v] = 0;
      }
    }
    for (int u = 0; u < n && !improved; ++u) {
      if (!in_set[u]) continue;
      for (int v = 0; v < n && !improved; ++v) {
        if (in_set[v]) continue;
        in_set[u] = 0;
        if (addition_keeps_acyclic(g, in_set, v)) {
          in_set[v] = 1;
          const long b = current_bound(in_set);
          if (b < bound) {
            bound = b;
            improved = true;
            continue;
          }
          in_set[v] = 0;
        }
        in_set[u] = 1;
      }
    }
  }

  const VertexSet chosen = mode == BoundMode::weak ? drop_isolated(g, in_set) : [&] {
    std::vector<int> m;
    for (int v = 0; v < n; ++v)
      if (in_set[v]) m.push_back(v);
    return VertexSet(std::move(m));
  }();
  return make_certificate(g, chosen, mode, false);
}

}  // namespace

long certificate_bound(const ForestCertificate& cert) {
  return cert.mode == BoundMode::weak ? cert.weak_bound : cert.strong_bound;
}

void validate_certificate(const Graph& g, const ForestCertificate& cert) {
  const InducedSubgraph h = induced(g, cert.forest);
  const ForestSummary summary = forest_summary(h);
  if (!summary.is_forest) throw std::runtime_error("certificate: not an induced forest");
  if (summary.isolated != cert.isolated)
    throw std::runtime_error("certificate: isolated set mismatch");
  if (cert.mode == BoundMode::weak && !cert.isolated.empty())
    throw std::runtime_error("certificate: weak mode forbids isolated vertices");
  // Leaf selection: all leaves except one per nontrivial component, and the
  // stored selection must be exactly the smallest-id-out rule.
  if (!cert.forest.empty() && cert.leaf_selection != leaf_selection(h))
    throw std::runtime_error("certificate: leaf selection mismatch");
  const long n = g.vertex_count();
  const long f_size = cert.forest.size() - summary.isolated.size();
  const long l = summary.leaves.size();
  const long c_nontrivial = summary.component_count - summary.isolated.size();
  if (cert.weak_bound != n - f_size + l - c_nontrivial)
    throw std::runtime_error("certificate: weak bound arithmetic mismatch");
  if (cert.strong_bound != cert.weak_bound - cert.isolated.size())
    throw std::runtime_error("certificate: strong bound arithmetic mismatch");
  if (cert.leaf_selection.size() != l - c_nontrivial)
    throw std::runtime_error("certificate: |L| != l(F) - c(F)");
}

VertexSet leaf_selection(const InducedSubgraph& f) {
  const ForestSummary summary = forest_summary(f);
  if (!summary.is_forest) throw std::invalid_argument("leaf_selection: not a forest");
  std::vector<int> selected;
  for (const auto& comp : components(f)) {
    if (comp.size() < 2) continue;
    const VertexSet comp_leaves = summary.leaves.set_intersect(comp);
    // Leaves are sorted; skip the smallest.
    for (std::size_t i = 1; i < comp_leaves.members().size(); ++i)
      selected.push_back(comp_leaves.members()[i]);
  }
  return VertexSet(std::move(selected));
}

ForestCertificate best_forest(const Graph& g, BoundMode mode, const SearchBudget& budget) {
  if (!budget.exact) return heuristic_forest(g, mode, budget);
  ExactSearch search(g, mode, budget);
  search.dfs(0);
  if (search.deadline.exhausted) {
    // Best-so-far, marked non-optimal; fall back to the heuristic if the
    // search never completed a leaf better than the empty forest.
    ForestCertificate partial =
        make_certificate(g, VertexSet(search.best_set), mode, false);
    ForestCertificate greedy = heuristic_forest(g, mode, budget);
    return certificate_bound(greedy) < certificate_bound(partial) ? greedy : partial;
  }
  return make_certificate(g, VertexSet(search.best_set), mode, true);
}

PathSearchResult longest_induced_path(const Graph& g, const SearchBudget& budget) {
  const int n = g.vertex_count();
  Deadline deadline(budget);
  std::vector<int> path;
  std::vector<char> in_path(n, 0);
  PathSearchResult best;

  auto consider = [&] {
    if (static_cast<int>(path.size()) > best.length) {
      best.length = static_cast<int>(path.size());
      best.vertices = VertexSet(path);
    }
  };

  auto extendable = [&](int w) {
    if (in_path[w]) return false;
    // w must touch only the current tail.
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      if (g.has_edge(path[i], w)) return false;
    return true;
  };

  std::function<void()> extend = [&] {
    if (!deadline.tick()) return;
    consider();
    const int tail = path.back();
    for (int w : g.neighbors(tail)) {
      if (!extendable(w)) continue;
      path.push_back(w);
      in_path[w] = 1;
      extend();
      in_path[w] = 0;
      path.pop_back();
    }
  };

  for (int start = 0; start < n; ++start) {
    path = {start};
    std::fill(in_path.begin(), in_path.end(), 0);
    in_path[start] = 1;
    extend();
  }
  best.optimal = !deadline.exhausted;
  return best;
}

BinaryTreeSearchResult largest_induced_complete_binary_tree(const Graph& g,
                                                            const SearchBudget& budget) {
  const int n = g.vertex_count();
  Deadline deadline(budget);
  BinaryTreeSearchResult best;
  if (n >= 1) {
    best.depth = 1;
    best.vertices = VertexSet({0});
  }

  for (int depth = 2; (1 << depth) - 1 <= n; ++depth) {
    const int tree_size = (1 << depth) - 1;
    std::vector<int> mapping(tree_size, -1);
    std::vector<char> used(n, 0);
    std::vector<int> found_mapping;

    // Heap layout: children of i are 2i+1 and 2i+2. Induced embedding: each
    // node adjacent to its parent and non-adjacent to every other placed node.
    std::function<void(int)> place = [&](int i) {
      if (!found_mapping.empty() || !deadline.tick()) return;
      if (i == tree_size) {
        found_mapping.assign(mapping.begin(), mapping.end());
        return;
      }
      const int parent = (i - 1) / 2;
      for (int cand = 0; cand < n && found_mapping.empty(); ++cand) {
        if (used[cand]) continue;
        if (i > 0) {
          if (!g.has_edge(mapping[parent], cand)) continue;
          // Right sibling larger than the left one, to cut mirror symmetry.
          if (i % 2 == 0 && mapping[i - 1] >= cand) continue;
        }
        bool ok = true;
        for (int j = 0; j < i && ok; ++j)
          if (j != parent && g.has_edge(mapping[j], cand)) ok = false;
        if (!ok) continue;
        mapping[i] = cand;
        used[cand] = 1;
        place(i + 1);
        used[cand] = 0;
        mapping[i] = -1;
      }
    };
    place(0);
    if (deadline.exhausted || found_mapping.empty()) break;
    best.depth = depth;
    best.vertices = VertexSet(found_mapping);
  }
  best.optimal = !deadline.exhausted;
  return best;
}

IndependentSetResult max_independent_set(const Graph& g, const SearchBudget& budget) {
  const int n = g.vertex_count();
  Deadline deadline(budget);
  std::vector<char> excluded(n, 0);
  std::vector<int> current;
  IndependentSetResult best;

  std::function<void(int)> dfs = [&](int v) {
    if (!deadline.tick()) return;
    if (static_cast<int>(current.size()) + (n - v) <= best.alpha) return;
    if (v == n) return;
    // Include v if no chosen neighbor.
    bool can = true;
    for (int w : g.neighbors(v))
      if (w < v && !excluded[w] &&
          std::binary_search(current.begin(), current.end(), w))
        can = false;
    if (can) {
      current.push_back(v);
      if (static_cast<int>(current.size()) > best.alpha) {
        best.alpha = static_cast<int>(current.size());
        best.vertices = VertexSet(current);
      }
      dfs(v + 1);
      current.pop_back();
    }
    dfs(v + 1);
  };
  dfs(0);
  best.optimal = !deadline.exhausted;
  return best;
}

}  // namespace graphdim
