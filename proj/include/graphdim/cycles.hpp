#pragma once

#include <optional>
#include <vector>

#include "graphdim/forest_search.hpp"
#include "graphdim/graph.hpp"

namespace graphdim {

/// Signed vertex-by-edge incidence matrix under the u < v orientation:
/// column j of edge (u, v) holds -1 at the tail u and +1 at the head v.
struct IncidenceMatrix {
  int n = 0;
  int m = 0;
  std::vector<std::vector<int>> b;  // n rows, m columns
};

IncidenceMatrix incidence(const Graph& g);

/// Closed walk with no repeated edges, encoded both as a signed coefficient
/// vector over the edge list and as the walk itself (walk[i] -> walk[i+1],
/// wrapping around). Vertices may repeat; edges may not.
struct OrientedCycle {
  std::vector<int> coeff;  // size m, entries in {-1, 0, +1}
  std::vector<int> walk;   // vertices, closing edge walk.back() -> walk.front()
};

// Checks coeff against the walk and B * coeff = 0; throws when inconsistent.
void validate_cycle(const Graph& g, const OrientedCycle& c);

struct HomologyDims {
  int h0;  // component count, cross-checked against the nullity of B^t
  int h1;  // |E| - |V| + c, cross-checked against the nullity of B
};

HomologyDims homology_dims(const Graph& g);

// One fundamental cycle per non-tree edge of a deterministic DFS spanning
// forest; every returned cycle satisfies B * c = 0 exactly.
std::vector<OrientedCycle> fundamental_cycle_basis(const Graph& g);

// Rebuilds the closed walk of a +-1/0 kernel vector (Hierholzer); nullopt when
// the support is empty, disconnected, or not a single closed walk.
std::optional<OrientedCycle> cycle_from_coefficients(const Graph& g, std::vector<int> coeff);

struct CycleIntersection {
  Graph graph;  // vertex i per cycle; edge iff the cycles share >= 1 graph edge
  std::vector<std::vector<int>> shared_edge_counts;  // symmetric, zero diagonal
};

CycleIntersection cycle_intersection_graph(const Graph& g,
                                           const std::vector<OrientedCycle>& cycles);

struct CycleForestCertificate {
  std::vector<OrientedCycle> cycles;
  Graph intersection_graph;
  VertexSet leaf_selection;  // indices into `cycles`
  int dim_h0 = 0;
  int dim_h1 = 0;
  long bound = 0;  // dim H0 + dim H1 - |F| + |L|
};

long cycle_forest_bound_value(int dim_h0, int dim_h1, int forest_size, int leaf_selection_size);

// Validates the preconditions (pairwise at most one shared edge; the
// intersection graph is a forest without isolated vertices), builds the leaf
// selection and evaluates the bound. Throws naming the offending cycle pair.
CycleForestCertificate cycle_forest_bound(const Graph& g,
                                          const std::vector<OrientedCycle>& cycles);

struct CycleSearchResult {
  std::optional<CycleForestCertificate> best;
  bool exhaustive = true;
};

// Minimizes the bound over subsets of the fundamental basis extended by valid
// pairwise sums/differences; exhaustive at desk scale, greedy beyond.
CycleSearchResult search_cycle_forest(const Graph& g, const SearchBudget& budget);

}  // namespace graphdim
