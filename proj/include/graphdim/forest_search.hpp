#pragma once

#include <optional>
#include <vector>

#include "graphdim/graph.hpp"

namespace graphdim {

struct SearchBudget {
  long node_limit = 50'000'000;
  double time_limit_seconds = 60.0;
  bool exact = true;
};

enum class BoundMode { weak, strong };

/// Induced forest with the leaf selection and the resulting dimension bound.
/// `forest` is the full chosen vertex set; `isolated` is its degree-0 part
/// (empty in weak mode). With F the non-isolated part, l its leaves and c its
/// components: weak_bound = |G| - |F| + l - c and strong_bound subtracts |Z|.
struct ForestCertificate {
  VertexSet forest;
  VertexSet leaf_selection;
  VertexSet isolated;
  long weak_bound = 0;
  long strong_bound = 0;
  BoundMode mode = BoundMode::weak;
  bool optimal = true;  // false when the budget ran out first
};

// Recomputes every certificate field from scratch and throws on any mismatch.
void validate_certificate(const Graph& g, const ForestCertificate& cert);

long certificate_bound(const ForestCertificate& cert);  // the bound for its mode

// Best certificate for the mode: exact branch and bound when the budget
// allows, otherwise greedy growth plus local search.
ForestCertificate best_forest(const Graph& g, BoundMode mode, const SearchBudget& budget);

// From each component with at least two vertices, all leaves except the one
// with the smallest id. Throws when f is not a forest.
VertexSet leaf_selection(const InducedSubgraph& f);

struct PathSearchResult {
  VertexSet vertices;
  int length = 0;  // number of vertices
  bool optimal = true;
};
PathSearchResult longest_induced_path(const Graph& g, const SearchBudget& budget);

struct BinaryTreeSearchResult {
  VertexSet vertices;
  int depth = 0;  // depth k: 2^k - 1 vertices
  bool optimal = true;
};
BinaryTreeSearchResult largest_induced_complete_binary_tree(const Graph& g,
                                                            const SearchBudget& budget);

struct IndependentSetResult {
  VertexSet vertices;
  int alpha = 0;
  bool optimal = true;  // false: alpha is only a lower bound
};
IndependentSetResult max_independent_set(const Graph& g, const SearchBudget& budget);

}  // namespace graphdim
