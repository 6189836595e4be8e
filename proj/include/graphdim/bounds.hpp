#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphdim/forest_search.hpp"
#include "graphdim/graph.hpp"
#include "graphdim/spectral.hpp"

namespace graphdim {

// Strong-bound eligibility: the eigenvalue must avoid the vertex degrees
// (laplacian), 1 (normalized laplacian) or 0 (adjacency). The float variant
// compares within tau so a near-degree eigenvalue never slips through.
bool eligible_for_strong(const Graph& g, MatrixKind kind, double lambda, double tau);
bool eligible_for_strong_exact(const Graph& g, MatrixKind kind, const exactq::Rat& lambda);

struct EigenvalueRow {
  double lambda;
  std::optional<exactq::Rat> exact_lambda;  // set when verified exactly
  long multiplicity;
  bool exact_multiplicity;
  long weak_bound;
  std::optional<long> strong_bound;  // present only when eligible
  bool eligible_strong;
  bool tight;  // bound - mult == 0, exact rows only
  bool sound;  // mult <= weak bound, and <= strong bound when eligible
};

struct DistinctCountBound {
  bool vacuous;         // epsilon outside (0, 1)
  long lower_bound;     // ceil(1 / (1 - epsilon))
  long actual_distinct; // tau-distinct eigenvalue count
  bool holds;
};

struct BoundReport {
  std::string graph_name;
  MatrixKind kind;
  double tau;
  std::vector<EigenvalueRow> rows;
  ForestCertificate weak_certificate;
  ForestCertificate strong_certificate;
  DistinctCountBound distinct;
  bool sound;  // every row sound
};

BoundReport multiplicity_bounds(const Graph& g, MatrixKind kind, const SearchBudget& budget,
                                double tau = 0.0, const std::string& graph_name = "");

// Distinct-eigenvalue lower bound from a weak certificate with
// |F| - l(F) + c(F) = epsilon * |G|.
DistinctCountBound distinct_count_bound(const Graph& g, MatrixKind kind,
                                        const ForestCertificate& certificate, double tau = 0.0);

struct StructuralReport {
  long max_multiplicity;  // over all kinds (normalized skipped on isolated vertices)
  bool normalized_skipped;

  int path_length;  // longest induced path, in vertices
  bool path_holds;  // path_length <= 1 + |G| - max_multiplicity
  bool path_tight;

  int btree_depth;
  bool btree_vacuous;  // depth < 2: the inequality needs a forest without isolated vertices
  bool btree_holds;    // 2^(depth-1) <= |G| - max_multiplicity
  bool btree_tight;

  int alpha;
  std::optional<long> max_multiplicity_eligible;  // over eligible eigenvalues only
  bool alpha_vacuous;  // no eligible eigenvalue at all
  bool alpha_holds;    // alpha <= |G| - max eligible multiplicity
};

StructuralReport structural_bounds(const Graph& g, const SearchBudget& budget,
                                   double tau = 0.0);

struct TreeMultiplicityResult {
  bool pass;
  int leaves;
  long max_multiplicity;  // over all kinds
};

// For a tree with >= 2 vertices: every multiplicity of every kind is at most
// leaves - 1. Throws when the input is not such a tree.
TreeMultiplicityResult tree_multiplicity_check(const Graph& t, double tau = 0.0);

}  // namespace graphdim
