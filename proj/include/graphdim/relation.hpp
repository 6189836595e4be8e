#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphdim/graph.hpp"

// Brute-force determinacy oracle on explicit finite product sets. Everything
// here is exponential by design and intended for desk-scale verification;
// sizes are capped up front.

namespace graphdim {

struct RelationLimits {
  int max_domain = 8;
  int max_indices = 16;
  long max_points = 100000;
};

/// Explicit finite subset of a product of finite coordinate domains. Index v
/// carries the value list domains[v]; each point assigns one value per index.
class FiniteRelationSet {
 public:
  FiniteRelationSet(std::vector<std::vector<int>> domains,
                    std::vector<std::vector<int>> points,
                    RelationLimits limits = {});

  int index_count() const { return static_cast<int>(domains_.size()); }
  const std::vector<std::vector<int>>& domains() const { return domains_; }
  const std::vector<std::vector<int>>& points() const { return points_; }
  bool contains_point(const std::vector<int>& p) const;

 private:
  std::vector<std::vector<int>> domains_;  // each sorted, duplicate-free
  std::vector<std::vector<int>> points_;   // sorted, duplicate-free
};

struct DeterminacyQuery {
  VertexSet a;
  VertexSet b;
  long measured_d;  // max over assignments c on A of |{pi_B(p) : p in X, pi_A(p)=c}|
  std::vector<int> worst_assignment;  // a witnessing c (empty when X is empty)
};

DeterminacyQuery measure_determinacy(const FiniteRelationSet& x, const VertexSet& a,
                                     const VertexSet& b);

struct PairDegree {
  int v;
  int w;  // w in N(v)
  long degree;
};

struct CompatibilityCertificate {
  std::vector<PairDegree> pair_degrees;
  std::vector<long> strong_degrees;  // per vertex: values at N(v) -> value at v
  long d;                            // max pair degree (0 when the graph has no edges)
  long strong_d;                     // max of d and every strong degree
};

CompatibilityCertificate certify_compatibility(const FiniteRelationSet& x, const Graph& g);

struct PartialAssignment {
  std::vector<int> indices;  // strictly increasing
  std::vector<int> values;   // parallel to indices
};

struct RestrictedRelation {
  FiniteRelationSet section;      // on the complementary indices, reindexed 0..k-1
  std::vector<int> kept_indices;  // original index of each new position
};

// Section X' = project(X restricted to the given values), on the complement.
RestrictedRelation relative_restrict(const FiniteRelationSet& x,
                                     const PartialAssignment& fixed);

/// Tree order on a subset of indices: one minimal element (root), each other
/// element has a unique immediate predecessor. Maximal elements form M.
class TreeOrder {
 public:
  // parent_of[i] indexes into carrier (-1 for the root). Validates a single
  // root and acyclicity.
  TreeOrder(std::vector<int> carrier, std::vector<int> parent_of);

  // Order induced by rooting a forest component tree at `root`.
  static TreeOrder from_tree_component(const InducedSubgraph& f, const VertexSet& component,
                                       int root);

  const std::vector<int>& carrier() const { return carrier_; }
  const std::vector<int>& parent_of() const { return parent_; }
  int root() const { return carrier_[root_pos_]; }
  const std::vector<int>& maximal() const { return maximal_; }       // element ids
  const std::vector<int>& children_of(int pos) const { return children_[pos]; }
  int position_of(int element) const;
  // Descendants of the element at `pos` (the elements strictly above it).
  std::vector<int> above(int pos) const;

 private:
  std::vector<int> carrier_;  // sorted element ids
  std::vector<int> parent_;   // positions
  std::vector<std::vector<int>> children_;
  std::vector<int> maximal_;
  int root_pos_;
};

struct TreePropagation {
  std::vector<int> target_indices;              // T \ M, increasing
  std::vector<std::vector<int>> completions;    // assignments on target_indices, realized in X
  long enumerated;                              // sweep count before the membership filter
  long hypothesis_d;                            // measured max hypothesis degree
  long limit;                                   // hypothesis_d ^ |T \ M| (saturating)
  std::optional<std::pair<int, int>> violation; // (v, w) exceeding a declared degree
};

// Enumerates completions on T\M for the fixed assignment on M and on the
// complement of T, sweeping children before parents as in the inductive
// construction; the final list is filtered to exact membership in X.
TreePropagation tree_propagate(const FiniteRelationSet& x, const TreeOrder& order,
                               const PartialAssignment& fixed,
                               std::optional<long> declared_d = std::nullopt);

struct ForestCheckResult {
  bool pass;
  long measured;
  long limit;  // d ^ |F \ L|
  long d;      // compatibility degree used (strong when F has isolated vertices)
  bool used_strong;
  std::vector<int> witness;  // worst assignment on L u (G \ F) when failing
};

// Checks the forest determinacy inequality for one certificate: values on
// L u (G\F) leave at most d^{|F\L|} possibilities for F\L.
ForestCheckResult forest_determinacy_check(const FiniteRelationSet& x, const Graph& g,
                                           const InducedSubgraph& f, const VertexSet& l);

struct AlgebraViolation {
  std::string property;
  VertexSet a, b, c, d;
  long lhs;
  long rhs;
};

struct AlgebraReport {
  long checks = 0;
  std::vector<AlgebraViolation> violations;
};

// Samples subset tuples and verifies idempotence, monotonicity, conjunction,
// transitivity and substitution with measured degrees.
AlgebraReport algebra_suite(const FiniteRelationSet& x, int samples, std::uint64_t seed);

// d^e with saturation (never overflows; 0^0 = 1).
long saturating_pow(long d, int e);

}  // namespace graphdim
