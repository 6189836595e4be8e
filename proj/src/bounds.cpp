#include "graphdim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphdim {

bool eligible_for_strong(const Graph& g, MatrixKind kind, double lambda, double tau) {
  switch (kind) {
    case MatrixKind::laplacian:
      for (int v = 0; v < g.vertex_count(); ++v)
        if (std::abs(lambda - g.degree(v)) <= tau) return false;
      return true;
    case MatrixKind::normalized_laplacian:
      return std::abs(lambda - 1.0) > tau;
    case MatrixKind::adjacency:
      return std::abs(lambda) > tau;
  }
  return false;
}

bool eligible_for_strong_exact(const Graph& g, MatrixKind kind, const exactq::Rat& lambda) {
  exactq::Rat l = lambda;
  l.canonicalize();  // mpq comparisons assume canonical form
  switch (kind) {
    case MatrixKind::laplacian:
      for (int v = 0; v < g.vertex_count(); ++v)
        if (l == g.degree(v)) return false;
      return true;
    case MatrixKind::normalized_laplacian:
      return l != 1;
    case MatrixKind::adjacency:
      return l != 0;
  }
  return false;
}

BoundReport multiplicity_bounds(const Graph& g, MatrixKind kind, const SearchBudget& budget,
                                double tau, const std::string& graph_name) {
  const DenseMatrix m = build_matrix(g, kind);
  if (tau <= 0.0) tau = default_tau(m);

  BoundReport report;
  report.graph_name = graph_name;
  report.kind = kind;
  report.tau = tau;
  const SpectrumReport spec = spectrum_with_exact(g, kind, tau);
  // One certificate per (graph, mode), shared across all eigenvalues.
  report.weak_certificate = best_forest(g, BoundMode::weak, budget);
  report.strong_certificate = best_forest(g, BoundMode::strong, budget);

  for (const Cluster& cluster : spec.clusters) {
    EigenvalueRow row;
    row.lambda = cluster.value;
    row.multiplicity = cluster.multiplicity;
    row.exact_multiplicity = false;
    for (const ExactEntry& entry : spec.exact_entries) {
      if (std::abs(entry.value.get_d() - cluster.value) <= tau &&
          entry.multiplicity == cluster.multiplicity) {
        row.exact_lambda = entry.value;
        row.exact_multiplicity = true;
        break;
      }
    }
    row.weak_bound = report.weak_certificate.weak_bound;
    row.eligible_strong = row.exact_lambda
                              ? eligible_for_strong_exact(g, kind, *row.exact_lambda)
                              : eligible_for_strong(g, kind, cluster.value, tau);
    if (row.eligible_strong) row.strong_bound = report.strong_certificate.strong_bound;
    const long applicable =
        row.strong_bound ? std::min(row.weak_bound, *row.strong_bound) : row.weak_bound;
    row.sound = row.multiplicity <= row.weak_bound &&
                (!row.strong_bound || row.multiplicity <= *row.strong_bound);
    row.tight = row.exact_multiplicity && applicable == row.multiplicity;
    report.rows.push_back(std::move(row));
  }
  report.distinct = distinct_count_bound(g, kind, report.weak_certificate, tau);
  report.sound = std::all_of(report.rows.begin(), report.rows.end(),
                             [](const EigenvalueRow& r) { return r.sound; });
  return report;
}

DistinctCountBound distinct_count_bound(const Graph& g, MatrixKind kind,
                                        const ForestCertificate& certificate, double tau) {
  validate_certificate(g, certificate);
  if (certificate.mode != BoundMode::weak)
    throw std::invalid_argument("distinct_count_bound: weak certificate required");
  const long n = g.vertex_count();
  // |F| - l(F) + c(F) = |G| - weak_bound, so epsilon = (n - weak) / n.
  const long numerator = n - certificate.weak_bound;

  DistinctCountBound out;
  const DenseMatrix m = build_matrix(g, kind);
  if (tau <= 0.0) tau = default_tau(m);
  out.actual_distinct = static_cast<long>(spectrum(m, tau).clusters.size());
  if (numerator <= 0 || numerator >= n) {
    out.vacuous = true;
    out.lower_bound = 1;
    out.holds = out.actual_distinct >= 1;
    return out;
  }
  out.vacuous = false;
  // ceil(1 / (1 - eps)) = ceil(n / (n - numerator)), exactly in integers.
  const long denom = n - numerator;
  out.lower_bound = (n + denom - 1) / denom;
  out.holds = out.actual_distinct >= out.lower_bound;
  return out;
}

namespace {

bool graph_has_isolated_vertex(const Graph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 0) return true;
  return false;
}

}  // namespace

StructuralReport structural_bounds(const Graph& g, const SearchBudget& budget, double tau) {
  StructuralReport report{};
  report.normalized_skipped = graph_has_isolated_vertex(g);

  std::vector<MatrixKind> kinds{MatrixKind::laplacian, MatrixKind::adjacency};
  if (!report.normalized_skipped) kinds.push_back(MatrixKind::normalized_laplacian);

  long max_mult = 0;
  std::optional<long> max_mult_eligible;
  for (MatrixKind kind : kinds) {
    const DenseMatrix m = build_matrix(g, kind);
    const double kind_tau = tau > 0.0 ? tau : default_tau(m);
    for (const Cluster& c : spectrum(m, kind_tau).clusters) {
      max_mult = std::max(max_mult, static_cast<long>(c.multiplicity));
      if (eligible_for_strong(g, kind, c.value, kind_tau)) {
        max_mult_eligible =
            std::max(max_mult_eligible.value_or(0), static_cast<long>(c.multiplicity));
      }
    }
  }
  report.max_multiplicity = max_mult;
  report.max_multiplicity_eligible = max_mult_eligible;

  const long n = g.vertex_count();
  report.path_length = longest_induced_path(g, budget).length;
  report.path_holds = report.path_length <= 1 + n - max_mult;
  report.path_tight = report.path_length == 1 + n - max_mult;

  report.btree_depth = largest_induced_complete_binary_tree(g, budget).depth;
  report.btree_vacuous = report.btree_depth < 2;
  if (report.btree_vacuous) {
    report.btree_holds = true;
    report.btree_tight = false;
  } else {
    const long rhs = n - max_mult;
    report.btree_holds = (1L << (report.btree_depth - 1)) <= rhs;
    report.btree_tight = (1L << (report.btree_depth - 1)) == rhs;
  }

  report.alpha = max_independent_set(g, budget).alpha;
  report.alpha_vacuous = !max_mult_eligible.has_value();
  report.alpha_holds =
      report.alpha_vacuous || report.alpha <= n - *report.max_multiplicity_eligible;
  return report;
}

TreeMultiplicityResult tree_multiplicity_check(const Graph& t, double tau) {
  const long n = t.vertex_count();
  if (n < 2) throw std::invalid_argument("tree multiplicity check: at least 2 vertices required");
  if (t.edge_count() != n - 1 || components(t).size() != 1)
    throw std::invalid_argument("tree multiplicity check: input is not a tree");
  int leaves = 0;
  for (int v = 0; v < n; ++v)
    if (t.degree(v) == 1) ++leaves;

  long max_mult = 0;
  for (MatrixKind kind :
       {MatrixKind::laplacian, MatrixKind::normalized_laplacian, MatrixKind::adjacency}) {
    const DenseMatrix m = build_matrix(t, kind);
    const double kind_tau = tau > 0.0 ? tau : default_tau(m);
    for (const Cluster& c : spectrum(m, kind_tau).clusters)
      max_mult = std::max(max_mult, static_cast<long>(c.multiplicity));
  }
  return TreeMultiplicityResult{max_mult <= leaves - 1, leaves, max_mult};
}

}  // namespace graphdim
