#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "graphdim/exactq.hpp"
#include "graphdim/graph.hpp"

namespace graphdim {

enum class MatrixKind { laplacian, normalized_laplacian, adjacency };

std::string to_string(MatrixKind kind);
std::optional<MatrixKind> matrix_kind_from_string(const std::string& name);

/// Dense row-major square matrix.
struct DenseMatrix {
  int n = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  explicit DenseMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  double* row(int i) { return a.data() + static_cast<std::size_t>(i) * n; }
  const double* row(int i) const { return a.data() + static_cast<std::size_t>(i) * n; }
  double frobenius_norm() const;
};

// L = D - A, normalized L = I - D^{-1/2} A D^{-1/2}, or the adjacency matrix.
// The normalized kind rejects graphs with isolated vertices.
DenseMatrix build_matrix(const Graph& g, MatrixKind kind);

struct EigenSystem {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // row i is the eigenvector of values[i]
};

// Self-contained cyclic Jacobi eigensolver for symmetric matrices. Verifies
// ||Av - lambda v|| <= 1e-10 ||A||_F for every pair and throws with the worst
// residual if the sweep cap is reached first.
EigenSystem symmetric_eigen(const DenseMatrix& m);

struct Cluster {
  double value;  // mean of the clustered eigenvalues
  int multiplicity;
};

struct ExactEntry {
  exactq::Rat value;
  int multiplicity;
};

struct SpectrumReport {
  std::vector<double> eigenvalues;
  std::vector<Cluster> clusters;
  double tau;
  std::vector<ExactEntry> exact_entries;  // rational candidates confirmed exactly
};

double default_tau(const DenseMatrix& m);

// Eigenvalues clustered greedily with gap tau; consecutive cluster
// representatives differ by more than tau.
SpectrumReport spectrum(const DenseMatrix& m, double tau);

// Same, plus exact verification of near-integer clusters (laplacian and
// adjacency always; normalized laplacian only when its entries are rational).
SpectrumReport spectrum_with_exact(const Graph& g, MatrixKind kind, double tau);

// Exact multiplicity of lambda as nullity of M - lambda I over Q.
int exact_multiplicity(const Graph& g, MatrixKind kind, const exactq::Rat& lambda);

// Exact rational matrix for the kind; throws for the normalized laplacian
// when some edge has deg(u)*deg(v) not a perfect square.
exactq::RatMatrix exact_matrix(const Graph& g, MatrixKind kind);
bool has_rational_matrix(const Graph& g, MatrixKind kind);

// Exact basis of the lambda-eigenspace (empty when lambda is not an eigenvalue).
std::vector<std::vector<exactq::Rat>> exact_eigenspace_basis(const Graph& g, MatrixKind kind,
                                                             const exactq::Rat& lambda);

// Smallest coordinate set A (one per basis row) whose projection is injective
// on the span: the pivot columns of the row space, verified by exact rank.
VertexSet free_coordinates(const std::vector<std::vector<exactq::Rat>>& basis);

}  // namespace graphdim
