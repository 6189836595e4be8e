#include "graphdim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "graphdim/kernels.hpp"

namespace graphdim {

std::string to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::laplacian: return "laplacian";
    case MatrixKind::normalized_laplacian: return "normalized-laplacian";
    case MatrixKind::adjacency: return "adjacency";
  }
  return "?";
}

std::optional<MatrixKind> matrix_kind_from_string(const std::string& name) {
  if (name == "laplacian") return MatrixKind::laplacian;
  if (name == "normalized-laplacian" || name == "normalized")
    return MatrixKind::normalized_laplacian;
  if (name == "adjacency") return MatrixKind::adjacency;
  return std::nullopt;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

DenseMatrix build_matrix(const Graph& g, MatrixKind kind) {
  const int n = g.vertex_count();
  DenseMatrix m(n);
  switch (kind) {
    case MatrixKind::adjacency:
      for (auto [u, v] : g.edges()) {
        m.at(u, v) = 1.0;
        m.at(v, u) = 1.0;
      }
      break;
    case MatrixKind::laplacian:
      for (auto [u, v] : g.edges()) {
        m.at(u, v) = -1.0;
        m.at(v, u) = -1.0;
      }
      for (int v = 0; v < n; ++v) m.at(v, v) = g.degree(v);
      break;
    case MatrixKind::normalized_laplacian:
      for (int v = 0; v < n; ++v) {
        if (g.degree(v) == 0)
          throw std::invalid_argument(
              "normalized laplacian undefined on a graph with isolated vertices");
        m.at(v, v) = 1.0;
      }
      for (auto [u, v] : g.edges()) {
        const double w = -1.0 / std::sqrt(static_cast<double>(g.degree(u)) * g.degree(v));
        m.at(u, v) = w;
        m.at(v, u) = w;
      }
      break;
  }
  return m;
}

namespace {

void matvec(const DenseMatrix& m, const double* x, double* out) {
  for (int i = 0; i < m.n; ++i) out[i] = kernels::dot(m.row(i), x, m.n);
}

double off_diagonal_norm(const DenseMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (i != j) s += m.at(i, j) * m.at(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenSystem symmetric_eigen(const DenseMatrix& input) {
  const int n = input.n;
  DenseMatrix a = input;
  DenseMatrix vt(n);  // row i accumulates eigenvector i
  for (int i = 0; i < n; ++i) vt.at(i, i) = 1.0;

  const double norm = std::max(1.0, input.frobenius_norm());
  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-14 * norm) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double app = a.at(p, p);
        const double aqq = a.at(q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Two-sided rotation on the (p, q) plane: rotate the two rows, mirror
        // the result into the two columns, then patch the 2x2 block with the
        // closed forms (the pivot entry becomes exactly zero).
        kernels::rotate(a.row(p), a.row(q), static_cast<std::size_t>(n), c, s);
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          a.at(i, p) = a.at(p, i);
          a.at(i, q) = a.at(q, i);
        }
        a.at(p, p) = c * c * app - 2.0 * s * c * apq + s * s * aqq;
        a.at(q, q) = s * s * app + 2.0 * s * c * apq + c * c * aqq;
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;

        kernels::rotate(vt.row(p), vt.row(q), static_cast<std::size_t>(n), c, s);
      }
    }
  }

  EigenSystem sys{std::vector<double>(n), std::move(vt)};
  for (int i = 0; i < n; ++i) sys.values[i] = a.at(i, i);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return sys.values[i] < sys.values[j]; });
  EigenSystem sorted{std::vector<double>(n), DenseMatrix(n)};
  for (int i = 0; i < n; ++i) {
    sorted.values[i] = sys.values[order[i]];
    std::copy_n(sys.vectors.row(order[i]), n, sorted.vectors.row(i));
  }

  // Per-pair residual ||Av - lambda v||_2 <= 1e-10 ||A||_F.
  std::vector<double> av(n);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    matvec(input, sorted.vectors.row(i), av.data());
    double r2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double r = av[j] - sorted.values[i] * sorted.vectors.at(i, j);
      r2 += r * r;
    }
    worst = std::max(worst, std::sqrt(r2));
  }
  if (worst > 1e-10 * norm)
    throw std::runtime_error("eigensolver did not converge; worst residual " +
                             std::to_string(worst) + " after " + std::to_string(sweep) +
                             " sweeps");
  return sorted;
}

double default_tau(const DenseMatrix& m) { return 1e-6 * std::max(1.0, m.frobenius_norm()); }

SpectrumReport spectrum(const DenseMatrix& m, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("spectrum: tau must be positive");
  EigenSystem sys = symmetric_eigen(m);
  SpectrumReport report;
  report.tau = tau;
  report.eigenvalues = sys.values;
  int i = 0;
  const int n = m.n;
  while (i < n) {
    int j = i + 1;
    while (j < n && sys.values[j] - sys.values[j - 1] <= tau) ++j;
    double mean = 0.0;
    for (int k = i; k < j; ++k) mean += sys.values[k];
    mean /= (j - i);
    report.clusters.push_back(Cluster{mean, j - i});
    i = j;
  }
  return report;
}

bool has_rational_matrix(const Graph& g, MatrixKind kind) {
  if (kind != MatrixKind::normalized_laplacian) return true;
  for (auto [u, v] : g.edges()) {
    const exactq::Int prod = exactq::Int(g.degree(u)) * g.degree(v);
    exactq::Int root;
    mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
    if (root * root != prod) return false;
  }
  return true;
}

exactq::RatMatrix exact_matrix(const Graph& g, MatrixKind kind) {
  const int n = g.vertex_count();
  exactq::RatMatrix m(n, std::vector<exactq::Rat>(n, exactq::Rat(0)));
  switch (kind) {
    case MatrixKind::adjacency:
      for (auto [u, v] : g.edges()) m[u][v] = m[v][u] = 1;
      break;
    case MatrixKind::laplacian:
      for (auto [u, v] : g.edges()) m[u][v] = m[v][u] = -1;
      for (int v = 0; v < n; ++v) m[v][v] = g.degree(v);
      break;
    case MatrixKind::normalized_laplacian: {
      if (!has_rational_matrix(g, kind))
        throw std::invalid_argument(
            "normalized laplacian has irrational entries for this graph");
      for (int v = 0; v < n; ++v) {
        if (g.degree(v) == 0)
          throw std::invalid_argument(
              "normalized laplacian undefined on a graph with isolated vertices");
        m[v][v] = 1;
      }
      for (auto [u, v] : g.edges()) {
        const exactq::Int prod = exactq::Int(g.degree(u)) * g.degree(v);
        exactq::Int root;
        mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
        m[u][v] = m[v][u] = exactq::Rat(-1, root);
      }
      break;
    }
  }
  return m;
}

int exact_multiplicity(const Graph& g, MatrixKind kind, const exactq::Rat& lambda) {
  const int n = g.vertex_count();
  if (kind == MatrixKind::normalized_laplacian) {
    exactq::RatMatrix m = exact_matrix(g, kind);
    for (int v = 0; v < n; ++v) m[v][v] -= lambda;
    return n - exactq::rank(m);
  }
  // Integer kinds: clear the denominator and run fraction-free elimination on
  // q*M - p*I.
  exactq::Rat reduced = lambda;
  reduced.canonicalize();
  const exactq::Int p = reduced.get_num();
  const exactq::Int q = reduced.get_den();
  exactq::IntMatrix m(n, std::vector<exactq::Int>(n, exactq::Int(0)));
  if (kind == MatrixKind::laplacian) {
    for (auto [u, v] : g.edges()) m[u][v] = m[v][u] = -q;
    for (int v = 0; v < n; ++v) m[v][v] = exactq::Int(g.degree(v)) * q - p;
  } else {
    for (auto [u, v] : g.edges()) m[u][v] = m[v][u] = q;
    for (int v = 0; v < n; ++v) m[v][v] = -p;
  }
  return n - exactq::rank_bareiss(std::move(m));
}

std::vector<std::vector<exactq::Rat>> exact_eigenspace_basis(const Graph& g, MatrixKind kind,
                                                             const exactq::Rat& lambda) {
  exactq::Rat l = lambda;
  l.canonicalize();
  exactq::RatMatrix m = exact_matrix(g, kind);
  for (int v = 0; v < g.vertex_count(); ++v) m[v][v] -= l;
  return exactq::nullspace(m);
}

SpectrumReport spectrum_with_exact(const Graph& g, MatrixKind kind, double tau) {
  SpectrumReport report = spectrum(build_matrix(g, kind), tau);
  if (!has_rational_matrix(g, kind)) return report;
  // Rational eigenvalues of an integer symmetric matrix are integers; the
  // normalized laplacian can have denominators, bounded by the degrees on
  // regular graphs, so probe those too.
  int max_den = 1;
  if (kind == MatrixKind::normalized_laplacian)
    for (int v = 0; v < g.vertex_count(); ++v) max_den = std::max(max_den, g.degree(v));
  for (const Cluster& c : report.clusters) {
    for (int den = 1; den <= max_den; ++den) {
      const double scaled = c.value * den;
      if (std::abs(scaled - std::round(scaled)) > den * tau) continue;
      exactq::Rat candidate(static_cast<long>(std::round(scaled)), den);
      candidate.canonicalize();
      const int mult = exact_multiplicity(g, kind, candidate);
      if (mult > 0) {
        report.exact_entries.push_back(ExactEntry{candidate, mult});
        break;
      }
    }
  }
  return report;
}

VertexSet free_coordinates(const std::vector<std::vector<exactq::Rat>>& basis) {
  if (basis.empty()) return VertexSet{};
  const int rows = static_cast<int>(basis.size());
  exactq::Echelon e = exactq::reduce(basis);
  if (e.rank != rows) throw std::invalid_argument("free_coordinates: basis rows are dependent");
  // Verify injectivity: the selected columns of the basis matrix have full rank.
  exactq::RatMatrix sub(rows, std::vector<exactq::Rat>(e.pivot_cols.size()));
  for (int r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < e.pivot_cols.size(); ++c)
      sub[r][c] = basis[r][e.pivot_cols[c]];
  if (exactq::rank(sub) != rows)
    throw std::runtime_error("free_coordinates: pivot column verification failed");
  return VertexSet(e.pivot_cols);
}

}  // namespace graphdim
