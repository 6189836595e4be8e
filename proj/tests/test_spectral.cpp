#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "graphdim/spectral.hpp"

using namespace graphdim;

namespace {

const Cluster* find_cluster(const SpectrumReport& r, double value, double tol = 1e-6) {
  for (const auto& c : r.clusters)
    if (std::abs(c.value - value) <= tol) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("build_matrix: named entries") {
  const DenseMatrix k2 = build_matrix(path_graph(2), MatrixKind::laplacian);
  CHECK(k2.at(0, 0) == 1.0);
  CHECK(k2.at(0, 1) == -1.0);
  CHECK(k2.at(1, 0) == -1.0);
  CHECK(k2.at(1, 1) == 1.0);

  const DenseMatrix star = build_matrix(star_graph(10), MatrixKind::laplacian);
  CHECK(star.at(0, 0) == 9.0);
  for (int v = 1; v < 10; ++v) CHECK(star.at(v, v) == 1.0);

  Graph isolated(2, {});
  CHECK_THROWS_AS(build_matrix(isolated, MatrixKind::normalized_laplacian),
                  std::invalid_argument);
}

TEST_CASE("eigensolver: small exact spectra") {
  const auto c3 = spectrum(build_matrix(cycle_graph(3), MatrixKind::adjacency), 1e-6);
  REQUIRE(c3.clusters.size() == 2);
  CHECK(c3.clusters[0].value == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(c3.clusters[0].multiplicity == 2);
  CHECK(c3.clusters[1].value == doctest::Approx(2.0).epsilon(1e-9));

  const auto p2 = spectrum(build_matrix(path_graph(2), MatrixKind::adjacency), 1e-6);
  REQUIRE(p2.clusters.size() == 2);
  CHECK(p2.clusters[0].value == doctest::Approx(-1.0));
  CHECK(p2.clusters[1].value == doctest::Approx(1.0));
}

TEST_CASE("star(10) laplacian clusters: {0:1, 1:8, 10:1}") {
  const auto r = spectrum(build_matrix(star_graph(10), MatrixKind::laplacian), 1e-6);
  REQUIRE(r.clusters.size() == 3);
  CHECK(find_cluster(r, 0.0)->multiplicity == 1);
  CHECK(find_cluster(r, 1.0)->multiplicity == 8);
  CHECK(find_cluster(r, 10.0)->multiplicity == 1);
}

TEST_CASE("K4 laplacian clusters: {0:1, 4:3}") {
  const auto r = spectrum(build_matrix(complete_graph(4), MatrixKind::laplacian), 1e-6);
  REQUIRE(r.clusters.size() == 2);
  CHECK(find_cluster(r, 0.0)->multiplicity == 1);
  CHECK(find_cluster(r, 4.0)->multiplicity == 3);
}

TEST_CASE("spectrum invariants on random graphs") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 12; ++trial) {
    const Graph g = erdos_renyi(4 + static_cast<int>(rng() % 9), 0.4, rng());
    const DenseMatrix m = build_matrix(g, MatrixKind::laplacian);
    const auto r = spectrum(m, default_tau(m));
    int total = 0;
    double sum = 0.0;
    for (const auto& c : r.clusters) total += c.multiplicity;
    for (double v : r.eigenvalues) sum += v;
    CHECK(total == g.vertex_count());
    double trace = 0.0;
    for (int i = 0; i < m.n; ++i) trace += m.at(i, i);
    CHECK(std::abs(sum - trace) <= 1e-8 * m.n * std::max(1.0, m.frobenius_norm()));
    // Laplacian positive semidefiniteness.
    CHECK(r.eigenvalues.front() >= -1e-8 * std::max(1.0, m.frobenius_norm()));
    // Clusters are tau-separated.
    for (std::size_t i = 1; i < r.clusters.size(); ++i)
      CHECK(r.clusters[i].value - r.clusters[i - 1].value > r.tau);
  }
}

TEST_CASE("eigensolver handles a few hundred vertices within its residual bound") {
  const Graph g = erdos_renyi(150, 0.1, 424);
  const DenseMatrix m = build_matrix(g, MatrixKind::laplacian);
  // symmetric_eigen verifies ||Av - lambda v|| <= 1e-10 ||A||_F internally
  // and throws on failure.
  const EigenSystem sys = symmetric_eigen(m);
  double sum = 0.0, trace = 0.0;
  for (double v : sys.values) sum += v;
  for (int i = 0; i < m.n; ++i) trace += m.at(i, i);
  CHECK(std::abs(sum - trace) <= 1e-8 * m.n * m.frobenius_norm());
}

TEST_CASE("exact_multiplicity on the named cases") {
  CHECK(exact_multiplicity(star_graph(10), MatrixKind::laplacian, exactq::Rat(1)) == 8);
  CHECK(exact_multiplicity(complete_graph(4), MatrixKind::adjacency, exactq::Rat(-1)) == 3);

  // Laplacian kernel dimension equals the component count.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = erdos_renyi(8, 0.25, rng());
    CHECK(exact_multiplicity(g, MatrixKind::laplacian, exactq::Rat(0)) ==
          static_cast<int>(components(g).size()));
  }

  // Non-eigenvalues have multiplicity zero; rationals work too.
  CHECK(exact_multiplicity(path_graph(3), MatrixKind::laplacian, exactq::Rat(7, 2)) == 0);
}

TEST_CASE("normalized laplacian: exact path only for rational entries") {
  // 4-regular complete graph K5: deg products 16, perfect square.
  CHECK(has_rational_matrix(complete_graph(5), MatrixKind::normalized_laplacian));
  CHECK(exact_multiplicity(complete_graph(5), MatrixKind::normalized_laplacian,
                           exactq::Rat(5, 4)) == 4);
  // Path(3): deg products 1*2 = 2, irrational.
  CHECK_FALSE(has_rational_matrix(path_graph(3), MatrixKind::normalized_laplacian));
  CHECK_THROWS_AS(
      exact_multiplicity(path_graph(3), MatrixKind::normalized_laplacian, exactq::Rat(1)),
      std::invalid_argument);
}

TEST_CASE("float clusters agree with exact multiplicities on integer eigenvalues") {
  // Named families up to n = 50.
  std::vector<Graph> graphs;
  for (int n : {10, 25, 50}) graphs.push_back(star_graph(n));
  for (int n : {8, 20}) graphs.push_back(complete_graph(n));
  graphs.push_back(complete_bipartite_graph(3, 7));
  graphs.push_back(complete_bipartite_graph(5, 5));
  for (const Graph& g : graphs) {
    const auto r = spectrum_with_exact(g, MatrixKind::laplacian, 1e-6);
    for (const auto& entry : r.exact_entries) {
      const Cluster* c = find_cluster(r, entry.value.get_d(), 1e-5);
      REQUIRE(c != nullptr);
      CHECK(c->multiplicity == entry.multiplicity);
    }
    // Every integer-looking cluster has a matching exact entry.
    for (const auto& c : r.clusters) {
      if (std::abs(c.value - std::round(c.value)) > 1e-8) continue;
      bool found = false;
      for (const auto& entry : r.exact_entries)
        if (std::abs(entry.value.get_d() - c.value) < 1e-5 &&
            entry.multiplicity == c.multiplicity)
          found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("regular graphs: rational normalized-laplacian eigenvalues verified exactly") {
  // Petersen is 3-regular: normalized eigenvalues are laplacian / 3.
  const auto r = spectrum_with_exact(petersen_graph(), MatrixKind::normalized_laplacian, 1e-6);
  REQUIRE(r.exact_entries.size() == 3);
  bool saw_two_thirds = false;
  for (const auto& e : r.exact_entries) {
    if (e.value == exactq::Rat(2, 3)) {
      saw_two_thirds = true;
      CHECK(e.multiplicity == 5);
    }
  }
  CHECK(saw_two_thirds);
}

TEST_CASE("exact eigenspace basis and free coordinates") {
  // Identity rows: A = all indices.
  {
    std::vector<std::vector<exactq::Rat>> basis{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(free_coordinates(basis).members() == std::vector<int>{0, 1, 2});
  }
  // Smallest valid choice is lexicographic.
  {
    std::vector<std::vector<exactq::Rat>> basis{{1, 1, 0}, {0, 0, 1}};
    CHECK(free_coordinates(basis).members() == std::vector<int>{0, 2});
  }
  // Dependent rows rejected.
  {
    std::vector<std::vector<exactq::Rat>> dep{{1, 1, 0}, {2, 2, 0}};
    CHECK_THROWS_AS(free_coordinates(dep), std::invalid_argument);
  }
  // Star(10) lambda = 1 eigenspace: 8 free coordinates, all leaves.
  {
    const auto basis =
        exact_eigenspace_basis(star_graph(10), MatrixKind::laplacian, exactq::Rat(1));
    REQUIRE(basis.size() == 8);
    const VertexSet a = free_coordinates(basis);
    CHECK(a.size() == 8);
    CHECK_FALSE(a.contains(0));  // never the center
  }
}

TEST_CASE("free coordinate count equals the basis row count on random bases") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 5);
    const int cols = rows + static_cast<int>(rng() % 5);
    std::vector<std::vector<exactq::Rat>> basis;
    while (static_cast<int>(basis.size()) < rows) {
      std::vector<exactq::Rat> row(cols);
      for (auto& x : row)
        x = exactq::Rat(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
      basis.push_back(std::move(row));
      if (exactq::rank(basis) < static_cast<int>(basis.size())) basis.pop_back();
    }
    const VertexSet a = free_coordinates(basis);
    CHECK(a.size() == rows);
  }
}
