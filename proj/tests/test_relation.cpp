#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "graphdim/forest_search.hpp"
#include "graphdim/graph.hpp"
#include "graphdim/relation.hpp"

using namespace graphdim;

namespace {

FiniteRelationSet diagonal_set(int indices, int values) {
  std::vector<std::vector<int>> domains(indices);
  for (auto& d : domains)
    for (int v = 0; v < values; ++v) d.push_back(v);
  std::vector<std::vector<int>> points;
  for (int v = 0; v < values; ++v) points.push_back(std::vector<int>(indices, v));
  return FiniteRelationSet(std::move(domains), std::move(points));
}

FiniteRelationSet full_product(int indices, int values) {
  std::vector<std::vector<int>> domains(indices);
  for (auto& d : domains)
    for (int v = 0; v < values; ++v) d.push_back(v);
  std::vector<std::vector<int>> points;
  std::vector<int> p(indices, 0);
  while (true) {
    points.push_back(p);
    int i = 0;
    while (i < indices && ++p[i] == values) p[i++] = 0;
    if (i == indices) break;
  }
  return FiniteRelationSet(std::move(domains), std::move(points));
}

// All tuples over {0,1,2}^3 with x0 + x2 = x1 (mod 3): nine points.
FiniteRelationSet gf3_middle_relation() {
  std::vector<std::vector<int>> points;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        if ((a + c) % 3 == b) points.push_back({a, b, c});
  return FiniteRelationSet({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, std::move(points));
}

// Eigenvector-style section x1 = 0, x0 + x2 = 0 (mod 3): three points, and
// the one-compatible behaviour on the path.
FiniteRelationSet gf3_eigen_section() {
  std::vector<std::vector<int>> points;
  for (int a = 0; a < 3; ++a) points.push_back({a, 0, (3 - a) % 3});
  return FiniteRelationSet({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, std::move(points));
}

// Integer points of the product of two unit circles discretized over {-1,0,1}.
FiniteRelationSet torus_points() {
  std::vector<std::vector<int>> points;
  const std::vector<std::pair<int, int>> circle{{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
  for (auto [x1, x2] : circle)
    for (auto [x3, x4] : circle) points.push_back({x1, x2, x3, x4});
  std::vector<std::vector<int>> domains(4, {-1, 0, 1});
  return FiniteRelationSet(std::move(domains), std::move(points));
}

FiniteRelationSet random_relation(int indices, std::mt19937_64& rng, int max_values = 4,
                                  int max_points = 200) {
  std::vector<std::vector<int>> domains(indices);
  for (auto& d : domains) {
    const int size = 1 + static_cast<int>(rng() % max_values);
    for (int v = 0; v < size; ++v) d.push_back(v);
  }
  std::set<std::vector<int>> points;
  const int target = 1 + static_cast<int>(rng() % max_points);
  for (int t = 0; t < target; ++t) {
    std::vector<int> p(indices);
    for (int i = 0; i < indices; ++i) p[i] = static_cast<int>(rng() % domains[i].size());
    points.insert(std::move(p));
  }
  return FiniteRelationSet(std::move(domains), {points.begin(), points.end()});
}

// Reference implementation used to check measure_determinacy.
long brute_measure(const FiniteRelationSet& x, const VertexSet& a, const VertexSet& b) {
  std::map<std::vector<int>, std::set<std::vector<int>>> fibers;
  for (const auto& p : x.points()) {
    std::vector<int> ka, kb;
    for (int i : a) ka.push_back(p[i]);
    for (int i : b) kb.push_back(p[i]);
    fibers[ka].insert(kb);
  }
  long best = 0;
  for (const auto& [k, v] : fibers) best = std::max(best, static_cast<long>(v.size()));
  return best;
}

}  // namespace

TEST_CASE("construction enforces caps and invariants") {
  CHECK_THROWS_AS(FiniteRelationSet({{0, 1}}, {{0}, {0}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteRelationSet({{0, 1}}, {{2}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteRelationSet({{0, 1, 2, 3, 4, 5, 6, 7, 8}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteRelationSet(std::vector<std::vector<int>>(17, {0}), {}),
                  std::invalid_argument);
}

TEST_CASE("measure_determinacy on the named examples") {
  const auto diag = diagonal_set(2, 2);
  CHECK(measure_determinacy(diag, VertexSet({0}), VertexSet({1})).measured_d == 1);

  const auto full = full_product(2, 2);
  CHECK(measure_determinacy(full, VertexSet({0}), VertexSet({1})).measured_d == 2);

  const auto torus = torus_points();
  const auto q = measure_determinacy(torus, VertexSet({0, 2}), VertexSet({1, 3}));
  CHECK(q.measured_d == 4);
  CHECK(q.worst_assignment == std::vector<int>{0, 0});

  // x_{1,2} does not pin the second circle any better than its full size.
  CHECK(measure_determinacy(torus, VertexSet({0, 1}), VertexSet({2, 3})).measured_d == 4);

  // Empty set: measured 0.
  const FiniteRelationSet empty({{0, 1}, {0, 1}}, {});
  CHECK(measure_determinacy(empty, VertexSet({0}), VertexSet({1})).measured_d == 0);
}

TEST_CASE("measured degree equals the max fiber-projection cardinality") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_relation(5, rng);
    std::vector<int> am, bm;
    for (int v = 0; v < 5; ++v) {
      if (rng() & 1) am.push_back(v);
      if (rng() & 1) bm.push_back(v);
    }
    const VertexSet a(am), b(bm);
    CHECK(measure_determinacy(x, a, b).measured_d == brute_measure(x, a, b));
  }
}

TEST_CASE("measured degree is zero exactly when the set is empty") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_relation(4, rng);
    std::vector<int> am, bm;
    for (int v = 0; v < 4; ++v) {
      if (rng() & 1) am.push_back(v);
      if (rng() & 1) bm.push_back(v);
    }
    const auto q = measure_determinacy(x, VertexSet(am), VertexSet(bm));
    CHECK((q.measured_d == 0) == x.points().empty());
    CHECK(q.measured_d >= 1);  // generator always emits at least one point
  }
}

TEST_CASE("monotonicity: growing A never increases the degree") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_relation(5, rng);
    std::vector<int> am, extram, bm;
    for (int v = 0; v < 5; ++v) {
      if (rng() & 1) am.push_back(v);
      if (rng() & 1) extram.push_back(v);
      if (rng() & 1) bm.push_back(v);
    }
    const VertexSet a(am), b(bm);
    const VertexSet bigger = a.set_union(VertexSet(extram));
    CHECK(measure_determinacy(x, bigger, b).measured_d <=
          measure_determinacy(x, a, b).measured_d);
  }
}

TEST_CASE("certify_compatibility on the GF(3) middle relation") {
  const auto x = gf3_middle_relation();
  const Graph p3 = path_graph(3);
  const auto cert = certify_compatibility(x, p3);
  for (const auto& pd : cert.pair_degrees) {
    if (pd.v == 1) CHECK(pd.degree == 1);  // middle vertex pins its neighbors
  }
  CHECK(cert.d == 3);

  // Full product: every pair degree equals |X_w|.
  const auto full = full_product(3, 2);
  for (const auto& pd : certify_compatibility(full, p3).pair_degrees) CHECK(pd.degree == 2);

  // A single point: all degrees at most 1.
  const FiniteRelationSet single({{0, 1}, {0, 1}, {0, 1}}, {{1, 0, 1}});
  const auto single_cert = certify_compatibility(single, p3);
  CHECK(single_cert.d <= 1);
  CHECK(single_cert.strong_d <= 1);
}

TEST_CASE("gf3 eigen section is 1-compatible with the path") {
  const auto cert = certify_compatibility(gf3_eigen_section(), path_graph(3));
  CHECK(cert.d == 1);
}

TEST_CASE("relative_restrict") {
  const auto full = full_product(3, 2);
  const auto r = relative_restrict(full, PartialAssignment{{0}, {1}});
  CHECK(r.kept_indices == std::vector<int>{1, 2});
  CHECK(r.section.points().size() == 4);

  const auto diag = diagonal_set(3, 2);
  const auto rd = relative_restrict(diag, PartialAssignment{{0}, {1}});
  REQUIRE(rd.section.points().size() == 1);
  CHECK(rd.section.points()[0] == std::vector<int>{1, 1});

  // Fixing one endpoint of the GF(3) path leaves a 3-point section that is
  // 1-compatible with the remaining edge.
  const auto x = gf3_middle_relation();
  for (int value = 0; value < 3; ++value) {
    const auto section = relative_restrict(x, PartialAssignment{{0}, {value}});
    CHECK(section.section.points().size() == 3);
    const auto cert = certify_compatibility(section.section, path_graph(2));
    CHECK(cert.d == 1);
  }
}

TEST_CASE("relative compatibility of induced subgraphs (uniform over sections)") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    const Graph g = erdos_renyi(6, 0.5, rng());
    const auto x = random_relation(6, rng, 3, 60);
    const long d = certify_compatibility(x, g).d;
    std::vector<int> hm;
    for (int v = 0; v < 6; ++v)
      if (rng() & 1) hm.push_back(v);
    if (hm.empty()) continue;
    const VertexSet h(hm);
    const VertexSet rest = VertexSet::range(6).set_minus(h);
    // For every v in H and neighbor w in H: values on (N_H(v)\{w}) u {v} u rest
    // leave at most d options for w.
    for (int v : h) {
      for (int w : g.neighbors(v)) {
        if (!h.contains(w)) continue;
        std::vector<int> am;
        for (int u : g.neighbors(v))
          if (u != w && h.contains(u)) am.push_back(u);
        am.push_back(v);
        const VertexSet a = VertexSet(am).set_union(rest);
        CHECK(measure_determinacy(x, a, VertexSet({w})).measured_d <= d);
      }
    }
  }
}

TEST_CASE("tree order validation") {
  CHECK_THROWS_AS(TreeOrder({0, 1}, {-1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(TreeOrder({0, 1}, {1, 0}), std::invalid_argument);
  const TreeOrder order({0, 1, 2}, {-1, 0, 1});
  CHECK(order.root() == 0);
  CHECK(order.maximal() == std::vector<int>{2});
}

TEST_CASE("tree_propagate: diagonal set with a star order") {
  const auto diag = diagonal_set(4, 3);
  const Graph star = star_graph(4);
  // Root the star at leaf 1: 1 -> 0 -> {2, 3}.
  const auto f = induced(star, VertexSet::range(4));
  const TreeOrder order = TreeOrder::from_tree_component(f, VertexSet::range(4), 1);
  CHECK(order.maximal() == std::vector<int>{2, 3});

  for (int t = 0; t < 3; ++t) {
    const auto result = tree_propagate(diag, order, PartialAssignment{{2, 3}, {t, t}});
    REQUIRE(result.completions.size() == 1);
    CHECK(result.completions[0] == std::vector<int>{t, t});
    CHECK(result.enumerated <= result.limit);
  }
  // Unrealized fixing: no completions.
  const auto none = tree_propagate(diag, order, PartialAssignment{{2, 3}, {0, 1}});
  CHECK(none.completions.empty());
}

TEST_CASE("tree_propagate equals brute-force filtering on the GF(3) sets") {
  const Graph p3 = path_graph(3);
  const auto f = induced(p3, VertexSet::range(3));
  const TreeOrder order = TreeOrder::from_tree_component(f, VertexSet::range(3), 0);
  CHECK(order.maximal() == std::vector<int>{2});

  // Middle-relation set: three completions per endpoint value (the measured
  // hypothesis degree is 3 at the endpoint pair).
  const auto x = gf3_middle_relation();
  for (int value = 0; value < 3; ++value) {
    const auto r = tree_propagate(x, order, PartialAssignment{{2}, {value}});
    CHECK(r.hypothesis_d == 3);
    CHECK(r.enumerated == 3);
    REQUIRE(r.completions.size() == 3);
    std::set<std::vector<int>> expected;
    for (const auto& p : x.points())
      if (p[2] == value) expected.insert({p[0], p[1]});
    const std::set<std::vector<int>> got(r.completions.begin(), r.completions.end());
    CHECK(got == expected);
  }

  // Eigenvector section: unique completion per endpoint value, degree 1.
  const auto eigen = gf3_eigen_section();
  for (int value = 0; value < 3; ++value) {
    const auto r = tree_propagate(eigen, order, PartialAssignment{{2}, {value}});
    CHECK(r.hypothesis_d == 1);
    CHECK(r.completions.size() == 1);
  }
}

TEST_CASE("tree_propagate on the full product meets the bound with equality") {
  const auto full = full_product(3, 2);
  const Graph p3 = path_graph(3);
  const TreeOrder order =
      TreeOrder::from_tree_component(induced(p3, VertexSet::range(3)), VertexSet::range(3), 0);
  const auto r = tree_propagate(full, order, PartialAssignment{{2}, {0}});
  CHECK(r.hypothesis_d == 2);
  CHECK(r.limit == 4);
  CHECK(r.enumerated == 4);
  CHECK(r.completions.size() == 4);
}

TEST_CASE("tree_propagate handles uneven branches (deep subtrees under shallow ones)") {
  // Order on 7 indices: 0 -> 1 -> 2; 2 has children 3 (maximal) and 4;
  // 4 -> 5 -> 6 (maximal). Node 2's witness subtree can be the deep branch,
  // so the sweep must finish whole subtrees before their ancestors.
  const TreeOrder order({0, 1, 2, 3, 4, 5, 6}, {-1, 0, 1, 2, 2, 4, 5});
  CHECK(order.maximal() == std::vector<int>{3, 6});

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_relation(7, rng, 3, 120);
    // Try every realized fixing plus one synthetic.
    std::set<std::vector<int>> fixings;
    for (const auto& p : x.points()) fixings.insert({p[3], p[6]});
    fixings.insert({x.domains()[3][0], x.domains()[6][0]});
    for (const auto& values : fixings) {
      const PartialAssignment fixed{{3, 6}, values};
      const auto r = tree_propagate(x, order, fixed);
      CHECK(r.enumerated <= r.limit);
      std::set<std::vector<int>> expected;
      for (const auto& p : x.points())
        if (p[3] == values[0] && p[6] == values[1])
          expected.insert({p[0], p[1], p[2], p[4], p[5]});
      const std::set<std::vector<int>> got(r.completions.begin(), r.completions.end());
      CHECK(got == expected);
    }
  }
}

TEST_CASE("tree_propagate reports declared-degree violations") {
  const auto x = gf3_middle_relation();
  const Graph p3 = path_graph(3);
  const TreeOrder order =
      TreeOrder::from_tree_component(induced(p3, VertexSet::range(3)), VertexSet::range(3), 0);
  const auto r = tree_propagate(x, order, PartialAssignment{{2}, {0}}, 1);
  REQUIRE(r.violation.has_value());
  CHECK(r.violation->first == 1);
  CHECK(r.violation->second == 2);
}

TEST_CASE("forest_determinacy_check on the GF(3) sets") {
  const Graph p3 = path_graph(3);
  const auto x = gf3_middle_relation();

  // F = a single edge, L = one endpoint.
  {
    const auto f = induced(p3, VertexSet({0, 1}));
    const auto r = forest_determinacy_check(x, p3, f, VertexSet({1}));
    CHECK(r.pass);
    CHECK(r.measured <= r.d);
  }
  // F = the whole path: measured count within d^{|F\L|}.
  {
    const auto f = induced(p3, VertexSet::range(3));
    const auto r = forest_determinacy_check(x, p3, f, VertexSet({2}));
    CHECK(r.pass);
    CHECK(r.d == 3);
    CHECK(r.measured == 3);
  }
  // The eigenvector section achieves measured 1 with d = 1.
  {
    const auto eigen = gf3_eigen_section();
    const auto f = induced(p3, VertexSet::range(3));
    const auto r = forest_determinacy_check(eigen, p3, f, VertexSet({2}));
    CHECK(r.pass);
    CHECK(r.d == 1);
    CHECK(r.measured == 1);
    CHECK(r.limit == 1);
  }
}

TEST_CASE("forest check uses the strong degree when isolated vertices are present") {
  // Star: choosing two leaves gives a forest of two isolated vertices; the
  // selection is empty and the limit comes from the strong degree.
  const Graph star = star_graph(4);
  const auto full = full_product(4, 2);
  const auto f = induced(star, VertexSet({1, 2}));
  const auto r = forest_determinacy_check(full, star, f, VertexSet{});
  CHECK(r.used_strong);
  CHECK(r.d == 2);        // strong: the center never pins a leaf of the full product
  CHECK(r.measured == 4); // both free leaves
  CHECK(r.limit == 4);
  CHECK(r.pass);

  // Weak-mode forests never consult the strong degree.
  const auto edge = induced(star, VertexSet({0, 1}));
  const auto r2 = forest_determinacy_check(full, star, edge, VertexSet({1}));
  CHECK_FALSE(r2.used_strong);
}

TEST_CASE("forest check rejects invalid leaf selections") {
  const Graph p3 = path_graph(3);
  const auto x = gf3_middle_relation();
  const auto f = induced(p3, VertexSet::range(3));
  CHECK_THROWS_AS(forest_determinacy_check(x, p3, f, VertexSet({0, 2})),
                  std::invalid_argument);  // both leaves kept
  CHECK_THROWS_AS(forest_determinacy_check(x, p3, f, VertexSet({1})),
                  std::invalid_argument);  // non-leaf
}

TEST_CASE("forest check property: the bound holds on random instances") {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 2);
    const Graph g = erdos_renyi(n, 0.4, rng());
    const auto x = random_relation(n, rng, 3, 80);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> verts;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) verts.push_back(v);
      const auto h = induced(g, VertexSet(verts));
      const auto summary = forest_summary(h);
      if (!summary.is_forest || !summary.isolated.empty()) continue;
      const auto r = forest_determinacy_check(x, g, h, leaf_selection(h));
      CHECK(r.pass);
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("algebra suite: no violations on structured or random sets") {
  CHECK(algebra_suite(diagonal_set(4, 3), 25, 1).violations.empty());
  CHECK(algebra_suite(full_product(3, 2), 25, 2).violations.empty());
  CHECK(algebra_suite(gf3_middle_relation(), 25, 3).violations.empty());

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_relation(5, rng);
    const auto report = algebra_suite(x, 20, rng());
    CHECK(report.violations.empty());
  }
}

TEST_CASE("conjunction holds with equality on the full product for disjoint B, C") {
  const auto full = full_product(3, 2);
  const VertexSet a({0});
  const long d_b = measure_determinacy(full, a, VertexSet({1})).measured_d;
  const long d_c = measure_determinacy(full, a, VertexSet({2})).measured_d;
  const long d_bc = measure_determinacy(full, a, VertexSet({1, 2})).measured_d;
  CHECK(d_bc == d_b * d_c);
}
