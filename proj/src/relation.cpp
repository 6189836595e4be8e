#include "graphdim/relation.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace graphdim {

long saturating_pow(long d, int e) {
  if (e < 0) throw std::invalid_argument("negative exponent");
  long r = 1;
  for (int i = 0; i < e; ++i) {
    if (d != 0 && r > std::numeric_limits<long>::max() / d)
      return std::numeric_limits<long>::max();
    r *= d;
  }
  return r;
}

FiniteRelationSet::FiniteRelationSet(std::vector<std::vector<int>> domains,
                                     std::vector<std::vector<int>> points,
                                     RelationLimits limits)
    : domains_(std::move(domains)), points_(std::move(points)) {
  if (static_cast<int>(domains_.size()) > limits.max_indices)
    throw std::invalid_argument("relation set: too many indices");
  for (auto& dom : domains_) {
    std::sort(dom.begin(), dom.end());
    dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
    if (static_cast<int>(dom.size()) > limits.max_domain)
      throw std::invalid_argument("relation set: domain too large");
  }
  if (static_cast<long>(points_.size()) > limits.max_points)
    throw std::invalid_argument("relation set: too many points");
  for (const auto& p : points_) {
    if (p.size() != domains_.size())
      throw std::invalid_argument("relation set: point arity mismatch");
    for (std::size_t v = 0; v < p.size(); ++v) {
      if (!std::binary_search(domains_[v].begin(), domains_[v].end(), p[v]))
        throw std::invalid_argument("relation set: point value outside its domain");
    }
  }
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
    throw std::invalid_argument("relation set: duplicate point");
}

bool FiniteRelationSet::contains_point(const std::vector<int>& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

namespace {

std::vector<int> project(const std::vector<int>& point, const std::vector<int>& indices) {
  std::vector<int> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(point[i]);
  return out;
}

void check_subset_of_universe(const FiniteRelationSet& x, const VertexSet& s,
                              const char* what) {
  for (int v : s)
    if (v < 0 || v >= x.index_count())
      throw std::out_of_range(std::string(what) + ": index outside the universe");
}

}  // namespace

DeterminacyQuery measure_determinacy(const FiniteRelationSet& x, const VertexSet& a,
                                     const VertexSet& b) {
  check_subset_of_universe(x, a, "measure_determinacy A");
  check_subset_of_universe(x, b, "measure_determinacy B");
  // Assignments c on A range over the full product, but unrealized ones
  // contribute count 0, so the max is attained on realized projections
  // (and is 0 exactly when X is empty).
  std::map<std::vector<int>, std::set<std::vector<int>>> fibers;
  for (const auto& p : x.points())
    fibers[project(p, a.members())].insert(project(p, b.members()));
  long best = 0;
  std::vector<int> worst;
  for (const auto& [c, images] : fibers) {
    const long count = static_cast<long>(images.size());
    if (count > best) {
      best = count;
      worst = c;
    }
  }
  return DeterminacyQuery{a, b, best, std::move(worst)};
}

CompatibilityCertificate certify_compatibility(const FiniteRelationSet& x, const Graph& g) {
  if (x.index_count() != g.vertex_count())
    throw std::invalid_argument("certify_compatibility: universe/vertex-set mismatch");
  CompatibilityCertificate cert;
  cert.d = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int w : g.neighbors(v)) {
      std::vector<int> a = g.neighbors(v);
      std::erase(a, w);
      a.push_back(v);
      const auto q = measure_determinacy(x, VertexSet(std::move(a)), VertexSet({w}));
      cert.pair_degrees.push_back(PairDegree{v, w, q.measured_d});
      cert.d = std::max(cert.d, q.measured_d);
    }
  }
  cert.strong_d = cert.d;
  cert.strong_degrees.reserve(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto q = measure_determinacy(x, VertexSet(g.neighbors(v)), VertexSet({v}));
    cert.strong_degrees.push_back(q.measured_d);
    cert.strong_d = std::max(cert.strong_d, q.measured_d);
  }
  return cert;
}

RestrictedRelation relative_restrict(const FiniteRelationSet& x,
                                     const PartialAssignment& fixed) {
  if (fixed.indices.size() != fixed.values.size())
    throw std::invalid_argument("relative_restrict: index/value length mismatch");
  if (!std::is_sorted(fixed.indices.begin(), fixed.indices.end()) ||
      std::adjacent_find(fixed.indices.begin(), fixed.indices.end()) != fixed.indices.end())
    throw std::invalid_argument("relative_restrict: indices must be strictly increasing");
  for (std::size_t i = 0; i < fixed.indices.size(); ++i) {
    const int v = fixed.indices[i];
    if (v < 0 || v >= x.index_count())
      throw std::out_of_range("relative_restrict: index outside the universe");
    const auto& dom = x.domains()[v];
    if (!std::binary_search(dom.begin(), dom.end(), fixed.values[i]))
      throw std::invalid_argument("relative_restrict: value outside its domain");
  }
  std::vector<int> kept;
  for (int v = 0; v < x.index_count(); ++v)
    if (!std::binary_search(fixed.indices.begin(), fixed.indices.end(), v))
      kept.push_back(v);
  std::set<std::vector<int>> section_points;
  for (const auto& p : x.points()) {
    bool match = true;
    for (std::size_t i = 0; i < fixed.indices.size() && match; ++i)
      match = p[fixed.indices[i]] == fixed.values[i];
    if (match) section_points.insert(project(p, kept));
  }
  std::vector<std::vector<int>> domains;
  domains.reserve(kept.size());
  for (int v : kept) domains.push_back(x.domains()[v]);
  FiniteRelationSet section(std::move(domains),
                            {section_points.begin(), section_points.end()});
  return RestrictedRelation{std::move(section), std::move(kept)};
}

TreeOrder::TreeOrder(std::vector<int> carrier, std::vector<int> parent_of)
    : carrier_(std::move(carrier)), parent_(std::move(parent_of)) {
  if (carrier_.empty()) throw std::invalid_argument("tree order: empty carrier");
  if (!std::is_sorted(carrier_.begin(), carrier_.end()) ||
      std::adjacent_find(carrier_.begin(), carrier_.end()) != carrier_.end())
    throw std::invalid_argument("tree order: carrier must be strictly increasing");
  if (parent_.size() != carrier_.size())
    throw std::invalid_argument("tree order: parent map length mismatch");
  const int k = static_cast<int>(carrier_.size());
  root_pos_ = -1;
  children_.assign(k, {});
  for (int i = 0; i < k; ++i) {
    if (parent_[i] == -1) {
      if (root_pos_ >= 0) throw std::invalid_argument("tree order: two minimal elements");
      root_pos_ = i;
    } else if (parent_[i] < 0 || parent_[i] >= k || parent_[i] == i) {
      throw std::invalid_argument("tree order: bad parent position");
    } else {
      children_[parent_[i]].push_back(i);
    }
  }
  if (root_pos_ < 0) throw std::invalid_argument("tree order: no minimal element");
  // Acyclicity: everything must reach the root.
  for (int i = 0; i < k; ++i) {
    int cur = i;
    int steps = 0;
    while (parent_[cur] != -1) {
      cur = parent_[cur];
      if (++steps > k) throw std::invalid_argument("tree order: parent map has a cycle");
    }
  }
  for (int i = 0; i < k; ++i)
    if (children_[i].empty()) maximal_.push_back(carrier_[i]);
}

TreeOrder TreeOrder::from_tree_component(const InducedSubgraph& f,
                                         const VertexSet& component, int root) {
  if (!component.contains(root))
    throw std::invalid_argument("tree order: root not in component");
  std::vector<int> carrier = component.members();
  auto pos = [&](int v) {
    return static_cast<int>(std::lower_bound(carrier.begin(), carrier.end(), v) -
                            carrier.begin());
  };
  std::vector<int> parent(carrier.size(), -2);
  std::vector<int> stack{root};
  parent[pos(root)] = -1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : f.parent->neighbors(v)) {
      if (!component.contains(w)) continue;
      if (parent[pos(w)] != -2) continue;
      parent[pos(w)] = pos(v);
      stack.push_back(w);
    }
  }
  for (int p : parent)
    if (p == -2) throw std::invalid_argument("tree order: component not connected");
  return TreeOrder(std::move(carrier), std::move(parent));
}

int TreeOrder::position_of(int element) const {
  auto it = std::lower_bound(carrier_.begin(), carrier_.end(), element);
  if (it == carrier_.end() || *it != element)
    throw std::out_of_range("tree order: element not in carrier");
  return static_cast<int>(it - carrier_.begin());
}

std::vector<int> TreeOrder::above(int pos) const {
  std::vector<int> out;
  std::vector<int> stack{pos};
  while (!stack.empty()) {
    const int p = stack.back();
    stack.pop_back();
    for (int c : children_[p]) {
      out.push_back(carrier_[c]);
      stack.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TreePropagation tree_propagate(const FiniteRelationSet& x, const TreeOrder& order,
                               const PartialAssignment& fixed,
                               std::optional<long> declared_d) {
  const auto& carrier = order.carrier();
  const int k = static_cast<int>(carrier.size());
  const VertexSet t_set(carrier);
  const VertexSet m_set(order.maximal());
  const VertexSet complement = VertexSet::range(x.index_count()).set_minus(t_set);

  // `fixed` must assign exactly M and the complement of T, within domains.
  const VertexSet expected = m_set.set_union(complement);
  if (fixed.indices != expected.members())
    throw std::invalid_argument("tree_propagate: fixed assignment must cover M and the complement of T");
  for (std::size_t i = 0; i < fixed.indices.size(); ++i) {
    const auto& dom = x.domains()[fixed.indices[i]];
    if (!std::binary_search(dom.begin(), dom.end(), fixed.values[i]))
      throw std::invalid_argument("tree_propagate: fixed value outside its domain");
  }
  auto fixed_value = [&](int index) {
    const auto it = std::lower_bound(fixed.indices.begin(), fixed.indices.end(), index);
    return fixed.values[it - fixed.indices.begin()];
  };

  TreePropagation out;
  out.target_indices = t_set.set_minus(m_set).members();

  // Measured hypothesis degree: for every non-maximal v and every immediate
  // successor w, values on {w}, the elements above w, and the complement
  // bound the possibilities for v.
  out.hypothesis_d = 0;
  for (int pos = 0; pos < k; ++pos) {
    if (order.children_of(pos).empty()) continue;
    const int v = carrier[pos];
    for (int child : order.children_of(pos)) {
      std::vector<int> hyp = order.above(child);
      hyp.push_back(carrier[child]);
      VertexSet a = VertexSet(std::move(hyp)).set_union(complement);
      const auto q = measure_determinacy(x, a, VertexSet({v}));
      if (declared_d && q.measured_d > *declared_d) {
        out.violation = std::make_pair(v, carrier[child]);
        out.limit = saturating_pow(*declared_d, static_cast<int>(out.target_indices.size()));
        out.enumerated = 0;
        return out;
      }
      out.hypothesis_d = std::max(out.hypothesis_d, q.measured_d);
    }
  }
  if (declared_d) out.hypothesis_d = *declared_d;
  out.limit = saturating_pow(out.hypothesis_d, static_cast<int>(out.target_indices.size()));

  // Section of X by the complement assignment; all further matching happens
  // inside it.
  std::vector<const std::vector<int>*> section;
  for (const auto& p : x.points()) {
    bool match = true;
    for (std::size_t i = 0; i < fixed.indices.size() && match; ++i) {
      if (t_set.contains(fixed.indices[i])) continue;  // M handled via partials
      match = p[fixed.indices[i]] == fixed.values[i];
    }
    if (match) section.push_back(&p);
  }

  // Depth of every carrier position (root = 0).
  std::vector<int> depth(k, 0);
  {
    std::vector<int> stack{order.position_of(order.root())};
    while (!stack.empty()) {
      const int p = stack.back();
      stack.pop_back();
      for (int c : order.children_of(p)) {
        depth[c] = depth[p] + 1;
        stack.push_back(c);
      }
    }
  }
  // Children before parents: by descending depth, then ascending id. This is
  // the dependency order of the inductive construction.
  std::vector<int> sweep;
  for (int pos = 0; pos < k; ++pos)
    if (!order.children_of(pos).empty()) sweep.push_back(pos);
  std::sort(sweep.begin(), sweep.end(), [&](int a, int b) {
    if (depth[a] != depth[b]) return depth[a] > depth[b];
    return carrier[a] < carrier[b];
  });

  // Partial assignments over carrier positions; -1 = not yet chosen.
  std::vector<std::vector<int>> partials;
  {
    std::vector<int> base(k, -1);
    for (int m : order.maximal()) base[order.position_of(m)] = fixed_value(m);
    partials.push_back(std::move(base));
  }
  constexpr long kEnumerationCap = 2'000'000;
  for (int pos : sweep) {
    const int v = carrier[pos];
    // Witness successor: the smallest-id child. Its whole subtree is already
    // assigned because deeper positions were processed first.
    int child = order.children_of(pos)[0];
    for (int c : order.children_of(pos))
      if (carrier[c] < carrier[child]) child = c;
    std::vector<int> support = order.above(child);
    support.push_back(carrier[child]);
    std::sort(support.begin(), support.end());

    std::vector<std::vector<int>> next;
    for (const auto& partial : partials) {
      std::set<int> candidates;
      for (const auto* p : section) {
        bool match = true;
        for (int s : support) {
          if (partial[order.position_of(s)] != (*p)[s]) {
            match = false;
            break;
          }
        }
        if (match) candidates.insert((*p)[v]);
      }
      for (int value : candidates) {
        std::vector<int> extended = partial;
        extended[pos] = value;
        next.push_back(std::move(extended));
        if (static_cast<long>(next.size()) > kEnumerationCap)
          throw std::runtime_error("tree_propagate: enumeration overflow");
      }
    }
    partials = std::move(next);
  }
  out.enumerated = static_cast<long>(partials.size());

  // Exact filter: the full tuple (fixed + enumerated) must be a point of X.
  std::vector<std::vector<int>> kept;
  for (const auto& partial : partials) {
    std::vector<int> full(x.index_count());
    for (std::size_t i = 0; i < fixed.indices.size(); ++i)
      full[fixed.indices[i]] = fixed.values[i];
    for (int pos = 0; pos < k; ++pos)
      if (partial[pos] != -1) full[carrier[pos]] = partial[pos];
    if (x.contains_point(full)) kept.push_back(project(full, out.target_indices));
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  out.completions = std::move(kept);
  return out;
}

namespace {

// Valid leaf selection: from every component with >= 2 vertices, all leaves
// except exactly one; nothing from singleton components.
void validate_leaf_selection(const InducedSubgraph& f, const ForestSummary& summary,
                             const VertexSet& l) {
  if (!l.set_minus(f.vertices).empty())
    throw std::invalid_argument("leaf selection: not a subset of the forest");
  for (const auto& comp : components(f)) {
    const VertexSet chosen = l.set_intersect(comp);
    if (comp.size() == 1) {
      if (!chosen.empty())
        throw std::invalid_argument("leaf selection: singleton component must contribute nothing");
      continue;
    }
    const VertexSet comp_leaves = summary.leaves.set_intersect(comp);
    if (!chosen.set_minus(comp_leaves).empty())
      throw std::invalid_argument("leaf selection: contains a non-leaf");
    if (chosen.size() != comp_leaves.size() - 1)
      throw std::invalid_argument("leaf selection: must omit exactly one leaf per component");
  }
}

}  // namespace

ForestCheckResult forest_determinacy_check(const FiniteRelationSet& x, const Graph& g,
                                           const InducedSubgraph& f, const VertexSet& l) {
  if (x.index_count() != g.vertex_count())
    throw std::invalid_argument("forest check: universe/vertex-set mismatch");
  if (f.parent != &g) throw std::invalid_argument("forest check: subgraph of a different graph");
  const ForestSummary summary = forest_summary(f);
  if (!summary.is_forest) throw std::invalid_argument("forest check: subgraph is not a forest");
  validate_leaf_selection(f, summary, l);

  const bool used_strong = !summary.isolated.empty();
  const auto cert = certify_compatibility(x, g);
  const long d = used_strong ? cert.strong_d : cert.d;

  const VertexSet all = VertexSet::range(g.vertex_count());
  const VertexSet a = l.set_union(all.set_minus(f.vertices));
  const VertexSet b = f.vertices.set_minus(l);
  auto q = measure_determinacy(x, a, b);
  const long limit = saturating_pow(d, b.size());
  return ForestCheckResult{q.measured_d <= limit, q.measured_d, limit,
                           d,        used_strong,  std::move(q.worst_assignment)};
}

namespace {

VertexSet random_subset(int n, std::mt19937_64& rng) {
  std::vector<int> m;
  for (int v = 0; v < n; ++v)
    if (rng() & 1) m.push_back(v);
  return VertexSet(std::move(m));
}

long sat_mul(long a, long b) {
  if (a != 0 && b > std::numeric_limits<long>::max() / a)
    return std::numeric_limits<long>::max();
  return a * b;
}

}  // namespace

AlgebraReport algebra_suite(const FiniteRelationSet& x, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AlgebraReport report;
  const int n = x.index_count();
  auto record = [&](const char* property, const VertexSet& a, const VertexSet& b,
                    const VertexSet& c, const VertexSet& d, long lhs, long rhs) {
    ++report.checks;
    if (lhs > rhs)
      report.violations.push_back(AlgebraViolation{property, a, b, c, d, lhs, rhs});
  };
  for (int it = 0; it < samples; ++it) {
    const VertexSet a = random_subset(n, rng);
    const VertexSet b = random_subset(n, rng);
    const VertexSet c = random_subset(n, rng);
    const VertexSet d = random_subset(n, rng);

    record("idempotence", a, a, {}, {}, measure_determinacy(x, a, a).measured_d, 1);

    const long d_ac = measure_determinacy(x, a, c).measured_d;
    const long d_aub_c = measure_determinacy(x, a.set_union(b), c).measured_d;
    record("monotonicity", a, b, c, {}, d_aub_c, d_ac);

    const long d_ab = measure_determinacy(x, a, b).measured_d;
    const long d_a_buc = measure_determinacy(x, a, b.set_union(c)).measured_d;
    record("conjunction", a, b, c, {}, d_a_buc, sat_mul(d_ab, d_ac));

    const long d_bc = measure_determinacy(x, b, c).measured_d;
    record("transitivity", a, b, c, {}, d_ac, sat_mul(d_ab, d_bc));

    const long d_cd = measure_determinacy(x, c, d).measured_d;
    const long d_sub = measure_determinacy(x, c.set_minus(b).set_union(a), d).measured_d;
    record("substitution", a, b, c, d, d_sub, sat_mul(d_ab, d_cd));
  }
  return report;
}

}  // namespace graphdim
