#include "graphdim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "graphdim/cycles.hpp"
#include "graphdim/kernels.hpp"

namespace graphdim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Coupling Coupling::sin(double gain) {
  if (gain == 0.0) throw std::invalid_argument("sin coupling: gain must be nonzero");
  Coupling c;
  c.kind = Kind::sin_gain;
  c.gain = gain;
  return c;
}

Coupling Coupling::poly(std::vector<double> odd_coeffs) {
  while (!odd_coeffs.empty() && odd_coeffs.back() == 0.0) odd_coeffs.pop_back();
  if (odd_coeffs.empty())
    throw std::invalid_argument("polynomial coupling: needs a nonzero coefficient");
  if (odd_coeffs.size() > 5)
    throw std::invalid_argument("polynomial coupling: degree capped at 9");
  Coupling c;
  c.kind = Kind::odd_poly;
  c.coeffs = std::move(odd_coeffs);
  return c;
}

double Coupling::value(double x) const {
  if (kind == Kind::sin_gain) return gain * std::sin(x);
  const double u = x * x;
  double p = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) p = p * u + coeffs[k];
  return p * x;
}

double Coupling::derivative(double x) const {
  if (kind == Kind::sin_gain) return gain * std::cos(x);
  // d/dx sum a_k x^(2k+1) = sum (2k+1) a_k x^(2k)
  const double u = x * x;
  double p = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;)
    p = p * u + (2.0 * static_cast<double>(k) + 1.0) * coeffs[k];
  return p;
}

int Coupling::fiber_bound() const {
  if (kind == Kind::sin_gain) return 2;
  return 2 * static_cast<int>(coeffs.size()) - 1;
}

NetworkSystem::NetworkSystem(Graph g, SpaceKind s, const Coupling& c,
                             std::vector<double> om)
    : graph(std::move(g)), space(s), omega(std::move(om)) {
  if (c.kind == Coupling::Kind::sin_gain && space != SpaceKind::circle)
    throw std::invalid_argument("sin coupling requires the circle state space");
  if (c.kind == Coupling::Kind::odd_poly && space != SpaceKind::line)
    throw std::invalid_argument("polynomial coupling requires the line state space");
  if (static_cast<int>(omega.size()) != graph.vertex_count())
    throw std::invalid_argument("omega length must match the vertex count");
  coupling.assign(graph.edge_count(), c);
}

int NetworkSystem::fiber_bound() const {
  int d = 0;
  for (const auto& c : coupling) d = std::max(d, c.fiber_bound());
  return d;
}

std::vector<double> field(const NetworkSystem& sys, std::span<const double> x) {
  const Graph& g = sys.graph;
  const int n = g.vertex_count();
  const int m = g.edge_count();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("field: state dimension mismatch");

  // Vertex-sum form.
  std::vector<double> out(sys.omega);
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbors(v))
      out[v] += sys.coupling[g.edge_index(v, w)].value(x[w] - x[v]);

  // Incidence form omega - B f(B^t x); edge e = (u, v) with u < v carries
  // y_e = x_v - x_u.
  std::vector<double> y(m);
  for (int e = 0; e < m; ++e) {
    const auto [u, v] = g.edges()[e];
    y[e] = x[v] - x[u];
  }
  std::vector<double> z(m);
  const bool uniform_poly =
      m > 0 && sys.coupling[0].kind == Coupling::Kind::odd_poly &&
      std::all_of(sys.coupling.begin(), sys.coupling.end(), [&](const Coupling& c) {
        return c.kind == Coupling::Kind::odd_poly && c.coeffs == sys.coupling[0].coeffs;
      });
  if (uniform_poly) {
    kernels::odd_poly(y.data(), z.data(), static_cast<std::size_t>(m),
                      sys.coupling[0].coeffs.data(), sys.coupling[0].coeffs.size());
  } else {
    for (int e = 0; e < m; ++e) z[e] = sys.coupling[e].value(y[e]);
  }
  std::vector<double> alt(sys.omega);
  for (int e = 0; e < m; ++e) {
    const auto [u, v] = g.edges()[e];
    alt[u] += z[e];  // -B has +1 at the tail
    alt[v] -= z[e];
  }

  double scale = 1.0;
  for (int v = 0; v < n; ++v) scale = std::max(scale, std::abs(out[v]));
  for (int v = 0; v < n; ++v)
    if (std::abs(out[v] - alt[v]) > 1e-12 * scale)
      throw std::logic_error("field: vertex-sum and incidence forms disagree");
  return out;
}

DenseMatrix field_jacobian(const NetworkSystem& sys, std::span<const double> x) {
  const Graph& g = sys.graph;
  const int n = g.vertex_count();
  DenseMatrix j(n);
  for (int v = 0; v < n; ++v) {
    for (int w : g.neighbors(v)) {
      const double d = sys.coupling[g.edge_index(v, w)].derivative(x[w] - x[v]);
      j.at(v, w) = d;
      j.at(v, v) -= d;
    }
  }
  return j;
}

namespace {

double residual_norm(const std::vector<double>& f) {
  return std::sqrt(kernels::dot(f.data(), f.data(), f.size()));
}

void wrap_circle(std::vector<double>& x) {
  for (double& v : x) {
    v = std::fmod(v, kTwoPi);
    if (v < 0) v += kTwoPi;
  }
}

struct KernelEstimate {
  int dim;
  double gap_ratio;
  bool clean;
};

KernelEstimate kernel_dimension(const DenseMatrix& j) {
  const EigenSystem sys = symmetric_eigen(j);
  const int n = j.n;
  std::vector<double> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = std::abs(sys.values[i]);
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  const double smax = sigma.empty() ? 0.0 : sigma[0];
  const double inf = std::numeric_limits<double>::infinity();
  if (smax == 0.0) return KernelEstimate{n, inf, true};
  int dim = 0;
  for (double s : sigma)
    if (s < 1e-6 * smax) ++dim;
  if (dim == 0) return KernelEstimate{0, inf, true};
  const double kept = sigma[n - dim - 1];
  const double dropped = sigma[n - dim];
  const double ratio = dropped == 0.0 ? inf : kept / dropped;
  return KernelEstimate{dim, ratio, ratio >= 1e3};
}

}  // namespace

std::vector<EquilibriumPoint> find_equilibria(const NetworkSystem& sys, int starts,
                                              std::uint64_t seed, double line_box) {
  const int n = sys.graph.vertex_count();
  std::mt19937_64 rng(seed);
  auto uniform01 = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<EquilibriumPoint> found;
  for (int attempt = 0; attempt < starts; ++attempt) {
    std::vector<double> x(n);
    for (double& v : x)
      v = sys.space == SpaceKind::circle ? uniform01() * kTwoPi
                                         : (2.0 * uniform01() - 1.0) * line_box;

    std::vector<double> f = field(sys, x);
    double r = residual_norm(f);
    for (int iter = 0; iter < 200 && r > 1e-11; ++iter) {
      const DenseMatrix j = field_jacobian(sys, x);
      EigenSystem eig;
      try {
        eig = symmetric_eigen(j);
      } catch (const std::runtime_error&) {
        break;
      }
      double lmax = 0.0;
      for (double v : eig.values) lmax = std::max(lmax, std::abs(v));
      if (lmax == 0.0) break;
      // Pseudoinverse Newton step: delta = -J^+ f.
      std::vector<double> delta(n, 0.0);
      for (int i = 0; i < n; ++i) {
        if (std::abs(eig.values[i]) <= 1e-10 * lmax) continue;
        const double coef =
            -kernels::dot(eig.vectors.row(i), f.data(), n) / eig.values[i];
        for (int k = 0; k < n; ++k) delta[k] += coef * eig.vectors.at(i, k);
      }
      // Damping: halve until the residual decreases, at most 40 times.
      double step = 1.0;
      bool improved = false;
      for (int h = 0; h < 40; ++h, step *= 0.5) {
        std::vector<double> trial(n);
        for (int k = 0; k < n; ++k) trial[k] = x[k] + step * delta[k];
        if (sys.space == SpaceKind::circle) wrap_circle(trial);
        std::vector<double> tf = field(sys, trial);
        const double tr = residual_norm(tf);
        if (tr < r) {
          x = std::move(trial);
          f = std::move(tf);
          r = tr;
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    if (r > 1e-9) continue;

    // Quotient the global rotation on the circle before comparing.
    if (sys.space == SpaceKind::circle) {
      const double shift = x[0];
      for (double& v : x) v -= shift;
      wrap_circle(x);
    }
    auto same = [&](const std::vector<double>& a, const std::vector<double>& b) {
      for (int k = 0; k < n; ++k) {
        double d = std::abs(a[k] - b[k]);
        if (sys.space == SpaceKind::circle) d = std::min(d, kTwoPi - d);
        if (d > 1e-6) return false;
      }
      return true;
    };
    bool duplicate = false;
    for (const auto& e : found)
      if (same(e.state, x)) {
        duplicate = true;
        break;
      }
    if (duplicate) continue;

    const KernelEstimate est = kernel_dimension(field_jacobian(sys, x));
    found.push_back(EquilibriumPoint{std::move(x), r, est.dim, est.gap_ratio, est.clean});
  }
  std::sort(found.begin(), found.end(),
            [](const EquilibriumPoint& a, const EquilibriumPoint& b) {
              return a.state < b.state;
            });
  return found;
}

DynamicsReport validate_dynamics_bounds(const NetworkSystem& sys, const SearchBudget& budget,
                                        int starts, std::uint64_t seed, double line_box) {
  DynamicsReport report;
  report.weak_forest_bound = best_forest(sys.graph, BoundMode::weak, budget).weak_bound;
  if (const auto cycles = search_cycle_forest(sys.graph, budget); cycles.best)
    report.cycle_forest_bound = cycles.best->bound;
  long best = report.weak_forest_bound;
  if (report.cycle_forest_bound) best = std::min(best, *report.cycle_forest_bound);

  report.equilibria = find_equilibria(sys, starts, seed, line_box);
  for (std::size_t i = 0; i < report.equilibria.size(); ++i) {
    const auto& e = report.equilibria[i];
    if (!e.clean_gap) continue;
    if (e.kernel_dim > best)
      report.findings.push_back("equilibrium " + std::to_string(i) + ": kernel dimension " +
                                std::to_string(e.kernel_dim) + " exceeds bound " +
                                std::to_string(best));
  }
  return report;
}

}  // namespace graphdim
