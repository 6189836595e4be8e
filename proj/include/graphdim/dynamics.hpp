#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphdim/forest_search.hpp"
#include "graphdim/graph.hpp"
#include "graphdim/spectral.hpp"

namespace graphdim {

enum class SpaceKind { line, circle };

/// Odd coupling function from the closed catalog: K*sin(x) on the circle, or
/// an odd polynomial sum_k coeff[k] * x^(2k+1) on the line (degree <= 9). The
/// fiber bound d caps the preimage count |f^{-1}(y)| on the state space.
struct Coupling {
  enum class Kind { sin_gain, odd_poly };
  Kind kind = Kind::sin_gain;
  double gain = 1.0;
  std::vector<double> coeffs;  // odd-power coefficients: x, x^3, x^5, ...

  static Coupling sin(double gain);
  static Coupling poly(std::vector<double> odd_coeffs);

  double value(double x) const;
  double derivative(double x) const;
  int fiber_bound() const;  // sin: 2; polynomial: its degree
};

struct NetworkSystem {
  Graph graph;
  SpaceKind space;
  std::vector<Coupling> coupling;  // one per edge, in edge-list order
  std::vector<double> omega;       // one per vertex

  // Uniform coupling on every edge. Validates the space/coupling pairing:
  // sin requires the circle, polynomials require the line.
  NetworkSystem(Graph g, SpaceKind s, const Coupling& c, std::vector<double> om);

  int fiber_bound() const;
};

// Velocity at x: omega_v + sum over neighbors of f(x_w - x_v). Evaluates the
// vertex-sum form and the incidence form omega - B f(B^t x) and cross-checks
// them to 1e-12.
std::vector<double> field(const NetworkSystem& sys, std::span<const double> x);

// Symmetric Jacobian of the field at x.
DenseMatrix field_jacobian(const NetworkSystem& sys, std::span<const double> x);

struct EquilibriumPoint {
  std::vector<double> state;
  double residual = 0.0;
  int kernel_dim = 0;
  double gap_ratio = 0.0;  // smallest kept / largest dropped singular value
  bool clean_gap = false;  // gap_ratio >= 1e3 (or no ambiguity at all)
};

// Multistart damped Newton; converged points are deduplicated after
// quotienting the global phase shift on the circle. Sorted deterministically.
std::vector<EquilibriumPoint> find_equilibria(const NetworkSystem& sys, int starts,
                                              std::uint64_t seed, double line_box = 2.0);

struct DynamicsReport {
  long weak_forest_bound = 0;
  std::optional<long> cycle_forest_bound;
  std::vector<EquilibriumPoint> equilibria;
  // Clean-gap equilibria whose kernel dimension exceeds the best bound;
  // reported as findings, not failures.
  std::vector<std::string> findings;
};

DynamicsReport validate_dynamics_bounds(const NetworkSystem& sys, const SearchBudget& budget,
                                        int starts, std::uint64_t seed, double line_box = 2.0);

}  // namespace graphdim
