#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops shared by the eigensolver and the oscillator
// field evaluation. Each kernel has a scalar reference implementation and
// SIMD variants; one variant is selected at process start (overridable via
// the GRAPHDIM_KERNELS environment variable: "scalar", "avx2", "neon").

namespace graphdim::kernels {

// Plane rotation applied in place to two rows of equal length:
//   x' = c*x - s*y
//   y' = s*x + c*y
using RotateFn = void (*)(double* x, double* y, std::size_t n, double c, double s);

using DotFn = double (*)(const double* x, const double* y, std::size_t n);

// Elementwise odd polynomial: out[i] = sum_k coeff[k] * t[i]^(2k+1).
using OddPolyFn = void (*)(const double* t, double* out, std::size_t n,
                           const double* coeff, std::size_t terms);

struct Dispatch {
  RotateFn rotate;
  DotFn dot;
  OddPolyFn odd_poly;
  const char* name;
};

const Dispatch& scalar();
const Dispatch& active();
// Named variant, or nullptr when not compiled in / not supported by the CPU.
const Dispatch* variant(std::string_view name);

inline void rotate(double* x, double* y, std::size_t n, double c, double s) {
  active().rotate(x, y, n, c, s);
}
inline double dot(const double* x, const double* y, std::size_t n) {
  return active().dot(x, y, n);
}
inline void odd_poly(const double* t, double* out, std::size_t n,
                     const double* coeff, std::size_t terms) {
  active().odd_poly(t, out, n, coeff, terms);
}

}  // namespace graphdim::kernels
