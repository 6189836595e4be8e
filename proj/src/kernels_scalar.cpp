#include "graphdim/kernels.hpp"

namespace graphdim::kernels {

namespace {

void rotate_scalar(double* x, double* y, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

// Horner in u = t^2, then one multiply by t. The SIMD variants follow the
// same per-element operation order so results match bit for bit.
void odd_poly_scalar(const double* t, double* out, std::size_t n,
                     const double* coeff, std::size_t terms) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ti = t[i];
    const double u = ti * ti;
    double p = 0.0;
    for (std::size_t k = terms; k-- > 0;) p = p * u + coeff[k];
    out[i] = p * ti;
  }
}

}  // namespace

const Dispatch& scalar() {
  static const Dispatch d{rotate_scalar, dot_scalar, odd_poly_scalar, "scalar"};
  return d;
}

}  // namespace graphdim::kernels
