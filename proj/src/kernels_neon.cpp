#include "graphdim/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace graphdim::kernels {

namespace {

void rotate_neon(double* x, double* y, std::size_t n, double c, double s) {
  const float64x2_t vc = vdupq_n_f64(c);
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t vy = vld1q_f64(y + i);
    vst1q_f64(x + i, vsubq_f64(vmulq_f64(vc, vx), vmulq_f64(vs, vy)));
    vst1q_f64(y + i, vaddq_f64(vmulq_f64(vs, vx), vmulq_f64(vc, vy)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  }
  double sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

void odd_poly_neon(const double* t, double* out, std::size_t n,
                   const double* coeff, std::size_t terms) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t ti = vld1q_f64(t + i);
    const float64x2_t u = vmulq_f64(ti, ti);
    float64x2_t p = vdupq_n_f64(0.0);
    for (std::size_t k = terms; k-- > 0;) {
      p = vaddq_f64(vmulq_f64(p, u), vdupq_n_f64(coeff[k]));
    }
    vst1q_f64(out + i, vmulq_f64(p, ti));
  }
  for (; i < n; ++i) {
    const double ti = t[i];
    const double u = ti * ti;
    double p = 0.0;
    for (std::size_t k = terms; k-- > 0;) p = p * u + coeff[k];
    out[i] = p * ti;
  }
}

}  // namespace

const Dispatch* neon_dispatch() {
  static const Dispatch d{rotate_neon, dot_neon, odd_poly_neon, "neon"};
  return &d;
}

}  // namespace graphdim::kernels

#else

namespace graphdim::kernels {
const Dispatch* neon_dispatch() { return nullptr; }
}  // namespace graphdim::kernels

#endif
