#include "graphdim/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace graphdim::kernels {

namespace {

void rotate_avx2(double* x, double* y, std::size_t n, double c, double s) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_sub_pd(_mm256_mul_pd(vc, vx), _mm256_mul_pd(vs, vy)));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_mul_pd(vs, vx), _mm256_mul_pd(vc, vy)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

void odd_poly_avx2(const double* t, double* out, std::size_t n,
                   const double* coeff, std::size_t terms) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ti = _mm256_loadu_pd(t + i);
    const __m256d u = _mm256_mul_pd(ti, ti);
    __m256d p = _mm256_setzero_pd();
    for (std::size_t k = terms; k-- > 0;) {
      p = _mm256_add_pd(_mm256_mul_pd(p, u), _mm256_set1_pd(coeff[k]));
    }
    _mm256_storeu_pd(out + i, _mm256_mul_pd(p, ti));
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

const Dispatch* avx2_dispatch() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  static const Dispatch d{rotate_avx2, dot_avx2, odd_poly_avx2, "avx2"};
  return &d;
}

}  // namespace graphdim::kernels

#else

namespace graphdim::kernels {
const Dispatch* avx2_dispatch() { return nullptr; }
}  // namespace graphdim::kernels

#endif
