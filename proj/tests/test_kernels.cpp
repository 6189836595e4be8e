#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "graphdim/kernels.hpp"

using namespace graphdim;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 4.0 - 2.0;
  return v;
}

}  // namespace

TEST_CASE("active dispatch is a known variant") {
  const auto& d = kernels::active();
  CHECK((std::string(d.name) == "scalar" || std::string(d.name) == "avx2" ||
         std::string(d.name) == "neon"));
  CHECK(kernels::variant("scalar") != nullptr);
  CHECK(kernels::variant("nonsense") == nullptr);
}

TEST_CASE("rotate: every variant matches the scalar reference bit for bit") {
  std::mt19937_64 rng(7);
  for (const char* name : {"avx2", "neon"}) {
    const auto* d = kernels::variant(name);
    if (!d) continue;
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 129u}) {
      auto x1 = random_vector(n, rng);
      auto y1 = random_vector(n, rng);
      auto x2 = x1;
      auto y2 = y1;
      const double theta = 0.3 + static_cast<double>(n) * 0.05;
      const double c = std::cos(theta), s = std::sin(theta);
      kernels::scalar().rotate(x1.data(), y1.data(), n, c, s);
      d->rotate(x2.data(), y2.data(), n, c, s);
      CHECK(x1 == x2);
      CHECK(y1 == y2);
    }
  }
}

TEST_CASE("odd_poly: every variant matches the scalar reference bit for bit") {
  std::mt19937_64 rng(11);
  const std::vector<double> coeff{1.0, -0.25, 0.125};
  for (const char* name : {"avx2", "neon"}) {
    const auto* d = kernels::variant(name);
    if (!d) continue;
    for (std::size_t n : {1u, 4u, 7u, 33u}) {
      const auto t = random_vector(n, rng);
      std::vector<double> out1(n), out2(n);
      kernels::scalar().odd_poly(t.data(), out1.data(), n, coeff.data(), coeff.size());
      d->odd_poly(t.data(), out2.data(), n, coeff.data(), coeff.size());
      CHECK(out1 == out2);
    }
  }
}

TEST_CASE("dot: variants agree with the scalar reference to relative 1e-12") {
  std::mt19937_64 rng(13);
  for (const char* name : {"avx2", "neon"}) {
    const auto* d = kernels::variant(name);
    if (!d) continue;
    for (std::size_t n : {1u, 5u, 32u, 101u}) {
      const auto x = random_vector(n, rng);
      const auto y = random_vector(n, rng);
      const double a = kernels::scalar().dot(x.data(), y.data(), n);
      const double b = d->dot(x.data(), y.data(), n);
      CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
    }
  }
}

TEST_CASE("odd_poly evaluates sum a_k t^(2k+1)") {
  const std::vector<double> coeff{2.0, -1.0};  // 2t - t^3
  const double t = 0.5;
  double out = 0.0;
  kernels::scalar().odd_poly(&t, &out, 1, coeff.data(), coeff.size());
  CHECK(out == doctest::Approx(2 * 0.5 - 0.125).epsilon(1e-15));
}
