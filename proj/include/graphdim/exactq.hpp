#pragma once

#include <gmpxx.h>

#include <vector>

// Exact linear algebra over the rationals: fraction-free (Bareiss) rank for
// integer matrices, deterministic leftmost-pivot reduced echelon form, and
// nullspace bases. No floating point anywhere on these paths.

namespace graphdim::exactq {

using Int = mpz_class;
using Rat = mpq_class;

using IntMatrix = std::vector<std::vector<Int>>;
using RatMatrix = std::vector<std::vector<Rat>>;

// Rank by fraction-free elimination; the input is consumed.
int rank_bareiss(IntMatrix m);

struct Echelon {
  RatMatrix rref;
  std::vector<int> pivot_cols;  // increasing; lexicographically smallest independent set
  int rank;
};

Echelon reduce(RatMatrix m);

int rank(const RatMatrix& m);

// Basis of {x : m x = 0}; one vector per free column, in free-column order.
std::vector<std::vector<Rat>> nullspace(const RatMatrix& m);

}  // namespace graphdim::exactq
