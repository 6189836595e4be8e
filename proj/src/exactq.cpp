#include "graphdim/exactq.hpp"

#include <utility>

namespace graphdim::exactq {

int rank_bareiss(IntMatrix m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  Int prev(1);
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int c = col + 1; c < cols; ++c) {
        m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
      }
      m[r][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

Echelon reduce(RatMatrix m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  std::vector<int> pivots;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    const Rat inv = 1 / m[rank][col];
    for (int c = col; c < cols; ++c) m[rank][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const Rat f = m[r][col];
      for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    pivots.push_back(col);
    ++rank;
  }
  return Echelon{std::move(m), std::move(pivots), rank};
}

int rank(const RatMatrix& m) { return reduce(m).rank; }

std::vector<std::vector<Rat>> nullspace(const RatMatrix& m) {
  if (m.empty()) return {};
  const int cols = static_cast<int>(m[0].size());
  Echelon e = reduce(m);
  std::vector<char> is_pivot(cols, 0);
  for (int c : e.pivot_cols) is_pivot[c] = 1;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[free] = 1;
    for (int r = 0; r < e.rank; ++r) v[e.pivot_cols[r]] = -e.rref[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace graphdim::exactq
