#include "newtonosc/exact_linalg.hpp"

#include <utility>

namespace newtonosc::linalg {

std::size_t rank(RationalMatrix rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

std::optional<RationalVector> solve(RationalMatrix a, RationalVector b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && sgn(a[pivot][c]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[c], a[pivot]);
    std::swap(b[c], b[pivot]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a[i][c]) == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
      b[i] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix inv(n, RationalVector(n));
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector e(n, Rational(0));
    e[j] = 1;
    auto col = solve(a, std::move(e));
    if (!col) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) inv[i][j] = (*col)[i];
  }
  return inv;
}

Rational infinity_norm(const RationalMatrix& a) {
  Rational best = 0;
  for (const auto& row : a) {
    Rational s = 0;
    for (const auto& v : row) s += abs(v);
    if (s > best) best = s;
  }
  return best;
}

}  // namespace newtonosc::linalg
