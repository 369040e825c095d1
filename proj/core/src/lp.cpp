#include "newtonosc/lp.hpp"

#include <cassert>
#include <optional>

namespace newtonosc::lp {

namespace {

class Tableau {
 public:
  Tableau(RationalMatrix rows, std::vector<std::size_t> basis)
      : rows_(std::move(rows)), basis_(std::move(basis)) {}

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return rows_.empty() ? 0 : rows_.front().size() - 1; }
  const Rational& rhs(std::size_t r) const { return rows_[r].back(); }
  const Rational& at(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  std::size_t basic(std::size_t r) const { return basis_[r]; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = rows_[r][c];
    for (auto& v : rows_[r]) v /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || sgn(rows_[i][c]) == 0) continue;
      const Rational f = rows_[i][c];
      for (std::size_t k = 0; k < rows_[i].size(); ++k) rows_[i][k] -= f * rows_[r][k];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  // Minimizes cost over columns with allowed[c] set. Returns false if unbounded.
  bool run(const RationalVector& cost, const std::vector<bool>& allowed) {
    const std::size_t n = num_cols();
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < n && !entering; ++j) {
        if (!allowed[j]) continue;
        Rational rc = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) rc -= cost[basis_[i]] * rows_[i][j];
        if (sgn(rc) < 0) entering = j;
      }
      if (!entering) return true;
      const std::size_t c = *entering;
      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (sgn(rows_[i][c]) <= 0) continue;
        Rational ratio = rows_[i].back() / rows_[i][c];
        if (!leaving || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, c);
    }
  }

  Rational objective(const RationalVector& cost) const {
    Rational z = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) z += cost[basis_[i]] * rows_[i].back();
    return z;
  }

 private:
  RationalMatrix rows_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Result minimize(const RationalMatrix& a, const RationalVector& b, const RationalVector& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  // Columns: n structural, then m artificials, then rhs.
  RationalMatrix rows(m, RationalVector(n + m + 1, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int s = sgn(b[i]) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = s * a[i][j];
    rows[i][n + i] = 1;
    rows[i][n + m] = s * b[i];
    basis[i] = n + i;
  }
  Tableau t(std::move(rows), std::move(basis));

  RationalVector phase1(n + m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1;
  std::vector<bool> all(n + m, true);
  t.run(phase1, all);
  Result result;
  if (sgn(t.objective(phase1)) > 0) {
    result.status = Status::Infeasible;
    return result;
  }

  // Drive remaining artificials out of the basis; drop redundant rows.
  for (std::size_t r = 0; r < t.num_rows();) {
    if (t.basic(r) < n) {
      ++r;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n && !col; ++j) {
      if (sgn(t.at(r, j)) != 0) col = j;
    }
    if (col) {
      t.pivot(r, *col);
      ++r;
    } else {
      t.drop_row(r);
    }
  }

  RationalVector phase2(n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  std::vector<bool> structural(n + m, false);
  for (std::size_t j = 0; j < n; ++j) structural[j] = true;
  if (!t.run(phase2, structural)) {
    result.status = Status::Unbounded;
    return result;
  }
  result.status = Status::Optimal;
  result.objective = t.objective(phase2);
  result.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.num_rows(); ++i) {
    if (t.basic(i) < n) result.x[t.basic(i)] = t.rhs(i);
  }
  return result;
}

bool in_dominated_hull(std::span<const RationalVector> points, const RationalVector& q) {
  if (points.empty()) return false;
  const std::size_t d = q.size();
  const std::size_t k = points.size();
  // Variables: lambda (k), slack gamma (d).  sum_i lambda_i p_i + gamma = q; sum lambda = 1.
  RationalMatrix a(d + 1, RationalVector(k + d, Rational(0)));
  RationalVector b(d + 1);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t i = 0; i < k; ++i) a[r][i] = points[i][r];
    a[r][k + r] = 1;
    b[r] = q[r];
  }
  for (std::size_t i = 0; i < k; ++i) a[d][i] = 1;
  b[d] = 1;
  RationalVector zero(k + d, Rational(0));
  return minimize(a, b, zero).status == Status::Optimal;
}

}  // namespace newtonosc::lp
