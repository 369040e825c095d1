#include "newtonosc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "newtonosc/error.hpp"
#include "newtonosc/exact_linalg.hpp"
#include "newtonosc/lp.hpp"
#include "newtonosc/nondegeneracy.hpp"

namespace newtonosc {

namespace {

double sup_norm_scaled_gradient(const Phase& f, std::span<const double> x) {
  double m = 0.0;
  for (double v : f.scaled_gradient(x)) m = std::max(m, std::abs(v));
  return m;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

Rational ceil_of(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(c);
}

// rho: max ||A~^{-1}||_inf over linearly independent support subsets lying
// on one facet and every nonsingular square column selection.
double compute_rho(const NewtonPolyhedron& polyhedron) {
  const std::size_t d = polyhedron.dimension();
  Rational rho = 0;
  for (const auto& w : polyhedron.facet_normals()) {
    std::vector<RationalVector> on;
    for (const auto& a : polyhedron.support()) {
      if (dot(a.exponents(), w) == 1) on.push_back(a.as_rational());
    }
    for (std::size_t n = 1; n <= std::min(d, on.size()); ++n) {
      for_each_subset(on.size(), n, [&](const std::vector<std::size_t>& rows) {
        RationalMatrix a;
        for (auto r : rows) a.push_back(on[r]);
        if (linalg::rank(a) != n) return;
        for_each_subset(d, n, [&](const std::vector<std::size_t>& cols) {
          RationalMatrix sq(n, RationalVector(n));
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < n; ++c) sq[i][c] = a[i][cols[c]];
          }
          const auto inv = linalg::inverse(sq);
          if (!inv) return;
          const Rational norm = linalg::infinity_norm(*inv);
          if (norm > rho) rho = norm;
        });
      });
    }
  }
  return rho.get_d();
}

// p = min{1, ||gamma_u||_inf} over support points u off every compact face,
// with gamma_u the largest-norm remainder of u = v + gamma, v on a compact face.
double compute_p(const NewtonPolyhedron& polyhedron) {
  const std::size_t d = polyhedron.dimension();
  const auto faces = polyhedron.compact_faces();
  const auto ext = polyhedron.extreme_points();
  Rational p = 1;
  for (const auto& u : polyhedron.support()) {
    const bool on_face = std::any_of(faces.begin(), faces.end(), [&](const Face& f) {
      return std::find(f.support_points.begin(), f.support_points.end(), u) != f.support_points.end();
    });
    if (on_face) continue;
    bool found = false;
    Rational best = 0;
    for (const auto& f : faces) {
      const std::size_t nv = f.vertex_ids.size();
      // Variables (lambda_1..lambda_nv, gamma_1..gamma_d) >= 0.
      RationalMatrix a(d + 1, RationalVector(nv + d, Rational(0)));
      RationalVector b(d + 1);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t v = 0; v < nv; ++v) a[i][v] = ext[f.vertex_ids[v]][i];
        a[i][nv + i] = 1;
        b[i] = u[i];
      }
      for (std::size_t v = 0; v < nv; ++v) a[d][v] = 1;
      b[d] = 1;
      for (std::size_t i = 0; i < d; ++i) {
        RationalVector c(nv + d, Rational(0));
        c[nv + i] = -1;
        const auto r = lp::minimize(a, b, c);
        if (r.status != lp::Status::Optimal) continue;
        const Rational g = -r.objective;
        if (!found || g > best) best = g;
        found = true;
      }
    }
    if (found && best < p) p = best;
  }
  return p.get_d();
}

double compute_delta_prime(const NewtonPolyhedron& polyhedron) {
  const auto support = polyhedron.support();
  const auto normals = polyhedron.facet_normals();
  bool any = false;
  Rational best = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      const bool shared = std::any_of(normals.begin(), normals.end(), [&](const RationalVector& w) {
        return dot(support[i].exponents(), w) == 1 && dot(support[j].exponents(), w) == 1;
      });
      if (shared) continue;
      RationalVector mid(polyhedron.dimension());
      for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = Rational(support[i][k] + support[j][k], 2);
      const Rational v = polyhedron.floor(std::span<const Rational>(mid)).value - 1;
      if (!any || v < best) best = v;
      any = true;
    }
  }
  return any ? best.get_d() : 1.0;
}

// log ||x grad f(x)||_inf at x = exp(u), evaluated relative to the largest
// monomial so that nothing underflows. `cancellation` is that norm divided
// by max_j sum_t |c_t alpha_j x^alpha|.
double log_sup_norm(const Phase& f, std::span<const double> u, double* cancellation = nullptr) {
  const std::size_t d = f.dimension();
  const auto terms = f.terms();
  const auto coeffs = f.coefficients_as_double();
  std::vector<double> e(terms.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < terms.size(); ++t) {
    double v = 0.0;
    for (std::size_t i = 0; i < d; ++i) v += terms[t].exponent[i] * u[i];
    e[t] = v;
    top = std::max(top, v);
  }
  double best = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double sum = 0.0, abs_sum = 0.0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const double v = coeffs[t] * terms[t].exponent[j] * std::exp(e[t] - top);
      sum += v;
      abs_sum += std::abs(v);
    }
    best = std::max(best, std::abs(sum));
    scale = std::max(scale, abs_sum);
  }
  if (cancellation) *cancellation = scale > 0.0 ? best / scale : 0.0;
  return best > 0.0 ? top + std::log(best) : -std::numeric_limits<double>::infinity();
}

// Infimum of log ||x grad f||_inf over the cube [lo, hi]^d given as logs.
double log_cube_infimum(const Phase& f, double log_lo, double log_hi, int grid, double* cancellation) {
  const std::size_t d = f.dimension();
  std::vector<double> axis(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k) axis[k] = log_lo + (log_hi - log_lo) * k / (grid - 1);
  axis.back() = log_hi;

  std::vector<std::size_t> idx(d, 0);
  std::vector<double> u(d), best_u(d);
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) u[i] = axis[idx[i]];
    const double v = log_sup_norm(f, u);
    if (v < best) {
      best = v;
      best_u = u;
    }
    std::size_t pos = 0;
    while (pos < d && ++idx[pos] == static_cast<std::size_t>(grid)) idx[pos++] = 0;
    if (pos == d) break;
  }
  double step = (log_hi - log_lo) / (grid - 1);
  while (step > 1e-13 && std::isfinite(best)) {
    bool moved = false;
    for (std::size_t i = 0; i < d && !moved; ++i) {
      for (double dir : {-1.0, 1.0}) {
        std::vector<double> trial = best_u;
        trial[i] = std::clamp(best_u[i] + dir * step, log_lo, log_hi);
        if (trial[i] == best_u[i]) continue;
        const double v = log_sup_norm(f, trial);
        if (v < best) {
          best = v;
          best_u = std::move(trial);
          moved = true;
          break;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  log_sup_norm(f, best_u, cancellation);
  return best;
}

// Natural log of the smallest face infimum over [lo, hi]^d.
double log_face_infimum(const Phase& phase, const NewtonPolyhedron& polyhedron, double log_lo, double log_hi,
                        int grid) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < polyhedron.compact_faces().size(); ++f) {
    const auto fp = face_polynomial(phase, polyhedron, f);
    double cancellation = 0.0;
    const double v = log_cube_infimum(fp.polynomial, log_lo, log_hi, grid, &cancellation);
    if (!std::isfinite(v) || !(cancellation > 1e-10)) {
      throw DegeneratePhaseError("x grad phi_F vanishes on compact face " + std::to_string(f), f);
    }
    best = std::min(best, v);
  }
  return best;
}

double eta(double u) {
  // Bump supported in [1, 4].
  const double v = (2.0 * u - 5.0) / 3.0;
  const double s = 1.0 - v * v;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

}  // namespace

double box_infimum(const Phase& f, std::span<const double> lo, std::span<const double> hi, int grid,
                   std::vector<double>* argmin) {
  const std::size_t d = f.dimension();
  if (lo.size() != d || hi.size() != d) throw DomainError("dimension mismatch in box");
  if (grid < 2) throw DomainError("grid must have at least 2 points per axis");
  std::vector<std::vector<double>> axis(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!(lo[i] > 0.0 && hi[i] >= lo[i])) throw DomainError("box must satisfy 0 < lo <= hi");
    axis[i].resize(static_cast<std::size_t>(grid));
    const double ratio = std::log(hi[i] / lo[i]);
    for (int k = 0; k < grid; ++k) axis[i][k] = lo[i] * std::exp(ratio * k / (grid - 1));
    axis[i].front() = lo[i];
    axis[i].back() = hi[i];
  }

  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d), best_x(d);
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) x[i] = axis[i][idx[i]];
    const double v = sup_norm_scaled_gradient(f, x);
    if (v < best) {
      best = v;
      best_x = x;
    }
    std::size_t pos = 0;
    while (pos < d && ++idx[pos] == static_cast<std::size_t>(grid)) idx[pos++] = 0;
    if (pos == d) break;
  }

  // Compass search in log coordinates.
  double step = 0.0;
  for (std::size_t i = 0; i < d; ++i) step = std::max(step, std::log(hi[i] / lo[i]) / (grid - 1));
  while (step > 1e-13 && best > 0.0) {
    bool moved = false;
    for (std::size_t i = 0; i < d && !moved; ++i) {
      for (double dir : {-1.0, 1.0}) {
        std::vector<double> trial = best_x;
        trial[i] = std::clamp(best_x[i] * std::exp(dir * step), lo[i], hi[i]);
        if (trial[i] == best_x[i]) continue;
        const double v = sup_norm_scaled_gradient(f, trial);
        if (v < best) {
          best = v;
          best_x = std::move(trial);
          moved = true;
          break;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  if (argmin) *argmin = best_x;
  return best;
}

DyadicRatioRow gradient_ratio_row(const Phase& phase, const NewtonPolyhedron& polyhedron,
                                  std::span<const int> j, int grid) {
  const std::size_t d = phase.dimension();
  if (j.size() != d) throw DomainError("dimension mismatch in dyadic level");
  DyadicRatioRow row;
  row.j.assign(j.begin(), j.end());
  std::vector<double> eps(d), lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (j[i] < 0) throw DomainError("dyadic level must be nonnegative");
    eps[i] = std::ldexp(1.0, -j[i]);
    lo[i] = eps[i];
    hi[i] = 4.0 * eps[i];
  }
  row.epsilon = eps[0];
  row.box_min = box_infimum(phase, lo, hi, grid);
  for (const auto& a : polyhedron.extreme_points()) {
    double v = 1.0;
    for (std::size_t i = 0; i < d; ++i) v *= std::pow(eps[i], a[i]);
    row.envelope = std::max(row.envelope, v);
  }
  row.ratio = row.box_min / row.envelope;
  return row;
}

std::vector<DyadicRatioRow> gradient_ratio_table(const Phase& phase, const NewtonPolyhedron& polyhedron,
                                                 int j_max, int grid) {
  if (j_max < 1) throw DomainError("j_max must be at least 1");
  std::vector<DyadicRatioRow> rows;
  for (int j = 0; j <= j_max; ++j) {
    const std::vector<int> level(phase.dimension(), j);
    rows.push_back(gradient_ratio_row(phase, polyhedron, level, grid));
  }
  return rows;
}

ConstantsReport constants_report(const Phase& phase, const NewtonPolyhedron& polyhedron, int grid) {
  const std::size_t d = phase.dimension();
  ConstantsReport rep;
  rep.grid = grid;
  rep.k = phase.max_total_degree();

  const auto coeffs = phase.coefficients_as_double();
  for (std::size_t j = 0; j < d; ++j) {
    double sum = 0.0;
    for (std::size_t t = 0; t < phase.terms().size(); ++t) {
      const auto& alpha = phase.terms()[t].exponent;
      sum += std::abs(alpha[j] * coeffs[t]) * std::pow(4.0, alpha.total());
    }
    rep.a = std::max(rep.a, 2.0 * sum);
  }
  rep.rho = compute_rho(polyhedron);

  if (grid < 2) throw DomainError("grid must have at least 2 points per axis");
  const double log_a = std::log(rep.a);
  std::vector<double> lc{log_face_infimum(phase, polyhedron, 0.0, std::log(4.0), grid)};
  std::vector<double> lcp, lb;
  for (std::size_t m = 1; m <= d; ++m) {
    const double log_b = static_cast<double>(d) * rep.rho * (lc[m - 1] - log_a);
    lb.push_back(log_b);
    lcp.push_back(log_face_infimum(phase, polyhedron, log_b, std::log(4.0) - log_b, grid));
    lc.push_back(std::min(lcp.back(), lc[m - 1] - log_a));
  }
  rep.p = compute_p(polyhedron);
  rep.delta_prime = compute_delta_prime(polyhedron);
  rep.delta = std::min(rep.p, rep.delta_prime * rep.p);
  const double log_s = (lc[d] - log_a) / rep.delta;

  const double to10 = 1.0 / std::log(10.0);
  for (double v : lc) {
    rep.c.push_back(std::exp(v));
    rep.log10_c.push_back(v * to10);
  }
  for (double v : lcp) {
    rep.c_prime.push_back(std::exp(v));
    rep.log10_c_prime.push_back(v * to10);
  }
  for (double v : lb) {
    rep.b.push_back(std::exp(v));
    rep.log10_b.push_back(v * to10);
  }
  rep.s = std::exp(log_s);
  rep.log10_s = log_s * to10;
  return rep;
}

std::vector<BoxBoundRow> box_bound_check(const Phase& phase, const NewtonPolyhedron& polyhedron,
                                         const Multidegree& beta, std::span<const double> lambdas,
                                         int j_min, int j_max, int quality, std::optional<int> n_max) {
  const std::size_t d = phase.dimension();
  if (beta.size() != d) throw DomainError("dimension mismatch in monomial weight");
  if (j_min < 0 || j_max < j_min) throw DomainError("invalid dyadic range");
  const RationalVector shifted = beta.plus_ones();
  const Rational fl = polyhedron.floor(std::span<const Rational>(shifted)).value;
  const int nmax = n_max ? *n_max : static_cast<int>(ceil_of(fl).get_d());
  if (nmax < 0) throw DomainError("N_max must be nonnegative");

  std::vector<BoxBoundRow> rows;
  for (double lambda : lambdas) {
    if (!(lambda > 2.0)) throw DomainError("lambda must exceed 2");
    for (int j = j_min; j <= j_max; ++j) {
      const double eps = std::ldexp(1.0, -j);
      std::vector<AxisWeight> axes;
      for (std::size_t i = 0; i < d; ++i) {
        const int b = beta[i];
        axes.push_back({eps, 4.0 * eps, [eps, b](double x) {
                          double v = eta(x / eps);
                          for (int k = 0; k < b; ++k) v *= x;
                          return v;
                        }});
      }
      BoxBoundRow row;
      row.lambda = lambda;
      row.j = j;
      // B = min over N, alpha of lambda^{-N} eps^{|beta| + d - N|alpha|}, in log2 space.
      const double l2 = std::log2(lambda);
      double best = std::numeric_limits<double>::infinity();
      for (int n = 0; n <= nmax; ++n) {
        for (const auto& alpha : polyhedron.extreme_points()) {
          const double e = -n * l2 - j * (beta.total() + static_cast<double>(d) - n * alpha.total());
          best = std::min(best, e);
        }
      }
      row.bound = std::exp2(best);
      try {
        const auto r = integrate_box(phase, axes, lambda, quality, kBoxCheckMaxNodes);
        row.value = std::abs(r.value);
        // J/B is then known to within 0.1 max(J/B, 1).
        row.reliable = r.est_error <= 0.1 * std::max(row.value, row.bound);
      } catch (const BudgetExceededError&) {
        row.value = std::numeric_limits<double>::quiet_NaN();
        row.reliable = false;
      }
      row.ratio = row.value / row.bound;
      rows.push_back(row);
    }
  }
  return rows;
}

double dyadic_bound_sum(const NewtonPolyhedron& polyhedron, const Multidegree& beta, double lambda,
                        std::optional<int> n_max) {
  const std::size_t d = polyhedron.dimension();
  if (beta.size() != d) throw DomainError("dimension mismatch in monomial weight");
  if (!(lambda > 2.0)) throw DomainError("lambda must exceed 2");
  const RationalVector shifted = beta.plus_ones();
  const Rational fl = polyhedron.floor(std::span<const Rational>(shifted)).value;
  if (sgn(fl) == 0) throw DomainError("floor of beta + 1 is zero");
  const int nmax = n_max ? *n_max : static_cast<int>(ceil_of(fl).get_d()) + 1;
  if (Rational(nmax) <= fl) throw DomainError("N_max must exceed the floor of beta + 1");

  const double l2 = std::log2(lambda);
  std::vector<int> cap(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double v = Rational(shifted[i] / fl).get_d();
    cap[i] = static_cast<int>(std::ceil(l2 / v)) + 4;
  }
  struct Piece {
    double constant;
    std::vector<double> slope;
  };
  std::vector<Piece> pieces;
  for (int n = 0; n <= nmax; ++n) {
    for (const auto& alpha : polyhedron.extreme_points()) {
      Piece piece{-n * l2, std::vector<double>(d)};
      for (std::size_t i = 0; i < d; ++i) piece.slope[i] = n * alpha[i] - beta[i] - 1.0;
      pieces.push_back(std::move(piece));
    }
  }

  // Fixed-order compensated accumulation over the box.
  double sum = 0.0, comp = 0.0;
  std::vector<int> j(d, 0);
  for (;;) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& piece : pieces) {
      double e = piece.constant;
      for (std::size_t i = 0; i < d; ++i) e += piece.slope[i] * j[i];
      best = std::min(best, e);
    }
    const double y = std::exp2(best) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    std::size_t pos = 0;
    while (pos < d && ++j[pos] > cap[pos]) j[pos++] = 0;
    if (pos == d) break;
  }

  // N = 0 terms outside the box: prod of full series minus prod of partial ones.
  double full = 1.0, partial = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double r = std::exp2(-(beta[i] + 1.0));
    full *= 1.0 / (1.0 - r);
    partial *= (1.0 - std::pow(r, cap[i] + 1)) / (1.0 - r);
  }
  return sum + (full - partial);
}

std::pair<Rational, int> theoretical_bound(const NewtonPolyhedron& polyhedron, const Multidegree& beta) {
  const RationalVector shifted = beta.plus_ones();
  const Rational fl = polyhedron.floor(std::span<const Rational>(shifted)).value;
  if (sgn(fl) == 0) throw DomainError("floor of beta + 1 is zero");
  return {fl, polyhedron.codim_of_point(beta) - 1};
}

}  // namespace newtonosc
