#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "fixtures.hpp"

using namespace newtonosc;
using cd = std::complex<double>;

namespace {

// Composite Simpson on [-a, a]^d with m intervals per axis (d <= 2).
cd simpson(const Phase& f, const CutoffSpec& c, const std::vector<int>& beta, double lambda, int m) {
  const double a = c.radius, h = 2 * a / m;
  auto w = [&](int k) { return (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0); };
  cd sum = 0;
  if (f.dimension() == 1) {
    for (int k = 0; k <= m; ++k) {
      const double x = -a + k * h;
      const std::vector<double> p{x};
      sum += w(k) * std::pow(x, beta[0]) * c.factor(x) * std::polar(1.0, lambda * f.evaluate(p));
    }
    return sum * h / 3.0;
  }
  for (int k = 0; k <= m; ++k) {
    const double x = -a + k * h;
    const double gx = w(k) * std::pow(x, beta[0]) * c.factor(x);
    if (gx == 0.0) continue;
    for (int l = 0; l <= m; ++l) {
      const double y = -a + l * h;
      const std::vector<double> p{x, y};
      sum += gx * w(l) * std::pow(y, beta[1]) * c.factor(y) * std::polar(1.0, lambda * f.evaluate(p));
    }
  }
  return sum * (h / 3.0) * (h / 3.0);
}

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("Gauss-Legendre rule integrates degree 23 exactly") {
  const auto x = gauss_legendre_nodes();
  const auto w = gauss_legendre_weights();
  REQUIRE(x.size() == 12);
  for (int k = 0; k <= 23; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
    const double want = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(s == doctest::Approx(want).epsilon(1e-14).scale(1.0));
  }
}

TEST_CASE("one-dimensional integrals match a dense Simpson reference") {
  const auto c = CutoffSpec::bump(0.5);
  for (int k : {2, 3, 4}) {
    const auto f = fixtures::monomial(k);
    for (int b : {0, 1, 2}) {
      const double mass = std::abs(simpson(f, c, {b}, 0.0, 4000).real()) + 1e-3;
      for (double lambda : {10.0, 300.0, 3000.0}) {
        const auto want = simpson(f, c, {b}, lambda, 400000);
        const auto coarse = evaluate_integral(f, c, Multidegree({b}), lambda, 2);
        const auto fine = evaluate_integral(f, c, Multidegree({b}), lambda, 5);
        CAPTURE(k);
        CAPTURE(b);
        CAPTURE(lambda);
        CHECK(std::abs(coarse.value - want) <= coarse.est_error + 1e-13 * mass);
        if (b % 2 == 1) {
          CHECK(std::abs(fine.value - want) < 1e-12 * mass);
        } else {
          CHECK(rel(fine.value, want) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("two-dimensional integrals match a dense Simpson reference") {
  const auto c = CutoffSpec::bump(0.5);
  for (const auto& f : {fixtures::fig2(), fixtures::fig3(), fixtures::diff_square()}) {
    const auto want = simpson(f, c, {0, 0}, 400.0, 2000);
    const auto coarse = evaluate_integral(f, c, Multidegree({0, 0}), 400.0, 2);
    CHECK(std::abs(coarse.value - want) <= coarse.est_error + 1e-13);
    CHECK(rel(evaluate_integral(f, c, Multidegree({0, 0}), 400.0, 5).value, want) < 1e-9);
  }
  const auto want = simpson(fixtures::fig2(), c, {1, 2}, 150.0, 2000);
  CHECK(rel(evaluate_integral(fixtures::fig2(), c, Multidegree({1, 2}), 150.0, 5).value, want) < 1e-9);
}

TEST_CASE("separable phases factor") {
  const auto c = CutoffSpec::smoothstep(0.5, 3);
  for (double lambda : {50.0, 5000.0}) {
    const auto one = evaluate_integral(fixtures::monomial(2), c, Multidegree({0}), lambda, 2).value;
    const auto two = evaluate_integral(fixtures::sum_squares(), c, Multidegree({0, 0}), lambda, 2).value;
    CHECK(rel(two, one * one) < 1e-11);
  }
}

TEST_CASE("stationary phase leading term for x^2") {
  const auto c = CutoffSpec::bump(0.5);
  const double lambda = 1e5;
  const auto got = evaluate_integral(fixtures::monomial(2), c, Multidegree({0}), lambda, 2).value;
  const cd want = std::sqrt(std::numbers::pi / lambda) * std::polar(1.0, std::numbers::pi / 4) * std::exp(-1.0);
  CHECK(rel(got, want) < 1e-4);
}

TEST_CASE("conjugation symmetry") {
  const auto c = CutoffSpec::bump(0.5);
  for (const auto& f : {fixtures::monomial(3), fixtures::fig2(), fixtures::fig3()}) {
    const Multidegree beta(std::vector<int>(f.dimension(), 0));
    for (double lambda : {30.0, 700.0, 9000.0}) {
      const auto plus = evaluate_integral(f, c, beta, lambda, 2).value;
      const auto minus = evaluate_integral(f, c, beta, -lambda, 2).value;
      CHECK(rel(minus, std::conj(plus)) < 1e-10);
    }
  }
}

TEST_CASE("zero frequency gives the cutoff mass") {
  for (const auto& c : {CutoffSpec::bump(0.5), CutoffSpec::bump(0.3), CutoffSpec::smoothstep(0.5, 2)}) {
    const int m = 200000;
    const double h = 2 * c.radius / m;
    double mass = 0.0;
    for (int k = 0; k <= m; ++k) {
      const double x = -c.radius + k * h;
      mass += ((k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0)) * c.factor(x);
    }
    mass *= h / 3.0;
    const auto one = evaluate_integral(fixtures::monomial(4), c, Multidegree({0}), 0.0, 2).value;
    CHECK(std::abs(one.real() - mass) / mass < 1e-10);
    CHECK(one.imag() == 0.0);
    const auto two = evaluate_integral(fixtures::fig3(), c, Multidegree({0, 0}), 0.0, 2).value;
    CHECK(std::abs(two.real() - mass * mass) / (mass * mass) < 1e-10);
  }
}

TEST_CASE("refinement changes the value by less than the error estimate") {
  const auto c = CutoffSpec::bump(0.5);
  const auto sweep = lambda_sweep(fixtures::monomial(3), c, Multidegree({0}), 1e2, 1e6, 9, 1);
  for (const auto& row : sweep.rows) {
    if (row.flagged) continue;
    const auto fine = evaluate_integral(fixtures::monomial(3), c, Multidegree({0}), row.lambda, 5);
    CHECK(fine.panels >= 2 * row.panels);
    CHECK(std::abs(fine.value - row.value) <= row.est_error + 1e-14 * std::abs(row.value));
  }
}

TEST_CASE("sweep contract") {
  const auto c = CutoffSpec::bump(0.5);
  const auto s = lambda_sweep(fixtures::monomial(2), c, Multidegree({0}), 1e2, 1e4, 8, 1);
  REQUIRE(s.rows.size() == 8);
  CHECK(s.rows.front().lambda == doctest::Approx(1e2));
  CHECK(s.rows.back().lambda == doctest::Approx(1e4));
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    CHECK(std::isfinite(s.rows[i].est_error));
    CHECK_FALSE(s.rows[i].flagged);
    if (i) CHECK(s.rows[i].lambda > s.rows[i - 1].lambda);
  }
  CHECK_THROWS_AS(lambda_sweep(fixtures::monomial(2), c, Multidegree({0}), 2.0, 1e4, 8, 1), DomainError);
  CHECK_THROWS_AS(lambda_sweep(fixtures::monomial(2), c, Multidegree({0}), 1e2, 1e4, 7, 1), DomainError);
  CHECK_THROWS_AS(lambda_sweep(fixtures::monomial(2), c, Multidegree({0}), 1e4, 1e2, 8, 1), DomainError);
}

TEST_CASE("node budget is enforced") {
  const auto c = CutoffSpec::bump(0.5);
  CHECK_THROWS_AS(evaluate_integral(fixtures::fig2(), c, Multidegree({0, 0}), 1e5, 2, 10000), BudgetExceededError);
  CHECK_THROWS_AS(lambda_sweep(fixtures::fig3(), c, Multidegree({0, 0}), 1e3, 1e5, 8, 1, 10000),
                  BudgetExceededError);
  CHECK_THROWS_AS(evaluate_integral(fixtures::monomial(2), c, Multidegree({0}), 1e2, 0), DomainError);
}

TEST_CASE("panel budget shrinks with quality") {
  for (int q = 2; q <= 5; ++q) CHECK(panel_phase_budget(q) < panel_phase_budget(q - 1));
}
