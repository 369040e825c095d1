#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace newtonosc;

namespace {

Rational exact_value(const Phase& f, const RationalVector& x) {
  Rational sum = 0;
  for (const auto& t : f.terms()) {
    Rational m = t.coefficient;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int k = 0; k < t.exponent[i]; ++k) m *= x[i];
    sum += m;
  }
  return sum;
}

Rational exact_partial(const Phase& f, const RationalVector& x, std::size_t j) {
  Rational sum = 0;
  for (const auto& t : f.terms()) {
    if (t.exponent[j] == 0) continue;
    Rational m = t.coefficient * t.exponent[j];
    for (std::size_t i = 0; i < x.size(); ++i) {
      const int e = t.exponent[i] - (i == j ? 1 : 0);
      for (int k = 0; k < e; ++k) m *= x[i];
    }
    sum += m;
  }
  return sum;
}

}  // namespace

TEST_CASE("evaluate and gradient examples") {
  const auto mixed = fixtures::make(2, {{{2, 2}, 1}, {{1, 3}, 1}});
  const std::vector<double> one{1.0, 1.0};
  CHECK(mixed.evaluate(one) == 2.0);
  CHECK(mixed.scaled_gradient(one) == std::vector<double>{3.0, 5.0});

  CHECK(fixtures::diff_square().scaled_gradient(one) == std::vector<double>{0.0, 0.0});
  const std::vector<double> p{1.0, 2.0};
  CHECK(fixtures::sum_squares().evaluate(p) == 5.0);
  CHECK(fixtures::sum_squares().evaluate(std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK(fixtures::sum_squares().scaled_gradient(p) == std::vector<double>{2.0, 8.0});
  CHECK(fixtures::sum_squares().gradient(p) == std::vector<double>{2.0, 4.0});
  CHECK_THROWS_AS(fixtures::sum_squares().evaluate(std::vector<double>{1.0}), DomainError);
}

TEST_CASE("double evaluation agrees with exact rational evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto f = fixtures::random_phase(rng, d, 6, 6);
    RationalVector xq(d);
    std::vector<double> xd(d);
    for (std::size_t i = 0; i < d; ++i) {
      xq[i] = Rational(num(rng), 8);
      xd[i] = xq[i].get_d();
    }
    const double want = exact_value(f, xq).get_d();
    CHECK(f.evaluate(xd) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
    const auto g = f.gradient(xd);
    for (std::size_t j = 0; j < d; ++j)
      CHECK(g[j] == doctest::Approx(exact_partial(f, xq, j).get_d()).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("scaled gradient matches central differences") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto f = fixtures::random_phase(rng, d, 6, 5);
    std::vector<double> x(d);
    for (auto& v : x) v = u(rng);
    const auto sg = f.scaled_gradient(x);
    for (std::size_t j = 0; j < d; ++j) {
      const double h = 1e-5 * x[j];
      auto xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const double fd = x[j] * (f.evaluate(xp) - f.evaluate(xm)) / (2 * h);
      const double scale = std::max(1.0, std::abs(sg[j]));
      CHECK(std::abs(fd - sg[j]) / scale < 1e-6);
    }
  }
}

TEST_CASE("phase vanishes at the origin") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const auto f = fixtures::random_phase(rng, d, 8, 7);
    CHECK(f.evaluate(std::vector<double>(d, 0.0)) == 0.0);
  }
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = fixtures::random_phase(rng, 1 + trial % 3, 7, 8);
    const auto text = serialize_phase(f);
    const auto g = parse_phase(text);
    REQUIRE(g.terms().size() == f.terms().size());
    for (std::size_t i = 0; i < f.terms().size(); ++i) {
      CHECK(g.terms()[i].exponent == f.terms()[i].exponent);
      CHECK(g.terms()[i].coefficient == f.terms()[i].coefficient);
    }
    CHECK(serialize_phase(g) == text);
  }
}

TEST_CASE("normalization merges, sorts and drops zeros") {
  const auto f = fixtures::make(2, {{{0, 2}, 1}, {{2, 0}, 3}, {{0, 2}, -1}, {{1, 1}, Rational(1, 2)}});
  REQUIRE(f.terms().size() == 2);
  CHECK(f.terms()[0].exponent == Multidegree({1, 1}));
  CHECK(f.terms()[1].exponent == Multidegree({2, 0}));
}

TEST_CASE("invalid phases are rejected") {
  CHECK_THROWS_AS(fixtures::make(1, {{{0}, 1}}), ParseError);
  CHECK_THROWS_AS(fixtures::make(2, {{{1, 0}, 1}, {{2, 0}, 1}}), ParseError);
  CHECK_THROWS_AS(fixtures::make(2, {{{2}, 1}}), ParseError);
  CHECK_THROWS_AS(fixtures::make(1, {{{2}, 1}, {{2}, -1}}), ParseError);
  CHECK_THROWS_AS(fixtures::load("constant_term"), ParseError);
  CHECK_THROWS_AS(fixtures::load("bad_rational"), ParseError);
  CHECK_THROWS_AS(parse_phase("{\"dimension\": 1}"), ParseError);
  CHECK_THROWS_AS(parse_phase("not json"), ParseError);
}

TEST_CASE("truncation and restriction") {
  const auto f = fixtures::x2y2_x5_y5();
  CHECK(f.truncated(4).terms().size() == 1);
  CHECK(f.truncated(5).terms().size() == 3);
  CHECK_THROWS_AS(f.truncated(3), DomainError);
  const auto g = f.restricted([](const Multidegree& m) { return m[0] == 0; });
  REQUIRE(g.terms().size() == 1);
  CHECK(g.terms()[0].exponent == Multidegree({0, 5}));
}

TEST_CASE("partial bound dominates sampled derivatives") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto f = fixtures::random_phase(rng, d, 6, 6);
    std::vector<double> r(d, 0.7);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int s = 0; s < 20; ++s) {
      std::vector<double> x(d);
      for (auto& v : x) v = u(rng);
      const auto g = f.gradient(x);
      for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(g[i]) <= f.partial_bound(i, r) * (1 + 1e-12));
    }
  }
}

TEST_CASE("separability") {
  CHECK(fixtures::sum_squares().is_additively_separable());
  CHECK_FALSE(fixtures::diff_square().is_additively_separable());
}

TEST_CASE("bump cutoff") {
  const auto c = CutoffSpec::bump(0.5);
  CHECK(c.factor(0.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(c.factor(0.5) == 0.0);
  CHECK(c.factor(-0.7) == 0.0);
  CHECK(c.factor(0.25) == doctest::Approx(std::exp(-1.0 / 0.75)));
  const std::vector<double> x{0.0, 0.25};
  CHECK(c.evaluate(x) == doctest::Approx(std::exp(-1.0) * std::exp(-1.0 / 0.75)));
}

TEST_CASE("smoothstep cutoff") {
  const auto c = CutoffSpec::smoothstep(1.0, 3);
  CHECK(c.factor(0.0) == 1.0);
  CHECK(c.factor(1.0) == 0.0);
  CHECK(c.factor(0.5) == doctest::Approx(std::pow(0.75, 3)));
}

TEST_CASE("cutoff parsing") {
  const auto c = parse_cutoff(R"({"radius": 0.25, "kind": {"smoothstep": 4}})");
  CHECK(c.radius == 0.25);
  CHECK(c.kind == CutoffSpec::Kind::Smoothstep);
  CHECK(c.smoothstep_order == 4);
  const auto back = parse_cutoff(serialize_cutoff(c));
  CHECK(back.radius == c.radius);
  CHECK(back.smoothstep_order == 4);
  CHECK(parse_cutoff(R"({"radius": 0.5, "kind": "bump"})").kind == CutoffSpec::Kind::Bump);
  CHECK_THROWS_AS(parse_cutoff(R"({"radius": 0, "kind": "bump"})"), ParseError);
  CHECK_THROWS_AS(parse_cutoff(R"({"radius": 1, "kind": {"smoothstep": 1}})"), ParseError);
}
