#include <doctest.h>

#include "fixtures.hpp"

using namespace newtonosc;
using fixtures::rv;

TEST_CASE("parse_rational accepts canonical forms") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational(" -6/8 ") == Rational(-3, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  CHECK(to_string(Rational(-3)) == "-3");
}

TEST_CASE("parse_rational rejects malformed text") {
  for (const char* bad : {"", "1/0", "a", "1/", "/2", "1.5", "1//2", "3/4x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), ParseError);
  }
}

TEST_CASE("lcm of denominators") {
  const auto w = rv({Rational(1, 5), Rational(1, 4)});
  CHECK(lcm_of_denominators(w) == 20);
  const auto z = rv({Rational(0), Rational(1, 2)});
  CHECK(lcm_of_denominators(z) == 2);
}

TEST_CASE("exact rank, solve and inverse") {
  RationalMatrix a{rv({1, 3}), rv({2, 2})};
  CHECK(linalg::rank(a) == 2);
  auto x = linalg::solve(a, rv({1, 1}));
  REQUIRE(x);
  CHECK((*x)[0] == Rational(1, 4));
  CHECK((*x)[1] == Rational(1, 4));
  auto inv = linalg::inverse(a);
  REQUIRE(inv);
  CHECK(linalg::infinity_norm(*inv) == Rational(5, 4));

  RationalMatrix singular{rv({1, 2}), rv({2, 4})};
  CHECK(linalg::rank(singular) == 1);
  CHECK_FALSE(linalg::inverse(singular));
  CHECK_FALSE(linalg::solve(singular, rv({1, 1})));
}

TEST_CASE("simplex optimum on a small program") {
  // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
  RationalMatrix a{rv({1, 2, 1, 0}), rv({3, 1, 0, 1})};
  auto r = lp::minimize(a, rv({4, 6}), rv({-1, -1, 0, 0}));
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.objective == Rational(-14, 5));
  CHECK(r.x[0] == Rational(8, 5));
  CHECK(r.x[1] == Rational(6, 5));
}

TEST_CASE("simplex reports infeasible and unbounded") {
  RationalMatrix a{rv({1, 1})};
  CHECK(lp::minimize(a, rv({-1}), rv({0, 0})).status == lp::Status::Infeasible);
  RationalMatrix b{rv({1, -1})};
  CHECK(lp::minimize(b, rv({0}), rv({-1, 0})).status == lp::Status::Unbounded);
}

TEST_CASE("dominated hull membership") {
  std::vector<RationalVector> pts{rv({5, 0}), rv({0, 4})};
  CHECK(lp::in_dominated_hull(pts, rv({4, 1})));
  CHECK(lp::in_dominated_hull(pts, rv({Rational(5, 2), 2})));
  CHECK_FALSE(lp::in_dominated_hull(pts, rv({2, 2})));
  CHECK(lp::in_dominated_hull(pts, rv({9, 9})));
}
