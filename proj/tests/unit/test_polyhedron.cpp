#include <doctest.h>

#include <set>

#include "fixtures.hpp"

using namespace newtonosc;
using fixtures::rv;

namespace {

std::vector<RationalVector> as_points(std::span<const Multidegree> support) {
  std::vector<RationalVector> out;
  for (const auto& m : support) out.push_back(m.as_rational());
  return out;
}

// Staircase walk along the lower-left boundary of a planar Newton polygon.
std::set<RationalVector> planar_normals(const std::vector<Multidegree>& support) {
  std::set<RationalVector> out;
  auto cur = support.front();
  for (const auto& m : support)
    if (m[0] < cur[0] || (m[0] == cur[0] && m[1] < cur[1])) cur = m;
  if (cur[0] > 0) out.insert(rv({Rational(1, cur[0]), 0}));
  for (;;) {
    const Multidegree* next = nullptr;
    Rational best_slope;
    for (const auto& m : support) {
      if (m[0] <= cur[0] || m[1] >= cur[1]) continue;
      Rational slope(m[1] - cur[1], m[0] - cur[0]);
      slope.canonicalize();
      if (!next || slope < best_slope || (slope == best_slope && m[0] > (*next)[0])) {
        next = &m;
        best_slope = slope;
      }
    }
    if (!next) break;
    const Rational det = Rational(cur[0] * (*next)[1] - cur[1] * (*next)[0]);
    RationalVector w{Rational((*next)[1] - cur[1]) / det, Rational(cur[0] - (*next)[0]) / det};
    for (auto& x : w) x.canonicalize();
    out.insert(w);
    cur = *next;
  }
  if (cur[1] > 0) out.insert(rv({0, Rational(1, cur[1])}));
  return out;
}

}  // namespace

TEST_CASE("Fig. 2 polyhedron") {
  const auto n = NewtonPolyhedron::build(fixtures::fig2());
  REQUIRE(n.facet_normals().size() == 3);
  CHECK(fixtures::contains_normal(n, rv({1, 0})));
  CHECK(fixtures::contains_normal(n, rv({Rational(1, 4), Rational(1, 4)})));
  CHECK(fixtures::contains_normal(n, rv({0, Rational(1, 2)})));
  REQUIRE(n.extreme_points().size() == 2);
  CHECK(n.extreme_points()[0] == Multidegree({1, 3}));
  CHECK(n.extreme_points()[1] == Multidegree({2, 2}));
  CHECK_FALSE(n.convenient());

  REQUIRE(n.compact_faces().size() == 3);
  std::size_t vertices = 0, edges = 0;
  for (const auto& f : n.compact_faces()) {
    if (f.dimension == 0) ++vertices;
    if (f.dimension == 1) {
      ++edges;
      CHECK(f.vertex_ids.size() == 2);
    }
  }
  CHECK(vertices == 2);
  CHECK(edges == 1);
  const std::vector<std::size_t> both{0, 1};
  CHECK(n.find_face(both).has_value());
}

TEST_CASE("Fig. 3 polyhedron") {
  const auto n = NewtonPolyhedron::build(fixtures::fig3());
  REQUIRE(n.facet_normals().size() == 1);
  CHECK(n.facet_normals()[0] == rv({Rational(1, 5), Rational(1, 4)}));
  REQUIRE(n.extreme_points().size() == 2);
  CHECK(n.extreme_points()[0] == Multidegree({0, 4}));
  CHECK(n.extreme_points()[1] == Multidegree({5, 0}));
  CHECK(n.newton_distance() == Rational(20, 9));
  CHECK(n.convenient());
  CHECK(n.floor(Multidegree({4, 1})).value > 1);
}

TEST_CASE("monomials and sums of squares") {
  for (int k = 2; k <= 6; ++k) {
    const auto n = NewtonPolyhedron::build(fixtures::monomial(k));
    REQUIRE(n.facet_normals().size() == 1);
    CHECK(n.facet_normals()[0][0] == Rational(1, k));
    CHECK(n.newton_distance() == k);
    REQUIRE(n.compact_faces().size() == 1);
    CHECK(n.compact_faces()[0].dimension == 0);
  }
  const auto s = NewtonPolyhedron::build(fixtures::sum_squares());
  CHECK(s.newton_distance() == 1);
  CHECK(s.convenient());
}

TEST_CASE("supporting check") {
  const auto n = NewtonPolyhedron::build(fixtures::fig2());
  const auto w = rv({Rational(1, 2), Rational(1, 6)});
  CHECK(n.supporting_check(w, rv({1, 3})));
  CHECK_FALSE(n.supporting_check(w, rv({2, 2})));
  CHECK_THROWS_AS(n.supporting_check(rv({0, 0}), rv({1, 3})), DomainError);
  CHECK_THROWS_AS(n.supporting_check(rv({1}), rv({1, 3})), DomainError);
}

TEST_CASE("floor functional examples") {
  const auto f3 = NewtonPolyhedron::build(fixtures::fig3());
  auto v = f3.floor(Multidegree({5, 2}));
  CHECK(v.value == Rational(3, 2));
  CHECK(v.argmin.size() == 1);

  const auto f2 = NewtonPolyhedron::build(fixtures::fig2());
  v = f2.floor(Multidegree({1, 1}));
  CHECK(v.value == Rational(1, 2));
  REQUIRE(v.argmin.size() == 2);
  std::set<RationalVector> got;
  for (auto i : v.argmin) got.insert(f2.facet_normals()[i]);
  CHECK(got == std::set<RationalVector>{rv({Rational(1, 4), Rational(1, 4)}), rv({0, Rational(1, 2)})});

  v = f2.floor(Multidegree({1, 3}));
  CHECK(v.value == 1);
  got.clear();
  for (auto i : v.argmin) got.insert(f2.facet_normals()[i]);
  CHECK(got == std::set<RationalVector>{rv({1, 0}), rv({Rational(1, 4), Rational(1, 4)})});

  CHECK(f2.floor(rv({0, 0})).value == 0);
  CHECK_THROWS_AS(f2.floor(rv({-1, 2})), DomainError);
}

TEST_CASE("codimension of points") {
  CHECK(NewtonPolyhedron::build(fixtures::fig3()).codim_of_point(Multidegree({0, 0})) == 1);
  CHECK(NewtonPolyhedron::build(fixtures::fig2()).codim_of_point(Multidegree({0, 0})) == 2);
  CHECK(NewtonPolyhedron::build(fixtures::sum_squares()).codim_of_point(Multidegree({1, 0})) == 1);
}

TEST_CASE("planar facets agree with a staircase walk") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto support = fixtures::random_support(rng, 2, 8, 9, trial % 2 == 0);
    const auto n = NewtonPolyhedron::from_support(2, support);
    const std::set<RationalVector> got(n.facet_normals().begin(), n.facet_normals().end());
    CHECK(got == planar_normals(support));
  }
}

TEST_CASE("hull soundness") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto support = fixtures::random_support(rng, d, 8, 9, trial % 3 == 0);
    const auto n = NewtonPolyhedron::from_support(d, support);
    REQUIRE_FALSE(n.facet_normals().empty());
    for (const auto& w : n.facet_normals()) {
      bool touches = false;
      for (const auto& a : support) {
        const auto v = dot(a.exponents(), w);
        CHECK(v >= 1);
        touches = touches || v == 1;
      }
      CHECK(touches);
    }
    const auto pts = as_points(support);
    for (const auto& e : n.extreme_points()) {
      CHECK(std::find(support.begin(), support.end(), e) != support.end());
      std::vector<RationalVector> others;
      for (const auto& p : pts)
        if (p != e.as_rational()) others.push_back(p);
      if (!others.empty()) CHECK_FALSE(lp::in_dominated_hull(others, e.as_rational()));
    }
    if (n.floor(std::vector<Rational>(d, 1)).value > 0) {
      const auto t = n.newton_distance();
      const RationalVector diag(d, t);
      CHECK(n.floor(diag).value == 1);
    }
  }
}

TEST_CASE("facet test agrees with exact LP membership") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> num(0, 40);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto support = fixtures::random_support(rng, d, 8, 9);
    const auto n = NewtonPolyhedron::from_support(d, support);
    const auto pts = as_points(support);
    for (int q = 0; q < 25; ++q) {
      RationalVector x(d);
      for (auto& v : x) {
        v = Rational(num(rng), 4);
        v.canonicalize();
      }
      CHECK(n.contains(x) == lp::in_dominated_hull(pts, x));
    }
    for (const auto& a : support) {
      const auto fl = n.floor(a);
      if (fl.value == 0) continue;
      RationalVector on(d), inside(d), outside(d);
      for (std::size_t i = 0; i < d; ++i) {
        on[i] = Rational(a[i]) / fl.value;
        outside[i] = on[i] * Rational(99, 100);
      }
      CHECK(n.contains(on));
      CHECK(lp::in_dominated_hull(pts, on));
      CHECK_FALSE(n.contains(outside));
      CHECK_FALSE(lp::in_dominated_hull(pts, outside));
    }
  }
}

TEST_CASE("compact faces are faces of the hull") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 2;
    const auto n = NewtonPolyhedron::from_support(d, fixtures::random_support(rng, d, 8, 7, true));
    for (const auto& f : n.compact_faces()) {
      REQUIRE_FALSE(f.vertex_ids.empty());
      CHECK(f.dimension >= 0);
      CHECK(f.dimension < static_cast<int>(d));
      CHECK(f.dimension <= static_cast<int>(f.vertex_ids.size()) - 1);
      for (auto wi : f.containing_facets) {
        for (auto vi : f.vertex_ids) CHECK(dot(n.extreme_points()[vi].exponents(), n.facet_normals()[wi]) == 1);
        for (const auto& s : f.support_points) CHECK(dot(s.exponents(), n.facet_normals()[wi]) == 1);
      }
      CHECK(n.find_face(f.vertex_ids).has_value());
    }
  }
}
