#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "newtonosc/polyhedron.hpp"

namespace newtonosc {

struct LadderWitness {
  Multidegree beta;
  int n = 0;
  int codim = 0;  ///< min{d, |n(beta + 1)|}
};

struct ExponentTerm {
  Rational p;
  int multiplicity = 0;
  std::vector<LadderWitness> witnesses;
};

struct ExponentLadder {
  std::vector<ExponentTerm> terms;  ///< strictly increasing in p
  Rational p_max;
  int n_max = 0;
  std::vector<int> beta_bounds;  ///< componentwise bound on beta actually used
  bool decomposition_filter = false;
};

/// Enumerates p = ⌊beta + 1⌋ - n in [1/t, p_max] over beta in N^d and
/// n in [0, n_max]. With the filter on, a witness with n >= 1 is kept only
/// when beta is a sum of n lattice points of the polyhedron.
///
/// Coordinates where some facet normal vanishes have no automatic bound;
/// `beta_bound` must then be given or DomainError is thrown.
ExponentLadder exponent_ladder(const NewtonPolyhedron& polyhedron, const Rational& p_max, int n_max,
                               bool decomposition_filter,
                               std::optional<int> beta_bound = std::nullopt);

/// q_w per facet normal (aligned with facet_normals()).
std::vector<Rational> arithmetic_progressions(const NewtonPolyhedron& polyhedron);

/// (1/t, min{d, |n(1)|}).
std::pair<Rational, int> leading_term(const NewtonPolyhedron& polyhedron);

/// Largest n such that beta = alpha^1 + ... + alpha^n with every alpha^i a
/// lattice point of the polyhedron; 0 when beta itself lies outside.
int max_decomposition(const NewtonPolyhedron& polyhedron, const Multidegree& beta);

}  // namespace newtonosc
