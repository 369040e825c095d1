#pragma once

#include <span>

#include "newtonosc/rational.hpp"

// Exact two-phase simplex (Bland's rule) for the tiny LPs that arise when
// testing membership in a Newton polyhedron or decomposing support points.
namespace newtonosc::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Rational objective;
  RationalVector x;
};

/// minimize c.x subject to A x = b, x >= 0.
Result minimize(const RationalMatrix& a, const RationalVector& b, const RationalVector& c);

/// True iff q = sum_i l_i p_i + g with l in the simplex and g >= 0, i.e. q
/// lies in conv(points) + R_>=^d. Decided by exact phase-one feasibility.
bool in_dominated_hull(std::span<const RationalVector> points, const RationalVector& q);

}  // namespace newtonosc::lp
