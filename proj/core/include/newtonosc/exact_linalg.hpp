#pragma once

#include <optional>

#include "newtonosc/rational.hpp"

// Small dense Gaussian elimination over the rationals.
namespace newtonosc::linalg {

/// Rank of the row set (rows may have any common length).
std::size_t rank(RationalMatrix rows);

/// Solves the square system A x = b; nullopt when A is singular.
std::optional<RationalVector> solve(RationalMatrix a, RationalVector b);

/// Inverse of a square matrix; nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& a);

/// Maximum absolute row sum.
Rational infinity_norm(const RationalMatrix& a);

}  // namespace newtonosc::linalg
