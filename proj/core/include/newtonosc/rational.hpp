#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace newtonosc {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Parses "p/q", "p", or "-p/q" (surrounding whitespace allowed). The result
/// is canonicalized. Throws ParseError on anything else, including q = 0.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is one.
std::string to_string(const Rational& value);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational dot(std::span<const int> a, std::span<const Rational> b);

Rational lcm_of_denominators(std::span<const Rational> values);

}  // namespace newtonosc
