#include "newtonosc/rational.hpp"

#include <cctype>

#include "newtonosc/error.hpp"

namespace newtonosc {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (!is_integer_literal(s)) {
    throw ParseError("malformed rational '" + std::string(whole) + "'");
  }
  std::string digits(s.front() == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(s, text));
  }
  const mpz_class num = parse_integer(trim(s.substr(0, slash)), text);
  const mpz_class den = parse_integer(trim(s.substr(slash + 1)), text);
  if (den == 0) throw ParseError("malformed rational '" + std::string(text) + "': zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const int> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) s += a[i] * b[i];
  }
  return s;
}

Rational lcm_of_denominators(std::span<const Rational> values) {
  mpz_class l = 1;
  for (const auto& v : values) {
    mpz_class q = v.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_mpz_t());
  }
  return Rational(l);
}

}  // namespace newtonosc
