#pragma once

#include <newtonosc/newtonosc.hpp>

#include <utility>
#include <vector>

namespace bench {

using namespace newtonosc;

inline Phase make(std::size_t d, const std::vector<std::pair<std::vector<int>, Rational>>& terms) {
  std::vector<Term> out;
  for (const auto& [e, c] : terms) out.push_back({Multidegree(e), c});
  return Phase::create(d, std::move(out));
}

inline Phase fig2() { return make(2, {{{2, 2}, 1}, {{1, 3}, 1}, {{4, 5}, -1}}); }
inline Phase fig3() { return make(2, {{{5, 0}, 1}, {{0, 4}, 1}, {{4, 1}, 1}}); }
inline Phase sum_squares() { return make(2, {{{2, 0}, 1}, {{0, 2}, 1}}); }

// x^6 + y^6 + z^6 + x^2 y^2 z^2
inline Phase cubic_3d() {
  return make(3, {{{6, 0, 0}, 1}, {{0, 6, 0}, 1}, {{0, 0, 6}, 1}, {{2, 2, 2}, 1}});
}

}  // namespace bench
