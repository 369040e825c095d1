#pragma once

#include <newtonosc/newtonosc.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using namespace newtonosc;

inline std::string data_path(const std::string& name) { return std::string(NEWTONOSC_TEST_DATA) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline Phase load(const std::string& name) { return parse_phase(read_file(data_path(name + ".json"))); }

inline Phase make(std::size_t d, const std::vector<std::pair<std::vector<int>, Rational>>& terms) {
  std::vector<Term> out;
  for (const auto& [e, c] : terms) out.push_back({Multidegree(e), c});
  return Phase::create(d, std::move(out));
}

inline Phase fig2() { return make(2, {{{2, 2}, 1}, {{1, 3}, 1}, {{4, 5}, -1}}); }
inline Phase fig3() { return make(2, {{{5, 0}, 1}, {{0, 4}, 1}, {{4, 1}, 1}}); }
inline Phase sum_squares() { return make(2, {{{2, 0}, 1}, {{0, 2}, 1}}); }
inline Phase diff_square() { return make(2, {{{2, 0}, 1}, {{1, 1}, -2}, {{0, 2}, 1}}); }
inline Phase x2y2_x5_y5() { return make(2, {{{2, 2}, 1}, {{5, 0}, 1}, {{0, 5}, 1}}); }
inline Phase monomial(int k) { return make(1, {{{k}, 1}}); }

inline RationalVector rv(std::initializer_list<Rational> v) { return RationalVector(v); }

/// Random Taylor support: up to max_points distinct multidegrees with
/// entries <= max_exp and total degree >= 2.
inline std::vector<Multidegree> random_support(std::mt19937_64& rng, std::size_t d, int max_points,
                                               int max_exp, bool convenient = false) {
  std::uniform_int_distribution<int> e(0, max_exp);
  std::uniform_int_distribution<int> count(1, max_points);
  std::vector<Multidegree> out;
  if (convenient) {
    std::uniform_int_distribution<int> axis(2, max_exp);
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<int> v(d, 0);
      v[i] = axis(rng);
      out.emplace_back(v);
    }
  }
  const std::size_t want = out.size() + static_cast<std::size_t>(count(rng));
  for (int attempt = 0; out.size() < want && attempt < 1000; ++attempt) {
    std::vector<int> v(d);
    int total = 0;
    for (auto& x : v) total += (x = e(rng));
    if (total < 2) continue;
    Multidegree m(v);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

inline Phase random_phase(std::mt19937_64& rng, std::size_t d, int max_points, int max_exp,
                          bool convenient = false) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<Term> terms;
  for (auto& m : random_support(rng, d, max_points, max_exp, convenient)) {
    int n = 0;
    while (n == 0) n = num(rng);
    Rational c(n, den(rng));
    c.canonicalize();
    terms.push_back({m, c});
  }
  return Phase::create(d, std::move(terms));
}

inline Multidegree random_multidegree(std::mt19937_64& rng, std::size_t d, int max_exp) {
  std::uniform_int_distribution<int> e(0, max_exp);
  std::vector<int> v(d);
  for (auto& x : v) x = e(rng);
  return Multidegree(v);
}

inline bool contains_normal(const NewtonPolyhedron& n, const RationalVector& w) {
  for (const auto& x : n.facet_normals())
    if (x == w) return true;
  return false;
}

}  // namespace fixtures
