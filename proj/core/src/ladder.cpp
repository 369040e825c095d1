#include "newtonosc/ladder.hpp"

#include <algorithm>
#include <map>

#include "newtonosc/error.hpp"

namespace newtonosc {

namespace {

// Maximal number of parts for every lattice point of a box [0, bounds].
class DecompositionTable {
 public:
  DecompositionTable(const NewtonPolyhedron& polyhedron, std::vector<int> bounds)
      : bounds_(std::move(bounds)) {
    const std::size_t d = bounds_.size();
    stride_.assign(d, 1);
    std::size_t size = 1;
    for (std::size_t i = 0; i < d; ++i) {
      stride_[i] = size;
      size *= static_cast<std::size_t>(bounds_[i] + 1);
    }
    inside_.assign(size, false);
    parts_.assign(size, 0);
    std::vector<int> x(d);
    RationalVector q(d);
    for (std::size_t idx = 0; idx < size; ++idx) {
      unflatten(idx, x);
      for (std::size_t i = 0; i < d; ++i) q[i] = x[i];
      inside_[idx] = polyhedron.contains(q);
      if (inside_[idx]) lattice_.push_back(idx);
    }
    // A part can always be lowered to a minimal lattice point, the excess
    // going to another part, so minimal points suffice as first parts.
    std::vector<std::pair<std::size_t, std::vector<int>>> minimal;
    for (std::size_t idx : lattice_) {
      unflatten(idx, x);
      bool is_min = true;
      for (std::size_t i = 0; i < d && is_min; ++i) is_min = x[i] == 0 || !inside_[idx - stride_[i]];
      if (is_min) minimal.emplace_back(idx, x);
    }
    // Indices increase with every coordinate, so gamma - l precedes gamma.
    for (std::size_t idx : lattice_) {
      unflatten(idx, x);
      int best = 1;
      for (const auto& [li, l] : minimal) {
        if (li >= idx) continue;
        bool fits = true;
        for (std::size_t i = 0; i < d && fits; ++i) fits = l[i] <= x[i];
        if (!fits) continue;
        const int rest = parts_[idx - li];
        if (rest > 0) best = std::max(best, rest + 1);
      }
      parts_[idx] = best;
    }
  }

  int parts(const Multidegree& beta) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
      if (beta[i] > bounds_[i]) throw DomainError("point outside decomposition table");
      idx += static_cast<std::size_t>(beta[i]) * stride_[i];
    }
    return parts_[idx];
  }

 private:
  void unflatten(std::size_t idx, std::vector<int>& x) const {
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
      x[i] = static_cast<int>(idx % static_cast<std::size_t>(bounds_[i] + 1));
      idx /= static_cast<std::size_t>(bounds_[i] + 1);
    }
  }

  std::vector<int> bounds_;
  std::vector<std::size_t> stride_;
  std::vector<bool> inside_;
  std::vector<std::size_t> lattice_;
  std::vector<int> parts_;
};

}  // namespace

int max_decomposition(const NewtonPolyhedron& polyhedron, const Multidegree& beta) {
  std::vector<int> bounds(beta.exponents().begin(), beta.exponents().end());
  return DecompositionTable(polyhedron, bounds).parts(beta);
}

ExponentLadder exponent_ladder(const NewtonPolyhedron& polyhedron, const Rational& p_max, int n_max,
                               bool decomposition_filter, std::optional<int> beta_bound) {
  if (n_max < 0) throw DomainError("n_max must be nonnegative");
  if (beta_bound && *beta_bound < 0) throw DomainError("beta bound must be nonnegative");
  const std::size_t d = polyhedron.dimension();
  const Rational p0 = 1 / polyhedron.newton_distance();
  const Rational level = p_max + n_max;

  ExponentLadder ladder;
  ladder.p_max = p_max;
  ladder.n_max = n_max;
  ladder.decomposition_filter = decomposition_filter;

  // (beta_i + 1) w_i <= ⌊beta + 1⌋ <= level for the minimizing w.
  for (std::size_t i = 0; i < d; ++i) {
    Rational wmin;
    bool positive = true;
    for (const auto& w : polyhedron.facet_normals()) {
      if (sgn(w[i]) == 0) positive = false;
      if (wmin == 0 || w[i] < wmin) wmin = w[i];
    }
    if (positive) {
      const Rational cap = level / wmin - 1;
      const mpz_class fl = cap.get_num() / cap.get_den();
      int b = std::max(0, static_cast<int>(fl.get_si()));
      if (beta_bound) b = std::min(b, *beta_bound);
      ladder.beta_bounds.push_back(b);
    } else if (beta_bound) {
      ladder.beta_bounds.push_back(*beta_bound);
    } else {
      throw DomainError("unbounded enumeration: coordinate " + std::to_string(i) +
                        " needs an explicit beta bound");
    }
  }

  std::optional<DecompositionTable> table;
  if (decomposition_filter && n_max >= 1) table.emplace(polyhedron, ladder.beta_bounds);

  std::map<Rational, ExponentTerm> by_p;
  std::vector<int> beta(d, 0);
  for (;;) {
    const Multidegree b(beta);
    const RationalVector shifted = b.plus_ones();
    const FloorValue fl = polyhedron.floor(std::span<const Rational>(shifted));
    if (fl.value <= level) {
      const int codim = static_cast<int>(std::min(d, fl.argmin.size()));
      const int parts = table ? table->parts(b) : n_max;
      for (int n = 0; n <= n_max; ++n) {
        const Rational p = fl.value - n;
        if (p < p0 || p > p_max) continue;
        if (n >= 1 && decomposition_filter && parts < n) continue;
        auto& term = by_p[p];
        term.p = p;
        term.witnesses.push_back({b, n, codim});
        term.multiplicity = std::max(term.multiplicity, codim);
      }
    }
    std::size_t pos = 0;
    while (pos < d && ++beta[pos] > ladder.beta_bounds[pos]) beta[pos++] = 0;
    if (pos == d) break;
  }

  for (auto& [p, term] : by_p) {
    std::sort(term.witnesses.begin(), term.witnesses.end(), [](const auto& a, const auto& b) {
      if (a.n != b.n) return a.n < b.n;
      if (a.beta.total() != b.beta.total()) return a.beta.total() < b.beta.total();
      return a.beta > b.beta;
    });
    ladder.terms.push_back(std::move(term));
  }
  return ladder;
}

std::vector<Rational> arithmetic_progressions(const NewtonPolyhedron& polyhedron) {
  std::vector<Rational> out;
  for (const auto& w : polyhedron.facet_normals()) out.push_back(lcm_of_denominators(w));
  return out;
}

std::pair<Rational, int> leading_term(const NewtonPolyhedron& polyhedron) {
  const RationalVector ones(polyhedron.dimension(), Rational(1));
  const FloorValue fl = polyhedron.floor(std::span<const Rational>(ones));
  if (sgn(fl.value) == 0) throw DomainError("floor of the all-ones vector is zero");
  return {fl.value, static_cast<int>(std::min(polyhedron.dimension(), fl.argmin.size()))};
}

}  // namespace newtonosc
