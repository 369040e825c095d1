#pragma once

#include <compare>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "newtonosc/rational.hpp"

namespace newtonosc {

/// Exponent vector alpha in N^d.
class Multidegree {
 public:
  Multidegree() = default;
  explicit Multidegree(std::vector<int> exponents);

  std::size_t size() const noexcept { return exponents_.size(); }
  int operator[](std::size_t i) const { return exponents_[i]; }
  int total() const noexcept;
  std::span<const int> exponents() const noexcept { return exponents_; }
  RationalVector as_rational() const;
  /// alpha + 1 (componentwise), as rationals.
  RationalVector plus_ones() const;

  friend Multidegree operator+(const Multidegree& a, const Multidegree& b);
  friend auto operator<=>(const Multidegree&, const Multidegree&) = default;
  friend bool operator==(const Multidegree&, const Multidegree&) = default;

 private:
  std::vector<int> exponents_;
};

struct Term {
  Multidegree exponent;
  Rational coefficient;
};

/// A real polynomial phase with phi(0) = 0 and grad phi(0) = 0.
///
/// Terms are kept sorted lexicographically by multidegree with duplicates
/// merged and zero coefficients dropped. Immutable once built.
class Phase {
 public:
  /// Normalizes and validates. Throws ParseError on dimension mismatch, a
  /// constant or linear term, or when nothing survives normalization.
  static Phase create(std::size_t dimension, std::vector<Term> terms);

  std::size_t dimension() const noexcept { return dimension_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::vector<Multidegree> support() const;
  int max_total_degree() const;

  /// Terms with |alpha| <= k; empty optional-like result is reported by
  /// throwing DomainError since an empty phase is not representable.
  Phase truncated(int k) const;
  /// Terms whose multidegree satisfies the predicate (may not be empty).
  Phase restricted(const std::function<bool(const Multidegree&)>& keep) const;

  double evaluate(std::span<const double> x) const;
  std::vector<double> gradient(std::span<const double> x) const;
  /// (x_1 d_1 phi(x), ..., x_d d_d phi(x)), differentiated term by term.
  std::vector<double> scaled_gradient(std::span<const double> x) const;
  /// Upper bound on |d_i phi| over the box prod [-r_k, r_k].
  double partial_bound(std::size_t i, std::span<const double> radii) const;
  /// True when every term depends on a single variable.
  bool is_additively_separable() const;

  std::span<const double> coefficients_as_double() const noexcept { return coeff_d_; }

 private:
  Phase(std::size_t dimension, std::vector<Term> terms);
  void check_point(std::span<const double> x) const;

  std::size_t dimension_ = 0;
  std::vector<Term> terms_;
  std::vector<double> coeff_d_;
};

Phase parse_phase(std::string_view document);
std::string serialize_phase(const Phase& phase);

/// Cutoff psi(x) = prod_i psi_1(x_i / radius).
struct CutoffSpec {
  enum class Kind { Bump, Smoothstep };
  double radius = 0.5;
  Kind kind = Kind::Bump;
  int smoothstep_order = 0;

  static CutoffSpec bump(double radius);
  static CutoffSpec smoothstep(double radius, int order);

  /// One-dimensional factor at coordinate x (zero outside (-radius, radius)).
  double factor(double x) const;
  double evaluate(std::span<const double> x) const;
};

/// {"radius": r, "kind": "bump" | {"smoothstep": m}}
CutoffSpec parse_cutoff(std::string_view document);
std::string serialize_cutoff(const CutoffSpec& cutoff);

}  // namespace newtonosc
