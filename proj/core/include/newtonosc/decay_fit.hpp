#pragma once

#include <complex>
#include <span>
#include <vector>

#include "newtonosc/ladder.hpp"
#include "newtonosc/quadrature.hpp"

namespace newtonosc {

/// |I| ~ C lambda^{-p} log^q lambda.
struct DecayFit {
  double p_hat = 0.0;
  int q_hat = 0;
  double c_hat = 0.0;
  double rms_residual = 0.0;         ///< natural-log space
  std::vector<double> rms_by_q;      ///< candidate q = 0, 1, ...
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t points = 0;
};

/// Least squares of log|I| + p log lambda - q log log lambda for each
/// q in [0, d - 1]; the q with the smallest RMS wins. Flagged rows are
/// skipped; with drop_lowest_decade the first decade of lambda is too.
/// Throws FitError on fewer than 8 rows or a window under two decades.
DecayFit decay_fit(const SweepResult& sweep, std::size_t dimension, bool drop_lowest_decade = true);
DecayFit decay_fit(std::span<const double> lambda, std::span<const double> magnitude, std::size_t dimension,
                   bool drop_lowest_decade = true);

struct ExpansionTerm {
  Rational p;
  int r = 0;  ///< basis lambda^{-p} log^{d_j - 1 - r} lambda
  std::complex<double> coefficient;
};

struct ExpansionFit {
  std::vector<ExpansionTerm> terms;
  /// Decay exponent of I minus the reported terms; +inf when that residual
  /// is indistinguishable from quadrature noise.
  double residual_exponent = 0.0;
  double condition_number = 0.0;
  int nuisance_terms = 0;
};

/// Complex least squares of I(lambda) on the first n_terms ladder exponents
/// (all log powers), plus up to extra_terms further ladder exponents absorbed
/// as nuisance basis. Rows are weighted by lambda^{p_0}. Throws FitError
/// when the window spans under three decades or the scaled basis has
/// condition number above 1e12.
ExpansionFit expansion_fit(const SweepResult& sweep, const ExponentLadder& ladder, int n_terms,
                           int extra_terms = 2);

}  // namespace newtonosc
