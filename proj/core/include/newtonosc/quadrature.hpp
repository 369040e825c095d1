#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "newtonosc/phase.hpp"

namespace newtonosc {

inline constexpr std::size_t kDefaultMaxNodes = 2'000'000'000;

struct QuadratureResult {
  std::complex<double> value;
  double est_error = 0.0;
  std::size_t panels = 0;
};

/// Integration range and amplitude factor along one axis.
struct AxisWeight {
  double lo = 0.0;
  double hi = 0.0;
  std::function<double(double)> amplitude;
};

/// Largest phase change allowed across one panel, in radians.
double panel_phase_budget(int quality);

/// Integral of exp(i lambda phi(x)) prod_i g_i(x_i) over the box.
///
/// Panels are sized so that lambda times a bound on |d_i phi| times the panel
/// width stays below panel_phase_budget(quality); the last axis is laid out
/// row by row with the other coordinates fixed. est_error compares against a
/// layout with twice the budget. Throws BudgetExceededError past max_nodes.
QuadratureResult integrate_box(const Phase& phase, std::span<const AxisWeight> axes, double lambda,
                               int quality, std::size_t max_nodes = kDefaultMaxNodes);

/// I(lambda) = integral of exp(i lambda phi) x^beta psi over [-a, a]^d.
QuadratureResult evaluate_integral(const Phase& phase, const CutoffSpec& cutoff, const Multidegree& beta,
                                   double lambda, int quality, std::size_t max_nodes = kDefaultMaxNodes);

struct SweepRow {
  double lambda = 0.0;
  std::complex<double> value;
  double est_error = 0.0;
  std::size_t panels = 0;
  bool flagged = false;  ///< est_error above 10% of |I|
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Geometric lambda grid from lambda_min to lambda_max. Requires
/// 2 < lambda_min < lambda_max and at least 8 points; throws
/// SweepFailureError when every row is flagged.
SweepResult lambda_sweep(const Phase& phase, const CutoffSpec& cutoff, const Multidegree& beta,
                         double lambda_min, double lambda_max, int points, int quality,
                         std::size_t max_nodes = kDefaultMaxNodes);

/// Gauss-Legendre nodes and weights of order 12 on [-1, 1].
std::span<const double> gauss_legendre_nodes();
std::span<const double> gauss_legendre_weights();

}  // namespace newtonosc
