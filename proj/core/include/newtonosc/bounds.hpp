#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "newtonosc/phase.hpp"
#include "newtonosc/polyhedron.hpp"
#include "newtonosc/quadrature.hpp"

namespace newtonosc {

/// Infimum of ||x grad f(x)||_inf over prod [lo_i, hi_i] (0 < lo_i < hi_i):
/// a log-spaced grid with the corners included, then compass refinement.
double box_infimum(const Phase& f, std::span<const double> lo, std::span<const double> hi, int grid,
                   std::vector<double>* argmin = nullptr);

struct DyadicRatioRow {
  std::vector<int> j;
  double epsilon = 0.0;  ///< 2^{-j} on the first axis (isotropic rows share it)
  double box_min = 0.0;
  double envelope = 0.0;  ///< max over extreme points alpha of eps^alpha
  double ratio = 0.0;
};

/// Lower-bound ratio on the box [eps, 4 eps] for one dyadic level j in N^d.
DyadicRatioRow gradient_ratio_row(const Phase& phase, const NewtonPolyhedron& polyhedron,
                                  std::span<const int> j, int grid);

/// Isotropic levels j = 0..j_max.
std::vector<DyadicRatioRow> gradient_ratio_table(const Phase& phase, const NewtonPolyhedron& polyhedron,
                                                 int j_max, int grid = 64);

/// The constant ladder. C, b and s can be far below the double range, so
/// each is also kept as a base-10 logarithm; the linear values may
/// underflow to zero while the logarithms stay exact to rounding.
struct ConstantsReport {
  double a = 0.0;
  double rho = 0.0;
  std::vector<double> c;        ///< C_0 .. C_d
  std::vector<double> c_prime;  ///< C'_1 .. C'_d
  std::vector<double> b;        ///< b_1 .. b_d
  double p = 0.0;
  double delta_prime = 0.0;
  double delta = 0.0;
  double s = 0.0;
  std::vector<double> log10_c;
  std::vector<double> log10_c_prime;
  std::vector<double> log10_b;
  double log10_s = 0.0;
  int k = 0;  ///< Taylor order (max total degree)
  int grid = 0;
};

/// Throws DegeneratePhaseError naming the compact face whose infimum vanishes.
ConstantsReport constants_report(const Phase& phase, const NewtonPolyhedron& polyhedron, int grid = 64);

struct BoxBoundRow {
  double lambda = 0.0;
  int j = 0;
  double value = 0.0;  ///< J = |integral over the dyadic box|
  double bound = 0.0;  ///< B = min over N and extreme alpha
  double ratio = 0.0;
  bool reliable = true;  ///< est_error <= 0.1 max(J, B) and within the node budget
};

/// Per-box check on isotropic boxes [eps, 4 eps]^d, eps = 2^{-j}, with a bump
/// supported in [1, 4] along every axis. N_max defaults to ceil(⌊beta + 1⌋).
/// Each box gets at most kBoxCheckMaxNodes quadrature nodes.
inline constexpr std::size_t kBoxCheckMaxNodes = 250'000'000;
std::vector<BoxBoundRow> box_bound_check(const Phase& phase, const NewtonPolyhedron& polyhedron,
                                         const Multidegree& beta, std::span<const double> lambdas,
                                         int j_min, int j_max, int quality = 2,
                                         std::optional<int> n_max = std::nullopt);

/// Truncated dyadic sum of min over N in [0, N_max] and extreme alpha of
/// lambda^{-N} 2^{(N alpha - beta - 1).j}, plus the closed-form N = 0 tail
/// outside the box j_i <= ceil(log2(lambda) / v_i) + 4. N_max defaults to
/// ceil(⌊beta + 1⌋) + 1 and must exceed ⌊beta + 1⌋.
double dyadic_bound_sum(const NewtonPolyhedron& polyhedron, const Multidegree& beta, double lambda,
                        std::optional<int> n_max = std::nullopt);

/// (⌊beta + 1⌋, codim_of_point(beta) - 1).
std::pair<Rational, int> theoretical_bound(const NewtonPolyhedron& polyhedron, const Multidegree& beta);

}  // namespace newtonosc
