#include "newtonosc/decay_fit.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "newtonosc/error.hpp"

namespace newtonosc {

namespace {

constexpr double kMaxCondition = 1e12;

double decades(double lo, double hi) { return std::log10(hi / lo); }

}  // namespace

DecayFit decay_fit(std::span<const double> lambda, std::span<const double> magnitude, std::size_t dimension,
                   bool drop_lowest_decade) {
  if (lambda.size() != magnitude.size()) throw FitError("lambda and magnitude lengths differ");
  if (lambda.empty()) throw FitError("no rows to fit");
  if (dimension == 0) throw FitError("dimension must be positive");
  double lo = std::numeric_limits<double>::infinity();
  for (double l : lambda) lo = std::min(lo, l);
  const double cut = drop_lowest_decade ? lo * 10.0 * (1.0 - 1e-12) : lo;

  std::vector<double> x, ll, y;
  DecayFit fit;
  fit.window_lo = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if (lambda[k] < cut) continue;
    if (!(lambda[k] > 1.0)) throw FitError("lambda must exceed 1");
    if (!(magnitude[k] > 0.0) || !std::isfinite(magnitude[k])) throw FitError("nonpositive |I| in window");
    x.push_back(std::log(lambda[k]));
    ll.push_back(std::log(std::log(lambda[k])));
    y.push_back(std::log(magnitude[k]));
    fit.window_lo = std::min(fit.window_lo, lambda[k]);
    fit.window_hi = std::max(fit.window_hi, lambda[k]);
  }
  fit.points = x.size();
  if (fit.points < 8) throw FitError("decay fit needs at least 8 rows in the window");
  if (decades(fit.window_lo, fit.window_hi) < 2.0 - 1e-9) {
    throw FitError("ill-conditioned window: lambda range under two decades");
  }

  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, 2);
  for (Eigen::Index k = 0; k < n; ++k) {
    a(k, 0) = 1.0;
    a(k, 1) = -x[k];
  }
  const auto qr = a.colPivHouseholderQr();
  fit.rms_residual = std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < dimension; ++q) {
    Eigen::VectorXd b(n);
    for (Eigen::Index k = 0; k < n; ++k) b(k) = y[k] - static_cast<double>(q) * ll[k];
    const Eigen::VectorXd coef = qr.solve(b);
    const double rms = std::sqrt((a * coef - b).squaredNorm() / static_cast<double>(n));
    fit.rms_by_q.push_back(rms);
    if (rms < fit.rms_residual) {
      fit.rms_residual = rms;
      fit.q_hat = static_cast<int>(q);
      fit.p_hat = coef(1);
      fit.c_hat = std::exp(coef(0));
    }
  }
  return fit;
}

DecayFit decay_fit(const SweepResult& sweep, std::size_t dimension, bool drop_lowest_decade) {
  std::vector<double> lambda, magnitude;
  for (const auto& row : sweep.rows) {
    if (row.flagged) continue;
    lambda.push_back(row.lambda);
    magnitude.push_back(std::abs(row.value));
  }
  return decay_fit(lambda, magnitude, dimension, drop_lowest_decade);
}

ExpansionFit expansion_fit(const SweepResult& sweep, const ExponentLadder& ladder, int n_terms,
                           int extra_terms) {
  if (n_terms < 1) throw FitError("n_terms must be at least 1");
  if (extra_terms < 0) throw FitError("extra_terms must be nonnegative");
  if (ladder.terms.size() < static_cast<std::size_t>(n_terms) + 1) {
    throw FitError("ladder must cover n_terms + 1 exponents");
  }
  std::vector<const SweepRow*> rows;
  for (const auto& row : sweep.rows) {
    if (!row.flagged) rows.push_back(&row);
  }
  if (rows.empty()) throw FitError("no unflagged rows");
  if (decades(rows.front()->lambda, rows.back()->lambda) < 3.0 - 1e-9) {
    throw FitError("expansion fit needs a window of at least three decades");
  }

  const int used = std::min<int>(n_terms + extra_terms, static_cast<int>(ladder.terms.size()));
  struct Basis {
    double p;
    int log_power;
    std::size_t term;
    int r;
  };
  std::vector<Basis> basis;
  std::size_t reported = 0;
  for (int j = 0; j < used; ++j) {
    const auto& t = ladder.terms[j];
    for (int r = 0; r < t.multiplicity; ++r) {
      basis.push_back({t.p.get_d(), t.multiplicity - 1 - r, static_cast<std::size_t>(j), r});
      if (j < n_terms) ++reported;
    }
  }
  const double p0 = ladder.terms.front().p.get_d();

  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto nb = static_cast<Eigen::Index>(basis.size());
  if (m < nb) throw FitError("fewer rows than basis functions");
  Eigen::MatrixXd a(m, nb);
  Eigen::MatrixXd rhs(m, 2);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double lam = rows[k]->lambda;
    const double w = std::pow(lam, p0);
    for (Eigen::Index c = 0; c < nb; ++c) {
      a(k, c) = w * std::pow(lam, -basis[c].p) * std::pow(std::log(lam), basis[c].log_power);
    }
    rhs(k, 0) = w * rows[k]->value.real();
    rhs(k, 1) = w * rows[k]->value.imag();
  }
  Eigen::VectorXd scale(nb);
  for (Eigen::Index c = 0; c < nb; ++c) {
    scale(c) = a.col(c).norm();
    a.col(c) /= scale(c);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  ExpansionFit fit;
  fit.condition_number = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(fit.condition_number <= kMaxCondition)) {
    throw FitError("basis collinear on the window (condition number " + std::to_string(fit.condition_number) + ")");
  }
  const Eigen::MatrixXd coef = svd.solve(rhs);
  fit.nuisance_terms = used - n_terms;

  std::vector<std::complex<double>> c(basis.size());
  for (Eigen::Index k = 0; k < nb; ++k) c[k] = {coef(k, 0) / scale(k), coef(k, 1) / scale(k)};
  for (std::size_t k = 0; k < reported; ++k) {
    fit.terms.push_back({ladder.terms[basis[k].term].p, basis[k].r, c[k]});
  }

  // Residual I - (reported terms), kept only where it rises above noise.
  std::vector<double> lam, mag;
  for (const auto* row : rows) {
    std::complex<double> model;
    for (std::size_t k = 0; k < reported; ++k) {
      model += c[k] * std::pow(row->lambda, -basis[k].p) * std::pow(std::log(row->lambda), basis[k].log_power);
    }
    const double res = std::abs(row->value - model);
    const double noise = std::max(4.0 * row->est_error, 1e-12 * std::abs(row->value));
    if (res > noise) {
      lam.push_back(row->lambda);
      mag.push_back(res);
    }
  }
  fit.residual_exponent = std::numeric_limits<double>::infinity();
  try {
    fit.residual_exponent = decay_fit(lam, mag, 1, true).p_hat;
  } catch (const FitError&) {
    // Too few resolved rows: the residual sits at the noise floor.
  }
  return fit;
}

}  // namespace newtonosc
