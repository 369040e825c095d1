#include "newtonosc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "newtonosc/error.hpp"

namespace newtonosc {

namespace {

constexpr int kOrder = 12;

struct GaussRule {
  std::array<double, kOrder> x{};
  std::array<double, kOrder> w{};

  GaussRule() {
    for (int i = 0; i < kOrder; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= kOrder; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = kOrder * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) {
          x[i] = z;
          w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
          break;
        }
      }
    }
    // Ascending order.
    std::reverse(x.begin(), x.end());
    std::reverse(w.begin(), w.end());
  }
};

const GaussRule& rule() {
  static const GaussRule r;
  return r;
}

struct Compensated {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      c += (sum - t) + v;
    } else {
      c += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + c; }
};

struct ComplexSum {
  Compensated re, im;
  void add(std::complex<double> v) {
    re.add(v.real());
    im.add(v.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

class NodeBudget {
 public:
  explicit NodeBudget(std::size_t max_nodes) : max_(max_nodes) {}
  void charge(std::size_t n) {
    used_ += n;
    if (used_ > max_) {
      throw BudgetExceededError("quadrature needs more than " + std::to_string(max_) +
                                " nodes; lower lambda or the quality");
    }
  }
  std::size_t used() const { return used_; }
  std::size_t limit() const { return max_; }

 private:
  std::size_t max_;
  std::size_t used_ = 0;
};

// Panels [s, s + h] with lambda * bound(max(|s|, |s + h|)) * h <= theta.
template <class Bound>
std::vector<double> panel_breaks(double lo, double hi, double lambda, double theta, int min_panels,
                                 const Bound& bound, NodeBudget& budget) {
  std::vector<double> breaks{lo};
  const double hmax = (hi - lo) / min_panels;
  double s = lo;
  while (s < hi) {
    double h = std::min(hmax, hi - s);
    for (int it = 0; it < 60; ++it) {
      const double r = std::max(std::abs(s), std::abs(s + h));
      const double rate = std::abs(lambda) * bound(r);
      if (rate * h <= theta) break;
      h = theta / rate;
    }
    // Guard against a final sliver from rounding.
    if (hi - (s + h) < 1e-12 * (hi - lo)) h = hi - s;
    s += h;
    breaks.push_back(s);
    budget.charge(kOrder);
  }
  breaks.back() = hi;
  return breaks;
}

double univariate_slope_bound(std::span<const double> coeffs, double r) {
  double b = 0.0;
  double rp = 1.0;
  for (std::size_t m = 1; m < coeffs.size(); ++m) {
    b += m * std::abs(coeffs[m]) * rp;
    rp *= r;
  }
  return b;
}

std::complex<double> integrate_line(std::span<const double> coeffs, const AxisWeight& axis, double lambda,
                                    double theta, int min_panels, NodeBudget& budget) {
  const auto breaks = panel_breaks(axis.lo, axis.hi, lambda, theta, min_panels,
                                   [&](double r) { return univariate_slope_bound(coeffs, r); }, budget);
  const auto& gl = rule();
  ComplexSum total;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
    const double half = 0.5 * (breaks[p + 1] - breaks[p]);
    double re = 0.0, im = 0.0;
    for (int j = 0; j < kOrder; ++j) {
      const double y = mid + half * gl.x[j];
      const double g = axis.amplitude(y);
      if (g == 0.0) continue;
      double phi = 0.0;
      for (std::size_t m = coeffs.size(); m-- > 0;) phi = phi * y + coeffs[m];
      const double arg = lambda * phi;
      const double wg = gl.w[j] * g;
      re += wg * std::cos(arg);
      im += wg * std::sin(arg);
    }
    total.add({re * half, im * half});
  }
  return total.value();
}

struct OuterNodes {
  std::vector<double> x;
  std::vector<double> w;  // includes amplitude
};

std::complex<double> integrate_separable(const Phase& phase, std::span<const AxisWeight> axes,
                                         double lambda, double theta, int min_panels, NodeBudget& budget) {
  const std::size_t d = phase.dimension();
  const auto coeffs = phase.coefficients_as_double();
  std::complex<double> product(1.0, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> c(1, 0.0);
    for (std::size_t t = 0; t < phase.terms().size(); ++t) {
      const auto& a = phase.terms()[t].exponent;
      if (a[i] == 0) continue;
      if (c.size() <= static_cast<std::size_t>(a[i])) c.resize(a[i] + 1, 0.0);
      c[a[i]] += coeffs[t];
    }
    product *= integrate_line(c, axes[i], lambda, theta, min_panels, budget);
  }
  return product;
}

std::complex<double> integrate_tensor(const Phase& phase, std::span<const AxisWeight> axes, double lambda,
                                      double theta, int min_panels, NodeBudget& budget) {
  const std::size_t d = phase.dimension();
  const std::size_t last = d - 1;
  const auto terms = phase.terms();
  const auto coeffs = phase.coefficients_as_double();

  if (d == 1) {
    std::vector<double> c(1, 0.0);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const int m = terms[t].exponent[0];
      if (c.size() <= static_cast<std::size_t>(m)) c.resize(m + 1, 0.0);
      c[m] += coeffs[t];
    }
    return integrate_line(c, axes[0], lambda, theta, min_panels, budget);
  }

  std::vector<double> box(d);
  for (std::size_t i = 0; i < d; ++i) box[i] = std::max(std::abs(axes[i].lo), std::abs(axes[i].hi));
  std::vector<int> max_exp(d, 0);
  for (const auto& t : terms) {
    for (std::size_t i = 0; i < d; ++i) max_exp[i] = std::max(max_exp[i], t.exponent[i]);
  }

  const auto& gl = rule();
  std::vector<OuterNodes> outer(last);
  std::vector<std::vector<std::vector<double>>> powers(last);
  double outer_nodes = 1.0;
  for (std::size_t k = 0; k < last; ++k) {
    const auto breaks = panel_breaks(
        axes[k].lo, axes[k].hi, lambda, theta, min_panels,
        [&](double r) {
          std::vector<double> radii = box;
          radii[k] = r;
          return phase.partial_bound(k, radii);
        },
        budget);
    // Every outer node costs at least one full inner line.
    outer_nodes *= static_cast<double>(kOrder) * static_cast<double>(breaks.size() - 1);
    if (outer_nodes * kOrder * min_panels > static_cast<double>(budget.limit())) {
      budget.charge(budget.limit() + 1);
    }
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
      const double half = 0.5 * (breaks[p + 1] - breaks[p]);
      for (int j = 0; j < kOrder; ++j) {
        const double x = mid + half * gl.x[j];
        const double g = axes[k].amplitude(x);
        if (g == 0.0) continue;
        outer[k].x.push_back(x);
        outer[k].w.push_back(gl.w[j] * half * g);
        std::vector<double> pw(max_exp[k] + 1, 1.0);
        for (int e = 1; e <= max_exp[k]; ++e) pw[e] = pw[e - 1] * x;
        powers[k].push_back(std::move(pw));
      }
    }
    if (outer[k].x.empty()) return {0.0, 0.0};
  }

  std::vector<double> row(max_exp[last] + 1);
  auto fill_row = [&](const std::vector<std::size_t>& at) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const auto& a = terms[t].exponent;
      double c = coeffs[t];
      for (std::size_t k = 0; k < last; ++k) c *= powers[k][at[k]][a[k]];
      row[a[last]] += c;
    }
  };

  // Project the node count from a few sample rows before committing.
  {
    std::size_t rows = 1;
    for (std::size_t k = 0; k < last; ++k) rows *= outer[k].x.size();
    std::vector<std::size_t> pick(last, 0);
    double sampled = 0.0;
    int samples = 0;
    for (int corner = 0; corner < (1 << last) + 1; ++corner) {
      for (std::size_t k = 0; k < last; ++k) {
        const std::size_t n = outer[k].x.size();
        pick[k] = corner == (1 << last) ? n / 2 : ((corner >> k) & 1 ? n - 1 : 0);
      }
      fill_row(pick);
      NodeBudget probe(std::numeric_limits<std::size_t>::max());
      panel_breaks(axes[last].lo, axes[last].hi, lambda, theta, min_panels,
                   [&](double r) { return univariate_slope_bound(row, r); }, probe);
      sampled += static_cast<double>(probe.used());
      ++samples;
    }
    const double projected = static_cast<double>(budget.used()) + sampled / samples * static_cast<double>(rows);
    if (projected > static_cast<double>(budget.limit())) budget.charge(budget.limit() + 1);
  }

  std::vector<std::size_t> idx(last, 0);
  ComplexSum total;
  for (;;) {
    double weight = 1.0;
    for (std::size_t k = 0; k < last; ++k) weight *= outer[k].w[idx[k]];
    fill_row(idx);
    total.add(weight * integrate_line(row, axes[last], lambda, theta, min_panels, budget));
    std::size_t pos = 0;
    while (pos < last && ++idx[pos] == outer[pos].x.size()) idx[pos++] = 0;
    if (pos == last) break;
  }
  return total.value();
}

std::complex<double> integrate(const Phase& phase, std::span<const AxisWeight> axes, double lambda,
                               double theta, int min_panels, NodeBudget& budget) {
  if (phase.dimension() > 1 && phase.is_additively_separable()) {
    return integrate_separable(phase, axes, lambda, theta, min_panels, budget);
  }
  return integrate_tensor(phase, axes, lambda, theta, min_panels, budget);
}

}  // namespace

std::span<const double> gauss_legendre_nodes() { return rule().x; }
std::span<const double> gauss_legendre_weights() { return rule().w; }

double panel_phase_budget(int quality) {
  static constexpr std::array<double, 5> kBudget{18.0, 14.0, 10.0, 8.0, 6.0};
  if (quality < 1 || quality > 5) throw DomainError("quality must lie in [1, 5]");
  return kBudget[quality - 1];
}

QuadratureResult integrate_box(const Phase& phase, std::span<const AxisWeight> axes, double lambda,
                               int quality, std::size_t max_nodes) {
  if (axes.size() != phase.dimension()) throw DomainError("dimension mismatch in integration box");
  for (const auto& a : axes) {
    if (!(a.hi > a.lo)) throw DomainError("empty integration interval");
  }
  if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
  const double theta = panel_phase_budget(quality);
  const int min_panels = 8 * quality;

  NodeBudget fine(max_nodes);
  const auto value = integrate(phase, axes, lambda, theta, min_panels, fine);
  NodeBudget coarse(max_nodes);
  const auto check = integrate(phase, axes, lambda, 2.0 * theta, std::max(1, min_panels / 2), coarse);

  QuadratureResult out;
  out.value = value;
  out.est_error = std::abs(value - check);
  out.panels = fine.used() / kOrder;
  return out;
}

QuadratureResult evaluate_integral(const Phase& phase, const CutoffSpec& cutoff, const Multidegree& beta,
                                   double lambda, int quality, std::size_t max_nodes) {
  const std::size_t d = phase.dimension();
  if (beta.size() != d) throw DomainError("dimension mismatch in monomial weight");
  if (!(cutoff.radius > 0.0)) throw DomainError("cutoff radius must be positive");
  std::vector<AxisWeight> axes;
  for (std::size_t i = 0; i < d; ++i) {
    const int b = beta[i];
    axes.push_back({-cutoff.radius, cutoff.radius, [cutoff, b](double x) {
                      double v = cutoff.factor(x);
                      for (int k = 0; k < b; ++k) v *= x;
                      return v;
                    }});
  }
  return integrate_box(phase, axes, lambda, quality, max_nodes);
}

SweepResult lambda_sweep(const Phase& phase, const CutoffSpec& cutoff, const Multidegree& beta,
                         double lambda_min, double lambda_max, int points, int quality,
                         std::size_t max_nodes) {
  if (!(lambda_min > 2.0)) throw DomainError("lambda_min must exceed 2");
  if (!(lambda_max > lambda_min)) throw DomainError("lambda_max must exceed lambda_min");
  if (points < 8) throw DomainError("a sweep needs at least 8 points");
  SweepResult out;
  const double ratio = std::log(lambda_max / lambda_min) / (points - 1);
  bool any_good = false;
  for (int k = 0; k < points; ++k) {
    const double lambda = k + 1 == points ? lambda_max : lambda_min * std::exp(ratio * k);
    const auto r = evaluate_integral(phase, cutoff, beta, lambda, quality, max_nodes);
    SweepRow row{lambda, r.value, r.est_error, r.panels, !(r.est_error <= 0.1 * std::abs(r.value))};
    any_good = any_good || !row.flagged;
    out.rows.push_back(row);
  }
  if (!any_good) throw SweepFailureError("every sweep row exceeded the error threshold");
  return out;
}

}  // namespace newtonosc
