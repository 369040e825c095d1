#include "newtonosc/nondegeneracy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "newtonosc/error.hpp"

namespace newtonosc {

namespace {

constexpr double kMagnitudeFloor = 0.1;
constexpr int kSeeds = 8;
constexpr int kStepsPerRound = 25;

double ipow(double x, int p) {
  double r = 1.0;
  for (int k = 0; k < p; ++k) r *= x;
  return r;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double a : v) m = std::max(m, std::abs(a));
  return m;
}

double two_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return std::sqrt(s);
}

struct Sample {
  double norm = std::numeric_limits<double>::infinity();
  std::vector<double> x;
  std::size_t pinned = 0;
};

// Levenberg-Marquardt on r(x) over the coordinates other than `pinned`,
// keeping each free |x_k| inside [floor, 1] with its sign.
void refine(const Phase& f, Sample& s, int steps) {
  const std::size_t d = s.x.size();
  std::vector<std::size_t> free;
  for (std::size_t k = 0; k < d; ++k) {
    if (k != s.pinned) free.push_back(k);
  }
  if (free.empty()) return;
  const Eigen::Index m = static_cast<Eigen::Index>(free.size());

  std::vector<double> r, jac;
  scaled_gradient_with_jacobian(f, s.x, r, jac);
  double cost = two_norm(r);
  double mu = 1e-3;
  for (int it = 0; it < steps && cost > 0.0; ++it) {
    Eigen::MatrixXd j(static_cast<Eigen::Index>(d), m);
    Eigen::VectorXd rv(static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < d; ++a) {
      rv(static_cast<Eigen::Index>(a)) = r[a];
      for (Eigen::Index b = 0; b < m; ++b) j(static_cast<Eigen::Index>(a), b) = jac[a * d + free[b]];
    }
    const Eigen::MatrixXd jtj = j.transpose() * j;
    const Eigen::VectorXd g = j.transpose() * rv;
    bool improved = false;
    for (int tries = 0; tries < 12 && !improved; ++tries) {
      Eigen::MatrixXd lhs = jtj;
      for (Eigen::Index b = 0; b < m; ++b) lhs(b, b) += mu * (1.0 + jtj(b, b));
      const Eigen::VectorXd step = lhs.ldlt().solve(-g);
      std::vector<double> trial = s.x;
      for (Eigen::Index b = 0; b < m; ++b) {
        const std::size_t k = free[b];
        const double sign = s.x[k] < 0 ? -1.0 : 1.0;
        const double mag = std::clamp(std::abs(s.x[k] + step(b)), kMagnitudeFloor, 1.0);
        trial[k] = sign * mag;
      }
      std::vector<double> tr, tj;
      scaled_gradient_with_jacobian(f, trial, tr, tj);
      const double tc = two_norm(tr);
      if (tc < cost) {
        s.x = std::move(trial);
        r = std::move(tr);
        jac = std::move(tj);
        cost = tc;
        mu = std::max(mu / 3.0, 1e-12);
        improved = true;
      } else {
        mu *= 4.0;
      }
    }
    if (!improved) break;
  }
  s.norm = inf_norm(r);
}

FaceRecord check_face(const Phase& f, std::size_t face_index, int dimension,
                      const NondegeneracyParams& params) {
  FaceRecord rec;
  rec.face_index = face_index;
  rec.dimension = dimension;
  const std::size_t d = f.dimension();

  if (f.terms().size() == 1) {
    // A single monomial c x^alpha has x_j d_j = c alpha_j x^alpha, nonzero off the axes.
    rec.analytic = true;
    const auto& t = f.terms()[0];
    double c = std::abs(f.coefficients_as_double()[0]);
    int amax = 0;
    for (std::size_t j = 0; j < d; ++j) amax = std::max(amax, t.exponent[j]);
    rec.min_norm = c * amax * ipow(kMagnitudeFloor, t.exponent.total() - amax);
    rec.argmin.assign(d, 1.0);
    return rec;
  }

  const int g = std::max(2, params.grid_per_axis);
  std::vector<double> mags(static_cast<std::size_t>(g));
  for (int k = 0; k < g; ++k) mags[k] = kMagnitudeFloor + (1.0 - kMagnitudeFloor) * k / (g - 1);

  std::vector<Sample> best;
  auto consider = [&](Sample s) {
    if (best.size() < static_cast<std::size_t>(kSeeds)) {
      best.push_back(std::move(s));
    } else if (s.norm < best.back().norm) {
      best.back() = std::move(s);
    } else {
      return;
    }
    std::sort(best.begin(), best.end(), [](const Sample& a, const Sample& b) { return a.norm < b.norm; });
  };

  const std::size_t orthants = std::size_t{1} << d;
  std::vector<std::size_t> counter(d > 0 ? d - 1 : 0);
  for (std::size_t orth = 0; orth < orthants; ++orth) {
    for (std::size_t pinned = 0; pinned < d; ++pinned) {
      std::fill(counter.begin(), counter.end(), 0);
      for (;;) {
        Sample s;
        s.pinned = pinned;
        s.x.resize(d);
        std::size_t c = 0;
        for (std::size_t k = 0; k < d; ++k) {
          const double sign = (orth >> k) & 1 ? -1.0 : 1.0;
          s.x[k] = sign * (k == pinned ? 1.0 : mags[counter[c++]]);
        }
        s.norm = inf_norm(f.scaled_gradient(s.x));
        consider(std::move(s));
        std::size_t pos = 0;
        while (pos < counter.size() && ++counter[pos] == static_cast<std::size_t>(g)) counter[pos++] = 0;
        if (pos == counter.size()) break;
      }
    }
  }

  for (int round = 0; round < params.refine_depth; ++round) {
    for (auto& s : best) refine(f, s, kStepsPerRound);
  }
  const auto it = std::min_element(best.begin(), best.end(),
                                   [](const Sample& a, const Sample& b) { return a.norm < b.norm; });
  rec.min_norm = it->norm;
  rec.argmin = it->x;
  const auto r = f.scaled_gradient(rec.argmin);
  rec.degenerate = inf_norm(r) < params.degeneracy_tol && two_norm(r) < params.degeneracy_tol;
  return rec;
}

}  // namespace

std::string to_string(NondegeneracyStatus status) {
  switch (status) {
    case NondegeneracyStatus::Nondegenerate: return "nondegenerate";
    case NondegeneracyStatus::Degenerate: return "degenerate";
    case NondegeneracyStatus::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

void scaled_gradient_with_jacobian(const Phase& phase, std::span<const double> x,
                                   std::vector<double>& r, std::vector<double>& jacobian) {
  const std::size_t d = phase.dimension();
  if (x.size() != d) throw DomainError("dimension mismatch in scaled gradient");
  r.assign(d, 0.0);
  jacobian.assign(d * d, 0.0);
  const auto coeffs = phase.coefficients_as_double();
  std::vector<double> pw(d);
  for (std::size_t t = 0; t < phase.terms().size(); ++t) {
    const auto& a = phase.terms()[t].exponent;
    // With m = c x^alpha, x_j d_j m = alpha_j m and d_k (alpha_j m) = alpha_j alpha_k m / x_k.
    double m = coeffs[t];
    for (std::size_t k = 0; k < d; ++k) m *= ipow(x[k], a[k]);
    for (std::size_t k = 0; k < d; ++k) {
      // m / x_k without dividing by zero.
      double mk = 0.0;
      if (a[k] > 0) {
        mk = coeffs[t];
        for (std::size_t i = 0; i < d; ++i) mk *= ipow(x[i], i == k ? a[i] - 1 : a[i]);
      }
      pw[k] = mk;
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (a[j] == 0) continue;
      r[j] += a[j] * m;
      for (std::size_t k = 0; k < d; ++k) jacobian[j * d + k] += a[j] * a[k] * pw[k];
    }
  }
}

FacePolynomial face_polynomial(const Phase& phase, const NewtonPolyhedron& polyhedron,
                               std::size_t face_index) {
  const auto faces = polyhedron.compact_faces();
  if (face_index >= faces.size()) throw DomainError("face not in lattice");
  const auto& pts = faces[face_index].support_points;
  return {face_index, phase.restricted([&](const Multidegree& a) {
            return std::find(pts.begin(), pts.end(), a) != pts.end();
          })};
}

NondegeneracyVerdict check_nondegenerate(const Phase& phase, const NondegeneracyParams& params) {
  const auto polyhedron = NewtonPolyhedron::build(phase);
  NondegeneracyVerdict verdict;
  verdict.params = params;
  const auto faces = polyhedron.compact_faces();
  bool all_clear = true;
  bool degenerate = false;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const auto fp = face_polynomial(phase, polyhedron, i);
    FaceRecord rec = check_face(fp.polynomial, i, faces[i].dimension, params);
    if (rec.degenerate && !degenerate) {
      degenerate = true;
      verdict.witness = rec.argmin;
      verdict.witness_face = i;
    }
    all_clear = all_clear && rec.min_norm > 1e3 * params.degeneracy_tol;
    verdict.faces.push_back(std::move(rec));
  }
  if (degenerate) {
    verdict.status = NondegeneracyStatus::Degenerate;
    verdict.reason = "x grad phi_F vanishes off the axes on face " + std::to_string(verdict.witness_face);
  } else if (all_clear) {
    verdict.status = NondegeneracyStatus::Nondegenerate;
  } else {
    verdict.status = NondegeneracyStatus::Inconclusive;
    verdict.reason = "some face minimum lies between the tolerance and 1e3 times it";
  }
  return verdict;
}

NondegeneracyVerdict check_k_nondegenerate(const Phase& phase, int k, const NondegeneracyParams& params) {
  if (k < 2) throw DomainError("k must be at least 2");
  const Phase truncated = phase.truncated(k);
  if (!NewtonPolyhedron::build(truncated).convenient()) {
    NondegeneracyVerdict verdict;
    verdict.status = NondegeneracyStatus::Degenerate;
    verdict.params = params;
    verdict.reason = "not convenient";
    return verdict;
  }
  return check_nondegenerate(truncated, params);
}

}  // namespace newtonosc
