#include "newtonosc/polyhedron.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <set>

#include "newtonosc/error.hpp"
#include "newtonosc/exact_linalg.hpp"
#include "newtonosc/lp.hpp"

namespace newtonosc {

namespace {

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Affine dimension of conv(points) + cone(e_i : i in rays).
int affine_dimension(std::span<const RationalVector> points, std::uint32_t rays, std::size_t d) {
  if (points.empty()) return -1;
  RationalMatrix rows;
  for (std::size_t k = 1; k < points.size(); ++k) {
    RationalVector diff(d);
    for (std::size_t i = 0; i < d; ++i) diff[i] = points[k][i] - points[0][i];
    rows.push_back(std::move(diff));
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (rays & (1u << i)) {
      RationalVector e(d, Rational(0));
      e[i] = 1;
      rows.push_back(std::move(e));
    }
  }
  return static_cast<int>(linalg::rank(std::move(rows)));
}

struct RawFace {
  std::uint64_t vertices = 0;
  std::uint32_t rays = 0;
  auto operator<=>(const RawFace&) const = default;
};

}  // namespace

NewtonPolyhedron NewtonPolyhedron::build(const Phase& phase) {
  return from_support(phase.dimension(), phase.support());
}

NewtonPolyhedron NewtonPolyhedron::from_support(std::size_t d, std::vector<Multidegree> support) {
  if (d == 0 || d > 31) throw DomainError("polyhedron dimension must lie in [1, 31]");
  if (support.empty()) throw DomainError("empty Taylor support");
  for (const auto& a : support) {
    if (a.size() != d) throw DomainError("dimension mismatch in support point");
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  NewtonPolyhedron p;
  p.dimension_ = d;
  p.support_ = support;

  // Extreme points: support points outside the polyhedron of the others.
  std::vector<RationalVector> rational_support;
  for (const auto& a : support) rational_support.push_back(a.as_rational());
  for (std::size_t i = 0; i < support.size(); ++i) {
    std::vector<RationalVector> others;
    for (std::size_t j = 0; j < support.size(); ++j) {
      if (j != i) others.push_back(rational_support[j]);
    }
    if (!lp::in_dominated_hull(others, rational_support[i])) p.extreme_.push_back(support[i]);
  }
  if (p.extreme_.size() > 64) throw DomainError("more than 64 extreme points is unsupported");

  std::vector<RationalVector> ext;
  for (const auto& a : p.extreme_) ext.push_back(a.as_rational());
  const std::size_t n_ext = ext.size();

  // Facet normals from A w = 1 on k extreme points with d-k zero components.
  std::set<RationalVector> normals;
  for (std::size_t k = 1; k <= std::min(d, n_ext); ++k) {
    for_each_combination(n_ext, k, [&](const std::vector<std::size_t>& pts) {
      for_each_combination(d, d - k, [&](const std::vector<std::size_t>& zeros) {
        RationalMatrix a;
        RationalVector b;
        for (auto i : pts) {
          a.push_back(ext[i]);
          b.emplace_back(1);
        }
        for (auto z : zeros) {
          RationalVector e(d, Rational(0));
          e[z] = 1;
          a.push_back(std::move(e));
          b.emplace_back(0);
        }
        auto w = linalg::solve(std::move(a), std::move(b));
        if (!w) return;
        bool nonzero = false;
        for (const auto& wi : *w) {
          if (sgn(wi) < 0) return;
          nonzero = nonzero || sgn(wi) != 0;
        }
        if (!nonzero || normals.count(*w)) return;
        std::vector<RationalVector> on;
        for (const auto& e : ext) {
          const Rational v = dot(e, *w);
          if (v < 1) return;
          if (v == 1) on.push_back(e);
        }
        std::uint32_t rays = 0;
        for (std::size_t i = 0; i < d; ++i) {
          if (sgn((*w)[i]) == 0) rays |= 1u << i;
        }
        if (affine_dimension(on, rays, d) == static_cast<int>(d) - 1) normals.insert(*w);
      });
    });
  }
  p.normals_.assign(normals.rbegin(), normals.rend());

  // Face lattice by closing the facet set (W-facets and coordinate facets)
  // under intersection. A face is (vertex set, ray set).
  std::vector<RawFace> facets;
  for (const auto& w : p.normals_) {
    RawFace f;
    for (std::size_t v = 0; v < n_ext; ++v) {
      if (dot(ext[v], w) == 1) f.vertices |= std::uint64_t{1} << v;
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(w[i]) == 0) f.rays |= 1u << i;
    }
    facets.push_back(f);
  }
  for (std::size_t i = 0; i < d; ++i) {
    RawFace f;
    for (std::size_t v = 0; v < n_ext; ++v) {
      if (p.extreme_[v][i] == 0) f.vertices |= std::uint64_t{1} << v;
    }
    if (f.vertices == 0) continue;
    f.rays = ((d >= 32 ? 0u : (1u << d) - 1u)) & ~(1u << i);
    facets.push_back(f);
  }
  std::set<RawFace> all(facets.begin(), facets.end());
  std::vector<RawFace> frontier(facets.begin(), facets.end());
  while (!frontier.empty()) {
    std::vector<RawFace> next;
    for (const auto& f : frontier) {
      for (const auto& g : facets) {
        RawFace h{f.vertices & g.vertices, f.rays & g.rays};
        if (h.vertices == 0) continue;
        if (all.insert(h).second) next.push_back(h);
      }
    }
    frontier = std::move(next);
  }

  std::vector<Face> faces;
  for (const auto& f : all) {
    if (f.rays != 0) continue;
    Face face;
    std::vector<RationalVector> verts;
    for (std::size_t v = 0; v < n_ext; ++v) {
      if (f.vertices & (std::uint64_t{1} << v)) {
        face.vertex_ids.push_back(v);
        verts.push_back(ext[v]);
      }
    }
    face.dimension = affine_dimension(verts, 0, d);
    for (std::size_t k = 0; k < p.normals_.size(); ++k) {
      if ((facets[k].vertices & f.vertices) == f.vertices) face.containing_facets.push_back(k);
    }
    for (std::size_t i = 0; i < d; ++i) {
      bool all_zero = true;
      for (auto v : face.vertex_ids) all_zero = all_zero && p.extreme_[v][i] == 0;
      if (all_zero) face.coordinate_planes.push_back(i);
    }
    for (std::size_t s = 0; s < support.size(); ++s) {
      bool on = true;
      for (auto k : face.containing_facets) on = on && dot(rational_support[s], p.normals_[k]) == 1;
      for (auto i : face.coordinate_planes) on = on && support[s][i] == 0;
      if (on) face.support_points.push_back(support[s]);
    }
    faces.push_back(std::move(face));
  }
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.vertex_ids < b.vertex_ids;
  });
  p.faces_ = std::move(faces);

  p.convenient_ = true;
  for (std::size_t i = 0; i < d; ++i) {
    const bool on_axis = std::any_of(support.begin(), support.end(), [&](const Multidegree& a) {
      for (std::size_t k = 0; k < d; ++k) {
        if (k != i && a[k] != 0) return false;
      }
      return a[i] > 0;
    });
    p.convenient_ = p.convenient_ && on_axis;
  }
  return p;
}

FloorValue NewtonPolyhedron::floor(std::span<const Rational> alpha) const {
  if (normals_.empty()) throw DomainError("polyhedron has no facet normals");
  if (alpha.size() != dimension_) throw DomainError("dimension mismatch in floor functional");
  for (const auto& a : alpha) {
    if (sgn(a) < 0) throw DomainError("floor functional needs a nonnegative argument");
  }
  FloorValue out;
  for (std::size_t k = 0; k < normals_.size(); ++k) {
    Rational v = dot(alpha, normals_[k]);
    if (out.argmin.empty() || v < out.value) {
      out.value = v;
      out.argmin = {k};
    } else if (v == out.value) {
      out.argmin.push_back(k);
    }
  }
  return out;
}

FloorValue NewtonPolyhedron::floor(const Multidegree& alpha) const {
  const RationalVector a = alpha.as_rational();
  return floor(std::span<const Rational>(a));
}

Rational NewtonPolyhedron::newton_distance() const {
  const RationalVector ones(dimension_, Rational(1));
  const FloorValue f = floor(std::span<const Rational>(ones));
  if (sgn(f.value) == 0) throw DomainError("floor of the all-ones vector is zero; no Newton distance");
  return 1 / f.value;
}

bool NewtonPolyhedron::supporting_check(std::span<const Rational> w,
                                        std::span<const Rational> xi) const {
  if (w.size() != dimension_ || xi.size() != dimension_) {
    throw DomainError("dimension mismatch in supporting check");
  }
  bool nonzero = false;
  for (const auto& wi : w) {
    if (sgn(wi) < 0) throw DomainError("normal must be nonnegative");
    nonzero = nonzero || sgn(wi) != 0;
  }
  if (!nonzero) throw DomainError("normal must be nonzero");
  if (dot(xi, w) != 1) return false;
  return std::all_of(support_.begin(), support_.end(), [&](const Multidegree& a) {
    return dot(a.exponents(), w) >= 1;
  });
}

int NewtonPolyhedron::codim_of_point(const Multidegree& beta) const {
  const RationalVector v = beta.plus_ones();
  const FloorValue f = floor(std::span<const Rational>(v));
  if (sgn(f.value) == 0) throw DomainError("floor of beta + 1 is zero");
  return static_cast<int>(std::min(dimension_, f.argmin.size()));
}

bool NewtonPolyhedron::contains(std::span<const Rational> q) const {
  if (q.size() != dimension_) throw DomainError("dimension mismatch in membership test");
  for (const auto& qi : q) {
    if (sgn(qi) < 0) return false;
  }
  return std::all_of(normals_.begin(), normals_.end(),
                     [&](const RationalVector& w) { return dot(q, w) >= 1; });
}

std::optional<std::size_t> NewtonPolyhedron::find_face(std::span<const std::size_t> vertex_ids) const {
  std::vector<std::size_t> key(vertex_ids.begin(), vertex_ids.end());
  std::sort(key.begin(), key.end());
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    if (faces_[i].vertex_ids == key) return i;
  }
  return std::nullopt;
}

}  // namespace newtonosc
