#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "newtonosc/phase.hpp"
#include "newtonosc/rational.hpp"

namespace newtonosc {

/// A compact face of the Newton polyhedron.
struct Face {
  std::vector<std::size_t> vertex_ids;         ///< indices into extreme_points()
  int dimension = 0;
  std::vector<std::size_t> containing_facets;  ///< indices into facet_normals()
  std::vector<std::size_t> coordinate_planes;  ///< axes i with face inside {xi_i = 0}
  std::vector<Multidegree> support_points;     ///< Taylor support lying on the face
};

/// ⌊alpha⌋ together with its minimizing facet normals.
struct FloorValue {
  Rational value;
  std::vector<std::size_t> argmin;
};

/// Newton polyhedron conv(supp + R_>=^d), built with exact rational arithmetic.
///
/// Facet normals are the w >= 0 with min over the support of alpha.w equal to
/// one whose equality set is (d-1)-dimensional; facets lying in coordinate
/// hyperplanes are not part of W. Immutable after build.
class NewtonPolyhedron {
 public:
  static NewtonPolyhedron build(const Phase& phase);
  static NewtonPolyhedron from_support(std::size_t dimension, std::vector<Multidegree> support);

  std::size_t dimension() const noexcept { return dimension_; }
  std::span<const Multidegree> support() const noexcept { return support_; }
  std::span<const Multidegree> extreme_points() const noexcept { return extreme_; }
  std::span<const RationalVector> facet_normals() const noexcept { return normals_; }
  std::span<const Face> compact_faces() const noexcept { return faces_; }
  bool convenient() const noexcept { return convenient_; }

  /// t = 1/⌊1⌋. Throws DomainError when ⌊1⌋ = 0.
  Rational newton_distance() const;

  /// Exact min over W of alpha.w with the argmin set. Throws when W is empty
  /// or alpha has a negative entry or the wrong length.
  FloorValue floor(std::span<const Rational> alpha) const;
  FloorValue floor(const Multidegree& alpha) const;

  /// True iff xi.w = 1 and alpha.w >= 1 for every support point alpha.
  bool supporting_check(std::span<const Rational> w, std::span<const Rational> xi) const;

  /// min{d, |n(beta + 1)|}. Throws DomainError when ⌊beta + 1⌋ = 0.
  int codim_of_point(const Multidegree& beta) const;

  /// Membership via the facet inequalities plus q >= 0.
  bool contains(std::span<const Rational> q) const;

  /// Index of the compact face whose vertex set equals the given one.
  std::optional<std::size_t> find_face(std::span<const std::size_t> vertex_ids) const;

 private:
  NewtonPolyhedron() = default;

  std::size_t dimension_ = 0;
  std::vector<Multidegree> support_;
  std::vector<Multidegree> extreme_;
  std::vector<RationalVector> normals_;
  std::vector<Face> faces_;
  bool convenient_ = false;
};

}  // namespace newtonosc
