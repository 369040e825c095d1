#pragma once

#include <string>
#include <vector>

#include "newtonosc/phase.hpp"
#include "newtonosc/polyhedron.hpp"

namespace newtonosc {

/// phi_F: the terms of the phase whose multidegree lies on a compact face.
struct FacePolynomial {
  std::size_t face_index = 0;
  Phase polynomial;
};

/// Throws DomainError when the index is not a compact face of the polyhedron.
FacePolynomial face_polynomial(const Phase& phase, const NewtonPolyhedron& polyhedron,
                               std::size_t face_index);

enum class NondegeneracyStatus { Nondegenerate, Degenerate, Inconclusive };

std::string to_string(NondegeneracyStatus status);

struct NondegeneracyParams {
  int grid_per_axis = 64;
  int refine_depth = 3;
  double degeneracy_tol = 1e-9;
};

struct FaceRecord {
  std::size_t face_index = 0;
  int dimension = 0;
  /// Smallest ||x grad phi_F(x)||_inf found on the shell max |x_i| = 1.
  double min_norm = 0.0;
  std::vector<double> argmin;
  bool analytic = false;  ///< vertex face, decided without sampling
  bool degenerate = false;
};

struct NondegeneracyVerdict {
  NondegeneracyStatus status = NondegeneracyStatus::Inconclusive;
  std::vector<FaceRecord> faces;
  NondegeneracyParams params;
  std::string reason;
  /// Witness x* of the first degenerate face (empty otherwise).
  std::vector<double> witness;
  std::size_t witness_face = 0;
};

/// Samples each compact face polynomial on the shell max |x_i| = 1 in every
/// sign orthant (free magnitudes in [0.1, 1]) and refines the best samples
/// with damped Gauss-Newton on r_j = x_j d_j phi_F.
NondegeneracyVerdict check_nondegenerate(const Phase& phase, const NondegeneracyParams& params = {});

/// Truncates to |alpha| <= k, requires convenience, then checks the truncation.
NondegeneracyVerdict check_k_nondegenerate(const Phase& phase, int k,
                                           const NondegeneracyParams& params = {});

/// r = x grad f(x) and its Jacobian dr_j/dx_k (row-major, d x d).
void scaled_gradient_with_jacobian(const Phase& phase, std::span<const double> x,
                                   std::vector<double>& r, std::vector<double>& jacobian);

}  // namespace newtonosc
