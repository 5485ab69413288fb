#pragma once

#include "fermifuse/linalg.hpp"

#include <cstdint>
#include <string>

namespace fermifuse {

/// g in O(V): unitary on the sample space commuting with the real structure.
/// In the sample basis that means a real orthogonal matrix.
struct OrthogonalElement {
  Mat g;
};

/// Finite truncation of the free fermions on the circle.  The circle is
/// sampled at 2N points t_j = -pi + (j + 1/2) * pi/N which are symmetric under
/// t -> -t and avoid both 0 and pi, so the reflection tau is a coordinate
/// permutation and the semicircle split is a coordinate split.
///
/// Modes are phi_n(t_j) = exp(-i (n + 1/2) t_j) / sqrt(2N) for n = -N..N-1;
/// the Lagrangian L is spanned by the modes with n >= 0.  The number of spin
/// components is fixed to one: more components multiply dimensions without
/// changing any identity verified here.
struct FermionModel {
  int n_modes = 0;                 // N; dim V = 2N
  RealVec sample_points;           // t_j, ascending
  Mat mode_basis;                  // column n+N holds phi_n at the samples
  AntiUnitaryOp alpha;             // entrywise conjugation in the sample basis
  Mat tau;                         // permutation t_j -> -t_j
  Mat lagrangian_projector;        // P_L
  Mat minus_projector;             // coordinates with t_j < 0
  Mat plus_projector;              // coordinates with t_j > 0

  int dim_v() const { return 2 * n_modes; }
  /// Column of phi_n, n in [-N, N-1].
  Vec mode(int n) const;
  /// Mode coefficients <phi_n, f> for n = 0..N-1 (the Lagrangian part).
  Vec lagrangian_coefficients(const Vec& f) const;

  /// Sample indices of V_- are 0..N-1, of V_+ are N..2N-1.
  Mat minus_block(const Mat& g) const { return g.topLeftCorner(n_modes, n_modes); }
  Mat plus_block(const Mat& g) const { return g.bottomRightCorner(n_modes, n_modes); }
  Mat assemble_theta(const Mat& gm, const Mat& gp) const;
  /// tau h tau restricted to the opposite half, as an N x N block.
  Mat reflect_block(const Mat& h) const;
};

/// Throws OddN / TooLarge.  All model invariants hold to 1e-10 afterwards.
FermionModel build_model(int n_modes);

bool is_orthogonal(const FermionModel& model, const Mat& g, double tol = tol::loose);
bool is_theta_orthogonal(const FermionModel& model, const Mat& g, double tol = tol::loose);

/// g_- ⊕ g_+ with independent real special orthogonal blocks; every such
/// element has an even implementer downstream.
OrthogonalElement random_theta_orthogonal(const FermionModel& model, std::uint64_t seed);

/// tau g tau.  Throws NotOrthogonal.
OrthogonalElement reflect(const FermionModel& model, const OrthogonalElement& g,
                          double tol = tol::loose);

/// JSON round-trip for OrthogonalElement: {"dim": 2N, "re": [...], "im": [...]}
/// row-major.  Used by the CLI fuse command.
std::string orthogonal_to_json(const OrthogonalElement& g);
OrthogonalElement orthogonal_from_json(const std::string& text);

}  // namespace fermifuse
