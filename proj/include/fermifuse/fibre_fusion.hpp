#pragma once

#include "fermifuse/implementer_fusion.hpp"

namespace fermifuse {

/// A frame over a pair of paths (i, j): an even implementer of
/// (tau p_i tau) ⊕ p_j, where p_i is the V_+ block attached to path i.
struct FibreFrame {
  int i = 0;
  int j = 0;
  Implementer lift;
};

/// Frames over (1,2), (2,3), (1,3) with the fusion compatibility
/// nu_13 = mu_hat(nu_12, nu_23).
struct FibreTriple {
  FibreFrame f12, f23, f13;
};

/// Frame from path blocks p_i, p_j in SO on the V_+ coordinates.
FibreFrame make_frame(const FusionContext& ctx, int i, int j, const Mat& p_i, const Mat& p_j);

/// Triple with the compatible 13-frame built through mu_hat.
FibreTriple make_triple(const FusionContext& ctx, const Mat& p1, const Mat& p2, const Mat& p3);

/// chi_{123} = nu_13^* ∘ chi ∘ (nu_12 ⊠ nu_23) : model(F ⊠ F) -> F.
/// Throws IncompatibleTriple when the triple invariants fail.
Mat fibre_chi(const FusionContext& ctx, const FibreTriple& triple, double tol = 1e-8);

/// Re-frame by left-composing with a fusable pair of even implementers and
/// moving the 13-frame through mu_hat, as in the frame-independence proof.
FibreTriple reframe(const FusionContext& ctx, const FibreTriple& triple,
                    const Implementer& u12, const Implementer& u23);

struct FrameIndependenceReport {
  double difference = 0.0;
  bool pass = false;
};
FrameIndependenceReport frame_independence(const FusionContext& ctx, const FibreTriple& a,
                                           const FibreTriple& b, double tol = 1e-7);

struct FibreAssociativityReport {
  double square_residual = 0.0;   // chi_134 (chi_123 ⊠ 1) vs chi_124 (1 ⊠ chi_234) assoc
  double frame_consistency = 0.0; // nu_14 via (12,24) vs (13,34)
  bool pass = false;
};
FibreAssociativityReport fibre_associativity(const FusionContext& ctx, const Mat& p1,
                                             const Mat& p2, const Mat& p3, const Mat& p4,
                                             double tol = 1e-7);

}  // namespace fermifuse
