#pragma once

#include "fermifuse/connes_fusion.hpp"
#include "fermifuse/implementers.hpp"

namespace fermifuse {

/// Everything needed to fuse implementers over a fixed model: the algebra
/// N = Cl(V_-)'', its vacuum GNS space, F as an N-N bimodule, the fused
/// space F ⊠ F over the vacuum state, and the unitor chi.
struct FusionContext {
  FockSpace fock;
  VNAlgebra n_minus;
  StandardFormData fock_standard_form;  // (N, F, J, cone, vacuum)
  GnsSpace l2;
  Bimodule fock_bimodule;
  FusedSpace ff;
  Mat u_std;  // F -> L^2_Omega(N), a vac -> hat(a)
  Mat chi;    // model(F ⊠ F) -> F
};

/// Builds the context; throws VacuumDegenerate when the vacuum fails to be
/// cyclic and separating for N to the required margin.
FusionContext make_fusion_context(const FockSpace& fock);

/// The Connes fusion of fusable even implementers, chi ∘ (U ⊠ U') ∘ chi^{-1}.
/// The result implements g_- ⊕ g'_+; its phase is returned as computed.
/// Throws NotFusable / OddInput.
Implementer mu_hat(const FusionContext& ctx, const Implementer& u, const Implementer& v);

/// The canonical implementer of delta(h) = tau h tau ⊕ h for h in SO(V_+):
/// the unique implementer r with J r = r J whose vacuum image lies in the
/// natural cone.  Throws NoJCommutingPhase / ConeAmbiguity.
struct FusionFactorization {
  Mat h_plus;
  Mat r;
};
FusionFactorization fusion_factorization(const FusionContext& ctx, const Mat& h_plus);

enum class Orientation { inverse, direct };

/// Residuals for the identity mu_hat(U, U') = U r^{-1} U' (orientation
/// `inverse`) together with the proof-step sub-checks.
struct TheoremAgreeReport {
  Orientation orientation = Orientation::inverse;
  double delta = 0.0;              // || mu_hat(U,U') - U r^{±1} U' ||
  double j_commutation = 0.0;      // || J r J - r ||
  double block_residual = 0.0;     // plus block of q(U K) vs identity
  double idempotent_residual = 0.0;  // || mu_hat(K^{-1},K^{-1}) - K^{-1} ||
  bool pass = false;
};
TheoremAgreeReport theorem_fusion_products_agree(const FusionContext& ctx,
                                                 const Implementer& u,
                                                 const Implementer& v,
                                                 Orientation orientation,
                                                 double tol = 1e-7);

/// Brute-force comparison of both orientations over a one-parameter family
/// of fusable pairs; returns the orientation that matches for every angle.
Orientation calibrate_orientation(const FusionContext& ctx);

}  // namespace fermifuse
