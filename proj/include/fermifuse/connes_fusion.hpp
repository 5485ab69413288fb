#pragma once

#include "fermifuse/vn_algebra.hpp"

namespace fermifuse {

/// Hilbert space with commuting left / right von Neumann algebra actions.
/// Actions are stored as the images of the algebras' span bases; arbitrary
/// algebra elements act through coefficient expansion.
struct Bimodule {
  int dim = 0;
  VNAlgebra left_alg;
  VNAlgebra right_alg;
  std::vector<Mat> left_images;
  std::vector<Mat> right_images;

  Mat left_action(const Mat& a) const;
  Mat right_action(const Mat& a) const;
};

/// L^2_phi(A) as an A-A bimodule (left multiplication, right action J a* J).
Bimodule standard_bimodule(const GnsSpace& l2);

/// Worst violation of the bimodule axioms: commutation of the two actions and
/// *-compatibility, evaluated on span bases.
double bimodule_defect(const Bimodule& h);

/// The algebra generated by the left action of a GNS space, acting on GNS
/// coordinates; used to put L^2 itself into standard form.
VNAlgebra gns_acting_algebra(const GnsSpace& l2);
StandardFormData gns_standard_form(const GnsSpace& l2, std::uint64_t seed = 0);

/// D(H, phi) = Hom_{-,A}(L^2, H): orthonormal basis of bounded right module
/// maps, via the stacked vectorized nullspace.
std::vector<Mat> left_bounded_space(const Bimodule& h, const GnsSpace& l2);
/// D'(K, phi) = Hom_{A,-}(L^2, K), the left module maps.
std::vector<Mat> right_bounded_space(const Bimodule& k, const GnsSpace& l2);

/// p_phi(x) for an endo-intertwiner of L^2: the unique algebra element whose
/// left action is x.  Throws NotIntertwiner.  The membership tolerance is
/// loose: genuine non-intertwiners miss by O(1), while valid inputs only
/// carry solver noise amplified by the GNS conditioning.
Mat p_phi(const GnsSpace& l2, const Mat& x, double tol = 1e-6);
/// Left version: the unique a with y = right action of a.
Mat p_phi_prime(const GnsSpace& l2, const Mat& y, double tol = 1e-6);

/// H ⊠_phi K: spanning family {x_i ⊗ e_j} (x_i over D(H,phi), e_j an
/// orthonormal basis of K), Gram matrix, and the isometry onto an orthonormal
/// model of dimension rank(gram).  Coefficients are flattened with the
/// D-index major: flat = i * dim(K) + j.
struct FusedSpace {
  Bimodule h;
  Bimodule k;
  GnsSpace l2;
  std::vector<Mat> d_basis;
  Mat gram;         // coeff_dim x coeff_dim, PSD
  Mat to_model;     // model_dim x coeff_dim, Lambda^{1/2} W*
  Mat from_model;   // right inverse W Lambda^{-1/2}
  Mat range_basis;  // W: orthonormal columns spanning range(gram)
  int coeff_dim = 0;
  int model_dim = 0;
  Bimodule bimodule;  // transported actions on the model

  int flat(int i, int j) const { return i * k.dim + j; }
};

/// Throws AlgebraMismatch / NotFaithful (via gns) as appropriate.
FusedSpace fuse(const Bimodule& h, const Bimodule& k, const GnsSpace& l2);

/// The alternative dense picture H ⊗ D'(K, phi) of the same fused space,
/// with its Gram matrix and the canonical identification onto the model of
/// the primary picture.  Flattening is H-coordinate major.
struct MixedPresentation {
  std::vector<Mat> dprime_basis;
  Mat gram;
  Mat to_model;
};
MixedPresentation mixed_presentation(const FusedSpace& f);

/// Functorial fusion of maps: nu_h ⊠ nu_k : model(src) -> model(dst) where
/// (nu1, nu2, nu_h) and (nu2, nu3, nu_k) are bimodule intertwiners and nu2
/// carries the middle algebra of src to the middle algebra of dst.  The state
/// transport unitary between L^2 spaces is computed via the standard-form
/// uniqueness theorem.  Throws NotIntertwiner.
Mat fuse_maps(const FusedSpace& src, const FusedSpace& dst, const Mat& nu_h,
              const StarIso& nu2, const Mat& nu_k);

/// Shortcut for nu2 = id with src and dst fused over the same state.
Mat fuse_maps_simple(const FusedSpace& src, const FusedSpace& dst, const Mat& nu_h,
                     const Mat& nu_k);

/// Unitary (H ⊠ K) ⊠ L -> H ⊠ (K ⊠ L) on the models.  The inputs are the
/// four fused spaces with consistent bracketings:
///   hk   = fuse(H, K, l2_phi)         kl   = fuse(K, L, l2_psi)
///   hk_l = fuse(model(hk), L, l2_psi) h_kl = fuse(H, model(kl), l2_phi)
Mat associator(const FusedSpace& hk, const FusedSpace& hk_l, const FusedSpace& kl,
               const FusedSpace& h_kl);

/// lambda_K : model(L^2 ⊠ K) -> K, x ⊗ v -> p_phi(x) |> v.
Mat left_unitor(const FusedSpace& l2_k);
/// rho_H : model(H ⊠ L^2) -> H, x ⊗ v -> x(v).
Mat right_unitor(const FusedSpace& h_l2);

/// The unique unitary I -> L^2 with a xi -> hat(a) for a standard bimodule I
/// with cyclic separating xi.  Throws NotStandardForm.
Mat put_in_standard_form(const Bimodule& i, const Vec& xi, const GnsSpace& l2);

/// Unitors for a standard form I in the middle: lambda^I_K = lambda_K ∘ (u ⊠ 1)
/// and rho^I_H = rho_H ∘ (1 ⊠ u), evaluated directly on the dense pictures.
Mat standard_left_unitor(const FusedSpace& i_k, const Mat& u);
Mat standard_right_unitor(const FusedSpace& h_i, const Mat& u);

}  // namespace fermifuse
