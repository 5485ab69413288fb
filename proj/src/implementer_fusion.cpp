#include "fermifuse/implementer_fusion.hpp"

#include <cmath>

namespace fermifuse {

FusionContext make_fusion_context(const FockSpace& fock) {
  FusionContext ctx;
  ctx.fock = fock;

  std::vector<Mat> gens;
  for (int j = 0; j < fock.n(); ++j) gens.push_back(fock.gamma(j));
  ctx.n_minus = algebra_from_generators(fock.dim, gens);

  try {
    ctx.fock_standard_form = standard_form(ctx.n_minus, fock.vacuum());
  } catch (const Error& e) {
    if (e.code() == "NotCyclic" || e.code() == "NotSeparating")
      fail("VacuumDegenerate", "vacuum is not cyclic separating for Cl(V_-)''");
    throw;
  }

  ctx.l2 = gns(ctx.n_minus, State::from_vector(fock.vacuum()));

  ctx.fock_bimodule.dim = fock.dim;
  ctx.fock_bimodule.left_alg = ctx.n_minus;
  ctx.fock_bimodule.right_alg = ctx.n_minus;
  const AntiUnitaryOp j = modular_j(fock);
  for (const Mat& b : ctx.n_minus.span_basis) {
    ctx.fock_bimodule.left_images.push_back(b);
    ctx.fock_bimodule.right_images.push_back(j.sandwich(b.adjoint()));
  }

  ctx.ff = fuse(ctx.fock_bimodule, ctx.fock_bimodule, ctx.l2);
  ctx.u_std = put_in_standard_form(ctx.fock_bimodule, fock.vacuum(), ctx.l2);
  ctx.chi = standard_left_unitor(ctx.ff, ctx.u_std);
  if (!is_unitary(ctx.chi, 1e-7)) fail("VacuumDegenerate", "chi failed to be unitary");
  return ctx;
}

namespace {

StarIso middle_twist(const FusionContext& ctx, const Implementer& u) {
  // theta_{tau(g_+)} on N is induced by conjugation with kappa(U) = JUJ.
  const Implementer k = kappa(ctx.fock, u);
  return StarIso::conjugation(ctx.n_minus, ctx.n_minus, k.u);
}

}  // namespace

Implementer mu_hat(const FusionContext& ctx, const Implementer& u, const Implementer& v) {
  if (u.parity != Parity::even || v.parity != Parity::even)
    fail("OddInput", "mu_hat needs even implementers");
  if (!fusable(ctx.fock.model, u, v)) fail("NotFusable", "pair violates g'_- = tau g_+ tau");

  const StarIso nu2 = middle_twist(ctx, u);
  const Mat fused_map = fuse_maps(ctx.ff, ctx.ff, u.u, nu2, v.u);
  const Mat result = ctx.chi * fused_map * ctx.chi.adjoint();

  const FermionModel& model = ctx.fock.model;
  OrthogonalElement g{model.assemble_theta(model.minus_block(u.g.g), model.plus_block(v.g.g))};
  return Implementer{result, g, Parity::even};
}

FusionFactorization fusion_factorization(const FusionContext& ctx, const Mat& h_plus) {
  const FermionModel& model = ctx.fock.model;
  const int n = model.n_modes;
  if (h_plus.rows() != n || h_plus.cols() != n)
    fail("DimensionMismatch", "h_plus must act on the V_+ coordinates");
  if ((h_plus - h_plus.conjugate()).norm() > 1e-10 ||
      !is_unitary(h_plus, 1e-8) || std::abs(h_plus.real().determinant() - 1.0) > 1e-8)
    fail("NotOrthogonal", "h_plus must be real special orthogonal");

  OrthogonalElement delta{model.assemble_theta(model.reflect_block(h_plus), h_plus)};
  const Mat r0 = implement(ctx.fock, delta).u;

  const AntiUnitaryOp j = modular_j(ctx.fock);
  const Mat jr0j = j.sandwich(r0);
  const Cplx prop = hs_inner(r0, jr0j) / double(ctx.fock.dim);
  if (std::abs(std::abs(prop) - 1.0) > 1e-7 ||
      (jr0j - prop * r0).norm() > 1e-7 * std::sqrt(double(ctx.fock.dim)))
    fail("NoJCommutingPhase", "J r0 J is not proportional to r0");

  // J (z r0) J = conj(z) prop r0, so z^2 = prop.
  const Cplx z = std::sqrt(prop);
  const Mat cand_a = z * r0;
  const Mat cand_b = -z * r0;
  const Vec va = cand_a * ctx.fock.vacuum();
  const double defect_a = ctx.fock_standard_form.hs.psd_defect(va / va.norm());
  const double defect_b = ctx.fock_standard_form.hs.psd_defect(-va / va.norm());
  const double floor = -1e-7;
  if (defect_a < floor && defect_b < floor)
    fail("ConeAmbiguity", "neither phase candidate has its vacuum image in the cone");
  if (defect_a >= floor && defect_b >= floor)
    fail("ConeAmbiguity", "both phase candidates certify as cone vectors");
  return FusionFactorization{h_plus, defect_a >= floor ? cand_a : cand_b};
}

TheoremAgreeReport theorem_fusion_products_agree(const FusionContext& ctx,
                                                 const Implementer& u,
                                                 const Implementer& v,
                                                 Orientation orientation,
                                                 double tol) {
  TheoremAgreeReport rep;
  rep.orientation = orientation;
  const FermionModel& model = ctx.fock.model;

  const Mat g_plus = model.plus_block(u.g.g);
  const FusionFactorization ff = fusion_factorization(ctx, g_plus);
  const Mat r = ff.r;

  const AntiUnitaryOp j = modular_j(ctx.fock);
  rep.j_commutation = (j.sandwich(r) - r).norm();

  const Mat k = r.adjoint();  // K = r^{-1}
  const Mat uk = u.u * k;
  ImplementedElement q_uk = implemented_element(ctx.fock, uk);
  rep.block_residual = std::max(
      (model.plus_block(q_uk.g) - Mat::Identity(model.n_modes, model.n_modes)).norm(),
      q_uk.residual);

  // mu_hat(K^{-1}, K^{-1}) = K^{-1} with K^{-1} = r.
  OrthogonalElement delta{model.assemble_theta(model.reflect_block(g_plus), g_plus)};
  Implementer r_imp{r, delta, parity_of(ctx.fock, r)};
  rep.idempotent_residual = (mu_hat(ctx, r_imp, r_imp).u - r).norm();

  const Mat fused = mu_hat(ctx, u, v).u;
  const Mat formula = orientation == Orientation::inverse ? Mat(u.u * k * v.u) : Mat(u.u * r * v.u);
  rep.delta = (fused - formula).norm();
  rep.pass = rep.delta <= tol && rep.j_commutation <= 1e-8 && rep.block_residual <= 1e-8 &&
             rep.idempotent_residual <= 1e-8;
  return rep;
}

Orientation calibrate_orientation(const FusionContext& ctx) {
  const FermionModel& model = ctx.fock.model;
  const int n = model.n_modes;
  bool inverse_ok = true, direct_ok = true;
  for (int step = 1; step <= 5; ++step) {
    const double angle = 0.4 * step;
    Mat rot = Mat::Identity(n, n);
    rot(0, 0) = std::cos(angle);
    rot(0, 1) = std::sin(angle);
    rot(1, 0) = -std::sin(angle);
    rot(1, 1) = std::cos(angle);

    // U implements g_- ⊕ h(angle); U' implements tau h tau ⊕ g'_+.
    Rng rng(std::uint64_t(1000 + step));
    const Mat gm = rng.special_orthogonal(n).cast<Cplx>();
    const Mat gpp = rng.special_orthogonal(n).cast<Cplx>();
    const Implementer u = implement(ctx.fock, OrthogonalElement{model.assemble_theta(gm, rot)});
    const Implementer v = implement(
        ctx.fock, OrthogonalElement{model.assemble_theta(model.reflect_block(rot), gpp)});

    const TheoremAgreeReport inv = theorem_fusion_products_agree(ctx, u, v, Orientation::inverse);
    const TheoremAgreeReport dir = theorem_fusion_products_agree(ctx, u, v, Orientation::direct);
    if (inv.delta > 1e-7) inverse_ok = false;
    if (dir.delta > 1e-7) direct_ok = false;
  }
  if (inverse_ok == direct_ok)
    fail("ConeAmbiguity", "orientation calibration did not single out one formula");
  return inverse_ok ? Orientation::inverse : Orientation::direct;
}

}  // namespace fermifuse
