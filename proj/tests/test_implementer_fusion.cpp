#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fermifuse/implementer_fusion.hpp"

#include <cmath>

using namespace fermifuse;

namespace {

struct Fixture {
  FockSpace fock = make_fock(build_model(2));
  FusionContext ctx = make_fusion_context(fock);

  Implementer block(std::uint64_t seed) {
    return implement(fock, random_theta_orthogonal(fock.model, seed));
  }

  /// Fusable pair from three independent blocks.
  std::pair<Implementer, Implementer> fusable_pair(std::uint64_t seed) {
    Rng rng(seed);
    const int n = fock.model.n_modes;
    const Mat gm = rng.special_orthogonal(n).cast<Cplx>();
    const Mat gp = rng.special_orthogonal(n).cast<Cplx>();
    const Mat gpp = rng.special_orthogonal(n).cast<Cplx>();
    const Implementer u =
        implement(fock, OrthogonalElement{fock.model.assemble_theta(gm, gp)});
    const Implementer v = implement(
        fock,
        OrthogonalElement{fock.model.assemble_theta(fock.model.reflect_block(gp), gpp)});
    return {u, v};
  }
};

}  // namespace

TEST_CASE("chi acts by the dense formula") {
  Fixture fx;
  CHECK(is_unitary(fx.ctx.chi, 1e-9));

  // For the intertwiner x_a: hat(b) -> a b vac, chi(x_a ⊗ v) = a v.
  Rng rng(2);
  for (int trial = 0; trial < 4; ++trial) {
    Mat a = Mat::Zero(fx.fock.dim, fx.fock.dim);
    for (int i = 0; i < fx.ctx.n_minus.dim_span(); ++i)
      a += Cplx(rng.gaussian(), rng.gaussian()) * fx.ctx.n_minus.span_basis[std::size_t(i)];
    const Mat x_a = a * fx.ctx.u_std.adjoint();  // hat(b) -> a b vac

    // Express x_a ⊗ e_j in the model and push through chi.
    const int dd = int(fx.ctx.ff.d_basis.size());
    const int j = 1;
    Vec coeff = Vec::Zero(fx.ctx.ff.coeff_dim);
    Mat residual = x_a;
    for (int i = 0; i < dd; ++i) {
      const Cplx c = hs_inner(fx.ctx.ff.d_basis[std::size_t(i)], x_a);
      coeff(fx.ctx.ff.flat(i, j)) = c;
      residual -= c * fx.ctx.ff.d_basis[std::size_t(i)];
    }
    CHECK(residual.norm() < 1e-8 * (1.0 + x_a.norm()));
    const Vec out = fx.ctx.chi * (fx.ctx.ff.to_model * coeff);
    const Vec expected = a * Vec::Unit(fx.fock.dim, j);
    CHECK((out - expected).norm() < 1e-8 * (1.0 + expected.norm()));
  }
}

TEST_CASE("mu_hat of identities") {
  Fixture fx;
  const Implementer id = implement(fx.fock, OrthogonalElement{Mat::Identity(4, 4)});
  const Implementer fused = mu_hat(fx.ctx, id, id);
  CHECK((fused.u - Mat::Identity(fx.fock.dim, fx.fock.dim)).norm() < 1e-8);
}

TEST_CASE("mu_hat implements the glued element") {
  Fixture fx;
  auto [u, v] = fx.fusable_pair(5);
  const Implementer fused = mu_hat(fx.ctx, u, v);
  const FermionModel& m = fx.fock.model;
  const Mat expected = m.assemble_theta(m.minus_block(u.g.g), m.plus_block(v.g.g));
  CHECK((fused.g.g - expected).norm() < 1e-12);
  CHECK(implementation_residual(fx.fock, fused.u, expected) < 1e-8);
  CHECK(parity_of(fx.fock, fused.u) == Parity::even);
}

TEST_CASE("mu_hat error paths") {
  Fixture fx;
  const Implementer a = fx.block(3);
  const Implementer b = fx.block(4);
  CHECK_THROWS_AS(mu_hat(fx.ctx, a, b), Error);
  try {
    mu_hat(fx.ctx, a, b);
  } catch (const Error& e) {
    CHECK(e.code() == "NotFusable");
  }

  Mat refl = Mat::Identity(4, 4);
  refl(0, 0) = -1.0;
  refl(2, 2) = -1.0;  // reflections in both halves: theta-orthogonal but odd ⊕ odd
  const Implementer odd_even = implement(fx.fock, OrthogonalElement{refl});
  if (odd_even.parity == Parity::odd)
    CHECK_THROWS_AS(mu_hat(fx.ctx, odd_even, odd_even), Error);
}

TEST_CASE("fusion factorization") {
  Fixture fx;
  const int n = fx.fock.model.n_modes;
  // h = id gives r = 1.
  const FusionFactorization triv = fusion_factorization(fx.ctx, Mat::Identity(n, n));
  CHECK((triv.r - Mat::Identity(fx.fock.dim, fx.fock.dim)).norm() < 1e-9);

  Rng rng(7);
  const Mat h = rng.special_orthogonal(n).cast<Cplx>();
  const FusionFactorization fac = fusion_factorization(fx.ctx, h);
  const AntiUnitaryOp j = modular_j(fx.fock);
  CHECK((j.sandwich(fac.r) - fac.r).norm() < 1e-9);
  // The vacuum image sits in the natural cone.
  const Vec rv = fac.r * fx.fock.vacuum();
  CHECK(fx.ctx.fock_standard_form.hs.psd_defect(Vec(rv / rv.norm())) > -1e-7);
  // r implements the doubled reflected element.
  const Mat delta =
      fx.fock.model.assemble_theta(fx.fock.model.reflect_block(h), h);
  CHECK(implementation_residual(fx.fock, fac.r, delta) < 1e-9);

  // Homomorphism property along the one-parameter structure: r(h)^2 = r(h^2).
  const FusionFactorization fac2 = fusion_factorization(fx.ctx, Mat(h * h));
  CHECK((fac.r * fac.r - fac2.r).norm() < 1e-8);

  CHECK_THROWS_AS(fusion_factorization(fx.ctx, Mat(2.0 * Mat::Identity(n, n))), Error);
}

TEST_CASE("fusion products agree") {
  Fixture fx;
  auto [u, v] = fx.fusable_pair(11);
  const TheoremAgreeReport rep =
      theorem_fusion_products_agree(fx.ctx, u, v, Orientation::inverse);
  CHECK(rep.delta < 1e-7);
  CHECK(rep.j_commutation < 1e-8);
  CHECK(rep.block_residual < 1e-8);
  CHECK(rep.idempotent_residual < 1e-8);
  CHECK(rep.pass);

  // The opposite orientation does not match for generic pairs.
  const TheoremAgreeReport wrong =
      theorem_fusion_products_agree(fx.ctx, u, v, Orientation::direct);
  CHECK(wrong.delta > 1e-3);

  CHECK(calibrate_orientation(fx.ctx) == Orientation::inverse);
}

TEST_CASE("identity pair gives zero delta") {
  Fixture fx;
  const Implementer id = implement(fx.fock, OrthogonalElement{Mat::Identity(4, 4)});
  const TheoremAgreeReport rep =
      theorem_fusion_products_agree(fx.ctx, id, id, Orientation::inverse);
  CHECK(rep.delta < 1e-9);
}

TEST_CASE("associator naturality on implementer maps") {
  Fixture fx;
  // Three pairwise-fusable even implementers.
  Rng rng(23);
  const int n = fx.fock.model.n_modes;
  auto so = [&]() { return Mat(rng.special_orthogonal(n).cast<Cplx>()); };
  const Mat p1 = so(), p2 = so(), p3 = so(), p4 = so();
  auto frame = [&](const Mat& a, const Mat& b) {
    return implement(fx.fock,
                     OrthogonalElement{fx.fock.model.assemble_theta(
                         fx.fock.model.reflect_block(a), b)});
  };
  const Implementer u12 = frame(p1, p2);
  const Implementer u23 = frame(p2, p3);
  const Implementer u34 = frame(p3, p4);

  const FusedSpace fff_l = fuse(fx.ctx.ff.bimodule, fx.ctx.fock_bimodule, fx.ctx.l2);
  const FusedSpace fff_r = fuse(fx.ctx.fock_bimodule, fx.ctx.ff.bimodule, fx.ctx.l2);
  const Mat assoc = associator(fx.ctx.ff, fff_l, fx.ctx.ff, fff_r);

  auto twist = [&](const Implementer& u) {
    return StarIso::conjugation(fx.ctx.n_minus, fx.ctx.n_minus, kappa(fx.fock, u).u);
  };
  const Mat pair12 = fuse_maps(fx.ctx.ff, fx.ctx.ff, u12.u, twist(u12), u23.u);
  const Mat pair23 = fuse_maps(fx.ctx.ff, fx.ctx.ff, u23.u, twist(u23), u34.u);

  const Mat lhs = fuse_maps(fff_l, fff_l, pair12, twist(u23), u34.u);
  const Mat rhs = fuse_maps(fff_r, fff_r, u12.u, twist(u12), pair23);
  CHECK((assoc * lhs - rhs * assoc).norm() < 1e-8);
}

TEST_CASE("factorization vacuum shift preserves the cone") {
  Fixture fx;
  Rng rng(29);
  const int n = fx.fock.model.n_modes;
  const Mat h = rng.special_orthogonal(n).cast<Cplx>();
  const FusionFactorization fac = fusion_factorization(fx.ctx, h);
  const Vec shifted = fac.r * fx.fock.vacuum();

  // The natural cone built over r vac coincides with the vacuum cone on
  // sampled generators: each sample certifies as positive in the vacuum
  // model, and the vacuum cone samples certify in the shifted model.
  const TomitaData td_shift = tomita(fx.ctx.n_minus, shifted);
  const HsModel hs_shift = hs_model(fx.ctx.n_minus, shifted);
  const ConeData cone_shift =
      natural_cone(fx.ctx.n_minus, shifted, td_shift, hs_shift, 8, 3);
  for (const Vec& s : cone_shift.samples)
    CHECK(fx.ctx.fock_standard_form.hs.psd_defect(s) > -1e-7);
  for (const Vec& s : fx.ctx.fock_standard_form.cone.samples)
    CHECK(hs_shift.psd_defect(s) > -1e-7);
}

TEST_CASE("vacuum degeneracy is detected") {
  // A context on a healthy model builds; the guard fires only on broken
  // vacuums, which cannot be produced through the public API.  Exercise the
  // success path and the chi consistency instead.
  Fixture fx;
  const Mat chi_r = standard_right_unitor(fx.ctx.ff, fx.ctx.u_std);
  CHECK((fx.ctx.chi - chi_r).norm() < 1e-8);
}
