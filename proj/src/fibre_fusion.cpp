#include "fermifuse/fibre_fusion.hpp"

#include <cmath>

namespace fermifuse {

namespace {

Implementer compose(const FockSpace& fock, const Implementer& a, const Implementer& b) {
  Implementer out;
  out.u = a.u * b.u;
  out.g = OrthogonalElement{a.g.g * b.g.g};
  out.parity = a.parity == b.parity ? Parity::even : Parity::odd;
  (void)fock;
  return out;
}

}  // namespace

FibreFrame make_frame(const FusionContext& ctx, int i, int j, const Mat& p_i, const Mat& p_j) {
  const FermionModel& model = ctx.fock.model;
  OrthogonalElement g{model.assemble_theta(model.reflect_block(p_i), p_j)};
  FibreFrame frame{i, j, implement(ctx.fock, g)};
  if (frame.lift.parity != Parity::even)
    fail("IncompatibleTriple", "frame lift must be even");
  return frame;
}

FibreTriple make_triple(const FusionContext& ctx, const Mat& p1, const Mat& p2, const Mat& p3) {
  FibreTriple t;
  t.f12 = make_frame(ctx, 1, 2, p1, p2);
  t.f23 = make_frame(ctx, 2, 3, p2, p3);
  t.f13 = FibreFrame{1, 3, mu_hat(ctx, t.f12.lift, t.f23.lift)};
  return t;
}

Mat fibre_chi(const FusionContext& ctx, const FibreTriple& triple, double tol) {
  if (!fusable(ctx.fock.model, triple.f12.lift, triple.f23.lift))
    fail("IncompatibleTriple", "frames (12, 23) are not fusable");
  const Implementer expected = mu_hat(ctx, triple.f12.lift, triple.f23.lift);
  if ((expected.u - triple.f13.lift.u).norm() > tol * std::sqrt(double(ctx.fock.dim)))
    fail("IncompatibleTriple", "nu_13 does not equal the Connes fusion of (nu_12, nu_23)");

  const StarIso nu2 = StarIso::conjugation(ctx.n_minus, ctx.n_minus,
                                           kappa(ctx.fock, triple.f12.lift).u);
  const Mat fused_pair = fuse_maps(ctx.ff, ctx.ff, triple.f12.lift.u, nu2, triple.f23.lift.u);
  return triple.f13.lift.u.adjoint() * ctx.chi * fused_pair;
}

FibreTriple reframe(const FusionContext& ctx, const FibreTriple& triple,
                    const Implementer& u12, const Implementer& u23) {
  if (u12.parity != Parity::even || u23.parity != Parity::even)
    fail("NotEven", "reframing implementers must be even");
  if (!fusable(ctx.fock.model, u12, u23))
    fail("NotFusable", "reframing pair must be fusable");
  FibreTriple out;
  out.f12 = FibreFrame{1, 2, compose(ctx.fock, u12, triple.f12.lift)};
  out.f23 = FibreFrame{2, 3, compose(ctx.fock, u23, triple.f23.lift)};
  out.f13 = FibreFrame{1, 3, compose(ctx.fock, mu_hat(ctx, u12, u23), triple.f13.lift)};
  return out;
}

FrameIndependenceReport frame_independence(const FusionContext& ctx, const FibreTriple& a,
                                           const FibreTriple& b, double tol) {
  FrameIndependenceReport rep;
  rep.difference = (fibre_chi(ctx, a) - fibre_chi(ctx, b)).norm();
  rep.pass = rep.difference <= tol;
  return rep;
}

FibreAssociativityReport fibre_associativity(const FusionContext& ctx, const Mat& p1,
                                             const Mat& p2, const Mat& p3, const Mat& p4,
                                             double tol) {
  FibreAssociativityReport rep;

  FibreFrame f12 = make_frame(ctx, 1, 2, p1, p2);
  FibreFrame f23 = make_frame(ctx, 2, 3, p2, p3);
  FibreFrame f34 = make_frame(ctx, 3, 4, p3, p4);
  FibreFrame f13{1, 3, mu_hat(ctx, f12.lift, f23.lift)};
  FibreFrame f24{2, 4, mu_hat(ctx, f23.lift, f34.lift)};
  FibreFrame f14{1, 4, mu_hat(ctx, f13.lift, f34.lift)};
  rep.frame_consistency = (f14.lift.u - mu_hat(ctx, f12.lift, f24.lift).u).norm();

  const FibreTriple t123{f12, f23, f13};
  const FibreTriple t134{f13, f34, f14};
  const FibreTriple t234{f23, f34, f24};
  const FibreTriple t124{f12, f24, f14};
  const Mat chi123 = fibre_chi(ctx, t123);
  const Mat chi134 = fibre_chi(ctx, t134);
  const Mat chi234 = fibre_chi(ctx, t234);
  const Mat chi124 = fibre_chi(ctx, t124);

  // Square on the triple-fused model: both routes land in F.
  const FusedSpace fff_left = fuse(ctx.ff.bimodule, ctx.fock_bimodule, ctx.l2);
  const FusedSpace fff_right = fuse(ctx.fock_bimodule, ctx.ff.bimodule, ctx.l2);
  const Mat assoc = associator(ctx.ff, fff_left, ctx.ff, fff_right);
  const Mat left_route =
      chi134 * fuse_maps_simple(fff_left, ctx.ff, chi123, Mat::Identity(ctx.fock.dim, ctx.fock.dim));
  const Mat right_route =
      chi124 * fuse_maps_simple(fff_right, ctx.ff, Mat::Identity(ctx.fock.dim, ctx.fock.dim), chi234) *
      assoc;
  rep.square_residual = (left_route - right_route).norm();
  rep.pass = rep.square_residual <= tol && rep.frame_consistency <= 1e-6;
  return rep;
}

}  // namespace fermifuse
