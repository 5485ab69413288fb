#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fermifuse/fibre_fusion.hpp"

#include <cmath>

using namespace fermifuse;

namespace {

struct Fixture {
  FockSpace fock = make_fock(build_model(2));
  FusionContext ctx = make_fusion_context(fock);

  Mat so(std::uint64_t seed) {
    Rng rng(seed);
    return rng.special_orthogonal(fock.model.n_modes).cast<Cplx>();
  }
};

}  // namespace

TEST_CASE("identity frames reproduce chi") {
  Fixture fx;
  const Mat eye = Mat::Identity(2, 2);
  const FibreTriple t = make_triple(fx.ctx, eye, eye, eye);
  CHECK((fibre_chi(fx.ctx, t) - fx.ctx.chi).norm() < 1e-8);
}

TEST_CASE("fibre chi is a unitary intertwiner") {
  Fixture fx;
  const FibreTriple t = make_triple(fx.ctx, fx.so(1), fx.so(2), fx.so(3));
  const Mat chi = fibre_chi(fx.ctx, t);
  CHECK(is_unitary(chi, 1e-8));

  // Intertwines the transported outer actions with the actions on F.
  for (int i : {1, 2}) {
    const Mat& a = fx.ctx.n_minus.span_basis[std::size_t(i)];
    const Mat left_model = fx.ctx.ff.bimodule.left_action(a);
    CHECK((chi * left_model - a * chi).norm() < 1e-8);
    const Mat right_model = fx.ctx.ff.bimodule.right_action(a);
    const Mat right_f = fx.ctx.fock_bimodule.right_action(a);
    CHECK((chi * right_model - right_f * chi).norm() < 1e-8);
  }
}

TEST_CASE("frame independence") {
  Fixture fx;
  const FibreTriple t = make_triple(fx.ctx, fx.so(4), fx.so(5), fx.so(6));

  // Coherent phase changes cancel.
  const Cplx z12 = std::polar(1.0, 1.1), z23 = std::polar(1.0, 0.3);
  FibreTriple phased = t;
  phased.f12.lift.u *= z12;
  phased.f23.lift.u *= z23;
  phased.f13.lift.u *= z12 * z23;
  CHECK(frame_independence(fx.ctx, t, phased).difference < 1e-8);

  // Generic fusable reframing.
  Rng rng(9);
  const int n = fx.fock.model.n_modes;
  const Mat am = rng.special_orthogonal(n).cast<Cplx>();
  const Mat ap = rng.special_orthogonal(n).cast<Cplx>();
  const Mat app = rng.special_orthogonal(n).cast<Cplx>();
  const Implementer u12 =
      implement(fx.fock, OrthogonalElement{fx.fock.model.assemble_theta(am, ap)});
  const Implementer u23 = implement(
      fx.fock,
      OrthogonalElement{fx.fock.model.assemble_theta(fx.fock.model.reflect_block(ap), app)});
  const FibreTriple moved = reframe(fx.ctx, t, u12, u23);
  const FrameIndependenceReport rep = frame_independence(fx.ctx, t, moved);
  CHECK(rep.difference < 1e-7);
  CHECK(rep.pass);

  // Breaking the 13-compatibility is detected.
  FibreTriple broken = t;
  broken.f13.lift.u *= std::polar(1.0, 0.4);
  CHECK_THROWS_AS(fibre_chi(fx.ctx, broken), Error);
  try {
    fibre_chi(fx.ctx, broken);
  } catch (const Error& e) {
    CHECK(e.code() == "IncompatibleTriple");
  }
}

TEST_CASE("non fusable reframing is rejected") {
  Fixture fx;
  const FibreTriple t = make_triple(fx.ctx, fx.so(4), fx.so(5), fx.so(6));
  const Implementer a = implement(fx.fock, random_theta_orthogonal(fx.fock.model, 31));
  const Implementer b = implement(fx.fock, random_theta_orthogonal(fx.fock.model, 32));
  CHECK_THROWS_AS(reframe(fx.ctx, t, a, b), Error);
}

TEST_CASE("associativity square") {
  Fixture fx;
  const FibreAssociativityReport rep =
      fibre_associativity(fx.ctx, fx.so(10), fx.so(11), fx.so(12), fx.so(13));
  CHECK(rep.square_residual < 1e-7);
  CHECK(rep.frame_consistency < 1e-6);
  CHECK(rep.pass);

  // All-identity frames reduce the square to the associativity of chi.
  const Mat eye = Mat::Identity(2, 2);
  const FibreAssociativityReport triv = fibre_associativity(fx.ctx, eye, eye, eye, eye);
  CHECK(triv.square_residual < 1e-8);
}
