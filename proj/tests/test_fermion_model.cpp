#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fermifuse/fermion_model.hpp"

#include <cmath>
#include <numbers>

using namespace fermifuse;

TEST_CASE("construction and errors") {
  CHECK_THROWS_AS(build_model(3), Error);
  CHECK_THROWS_AS(build_model(0), Error);
  CHECK_THROWS_AS(build_model(-2), Error);
  CHECK_THROWS_AS(build_model(8), Error);
  try {
    build_model(8);
  } catch (const Error& e) {
    CHECK(e.code() == "TooLarge");
  }
  try {
    build_model(3);
  } catch (const Error& e) {
    CHECK(e.code() == "OddN");
  }

  const FermionModel m = build_model(2);
  CHECK(m.dim_v() == 4);
  CHECK(std::abs(m.lagrangian_projector.trace().real() - 2.0) < 1e-12);
  // No sample point sits at 0 or ±pi.
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(m.sample_points(j)) > 1e-6);
    CHECK(std::abs(std::abs(m.sample_points(j)) - std::numbers::pi) > 1e-6);
  }
}

TEST_CASE("mode and reflection structure") {
  for (int n : {2, 4}) {
    const FermionModel m = build_model(n);
    const int dim = 2 * n;
    const Mat id = Mat::Identity(dim, dim);

    CHECK(is_unitary(m.mode_basis, 1e-12));

    // alpha sends phi_k to phi_{-k-1}.
    for (int k = -n; k < n; ++k)
      CHECK((m.alpha.apply(m.mode(k)) - m.mode(-k - 1)).norm() < 1e-12);

    // tau is a real unitary involution commuting with alpha, acting on modes
    // as the complex-linear extension of the same index map.
    CHECK((m.tau * m.tau - id).norm() < 1e-12);
    CHECK((m.tau - m.tau.conjugate()).norm() == 0.0);
    for (int k = -n; k < n; ++k)
      CHECK((m.tau * m.mode(k) - m.mode(-k - 1)).norm() < 1e-12);

    // V = L ⊕ alpha(L) and tau exchanges the two halves.
    const Mat alpha_pl_alpha = m.alpha.sandwich(m.lagrangian_projector);
    CHECK((m.lagrangian_projector + alpha_pl_alpha - id).norm() < 1e-10);
    CHECK((m.tau * m.lagrangian_projector * m.tau - (id - m.lagrangian_projector)).norm() <
          1e-10);

    // Semicircle split: tau P+ tau = P-, alpha commutes with both.
    CHECK((m.tau * m.plus_projector * m.tau - m.minus_projector).norm() < 1e-12);
    CHECK((m.alpha.sandwich(m.plus_projector) - m.plus_projector).norm() < 1e-12);
    CHECK((m.alpha.sandwich(m.minus_projector) - m.minus_projector).norm() < 1e-12);

    // alpha tau preserves the Lagrangian.
    const AntiUnitaryOp at = m.alpha.after_linear(m.tau);
    CHECK((at.sandwich(m.lagrangian_projector) - m.lagrangian_projector).norm() < 1e-10);
  }
}

TEST_CASE("real vectors are alpha fixed") {
  const FermionModel m = build_model(4);
  Rng rng(9);
  Vec f = rng.gaussian_real(8, 1).cast<Cplx>();
  CHECK(std::abs(std::imag(f.dot(m.alpha.apply(f)))) < 1e-12);
  CHECK((m.alpha.apply(f) - f).norm() == 0.0);
}

TEST_CASE("orthogonality predicates") {
  const FermionModel m = build_model(2);
  const Mat id = Mat::Identity(4, 4);
  CHECK(is_orthogonal(m, id));
  CHECK(is_theta_orthogonal(m, id));

  // tau is orthogonal but swaps the semicircles.
  CHECK(is_orthogonal(m, m.tau));
  CHECK_FALSE(is_theta_orthogonal(m, m.tau));

  Rng rng(4);
  const Mat block = m.assemble_theta(rng.special_orthogonal(2).cast<Cplx>(),
                                     rng.special_orthogonal(2).cast<Cplx>());
  CHECK(is_orthogonal(m, block));
  CHECK(is_theta_orthogonal(m, block));

  // A complex unitary fails the reality test.
  Mat u = id;
  u(0, 0) = kI;
  CHECK_FALSE(is_orthogonal(m, u));

  CHECK_THROWS_AS(is_orthogonal(m, Mat::Identity(3, 3)), Error);
}

TEST_CASE("random theta orthogonal") {
  const FermionModel m = build_model(4);
  const OrthogonalElement a = random_theta_orthogonal(m, 7);
  const OrthogonalElement b = random_theta_orthogonal(m, 7);
  CHECK((a.g - b.g).norm() == 0.0);

  CHECK(is_theta_orthogonal(m, a.g, 1e-12));
  CHECK(std::abs(m.minus_block(a.g).determinant() - Cplx(1.0)) < 1e-10);
  CHECK(std::abs(m.plus_block(a.g).determinant() - Cplx(1.0)) < 1e-10);
}

TEST_CASE("reflect") {
  const FermionModel m = build_model(4);
  const Mat id = Mat::Identity(8, 8);
  CHECK((reflect(m, OrthogonalElement{id}).g - id).norm() == 0.0);

  const OrthogonalElement g = random_theta_orthogonal(m, 12);
  CHECK((reflect(m, reflect(m, g)).g - g.g).norm() < 1e-14);

  // Reflecting 1 ⊕ g+ moves the block to the minus corner.
  const Mat gp = m.plus_block(g.g);
  const OrthogonalElement one_gp{m.assemble_theta(Mat::Identity(4, 4), gp)};
  const Mat r = reflect(m, one_gp).g;
  CHECK((m.plus_block(r) - Mat::Identity(4, 4)).norm() < 1e-14);
  CHECK((m.minus_block(r) - m.reflect_block(gp)).norm() < 1e-14);

  Mat not_orth = id;
  not_orth(0, 0) = 2.0;
  CHECK_THROWS_AS(reflect(m, OrthogonalElement{not_orth}), Error);
}

TEST_CASE("block map is a homomorphism") {
  const FermionModel m = build_model(4);
  const OrthogonalElement a = random_theta_orthogonal(m, 21);
  const OrthogonalElement b = random_theta_orthogonal(m, 22);
  const Mat prod = a.g * b.g;
  CHECK((m.minus_block(prod) - m.minus_block(a.g) * m.minus_block(b.g)).norm() < 1e-14);
  CHECK((m.plus_block(prod) - m.plus_block(a.g) * m.plus_block(b.g)).norm() < 1e-14);
}

TEST_CASE("json round trip") {
  const FermionModel m = build_model(2);
  const OrthogonalElement g = random_theta_orthogonal(m, 33);
  const OrthogonalElement back = orthogonal_from_json(orthogonal_to_json(g));
  CHECK((back.g - g.g).norm() == 0.0);

  CHECK_THROWS(orthogonal_from_json("{\"dim\": 4, \"re\": [1, 0], \"im\": [0, 0]}"));
  CHECK_THROWS(orthogonal_from_json("not json"));
}
