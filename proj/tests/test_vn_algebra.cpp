#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fermifuse/clifford_fock.hpp"
#include "fermifuse/vn_algebra.hpp"

#include <cmath>

using namespace fermifuse;

namespace {

Mat mat2(Cplx a, Cplx b, Cplx c, Cplx d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

const Mat sigma_x = mat2(0, 1, 1, 0);
const Mat sigma_z = mat2(1, 0, 0, -1);

VNAlgebra fock_minus_algebra(const FockSpace& fock) {
  std::vector<Mat> gens;
  for (int j = 0; j < fock.n(); ++j) gens.push_back(fock.gamma(j));
  return algebra_from_generators(fock.dim, gens);
}

}  // namespace

TEST_CASE("algebra generation") {
  const VNAlgebra trivial = algebra_from_generators(2, {});
  CHECK(trivial.dim_span() == 1);
  CHECK(trivial.contains(Mat::Identity(2, 2)));

  // Words of length <= 2 in the two Pauli generators already span M_2.
  const VNAlgebra pauli = algebra_from_generators(2, {sigma_x, sigma_z});
  CHECK(pauli.dim_span() == 4);

  // Powers of a diagonal with distinct entries span the diagonal algebra.
  const VNAlgebra diag = algebra_from_generators(2, {mat2(1, 0, 0, 2)});
  CHECK(diag.dim_span() == 2);
  CHECK(diag.contains(mat2(5, 0, 0, -3)));
  CHECK_FALSE(diag.contains(sigma_x));
}

TEST_CASE("commutant and bicommutant") {
  const VNAlgebra full = full_matrix_algebra(3);
  CHECK(commutant(full).dim_span() == 1);

  const VNAlgebra trivial = algebra_from_generators(3, {});
  CHECK(commutant(trivial).dim_span() == 9);

  const VNAlgebra pauli = algebra_from_generators(2, {sigma_x, sigma_z});
  CHECK(span_distance(double_commutant(pauli), pauli) < 1e-9);

  const VNAlgebra diag = algebra_from_generators(2, {mat2(1, 0, 0, 2)});
  CHECK(span_distance(double_commutant(diag), diag) < 1e-9);
  CHECK(center(diag).dim_span() == 2);
  CHECK_FALSE(is_factor(diag));
  CHECK(is_factor(full));
}

TEST_CASE("fock minus algebra is a factor with twisted commutant") {
  for (int n : {2, 4}) {
    const FockSpace fock = make_fock(build_model(n));
    const VNAlgebra nm = fock_minus_algebra(fock);
    const int expected = 1 << n;  // 4^{n/2}
    CHECK(nm.dim_span() == expected);
    CHECK(is_factor(nm));

    const VNAlgebra comm = commutant(nm);
    CHECK(comm.dim_span() == expected);

    // Tomita: J N J = N'.
    const AntiUnitaryOp j = modular_j(fock);
    std::vector<Mat> conjugated;
    for (const Mat& b : nm.span_basis) conjugated.push_back(j.sandwich(b));
    CHECK(span_distance(algebra_from_span(fock.dim, conjugated), comm) < 1e-8);

    // The commutant is the Klein twist of Cl(V_+)'': even plus-monomials
    // plainly, odd ones multiplied by the volume element of Cl(V_-).  (The
    // plain Cl(V_+)'' is *-isomorphic to the commutant but not equal to it:
    // odd generators of the two halves anticommute.)
    const Mat vol = minus_volume(fock);
    std::vector<Mat> twisted;
    std::size_t idx = 0;
    for (const Mat& p : half_monomial_basis(fock, Side::plus)) {
      const std::uint32_t mask = std::uint32_t(idx++);
      int bits = 0;
      for (int b = 0; b < n; ++b) bits += int((mask >> b) & 1u);
      twisted.push_back(bits % 2 == 0 ? p : Mat(vol * p));
    }
    CHECK(span_distance(algebra_from_span(fock.dim, twisted), comm) < 1e-8);
    CHECK(comm.contains(fock.gamma(n) * fock.gamma(n + 1), 1e-8));
    CHECK_FALSE(comm.contains(fock.gamma(n), 1e-6));
  }
}

TEST_CASE("gns") {
  const VNAlgebra scalars = algebra_from_generators(1, {});
  const GnsSpace tiny = gns(scalars, State::from_density(Mat::Identity(1, 1)));
  CHECK(tiny.dim == 1);

  // M_2 with the normalized trace: the Gram of the matrix units is diagonal.
  const VNAlgebra m2 = full_matrix_algebra(2);
  const GnsSpace l2 = gns(m2, State::from_density(0.5 * Mat::Identity(2, 2)));
  CHECK(l2.dim == 4);
  CHECK((l2.left_action(Mat::Identity(2, 2)) - Mat::Identity(4, 4)).norm() < 1e-10);
  // Tracial state: Delta = 1 and the right action is an antihomomorphism
  // commuting with the left one.
  CHECK((l2.modular.delta - Mat::Identity(4, 4)).norm() < 1e-9);
  for (const Mat& l : l2.left_span_images)
    for (const Mat& r : l2.right_span_images) CHECK((l * r - r * l).norm() < 1e-9);

  // In the Hilbert-Schmidt picture the left action is multiplication by the
  // matrix realization: w L(a) w* = mat(a) ⊗ I.
  {
    std::vector<Mat> acting;
    for (const Mat& img : l2.left_span_images) acting.push_back(img);
    const VNAlgebra on_gns = algebra_from_generators(l2.dim, acting);
    const HsModel hs = hs_model(on_gns, l2.unit);
    for (int i = 0; i < 4; ++i) {
      const Mat img = l2.left_span_images[std::size_t(i)];
      Mat mat_img(hs.m, hs.m);
      for (int k = 0; k < hs.m; ++k)
        for (int l = 0; l < hs.m; ++l)
          mat_img(k, l) = hs_inner(hs.units.unit(k, l), img) / double(l2.dim / hs.m);
      CHECK((hs.w * img * hs.w.adjoint() - kron(mat_img, Mat::Identity(hs.m, hs.m))).norm() <
            1e-8 * (1.0 + img.norm()));
    }
  }

  // Rank-deficient density: not faithful.
  Mat rank1 = Mat::Zero(2, 2);
  rank1(0, 0) = 1.0;
  CHECK_THROWS_AS(gns(m2, State::from_density(rank1)), Error);
  try {
    gns(m2, State::from_density(rank1));
  } catch (const Error& e) {
    CHECK(e.code() == "NotFaithful");
  }
}

TEST_CASE("tomita on a maximally entangled vector") {
  // M_2 ⊗ 1 acting on C^4 with the maximally entangled vector: the state is
  // tracial, so Delta = 1 and J is swap-with-conjugation.
  const Mat id2 = Mat::Identity(2, 2);
  std::vector<Mat> gens = {kron(sigma_x, id2), kron(sigma_z, id2)};
  const VNAlgebra alg = algebra_from_generators(4, gens);
  Vec omega = Vec::Zero(4);
  omega(0) = omega(3) = 1.0 / std::sqrt(2.0);

  const TomitaData td = tomita(alg, omega);
  CHECK((td.delta - Mat::Identity(4, 4)).norm() < 1e-9);
  CHECK(td.j.involution_defect() < 1e-10);

  // J(x ⊗ y) = conj(y) ⊗ conj(x) on product vectors.
  Rng rng(2);
  const Vec x = rng.gaussian_vector(2), y = rng.gaussian_vector(2);
  const Vec xy = kron(x, y);
  const Vec swapped = kron(Vec(y.conjugate()), Vec(x.conjugate()));
  CHECK((td.j.apply(Vec(kron(x, y).col(0))) - swapped.col(0)).norm() < 1e-9);

  // J A J = A'.
  const VNAlgebra comm = commutant(alg);
  std::vector<Mat> conj;
  for (const Mat& b : alg.span_basis) conj.push_back(td.j.sandwich(b));
  CHECK(span_distance(algebra_from_span(4, conj), comm) < 1e-8);

  // Cyclic / separating failures.
  CHECK_THROWS_AS(tomita(alg, Vec(Vec::Unit(4, 0))), Error);
  const VNAlgebra big = full_matrix_algebra(2);
  // 4-dim algebra on a 2-dim space cannot have a separating vector.
  VNAlgebra shrunk = big;
  CHECK_THROWS_AS(tomita(shrunk, Vec(Vec::Unit(2, 0))), Error);
}

TEST_CASE("fock vacuum modular conjugation matches the closed formula") {
  const FockSpace fock = make_fock(build_model(4));
  const VNAlgebra nm = fock_minus_algebra(fock);
  const TomitaData td = tomita(nm, fock.vacuum());
  const AntiUnitaryOp j = modular_j(fock);
  CHECK((td.j.linear_part - j.linear_part).norm() < 1e-8);
}

TEST_CASE("matrix units and hs model") {
  const FockSpace fock = make_fock(build_model(2));
  const VNAlgebra nm = fock_minus_algebra(fock);
  const MatrixUnits units = matrix_units_of_factor(nm);
  CHECK(units.m == 2);
  Mat sum = Mat::Zero(fock.dim, fock.dim);
  for (int k = 0; k < units.m; ++k) sum += units.unit(k, k);
  CHECK((sum - Mat::Identity(fock.dim, fock.dim)).norm() < 1e-9);

  const HsModel hs = hs_model(nm, fock.vacuum());
  CHECK(is_unitary(hs.w, 1e-8));

  // Gram preservation: <a omega, b omega> = tr(rho-realized form).
  Rng rng(3);
  auto random_element = [&]() {
    Mat a = Mat::Zero(fock.dim, fock.dim);
    for (int i = 0; i < nm.dim_span(); ++i)
      a += Cplx(rng.gaussian(), rng.gaussian()) * nm.span_basis[std::size_t(i)];
    return a;
  };
  const TomitaData td = tomita(nm, fock.vacuum());
  for (int trial = 0; trial < 5; ++trial) {
    const Mat a = random_element();
    const Vec v = a * fock.vacuum();
    // w intertwines J with the conjugate transpose.
    const Mat img = hs.matrix_of(v);
    const Mat img_j = hs.matrix_of(td.j.apply(v));
    CHECK((img_j - img.adjoint()).norm() < 1e-8 * (1.0 + img.norm()));
  }

  // The cone sits exactly on the positive semidefinite matrices.
  const ConeData cone = natural_cone(nm, fock.vacuum(), td, hs);
  CHECK(cone.j_fix_residual < 1e-10);
  CHECK(cone.psd_floor > -1e-9);
  // First sample is the vacuum itself (a = identity direction).
  CHECK(hs.psd_defect(Vec(fock.vacuum())) > -1e-10);

  CHECK_THROWS_AS(matrix_units_of_factor(algebra_from_generators(2, {mat2(1, 0, 0, 2)})), Error);
}

TEST_CASE("standard form axioms") {
  const FockSpace fock = make_fock(build_model(2));
  const VNAlgebra nm = fock_minus_algebra(fock);
  const StandardFormData sf = standard_form(nm, fock.vacuum());
  const StandardFormCheck chk = verify_standard_form(sf);
  CHECK(chk.j_involution < 1e-9);
  CHECK(chk.jaj_commutant < 1e-8);
  CHECK(chk.center_conj < 1e-9);
  CHECK(chk.cone_fixed < 1e-9);
  CHECK(chk.cone_psd_floor > -1e-9);
  CHECK(chk.cyclic_margin > 1e-8);
}

TEST_CASE("connecting unitary") {
  const FockSpace fock = make_fock(build_model(2));
  const VNAlgebra nm = fock_minus_algebra(fock);
  const StandardFormData sf = standard_form(nm, fock.vacuum());

  // Same form, identity isomorphism: the unique unitary is the identity.
  const Mat u_same = connecting_unitary(sf, sf, StarIso::identity(nm));
  CHECK((u_same - Mat::Identity(fock.dim, fock.dim)).norm() < 1e-8);

  // Two GNS realizations under different faithful states.
  const GnsSpace l2a = gns(nm, State::from_vector(fock.vacuum()));
  Rng rng(5);
  Mat a = Mat::Zero(fock.dim, fock.dim);
  for (int i = 0; i < nm.dim_span(); ++i)
    a += Cplx(rng.gaussian(), rng.gaussian()) * nm.span_basis[std::size_t(i)];
  Mat density = a * a.adjoint() + 0.3 * Mat::Identity(fock.dim, fock.dim);
  density /= density.trace().real();
  const GnsSpace l2b = gns(nm, State::from_density(density));

  // GNS unit vectors of faithful states are cyclic and separating.
  CHECK(l2a.modular.cyclic_margin > 1e-8);
  CHECK(l2b.modular.cyclic_margin > 1e-8);

  auto gns_form = [&](const GnsSpace& l2, std::uint64_t seed) {
    std::vector<Mat> span;
    for (const Mat& img : l2.left_span_images) span.push_back(img);
    // Orthonormalize through algebra_from_generators to get a clean basis.
    VNAlgebra acting = algebra_from_generators(l2.dim, span);
    return standard_form(acting, l2.unit, seed);
  };
  const StandardFormData sfa = gns_form(l2a, 0);
  const StandardFormData sfb = gns_form(l2b, 0);

  StarIso pi;
  pi.from_family = l2a.left_span_images;
  pi.to_images = l2b.left_span_images;
  pi.finalize();
  const Mat u = connecting_unitary(sfa, sfb, pi);
  CHECK(is_unitary(u, 1e-8));
  CHECK((u * sfa.modular.j.linear_part * u.transpose() - sfb.modular.j.linear_part).norm() <
        1e-8);

  // Gauge independence: different matrix-unit seeds give the same unitary,
  // exactly and not only up to phase.
  const Mat u2 = connecting_unitary(gns_form(l2a, 7), gns_form(l2b, 13), pi);
  CHECK((u - u2).norm() < 1e-8);

  // A non-multiplicative map is rejected: transpose is an antihomomorphism.
  StarIso bad;
  bad.from_family = l2a.left_span_images;
  for (const Mat& b : l2a.left_span_images) bad.to_images.push_back(b.transpose());
  bad.finalize();
  CHECK_THROWS_AS(connecting_unitary(sfa, sfa, bad), Error);
}

TEST_CASE("connecting unitary onto the vacuum GNS space is the vector map") {
  // The unique unitary from the Fock standard form to the vacuum GNS space
  // is the closure of a vac -> hat(a).
  const FockSpace fock = make_fock(build_model(2));
  const VNAlgebra nm = fock_minus_algebra(fock);
  const StandardFormData sf_fock = standard_form(nm, fock.vacuum());

  const GnsSpace l2 = gns(nm, State::from_vector(fock.vacuum()));
  std::vector<Mat> acting;
  for (const Mat& img : l2.left_span_images) acting.push_back(img);
  const VNAlgebra on_gns = algebra_from_generators(l2.dim, acting);
  const StandardFormData sf_gns = standard_form(on_gns, l2.unit);

  StarIso pi;
  pi.from_family = nm.span_basis;
  for (const Mat& b : nm.span_basis) pi.to_images.push_back(l2.left_action(b));
  pi.finalize();

  const Mat u = connecting_unitary(sf_fock, sf_gns, pi);
  for (const Mat& b : nm.span_basis)
    CHECK((u * (b * fock.vacuum()) - l2.vector_of(b)).norm() < 1e-8);
}
