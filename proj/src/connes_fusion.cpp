#include "fermifuse/connes_fusion.hpp"

#include <cmath>

namespace fermifuse {

namespace {

void check_same_algebra(const VNAlgebra& a, const VNAlgebra& b, const char* where) {
  if (a.ambient_dim != b.ambient_dim || a.dim_span() != b.dim_span() ||
      span_distance(a, b) > 1e-7)
    fail("AlgebraMismatch", std::string(where) + ": middle algebras differ");
}

std::vector<Mat> orthonormal_span(const std::vector<Mat>& family) {
  std::vector<Mat> out;
  for (const Mat& cand : family) {
    Mat v = cand;
    for (int pass = 0; pass < 2; ++pass)
      for (const Mat& b : out) v -= hs_inner(b, v) * b;
    if (v.norm() > 1e-10) out.push_back(v / v.norm());
  }
  return out;
}

/// kron(c, k) * v for the flat index (i, j) = i * dim_j + j, without
/// materializing the Kronecker product: unfold, multiply, refold.
Vec kron_apply(const Mat& c, const Mat& k, const Vec& v) {
  const Eigen::Index dj = k.cols(), di = c.cols();
  Mat unfolded(dj, di);
  for (Eigen::Index i = 0; i < di; ++i) unfolded.col(i) = v.segment(i * dj, dj);
  const Mat moved = k * unfolded * c.transpose();
  Vec out(c.rows() * k.rows());
  for (Eigen::Index i = 0; i < c.rows(); ++i) out.segment(i * k.rows(), k.rows()) = moved.col(i);
  return out;
}

Mat kron_apply_columns(const Mat& c, const Mat& k, const Mat& x) {
  Mat out(c.rows() * k.rows(), x.cols());
  for (Eigen::Index col = 0; col < x.cols(); ++col)
    out.col(col) = kron_apply(c, k, Vec(x.col(col)));
  return out;
}

}  // namespace

Mat Bimodule::left_action(const Mat& a) const {
  const Vec c = left_alg.coefficients(a);
  Mat out = Mat::Zero(dim, dim);
  for (int i = 0; i < left_alg.dim_span(); ++i) out += c(i) * left_images[std::size_t(i)];
  return out;
}

Mat Bimodule::right_action(const Mat& a) const {
  const Vec c = right_alg.coefficients(a);
  Mat out = Mat::Zero(dim, dim);
  for (int i = 0; i < right_alg.dim_span(); ++i) out += c(i) * right_images[std::size_t(i)];
  return out;
}

Bimodule standard_bimodule(const GnsSpace& l2) {
  Bimodule b;
  b.dim = l2.dim;
  b.left_alg = l2.algebra;
  b.right_alg = l2.algebra;
  b.left_images = l2.left_span_images;
  b.right_images = l2.right_span_images;
  return b;
}

double bimodule_defect(const Bimodule& h) {
  double worst = 0.0;
  for (const Mat& l : h.left_images)
    for (const Mat& r : h.right_images) worst = std::max(worst, (l * r - r * l).norm());
  for (int i = 0; i < h.left_alg.dim_span(); ++i) {
    const Mat adj_elem = h.left_alg.span_basis[std::size_t(i)].adjoint();
    worst = std::max(worst, (h.left_action(adj_elem) - h.left_images[std::size_t(i)].adjoint()).norm());
  }
  for (int i = 0; i < h.right_alg.dim_span(); ++i) {
    const Mat adj_elem = h.right_alg.span_basis[std::size_t(i)].adjoint();
    worst = std::max(worst, (h.right_action(adj_elem) - h.right_images[std::size_t(i)].adjoint()).norm());
  }
  return worst;
}

VNAlgebra gns_acting_algebra(const GnsSpace& l2) {
  VNAlgebra alg = algebra_from_span(l2.dim, orthonormal_span(l2.left_span_images));
  return alg;
}

StandardFormData gns_standard_form(const GnsSpace& l2, std::uint64_t seed) {
  return standard_form(gns_acting_algebra(l2), l2.unit, seed);
}

std::vector<Mat> left_bounded_space(const Bimodule& h, const GnsSpace& l2) {
  check_same_algebra(h.right_alg, l2.algebra, "left_bounded_space");
  std::vector<Mat> rep_a, rep_b;
  for (const Mat& g : l2.algebra.generators) {
    rep_a.push_back(h.right_action(g));
    rep_b.push_back(l2.right_action(g));
  }
  return intertwiner_space(rep_a, rep_b);
}

std::vector<Mat> right_bounded_space(const Bimodule& k, const GnsSpace& l2) {
  check_same_algebra(k.left_alg, l2.algebra, "right_bounded_space");
  std::vector<Mat> rep_a, rep_b;
  for (const Mat& g : l2.algebra.generators) {
    rep_a.push_back(k.left_action(g));
    rep_b.push_back(l2.left_action(g));
  }
  return intertwiner_space(rep_a, rep_b);
}

Mat p_phi(const GnsSpace& l2, const Mat& x, double tol) {
  const Mat a = l2.element_of(x * l2.unit);
  if ((l2.left_action(a) - x).norm() > tol * (1.0 + x.norm()))
    fail("NotIntertwiner", "p_phi input is not a right module endomorphism of L^2");
  return a;
}

Mat p_phi_prime(const GnsSpace& l2, const Mat& y, double tol) {
  // J y J is left multiplication by some a*; evaluate at the unit.
  const Mat jyj = l2.modular.j.sandwich(y);
  const Mat a = l2.element_of(jyj * l2.unit).adjoint();
  if ((l2.right_action(a) - y).norm() > tol * (1.0 + y.norm()))
    fail("NotIntertwiner", "p_phi_prime input is not a left module endomorphism of L^2");
  return a;
}

FusedSpace fuse(const Bimodule& h, const Bimodule& k, const GnsSpace& l2) {
  check_same_algebra(h.right_alg, l2.algebra, "fuse (right algebra of H)");
  check_same_algebra(k.left_alg, l2.algebra, "fuse (left algebra of K)");

  FusedSpace f;
  f.h = h;
  f.k = k;
  f.l2 = l2;
  f.d_basis = left_bounded_space(h, l2);
  const int dd = int(f.d_basis.size());
  const int dk = k.dim;
  f.coeff_dim = dd * dk;

  f.gram = Mat::Zero(f.coeff_dim, f.coeff_dim);
  for (int i = 0; i < dd; ++i)
    for (int ip = 0; ip < dd; ++ip) {
      const Mat p = p_phi(l2, f.d_basis[std::size_t(i)].adjoint() * f.d_basis[std::size_t(ip)]);
      f.gram.block(i * dk, ip * dk, dk, dk) = k.left_action(p);
    }
  f.gram = (f.gram + f.gram.adjoint()) / 2.0;

  HermEig eig = hermitian_eig(f.gram, 1e-6);
  const double top = std::max(eig.values(f.coeff_dim - 1), 0.0);
  if (top <= 0) fail("NotFaithful", "fused Gram matrix vanished");
  if (eig.values(0) < -1e-9 * top)
    fail("NotFaithful", "fused Gram matrix has a significantly negative eigenvalue");
  std::vector<int> kept;
  for (int i = 0; i < f.coeff_dim; ++i)
    if (eig.values(i) > 1e-9 * top) kept.push_back(i);
  f.model_dim = int(kept.size());
  f.range_basis = Mat(f.coeff_dim, f.model_dim);
  Mat lam_half = Mat::Zero(f.model_dim, f.model_dim);
  Mat lam_inv_half = Mat::Zero(f.model_dim, f.model_dim);
  for (int r = 0; r < f.model_dim; ++r) {
    f.range_basis.col(r) = eig.vectors.col(kept[std::size_t(r)]);
    lam_half(r, r) = std::sqrt(eig.values(kept[std::size_t(r)]));
    lam_inv_half(r, r) = 1.0 / lam_half(r, r).real();
  }
  f.to_model = lam_half * f.range_basis.adjoint();
  f.from_model = f.range_basis * lam_inv_half;

  // Transport the outer actions to the model.
  f.bimodule.dim = f.model_dim;
  f.bimodule.left_alg = h.left_alg;
  f.bimodule.right_alg = k.right_alg;
  const Mat eye_k = Mat::Identity(dk, dk);
  const Mat eye_d = Mat::Identity(dd, dd);
  for (const Mat& b : h.left_alg.span_basis) {
    const Mat moved = h.left_action(b);
    Mat coeff(dd, dd);
    for (int i = 0; i < dd; ++i)
      for (int j = 0; j < dd; ++j)
        coeff(i, j) = hs_inner(f.d_basis[std::size_t(i)], moved * f.d_basis[std::size_t(j)]);
    f.bimodule.left_images.push_back(f.to_model * kron_apply_columns(coeff, eye_k, f.from_model));
  }
  for (const Mat& b : k.right_alg.span_basis)
    f.bimodule.right_images.push_back(
        f.to_model * kron_apply_columns(eye_d, k.right_action(b), f.from_model));
  return f;
}

MixedPresentation mixed_presentation(const FusedSpace& f) {
  MixedPresentation mp;
  mp.dprime_basis = right_bounded_space(f.k, f.l2);
  const int dh = f.h.dim;
  const int dd = int(f.d_basis.size());
  const int ddp = int(mp.dprime_basis.size());
  const int n2 = dh * ddp;

  mp.gram = Mat::Zero(n2, n2);
  for (int ip = 0; ip < ddp; ++ip)
    for (int jp = 0; jp < ddp; ++jp) {
      const Mat p = p_phi_prime(f.l2, mp.dprime_basis[std::size_t(ip)].adjoint() *
                                          mp.dprime_basis[std::size_t(jp)]);
      const Mat r = f.h.right_action(p);
      for (int a = 0; a < dh; ++a)
        for (int b = 0; b < dh; ++b) mp.gram(a * ddp + ip, b * ddp + jp) = r(a, b);
    }
  mp.gram = (mp.gram + mp.gram.adjoint()) / 2.0;

  // Elements z_a of D(H, phi) with z_a(unit) = e_a; the evaluation map is a
  // bijection D(H, phi) -> H over a factor.
  Mat eval(dh, dd);
  for (int i = 0; i < dd; ++i) eval.col(i) = f.d_basis[std::size_t(i)] * f.l2.unit;
  if (std::abs(eval.determinant()) < 1e-300 || dd != dh)
    fail("AlgebraMismatch", "evaluation map of D(H, phi) is not invertible");
  const Mat zeta = eval.inverse();  // column a = coefficients of z_a

  // Cross pairings <x_i ⊗ e_j, z_a ⊗ x'_{i'}(unit)>.
  Mat dprime_units(f.k.dim, ddp);
  for (int ip = 0; ip < ddp; ++ip)
    dprime_units.col(ip) = mp.dprime_basis[std::size_t(ip)] * f.l2.unit;
  Mat cross = Mat::Zero(f.coeff_dim, n2);
  for (int i = 0; i < dd; ++i)
    for (int a = 0; a < dh; ++a) {
      Mat z = Mat::Zero(f.h.dim, f.l2.dim);
      for (int kcoef = 0; kcoef < dd; ++kcoef) z += zeta(kcoef, a) * f.d_basis[std::size_t(kcoef)];
      const Mat p = p_phi(f.l2, f.d_basis[std::size_t(i)].adjoint() * z);
      const Mat block = f.k.left_action(p) * dprime_units;  // dim K x ddp
      for (int j = 0; j < f.k.dim; ++j)
        for (int ip = 0; ip < ddp; ++ip) cross(f.flat(i, j), a * ddp + ip) = block(j, ip);
    }
  mp.to_model = f.from_model.adjoint() * cross;
  return mp;
}

namespace {

Mat fuse_maps_impl(const FusedSpace& src, const FusedSpace& dst, const Mat& nu_h,
                   const Mat& u_state, const Mat& nubar2, const Mat& nu_k) {
  const int dd_src = int(src.d_basis.size());
  const int dd_dst = int(dst.d_basis.size());
  Mat coeff(dd_dst, dd_src);
  for (int i = 0; i < dd_src; ++i) {
    const Mat moved = nu_h * src.d_basis[std::size_t(i)] * u_state.adjoint() * nubar2.adjoint();
    Mat residual = moved;
    for (int kd = 0; kd < dd_dst; ++kd) {
      const Cplx c = hs_inner(dst.d_basis[std::size_t(kd)], moved);
      coeff(kd, i) = c;
      residual -= c * dst.d_basis[std::size_t(kd)];
    }
    if (residual.norm() > 1e-6 * (1.0 + moved.norm()))
      fail("NotIntertwiner", "mapped intertwiner leaves D(H', phi')");
  }
  return dst.to_model * kron_apply_columns(coeff, nu_k, src.from_model);
}

}  // namespace

Mat fuse_maps(const FusedSpace& src, const FusedSpace& dst, const Mat& nu_h,
              const StarIso& nu2, const Mat& nu_k) {
  // psi = phi' ∘ nu2 on the source middle algebra.
  State psi = State::pulled_back(dst.l2.state, [&nu2](const Mat& a) { return nu2.apply(a); });
  GnsSpace l2_psi = gns(src.l2.algebra, psi);

  // State transport u: L^2_phi -> L^2_psi through standard-form uniqueness.
  StandardFormData sf_phi = gns_standard_form(src.l2);
  StandardFormData sf_psi = gns_standard_form(l2_psi);
  StarIso pi_id;
  pi_id.from_family = src.l2.left_span_images;
  pi_id.to_images = l2_psi.left_span_images;
  pi_id.finalize();
  const Mat u_state = connecting_unitary(sf_phi, sf_psi, pi_id);

  // nubar2: L^2_psi(A2) -> L^2_phi'(B2), hat(a) -> hat(nu2(a)).
  const int s = src.l2.dim;
  Mat v_psi(s, s), v_dst(dst.l2.dim, s);
  for (int i = 0; i < s; ++i) {
    const Mat& b = src.l2.algebra.span_basis[std::size_t(i)];
    v_psi.col(i) = l2_psi.vector_of(b);
    v_dst.col(i) = dst.l2.vector_of(nu2.apply(b));
  }
  const Mat nubar2 = v_dst * v_psi.inverse();
  return fuse_maps_impl(src, dst, nu_h, u_state, nubar2, nu_k);
}

Mat fuse_maps_simple(const FusedSpace& src, const FusedSpace& dst, const Mat& nu_h,
                     const Mat& nu_k) {
  const Mat eye = Mat::Identity(src.l2.dim, src.l2.dim);
  return fuse_maps_impl(src, dst, nu_h, eye, eye, nu_k);
}

Mat associator(const FusedSpace& hk, const FusedSpace& hk_l, const FusedSpace& kl,
               const FusedSpace& h_kl) {
  const int dd_h = int(h_kl.d_basis.size());
  const MixedPresentation outer = mixed_presentation(hk_l);
  const MixedPresentation inner = mixed_presentation(kl);
  const int ddp_l = int(outer.dprime_basis.size());
  if (int(inner.dprime_basis.size()) != ddp_l)
    fail("AlgebraMismatch", "associator needs matching D' spaces");

  // pinv of the surjection (model(hk) ⊗ D'(L)) -> model((hk)⊠L).
  const Mat m2 = outer.to_model;
  const Mat pinv_m2 = m2.adjoint() * (m2 * m2.adjoint()).inverse();

  // Unbracket coefficientwise: flattening (i, j, l') is associative, so the
  // two regroupings are Kronecker applications.
  const Mat stage1 = kron_apply_columns(hk.from_model, Mat::Identity(ddp_l, ddp_l), pinv_m2);
  const Mat stage2 = kron_apply_columns(Mat::Identity(dd_h, dd_h), inner.to_model, stage1);
  return h_kl.to_model * stage2;
}

Mat left_unitor(const FusedSpace& l2_k) {
  const int dd = int(l2_k.d_basis.size());
  const int dk = l2_k.k.dim;
  Mat coeff(dk, l2_k.coeff_dim);
  for (int i = 0; i < dd; ++i) {
    const Mat act = l2_k.k.left_action(p_phi(l2_k.l2, l2_k.d_basis[std::size_t(i)]));
    for (int j = 0; j < dk; ++j) coeff.col(l2_k.flat(i, j)) = act.col(j);
  }
  return coeff * l2_k.from_model;
}

Mat right_unitor(const FusedSpace& h_l2) {
  const int dd = int(h_l2.d_basis.size());
  const int dk = h_l2.k.dim;
  Mat coeff(h_l2.h.dim, h_l2.coeff_dim);
  for (int i = 0; i < dd; ++i)
    for (int j = 0; j < dk; ++j) coeff.col(h_l2.flat(i, j)) = h_l2.d_basis[std::size_t(i)].col(j);
  return coeff * h_l2.from_model;
}

Mat put_in_standard_form(const Bimodule& i, const Vec& xi, const GnsSpace& l2) {
  check_same_algebra(i.left_alg, l2.algebra, "put_in_standard_form");
  const int s = l2.dim;
  if (i.dim != s) fail("NotStandardForm", "module dimension does not match L^2");
  Mat acts(i.dim, s);
  for (int b = 0; b < s; ++b) acts.col(b) = i.left_images[std::size_t(b)] * xi;
  Svd sv = svd(acts);
  if (sv.sigma(sv.sigma.size() - 1) <= 1e-8 * sv.sigma(0))
    fail("NotStandardForm", "xi is not cyclic separating to tolerance");
  return l2.basis_vectors * acts.inverse();
}

Mat standard_left_unitor(const FusedSpace& i_k, const Mat& u) {
  const int dd = int(i_k.d_basis.size());
  const int dk = i_k.k.dim;
  Mat coeff(dk, i_k.coeff_dim);
  for (int i = 0; i < dd; ++i) {
    const Mat act = i_k.k.left_action(p_phi(i_k.l2, Mat(u * i_k.d_basis[std::size_t(i)])));
    for (int j = 0; j < dk; ++j) coeff.col(i_k.flat(i, j)) = act.col(j);
  }
  return coeff * i_k.from_model;
}

Mat standard_right_unitor(const FusedSpace& h_i, const Mat& u) {
  const int dd = int(h_i.d_basis.size());
  const int dk = h_i.k.dim;
  Mat coeff(h_i.h.dim, h_i.coeff_dim);
  for (int i = 0; i < dd; ++i) {
    const Mat moved = h_i.d_basis[std::size_t(i)] * u;
    for (int j = 0; j < dk; ++j) coeff.col(h_i.flat(i, j)) = moved.col(j);
  }
  return coeff * h_i.from_model;
}

}  // namespace fermifuse
