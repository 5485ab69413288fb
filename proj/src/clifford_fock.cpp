#include "fermifuse/clifford_fock.hpp"

#include "fermifuse/vn_algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace fermifuse {

namespace {

std::vector<int> mask_indices(std::uint32_t mask) {
  std::vector<int> out;
  for (int j = 0; mask >> j; ++j)
    if ((mask >> j) & 1u) out.push_back(j);
  return out;
}

/// c(phi_k) in the subset basis, entries exactly 0 / ±1.
Mat create_mode(const FockSpace& fock, int k) {
  Mat m = Mat::Zero(fock.dim, fock.dim);
  const std::uint32_t bit = 1u << k;
  for (int s = 0; s < fock.dim; ++s) {
    const std::uint32_t mask = fock.basis_masks[std::size_t(s)];
    if (mask & bit) continue;
    const int sign = std::popcount(mask & (bit - 1)) % 2 == 0 ? 1 : -1;
    const int t = fock.mask_to_index[std::size_t(mask | bit)];
    m(t, s) = double(sign);
  }
  return m;
}

Vec project_to(const Mat& projector, const Vec& f) { return projector * f; }

}  // namespace

FockSpace make_fock(const FermionModel& model) {
  FockSpace fock;
  fock.model = model;
  const int n = model.n_modes;
  fock.dim = 1 << n;

  fock.basis_masks.resize(std::size_t(fock.dim));
  for (int m = 0; m < fock.dim; ++m) fock.basis_masks[std::size_t(m)] = std::uint32_t(m);
  std::sort(fock.basis_masks.begin(), fock.basis_masks.end(),
            [](std::uint32_t a, std::uint32_t b) {
              const int pa = std::popcount(a), pb = std::popcount(b);
              if (pa != pb) return pa < pb;
              return mask_indices(a) < mask_indices(b);
            });
  fock.mask_to_index.assign(std::size_t(fock.dim), -1);
  fock.parity.resize(std::size_t(fock.dim));
  for (int i = 0; i < fock.dim; ++i) {
    fock.mask_to_index[std::size_t(fock.basis_masks[std::size_t(i)])] = i;
    fock.parity[std::size_t(i)] = std::popcount(fock.basis_masks[std::size_t(i)]) % 2;
  }

  fock.gammas.reserve(std::size_t(2 * n));
  for (int j = 0; j < 2 * n; ++j) {
    Vec chi = Vec::Zero(2 * n);
    chi(j) = 1.0;
    // Inline rho to avoid depending on the cached gammas being present.
    const Vec v = project_to(model.lagrangian_projector, chi);
    const Vec w = chi - v;
    Mat c = Mat::Zero(fock.dim, fock.dim);
    const Vec cv = model.lagrangian_coefficients(v);
    for (int k = 0; k < n; ++k)
      if (std::abs(cv(k)) > 0) c += cv(k) * create_mode(fock, k);
    Mat a = Mat::Zero(fock.dim, fock.dim);
    const Vec aw = model.lagrangian_coefficients(model.alpha.apply(w));
    for (int k = 0; k < n; ++k)
      if (std::abs(aw(k)) > 0) a += std::conj(aw(k)) * create_mode(fock, k).adjoint();
    fock.gammas.push_back(std::sqrt(2.0) * (c + a));
  }
  return fock;
}

Mat create(const FockSpace& fock, const Vec& v, double tol) {
  const FermionModel& m = fock.model;
  if (v.size() != m.dim_v()) fail("DimensionMismatch", "vector must live in V");
  if ((v - m.lagrangian_projector * v).norm() > tol * (1.0 + v.norm()))
    fail("NotInLagrangian", "create needs a vector in range(P_L)");
  Mat out = Mat::Zero(fock.dim, fock.dim);
  const Vec c = m.lagrangian_coefficients(v);
  for (int k = 0; k < m.n_modes; ++k) out += c(k) * create_mode(fock, k);
  return out;
}

Mat annihilate(const FockSpace& fock, const Vec& w, double tol) {
  const FermionModel& m = fock.model;
  if (w.size() != m.dim_v()) fail("DimensionMismatch", "vector must live in V");
  if ((m.lagrangian_projector * w).norm() > tol * (1.0 + w.norm()))
    fail("NotInDual", "annihilate needs a vector in range(1 - P_L)");
  return create(fock, m.alpha.apply(w), tol).adjoint();
}

ClElement rho(const FockSpace& fock, const Vec& f) {
  const FermionModel& m = fock.model;
  if (f.size() != m.dim_v()) fail("DimensionMismatch", "vector must live in V");
  Mat op = Mat::Zero(fock.dim, fock.dim);
  for (int j = 0; j < m.dim_v(); ++j)
    if (std::abs(f(j)) > 0) op += f(j) * fock.gamma(j);
  ClElement out{op, std::vector<CliffordWord>{CliffordWord{Cplx{1.0, 0.0}, {f}}}};
  return out;
}

Mat word_op(const FockSpace& fock, const CliffordWord& word) {
  Mat out = word.coeff * Mat::Identity(fock.dim, fock.dim);
  for (const Vec& f : word.factors) out = out * rho(fock, f).op;
  return out;
}

Mat words_op(const FockSpace& fock, const std::vector<CliffordWord>& words) {
  Mat out = Mat::Zero(fock.dim, fock.dim);
  for (const CliffordWord& w : words) out += word_op(fock, w);
  return out;
}

Mat klein(const FockSpace& fock) {
  Mat k = Mat::Zero(fock.dim, fock.dim);
  for (int i = 0; i < fock.dim; ++i) k(i, i) = fock.parity[std::size_t(i)] ? kI : Cplx{1.0, 0.0};
  return k;
}

Mat grading(const FockSpace& fock) {
  Mat g = Mat::Zero(fock.dim, fock.dim);
  for (int i = 0; i < fock.dim; ++i) g(i, i) = fock.parity[std::size_t(i)] ? -1.0 : 1.0;
  return g;
}

AntiUnitaryOp lambda_alpha_tau(const FockSpace& fock) {
  const FermionModel& m = fock.model;
  // alpha tau preserves L; second-quantize it factorwise on basis wedges.
  AntiUnitaryOp alpha_tau = m.alpha.after_linear(m.tau);
  std::vector<Mat> images;  // c(alpha tau phi_k)
  for (int k = 0; k < m.n_modes; ++k) {
    Vec img = alpha_tau.apply(m.mode(k));
    images.push_back(create(fock, img, 1e-8));
  }
  Mat lin(fock.dim, fock.dim);
  for (int s = 0; s < fock.dim; ++s) {
    Vec col = fock.vacuum();
    const auto idx = mask_indices(fock.basis_masks[std::size_t(s)]);
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) col = images[std::size_t(*it)] * col;
    lin.col(s) = col;
  }
  return AntiUnitaryOp{lin};
}

AntiUnitaryOp modular_j(const FockSpace& fock) {
  return lambda_alpha_tau(fock).then_linear(klein(fock).inverse());
}

std::vector<Mat> half_monomial_basis(const FockSpace& fock, Side side) {
  const int n = fock.n();
  const int offset = side == Side::minus ? 0 : n;
  const double scale = 1.0 / std::sqrt(double(fock.dim));
  std::vector<Mat> basis;
  basis.reserve(std::size_t(1) << n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Mat m = Mat::Identity(fock.dim, fock.dim);
    for (int j = 0; j < n; ++j)
      if ((mask >> j) & 1u) m = m * fock.gamma(offset + j);
    basis.push_back(scale * m);
  }
  return basis;
}

Mat minus_volume(const FockSpace& fock) {
  Mat vol = Mat::Identity(fock.dim, fock.dim);
  for (int j = 0; j < fock.n(); ++j) vol = vol * fock.gamma(j);
  if ((vol * vol - Mat::Identity(fock.dim, fock.dim)).norm() > 1e-8) vol = kI * vol;
  return vol;
}

Mat right_action(const FockSpace& fock, const ClElement& a, double tol) {
  // Membership in Cl(V_-)'' via projection onto the monomial basis.
  const std::vector<Mat> basis = half_monomial_basis(fock, Side::minus);
  Mat proj = Mat::Zero(fock.dim, fock.dim);
  for (const Mat& b : basis) proj += hs_inner(b, a.op) * b;
  if ((proj - a.op).norm() > tol * (1.0 + a.op.norm()))
    fail("NotInMinusAlgebra", "right action is only defined for Cl(V_-) elements");
  AntiUnitaryOp j = modular_j(fock);
  return j.sandwich(a.op.adjoint());
}

Mat fock_factorization(const FockSpace& fock, std::uint64_t seed) {
  const VNAlgebra minus =
      algebra_from_span(fock.dim, half_monomial_basis(fock, Side::minus));
  // The commutant is the even part of Cl(V_+) plus the volume-twisted odd part.
  const Mat vol = minus_volume(fock);
  std::vector<Mat> comm_basis;
  for (std::uint32_t mask = 0; mask < (1u << fock.n()); ++mask) {
    Mat m = Mat::Identity(fock.dim, fock.dim);
    for (int j = 0; j < fock.n(); ++j)
      if ((mask >> j) & 1u) m = m * fock.gamma(fock.n() + j);
    if (std::popcount(mask) % 2 == 1) m = vol * m;
    comm_basis.push_back(m / std::sqrt(double(fock.dim)));
  }
  const VNAlgebra comm = algebra_from_span(fock.dim, comm_basis);

  const MatrixUnits eu = matrix_units_of_factor(minus, seed);
  const MatrixUnits fu = matrix_units_of_factor(comm, seed);
  const int m = eu.m;
  if (fu.m != m || m * m != fock.dim)
    fail("NotFactor", "half algebras do not factorize the Fock space");

  // Unit vector spanning the rank-one range of e_11 f_11, then the grid
  // w_{kp} = e_{k1} f_{p1} v gives an orthonormal basis.
  const Mat p11 = eu.unit(0, 0) * fu.unit(0, 0);
  HermEig eig = hermitian_eig((p11 + p11.adjoint()) / 2.0, 1e-6);
  const Vec v = eig.vectors.col(fock.dim - 1);
  Mat w(fock.dim, fock.dim);
  for (int k = 0; k < m; ++k)
    for (int p = 0; p < m; ++p)
      w.row(k * m + p) = (eu.unit(k, 0) * (fu.unit(p, 0) * v)).adjoint();
  if (!is_unitary(w, 1e-8)) fail("NotFactor", "factorization basis is not orthonormal");
  return w;
}

ClElement bogoliubov_words(const FockSpace& fock, const OrthogonalElement& g,
                           const ClElement& a) {
  if (!is_orthogonal(fock.model, g.g)) fail("NotOrthogonal", "bogoliubov needs g in O(V)");
  if (!a.words) fail("NotInMinusAlgebra", "word provenance required for the generator route");
  std::vector<CliffordWord> out;
  for (const CliffordWord& w : *a.words) {
    CliffordWord moved{w.coeff, {}};
    moved.factors.reserve(w.factors.size());
    for (const Vec& f : w.factors) moved.factors.push_back(g.g * f);
    out.push_back(std::move(moved));
  }
  return ClElement{words_op(fock, out), out};
}

ClElement iota(const FockSpace& fock, const HalfCliffordElement& a) {
  const Mat& p = a.side == Side::minus ? fock.model.minus_projector : fock.model.plus_projector;
  std::vector<CliffordWord> words;
  for (const CliffordWord& w : a.words) {
    CliffordWord embedded{w.coeff, {}};
    for (const Vec& f : w.factors) embedded.factors.push_back(p * f);
    words.push_back(std::move(embedded));
  }
  return ClElement{words_op(fock, words), words};
}

HalfFock make_half_fock(const FermionModel& model, Side side) {
  const int n = model.n_modes;
  HalfFock half;
  half.side = side;
  half.dim = 1 << (n / 2);
  const int offset = side == Side::minus ? 0 : n;
  for (int j = 0; j < n; ++j) half.coords.push_back(offset + j);

  // Pair up the side coordinates (2k, 2k+1) into N/2 fermion modes and build
  // gamma(chi_{2k}) = c_k + c_k^*, gamma(chi_{2k+1}) = -i (c_k - c_k^*).
  const int modes = n / 2;
  std::vector<Mat> create_ops;
  for (int k = 0; k < modes; ++k) {
    Mat c = Mat::Zero(half.dim, half.dim);
    for (std::uint32_t mask = 0; mask < std::uint32_t(half.dim); ++mask) {
      if ((mask >> k) & 1u) continue;
      const int sign = std::popcount(mask & ((1u << k) - 1)) % 2 == 0 ? 1 : -1;
      c(mask | (1u << k), mask) = double(sign);
    }
    create_ops.push_back(c);
  }
  for (int k = 0; k < modes; ++k) {
    half.gammas.push_back(create_ops[std::size_t(k)] + create_ops[std::size_t(k)].adjoint());
    half.gammas.push_back(-kI * (create_ops[std::size_t(k)] - create_ops[std::size_t(k)].adjoint()));
  }
  return half;
}

Mat half_op(const HalfFock& half, const std::vector<CliffordWord>& words) {
  Mat out = Mat::Zero(half.dim, half.dim);
  for (const CliffordWord& w : words) {
    Mat term = w.coeff * Mat::Identity(half.dim, half.dim);
    for (const Vec& f : w.factors) {
      Mat gen = Mat::Zero(half.dim, half.dim);
      for (std::size_t j = 0; j < half.coords.size(); ++j)
        gen += f(half.coords[j]) * half.gammas[j];
      term = term * gen;
    }
    out += term;
  }
  return out;
}

}  // namespace fermifuse
