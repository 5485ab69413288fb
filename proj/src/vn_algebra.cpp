#include "fermifuse/vn_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace fermifuse {

namespace {

Vec vec_rm(const Mat& t) {
  Vec out(t.size());
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < t.rows(); ++r)
    for (Eigen::Index c = 0; c < t.cols(); ++c) out(k++) = t(r, c);
  return out;
}

Mat unvec_rm(const Vec& v, Eigen::Index m) {
  Mat out(m, m);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c) out(r, c) = v(k++);
  return out;
}

std::vector<Mat> orthonormalize_hs(const std::vector<Mat>& family, double drop_tol = 1e-10) {
  std::vector<Mat> out;
  for (const Mat& cand : family) {
    Mat v = cand;
    for (int pass = 0; pass < 2; ++pass)
      for (const Mat& b : out) v -= hs_inner(b, v) * b;
    const double nrm = v.norm();
    if (nrm > drop_tol) out.push_back(v / nrm);
  }
  return out;
}

Mat positive_power(const Mat& h, double exponent, double floor = 1e-14) {
  HermEig eig = hermitian_eig(h, 1e-6);
  const double top = std::max(eig.values(eig.values.size() - 1), 0.0);
  Mat d = Mat::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lam = std::max(eig.values(i), top * floor);
    d(i, i) = std::pow(lam, exponent);
  }
  return eig.vectors * d * eig.vectors.adjoint();
}

}  // namespace

Vec VNAlgebra::coefficients(const Mat& a) const {
  Vec c(dim_span());
  for (int i = 0; i < dim_span(); ++i) c(i) = hs_inner(span_basis[std::size_t(i)], a);
  return c;
}

Mat VNAlgebra::combine(const Vec& coeffs) const {
  Mat out = Mat::Zero(ambient_dim, ambient_dim);
  for (int i = 0; i < dim_span(); ++i) out += coeffs(i) * span_basis[std::size_t(i)];
  return out;
}

bool VNAlgebra::contains(const Mat& a, double tol) const {
  return (project(a) - a).norm() <= tol * (1.0 + a.norm());
}

VNAlgebra algebra_from_generators(int dim, const std::vector<Mat>& gens) {
  VNAlgebra alg;
  alg.ambient_dim = dim;
  alg.generators.push_back(Mat::Identity(dim, dim));
  for (const Mat& g : gens) {
    if (g.rows() != dim || g.cols() != dim)
      fail("DimensionMismatch", "generator has wrong ambient dimension");
    alg.generators.push_back(g);
    alg.generators.push_back(g.adjoint());
  }

  std::vector<Mat> basis = orthonormalize_hs(alg.generators);
  // Multiply-close the span until it stabilizes.
  for (;;) {
    std::vector<Mat> products;
    for (const Mat& a : basis)
      for (const Mat& b : basis) products.push_back(a * b);
    std::vector<Mat> grown = basis;
    for (const Mat& p : products) {
      Mat v = p;
      for (int pass = 0; pass < 2; ++pass)
        for (const Mat& e : grown) v -= hs_inner(e, v) * e;
      if (v.norm() > 1e-10) grown.push_back(v / v.norm());
    }
    if (grown.size() == basis.size()) break;
    basis = std::move(grown);
  }
  alg.span_basis = std::move(basis);
  return alg;
}

VNAlgebra algebra_from_span(int dim, const std::vector<Mat>& onb) {
  VNAlgebra alg;
  alg.ambient_dim = dim;
  alg.generators = onb;
  alg.span_basis = onb;
  return alg;
}

VNAlgebra full_matrix_algebra(int dim) {
  std::vector<Mat> onb;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      Mat e = Mat::Zero(dim, dim);
      e(r, c) = 1.0;
      onb.push_back(e);
    }
  return algebra_from_span(dim, onb);
}

VNAlgebra commutant(const VNAlgebra& alg) {
  const std::vector<Mat> space = intertwiner_space(alg.generators, alg.generators);
  VNAlgebra out;
  out.ambient_dim = alg.ambient_dim;
  out.generators = space;
  out.span_basis = space;
  return out;
}

VNAlgebra double_commutant(const VNAlgebra& alg) { return commutant(commutant(alg)); }

VNAlgebra center(const VNAlgebra& alg) {
  const VNAlgebra comm = commutant(alg);
  const int s1 = alg.dim_span();
  const int s2 = comm.dim_span();
  Mat overlap(s1, s2);
  for (int i = 0; i < s1; ++i)
    for (int j = 0; j < s2; ++j)
      overlap(i, j) = hs_inner(alg.span_basis[std::size_t(i)], comm.span_basis[std::size_t(j)]);
  Svd s = svd(overlap);
  std::vector<Mat> inter;
  for (Eigen::Index k = 0; k < s.sigma.size(); ++k) {
    if (s.sigma(k) < 1.0 - 1e-8) continue;
    Mat z = Mat::Zero(alg.ambient_dim, alg.ambient_dim);
    for (int j = 0; j < s2; ++j) z += s.v(j, k) * comm.span_basis[std::size_t(j)];
    inter.push_back(z);
  }
  VNAlgebra out;
  out.ambient_dim = alg.ambient_dim;
  out.generators = inter;
  out.span_basis = orthonormalize_hs(inter);
  return out;
}

bool is_factor(const VNAlgebra& alg) { return center(alg).dim_span() == 1; }

double span_distance(const VNAlgebra& a, const VNAlgebra& b) {
  // Frobenius distance of the two span projectors through residual norms;
  // the trace formula cancels at the sqrt(eps) floor, this stays at eps.
  const VNAlgebra& big = a.dim_span() >= b.dim_span() ? a : b;
  const VNAlgebra& small = a.dim_span() >= b.dim_span() ? b : a;
  double defect = 0.0;
  for (const Mat& v : small.span_basis) {
    Mat r = v;
    for (const Mat& e : big.span_basis) r -= hs_inner(e, v) * e;
    defect += r.squaredNorm();
  }
  return std::sqrt(double(big.dim_span() - small.dim_span()) + 2.0 * defect);
}

State State::from_vector(const Vec& xi) {
  Vec v = xi;
  return State{[v](const Mat& a) { return Cplx(v.dot(a * v)); }};
}

State State::from_density(const Mat& rho) {
  Mat d = rho;
  return State{[d](const Mat& a) { return Cplx((d * a).trace()); }};
}

State State::pulled_back(const State& phi, std::function<Mat(const Mat&)> pi) {
  auto inner = phi.value;
  return State{[inner, pi](const Mat& a) { return inner(pi(a)); }};
}

namespace {

TomitaData tomita_from_family(const std::vector<Mat>& family, const Vec& omega,
                              double margin, Eigen::Index ambient) {
  const Eigen::Index s = Eigen::Index(family.size());
  Mat v(ambient, s), w(ambient, s);
  for (Eigen::Index i = 0; i < s; ++i) {
    v.col(i) = family[std::size_t(i)] * omega;
    w.col(i) = family[std::size_t(i)].adjoint() * omega;
  }
  if (s > ambient) fail("NotSeparating", "algebra dimension exceeds the module dimension");
  if (s < ambient) fail("NotCyclic", "algebra is too small to act cyclically");
  Svd sv = svd(v);
  const double ratio = sv.sigma(sv.sigma.size() - 1) / sv.sigma(0);
  if (ratio <= margin)
    fail("NotCyclic", "cyclic/separating margin below threshold");
  // S (a omega) = a* omega, antilinear; total since the space is finite.
  // Writing S = (linear part) ∘ conj, the relation S = J Delta^{1/2} becomes
  // the matrix polar decomposition S_lin = J_lin * conj(Delta)^{1/2}; going
  // through the polar factorization keeps the error at cond(S) instead of
  // cond(Delta) = cond(S)^2.
  Mat s_lin = w * v.conjugate().inverse();
  Polar pol = polar(s_lin, 1e-14);
  TomitaData td;
  td.s = AntiUnitaryOp{s_lin};
  td.j = AntiUnitaryOp{pol.unitary};
  td.delta_half = pol.positive.conjugate();
  td.delta = td.delta_half * td.delta_half;
  td.delta = (td.delta + td.delta.adjoint()) / 2.0;
  td.cyclic_margin = ratio;
  return td;
}

}  // namespace

TomitaData tomita(const VNAlgebra& alg, const Vec& omega, double margin) {
  if (omega.size() != alg.ambient_dim) fail("DimensionMismatch", "omega must live in the module");
  return tomita_from_family(alg.span_basis, omega, margin, alg.ambient_dim);
}

GnsSpace gns(const VNAlgebra& alg, const State& phi) {
  const int s = alg.dim_span();
  Mat gram(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      gram(i, j) = phi.value(alg.span_basis[std::size_t(i)].adjoint() * alg.span_basis[std::size_t(j)]);
  gram = (gram + gram.adjoint()) / 2.0;
  HermEig eig = hermitian_eig(gram, 1e-6);
  const double top = eig.values(s - 1);
  if (top <= 0 || eig.values(0) <= tol::rank * top)
    fail("NotFaithful", "GNS Gram matrix is not positive definite to tolerance");

  GnsSpace out;
  out.algebra = alg;
  out.state = phi;
  out.dim = s;
  Mat sqrt_vals = Mat::Zero(s, s), inv_sqrt = Mat::Zero(s, s);
  for (int i = 0; i < s; ++i) {
    sqrt_vals(i, i) = std::sqrt(eig.values(i));
    inv_sqrt(i, i) = 1.0 / std::sqrt(eig.values(i));
  }
  out.basis_vectors = sqrt_vals * eig.vectors.adjoint();
  out.basis_vectors_inv = eig.vectors * inv_sqrt;

  // Multiplication matrices in algebra coefficients, conjugated to GNS coords.
  for (int i = 0; i < s; ++i) {
    Mat mult(s, s);
    for (int j = 0; j < s; ++j)
      mult.col(j) = alg.coefficients(alg.span_basis[std::size_t(i)] * alg.span_basis[std::size_t(j)]);
    out.left_span_images.push_back(out.basis_vectors * mult * out.basis_vectors_inv);
  }
  out.unit = out.basis_vectors * alg.coefficients(Mat::Identity(alg.ambient_dim, alg.ambient_dim));
  out.modular = tomita_from_family(out.left_span_images, out.unit, 1e-10, s);
  for (int i = 0; i < s; ++i)
    out.right_span_images.push_back(out.modular.j.sandwich(out.left_span_images[std::size_t(i)].adjoint()));
  return out;
}

Vec GnsSpace::vector_of(const Mat& a) const { return basis_vectors * algebra.coefficients(a); }

Mat GnsSpace::element_of(const Vec& v) const { return algebra.combine(basis_vectors_inv * v); }

Mat GnsSpace::left_action(const Mat& a) const {
  const Vec c = algebra.coefficients(a);
  Mat out = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) out += c(i) * left_span_images[std::size_t(i)];
  return out;
}

Mat GnsSpace::right_action(const Mat& a) const {
  const Vec c = algebra.coefficients(a);
  Mat out = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) out += c(i) * right_span_images[std::size_t(i)];
  return out;
}

MatrixUnits matrix_units_of_factor(const VNAlgebra& alg, std::uint64_t seed) {
  const int span = alg.dim_span();
  const int m = int(std::lround(std::sqrt(double(span))));
  if (m * m != span) fail("NotFactor", "span dimension is not a perfect square");
  const int d = alg.ambient_dim;
  if (d % m != 0) fail("NotFactor", "ambient dimension incompatible with factor type");
  const int mult = d / m;

  for (std::uint64_t attempt = 0; attempt < 24; ++attempt) {
    Rng rng(seed * 1000003 + attempt);
    // Generic Hermitian element of the algebra.
    Mat h = Mat::Zero(d, d);
    for (int i = 0; i < span; ++i) {
      const Cplx c(rng.gaussian(), rng.gaussian());
      h += c * alg.span_basis[std::size_t(i)] + std::conj(c) * alg.span_basis[std::size_t(i)].adjoint();
    }
    HermEig eig = hermitian_eig(h, 1e-6);
    const double spread = eig.values(d - 1) - eig.values(0) + 1e-30;

    // Cluster eigenvalues; a generic element has m clusters of size d/m.
    std::vector<std::pair<int, int>> clusters;
    int start = 0;
    for (int i = 1; i <= d; ++i) {
      if (i == d || eig.values(i) - eig.values(i - 1) > 1e-6 * spread) {
        clusters.emplace_back(start, i);
        start = i;
      }
    }
    if (int(clusters.size()) != m) continue;
    bool sizes_ok = true;
    std::vector<Mat> proj;
    for (auto [a, b] : clusters) {
      if (b - a != mult) {
        sizes_ok = false;
        break;
      }
      Mat p = Mat::Zero(d, d);
      for (int i = a; i < b; ++i) p += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
      proj.push_back(p);
    }
    if (!sizes_ok) continue;
    bool member_ok = true;
    for (const Mat& p : proj)
      if (!alg.contains(p, 1e-7)) {
        member_ok = false;
        break;
      }
    if (!member_ok) continue;

    // Partial isometries from P_k to P_1 through a generic algebra element.
    Mat y = Mat::Zero(d, d);
    for (int i = 0; i < span; ++i)
      y += Cplx(rng.gaussian(), rng.gaussian()) * alg.span_basis[std::size_t(i)];
    std::vector<Mat> v;
    v.resize(std::size_t(m));
    v[0] = proj[0];
    bool rank_ok = true;
    for (int k = 1; k < m; ++k) {
      const Mat x = proj[0] * y * proj[std::size_t(k)];
      Mat gram = x.adjoint() * x + (Mat::Identity(d, d) - proj[std::size_t(k)]);
      gram = (gram + gram.adjoint()) / 2.0;
      HermEig ge = hermitian_eig(gram, 1e-6);
      if (ge.values(0) <= 1e-10 * std::max(ge.values(d - 1), 1.0)) {
        rank_ok = false;
        break;
      }
      v[std::size_t(k)] = x * positive_power(gram, -0.5);
    }
    if (!rank_ok) continue;

    MatrixUnits units;
    units.m = m;
    units.e.resize(std::size_t(m * m));
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) units.e[std::size_t(k * m + l)] = v[std::size_t(k)].adjoint() * v[std::size_t(l)];

    // Validate the relations and membership.
    double defect = 0.0;
    Mat sum = Mat::Zero(d, d);
    for (int k = 0; k < m; ++k) sum += units.unit(k, k);
    defect = std::max(defect, (sum - Mat::Identity(d, d)).norm());
    for (int k = 0; k < m && defect < 1e-7; ++k)
      for (int l = 0; l < m && defect < 1e-7; ++l) {
        defect = std::max(defect, (units.unit(k, l).adjoint() - units.unit(l, k)).norm());
        defect = std::max(defect, (units.unit(k, l) * units.unit(l, k) - units.unit(k, k)).norm());
        if (!alg.contains(units.unit(k, l), 1e-7)) defect = 1.0;
      }
    if (defect < 1e-7) return units;
  }
  fail("NotFactor", "matrix unit extraction failed; algebra may not be a factor");
}

HsModel hs_model(const VNAlgebra& alg, const Vec& omega, std::uint64_t seed) {
  const int span = alg.dim_span();
  MatrixUnits units = matrix_units_of_factor(alg, seed);
  const int m = units.m;
  if (alg.ambient_dim != m * m)
    fail("NotFactor", "hs_model needs a cyclic separating vector (ambient = m^2)");
  const int mult = alg.ambient_dim / m;

  HsModel hs;
  hs.m = m;
  hs.units = units;
  hs.rho = Mat(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) hs.rho(l, k) = omega.dot(units.unit(k, l) * omega);
  hs.rho = (hs.rho + hs.rho.adjoint()) / 2.0;
  hs.rho_half = positive_power(hs.rho, 0.5);

  // w (b omega) = vec_rm(mat(b) rho^{1/2}).
  Mat v(alg.ambient_dim, span), images(m * m, span);
  for (int i = 0; i < span; ++i) {
    const Mat& b = alg.span_basis[std::size_t(i)];
    v.col(i) = b * omega;
    Mat mat_b(m, m);
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l)
        mat_b(k, l) = hs_inner(units.unit(k, l), b) / double(mult);
    images.col(i) = vec_rm(mat_b * hs.rho_half);
  }
  hs.w = images * v.inverse();
  if (!is_unitary(hs.w, 1e-7))
    fail("NotFactor", "hs model map failed to be unitary; vector not cyclic separating?");
  return hs;
}

Mat HsModel::matrix_of(const Vec& v) const { return unvec_rm(w * v, m); }

double HsModel::psd_defect(const Vec& v) const {
  const Mat t = matrix_of(v);
  const double anti = (t - t.adjoint()).norm() / 2.0;
  HermEig eig = hermitian_eig((t + t.adjoint()) / 2.0, 1e-3);
  return eig.values(0) - anti;
}

ConeData natural_cone(const VNAlgebra& alg, const Vec& omega, const TomitaData& td,
                      const HsModel& hs, int extra_samples, std::uint64_t seed) {
  ConeData cone;
  std::vector<Mat> elements = alg.span_basis;
  Rng rng(seed);
  for (int k = 0; k < extra_samples; ++k) {
    Mat a = Mat::Zero(alg.ambient_dim, alg.ambient_dim);
    for (int i = 0; i < alg.dim_span(); ++i)
      a += Cplx(rng.gaussian(), rng.gaussian()) * alg.span_basis[std::size_t(i)];
    Mat b = Mat::Zero(alg.ambient_dim, alg.ambient_dim);
    for (int i = 0; i < alg.dim_span(); ++i)
      b += Cplx(rng.gaussian(), rng.gaussian()) * alg.span_basis[std::size_t(i)];
    elements.push_back(a * b);  // random words
  }
  cone.j_fix_residual = 0.0;
  cone.psd_floor = 0.0;
  for (const Mat& a : elements) {
    Vec sample = td.j.sandwich(a) * (a * omega);
    const double nrm = sample.norm();
    if (nrm < 1e-14) continue;
    sample /= nrm;
    cone.samples.push_back(sample);
    cone.j_fix_residual = std::max(cone.j_fix_residual, (td.j.apply(sample) - sample).norm());
    cone.psd_floor = std::min(cone.psd_floor, hs.psd_defect(sample));
  }
  return cone;
}

StandardFormData standard_form(const VNAlgebra& alg, const Vec& omega, std::uint64_t seed) {
  StandardFormData sf;
  sf.algebra = alg;
  sf.omega = omega;
  sf.modular = tomita(alg, omega);
  sf.hs = hs_model(alg, omega, seed);
  sf.cone = natural_cone(alg, omega, sf.modular, sf.hs, 8, seed + 1);
  return sf;
}

StandardFormCheck verify_standard_form(const StandardFormData& sf) {
  StandardFormCheck chk{};
  chk.j_involution = sf.modular.j.involution_defect();
  chk.cyclic_margin = sf.modular.cyclic_margin;

  std::vector<Mat> conjugated;
  for (const Mat& b : sf.algebra.span_basis) conjugated.push_back(sf.modular.j.sandwich(b));
  VNAlgebra jaj = algebra_from_span(sf.algebra.ambient_dim, orthonormalize_hs(conjugated));
  chk.jaj_commutant = span_distance(jaj, commutant(sf.algebra));

  chk.center_conj = 0.0;
  for (const Mat& z : center(sf.algebra).span_basis)
    chk.center_conj = std::max(chk.center_conj,
                               (sf.modular.j.sandwich(z) - z.adjoint()).norm());

  chk.cone_fixed = sf.cone.j_fix_residual;
  chk.cone_psd_floor = sf.cone.psd_floor;
  // Axiom 4: a J a J maps the cone into itself.
  Rng rng(7);
  std::vector<Mat> movers;
  for (int k = 0; k < 4; ++k) {
    Mat a = Mat::Zero(sf.algebra.ambient_dim, sf.algebra.ambient_dim);
    for (int i = 0; i < sf.algebra.dim_span(); ++i)
      a += Cplx(rng.gaussian(), rng.gaussian()) * sf.algebra.span_basis[std::size_t(i)];
    movers.push_back(a);
  }
  for (const Mat& a : movers) {
    const Mat mover = a * sf.modular.j.sandwich(a);
    for (const Vec& s : sf.cone.samples) {
      Vec moved = mover * s;
      const double nrm = moved.norm();
      if (nrm < 1e-14) continue;
      chk.cone_psd_floor = std::min(chk.cone_psd_floor, sf.hs.psd_defect(moved / nrm));
    }
  }
  return chk;
}

Mat StarIso::apply(const Mat& a) const {
  if (from_family.empty()) fail("NotIsomorphism", "empty StarIso");
  const Eigen::Index s = Eigen::Index(from_family.size());
  const Vec rhs = vectorize(a);
  const Vec coeffs = pinv_stack * rhs;
  if ((stack * coeffs - rhs).norm() > 1e-7 * (1.0 + rhs.norm()))
    fail("NotIsomorphism", "element is not in the source algebra");
  Mat out = Mat::Zero(to_images.front().rows(), to_images.front().cols());
  for (Eigen::Index i = 0; i < s; ++i) out += coeffs(i) * to_images[std::size_t(i)];
  return out;
}

void StarIso::finalize() {
  const Eigen::Index s = Eigen::Index(from_family.size());
  const Eigen::Index n2 = from_family.front().size();
  stack = Mat(n2, s);
  for (Eigen::Index i = 0; i < s; ++i) stack.col(i) = vectorize(from_family[std::size_t(i)]);
  pinv_stack = (stack.adjoint() * stack).inverse() * stack.adjoint();
}

StarIso StarIso::identity(const VNAlgebra& alg) {
  StarIso iso;
  iso.from = &alg;
  iso.to = &alg;
  iso.from_family = alg.span_basis;
  iso.to_images = alg.span_basis;
  iso.finalize();
  return iso;
}

StarIso StarIso::conjugation(const VNAlgebra& from, const VNAlgebra& to, const Mat& u) {
  StarIso iso;
  iso.from = &from;
  iso.to = &to;
  iso.from_family = from.span_basis;
  for (const Mat& b : from.span_basis) iso.to_images.push_back(u * b * u.adjoint());
  iso.finalize();
  return iso;
}

Mat connecting_unitary(const StandardFormData& sf1, const StandardFormData& sf2,
                       const StarIso& pi) {
  // Verify pi is a *-isomorphism on the span basis.
  const auto& basis = sf1.algebra.span_basis;
  std::vector<Mat> images;
  for (const Mat& b : basis) images.push_back(pi.apply(b));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if ((pi.apply(basis[i].adjoint()) - images[i].adjoint()).norm() > 1e-6)
      fail("NotIsomorphism", "pi does not preserve adjoints");
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Mat prod = pi.apply(basis[i] * basis[j]);
      if ((prod - images[i] * images[j]).norm() > 1e-6 * (1.0 + prod.norm()))
        fail("NotIsomorphism", "pi is not multiplicative");
    }
  }

  const int m = sf1.hs.m;
  if (m != sf2.hs.m) fail("NotIsomorphism", "factors have different type");
  const int mult2 = sf2.algebra.ambient_dim / m;

  // Matrices of pi(e1_kl) in the units gauge of sf2; they form a matrix-unit
  // system of M_m, hence equal s E_kl s* for a unitary s (unique up to phase,
  // which cancels in the conjugation below).
  std::vector<Mat> big(std::size_t(m * m));
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      const Mat img = pi.apply(sf1.hs.units.unit(k, l));
      Mat mat_img(m, m);
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
          mat_img(p, q) = hs_inner(sf2.hs.units.unit(p, q), img) / double(mult2);
      big[std::size_t(k * m + l)] = mat_img;
    }
  const Mat& m11 = big[0];
  HermEig eig = hermitian_eig((m11 + m11.adjoint()) / 2.0, 1e-5);
  Vec u1 = eig.vectors.col(m - 1);  // top eigenvector of a rank-1 projection
  Mat s(m, m);
  s.col(0) = m11 * u1;
  s.col(0) /= s.col(0).norm();
  for (int k = 1; k < m; ++k) s.col(k) = big[std::size_t(k * m)] * s.col(0);
  if (!is_unitary(s, 1e-6)) fail("NotIsomorphism", "matrix-unit change of basis not unitary");

  const Mat u = sf2.hs.w.adjoint() * kron(s, s.conjugate()) * sf1.hs.w;
  // The three Haagerup properties pin u uniquely; check them.
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if ((u * basis[i] * u.adjoint() - images[i]).norm() > 1e-6 * (1.0 + images[i].norm()))
      fail("NotIsomorphism", "connecting unitary fails to implement pi");
  }
  const Mat j_moved = u * sf1.modular.j.linear_part * u.transpose();
  if ((j_moved - sf2.modular.j.linear_part).norm() > 1e-6)
    fail("NotIsomorphism", "connecting unitary fails to transport J");
  for (const Vec& sample : sf1.cone.samples) {
    if (sf2.hs.psd_defect(u * sample) < -1e-6)
      fail("NotIsomorphism", "connecting unitary fails to transport the natural cone");
  }
  return u;
}

}  // namespace fermifuse
