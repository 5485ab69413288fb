#include "fermifuse/implementers.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace fermifuse {

namespace {

constexpr double kPhaseScanTol = 1e-6;

Mat fix_phase(const Mat& u) {
  Cplx z = u(0, 0);  // vacuum overlap: vacuum is the first basis vector
  if (std::abs(z) <= kPhaseScanTol) {
    bool found = false;
    for (Eigen::Index r = 0; r < u.rows() && !found; ++r)
      for (Eigen::Index c = 0; c < u.cols() && !found; ++c)
        if (std::abs(u(r, c)) > kPhaseScanTol) {
          z = u(r, c);
          found = true;
        }
    if (!found) fail("NonUnique", "candidate implementer is numerically zero");
  }
  return (std::conj(z) / std::abs(z)) * u;
}

/// cos(t/2) I + sin(t/2) gamma_a gamma_b implements the rotation
/// chi_a -> cos t chi_a - sin t chi_b, chi_b -> sin t chi_a + cos t chi_b.
Mat rotation_implementer(const FockSpace& fock, int a, int b, double t) {
  return std::cos(t / 2) * Mat::Identity(fock.dim, fock.dim) +
         std::sin(t / 2) * (fock.gamma(a) * fock.gamma(b));
}

struct PlaneRotation {
  int a;
  int b;
  double t;  // angle in the convention of rotation_implementer
};

/// Factor a real orthogonal q as a product of plane rotations, a possible
/// single-coordinate reflection (det = -1), applied left to right.
struct GivensFactorization {
  std::vector<PlaneRotation> rotations;
  int reflection_coord = -1;  // -1 when det(q) = +1
};

GivensFactorization factor_orthogonal(const RealMat& q) {
  const Eigen::Index n = q.rows();
  RealMat m = q;
  GivensFactorization out;
  std::vector<PlaneRotation> elim;  // G_k applied to m, in order
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double x = m(j, j);
      const double y = m(i, j);
      if (std::abs(y) < 1e-15) continue;
      const double r = std::hypot(x, y);
      const double c = x / r, s = y / r;
      // Row rotation in coordinates (j, i) sending (x, y) -> (r, 0).
      for (Eigen::Index col = 0; col < n; ++col) {
        const double mj = m(j, col), mi = m(i, col);
        m(j, col) = c * mj + s * mi;
        m(i, col) = -s * mj + c * mi;
      }
      // The applied row operation is rot(j, i, t_G) with entries
      // (j,j)=c, (j,i)=s, (i,j)=-s, (i,i)=c, matching
      // rotation_implementer's convention for angle t_G = atan2(s, c).
      elim.push_back(PlaneRotation{int(j), int(i), std::atan2(s, c)});
    }
  }
  // m is now diagonal with entries ±1, and q = G_1^T G_2^T ... G_K^T m with
  // the transposes taken in elimination order.
  std::vector<int> flips;
  for (Eigen::Index j = 0; j < n; ++j)
    if (m(j, j) < 0) flips.push_back(int(j));
  for (const PlaneRotation& g : elim)
    out.rotations.push_back(PlaneRotation{g.a, g.b, -g.t});
  // Pairs of -1 entries are rotations by pi; a leftover one is a reflection.
  std::size_t k = 0;
  for (; k + 1 < flips.size(); k += 2)
    out.rotations.push_back(PlaneRotation{flips[k], flips[k + 1], std::numbers::pi});
  if (k < flips.size()) out.reflection_coord = flips[k];
  return out;
}

}  // namespace

double implementation_residual(const FockSpace& fock, const Mat& u, const Mat& g) {
  double worst = 0.0;
  for (int j = 0; j < fock.model.dim_v(); ++j) {
    Vec chi = Vec::Zero(fock.model.dim_v());
    chi(j) = 1.0;
    const Mat lhs = u * fock.gamma(j) * u.adjoint();
    const Mat rhs = rho(fock, Vec(g * chi)).op;
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

ImplementedElement implemented_element(const FockSpace& fock, const Mat& u) {
  const int dv = fock.model.dim_v();
  Mat g(dv, dv);
  double worst = 0.0;
  for (int j = 0; j < dv; ++j) {
    const Mat t = u * fock.gamma(j) * u.adjoint();
    Vec f(dv);
    for (int i = 0; i < dv; ++i) f(i) = hs_inner(fock.gamma(i), t) / double(fock.dim);
    g.col(j) = f;
    worst = std::max(worst, (rho(fock, f).op - t).norm());
  }
  return ImplementedElement{g, worst};
}

Implementer implement(const FockSpace& fock, const OrthogonalElement& g) {
  if (!is_orthogonal(fock.model, g.g)) fail("NotOrthogonal", "implement needs g in O(V)");
  const GivensFactorization fac = factor_orthogonal(g.g.real());
  Mat u = Mat::Identity(fock.dim, fock.dim);
  for (const PlaneRotation& r : fac.rotations)
    u = u * rotation_implementer(fock, r.a, r.b, r.t);
  if (fac.reflection_coord >= 0) u = u * (grading(fock) * fock.gamma(fac.reflection_coord));
  u = fix_phase(u);
  if (implementation_residual(fock, u, g.g) > 1e-8)
    fail("NonUnique", "implementation equation residual unexpectedly large");
  return Implementer{u, g, parity_of(fock, u)};
}

Implementer implement_via_schur(const FockSpace& fock, const OrthogonalElement& g) {
  if (!is_orthogonal(fock.model, g.g)) fail("NotOrthogonal", "implement needs g in O(V)");
  const int dv = fock.model.dim_v();
  std::vector<Mat> rep_moved, rep_plain;
  for (int j = 0; j < dv; ++j) {
    Vec chi = Vec::Zero(dv);
    chi(j) = 1.0;
    rep_plain.push_back(fock.gamma(j));
    rep_moved.push_back(rho(fock, Vec(g.g * chi)).op);
  }
  const std::vector<Mat> space = intertwiner_space(rep_moved, rep_plain);
  if (space.size() != 1)
    fail("NonUnique", "intertwiner space dimension " + std::to_string(space.size()) +
                          " (expected 1; this signals a bug)");
  const Mat& x = space.front();
  // x is Hilbert-Schmidt normalized; x*x is a positive multiple of the
  // identity by irreducibility.
  const double scale = std::sqrt((x.adjoint() * x).trace().real() / double(fock.dim));
  Mat u = fix_phase(x / scale);
  return Implementer{u, g, parity_of(fock, u)};
}

Parity parity_of(const FockSpace& fock, const Mat& u, double tol) {
  const Mat gr = grading(fock);
  const double scale = 2.0 * u.norm() + 1.0;
  const double com = (u * gr - gr * u).norm();
  const double acom = (u * gr + gr * u).norm();
  const bool even = com <= tol * scale;
  const bool odd = acom <= tol * scale;
  if (even == odd) fail("Indeterminate", "operator has no definite parity");
  return even ? Parity::even : Parity::odd;
}

Implementer kappa(const FockSpace& fock, const Implementer& imp) {
  if (imp.parity != Parity::even) fail("OddInput", "kappa is defined on even implementers");
  const AntiUnitaryOp j = modular_j(fock);
  Mat u = j.sandwich(imp.u);
  OrthogonalElement moved{fock.model.tau * imp.g.g * fock.model.tau};
  return Implementer{u, moved, Parity::even};
}

bool fusable(const FermionModel& model, const Implementer& a, const Implementer& b,
             double tol) {
  if (a.parity != Parity::even || b.parity != Parity::even)
    fail("NotEven", "fusable is defined for even implementers");
  if (!is_theta_orthogonal(model, a.g.g, tol) || !is_theta_orthogonal(model, b.g.g, tol))
    fail("NotThetaOrthogonal", "fusable needs theta-orthogonal underlying elements");
  const Mat lhs = model.minus_block(b.g.g);
  const Mat rhs = model.reflect_block(model.plus_block(a.g.g));
  return (lhs - rhs).norm() <= tol * (1.0 + rhs.norm());
}

ClElement bogoliubov(const FockSpace& fock, const OrthogonalElement& g, const ClElement& a) {
  if (a.words) return bogoliubov_words(fock, g, a);
  const Implementer imp = implement(fock, g);
  return ClElement{imp.u * a.op * imp.u.adjoint(), std::nullopt};
}

double phase_distance(const Mat& a, const Mat& b) {
  const Cplx overlap = hs_inner(b, a);
  if (std::abs(overlap) < 1e-14) return std::min((a - b).norm(), (a + b).norm());
  const Cplx z = overlap / std::abs(overlap);
  return (a - z * b).norm();
}

std::string implementer_to_json(const Implementer& imp) {
  nlohmann::json j;
  j["dim"] = imp.u.rows();
  std::vector<double> re, im;
  for (Eigen::Index r = 0; r < imp.u.rows(); ++r)
    for (Eigen::Index c = 0; c < imp.u.cols(); ++c) {
      re.push_back(imp.u(r, c).real());
      im.push_back(imp.u(r, c).imag());
    }
  j["u_re"] = re;
  j["u_im"] = im;
  j["g"] = nlohmann::json::parse(orthogonal_to_json(imp.g));
  j["parity"] = imp.parity == Parity::even ? "even" : "odd";
  return j.dump();
}

Implementer implementer_from_json(const FockSpace& fock, const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const Eigen::Index dim = j.at("dim").get<Eigen::Index>();
  if (dim != fock.dim) fail("DimensionMismatch", "implementer dim does not match Fock space");
  const auto re = j.at("u_re").get<std::vector<double>>();
  const auto im = j.at("u_im").get<std::vector<double>>();
  Mat u(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      const std::size_t k = std::size_t(r * dim + c);
      u(r, c) = Cplx(re[k], im[k]);
    }
  OrthogonalElement g = orthogonal_from_json(j.at("g").dump());
  const std::string par = j.at("parity").get<std::string>();
  return Implementer{u, g, par == "even" ? Parity::even : Parity::odd};
}

}  // namespace fermifuse
