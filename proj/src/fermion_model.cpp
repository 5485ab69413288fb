#include "fermifuse/fermion_model.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>

namespace fermifuse {

namespace {
using nlohmann::json;
}

Vec FermionModel::mode(int n) const {
  if (n < -n_modes || n >= n_modes) fail("DimensionMismatch", "mode index out of range");
  return mode_basis.col(n + n_modes);
}

Vec FermionModel::lagrangian_coefficients(const Vec& f) const {
  Vec c(n_modes);
  for (int n = 0; n < n_modes; ++n) c(n) = mode(n).dot(f);
  return c;
}

Mat FermionModel::assemble_theta(const Mat& gm, const Mat& gp) const {
  const int n = n_modes;
  Mat g = Mat::Zero(2 * n, 2 * n);
  g.topLeftCorner(n, n) = gm;
  g.bottomRightCorner(n, n) = gp;
  return g;
}

Mat FermionModel::reflect_block(const Mat& h) const {
  // tau sends sample j to 2N-1-j, so conjugating an N x N block moves it to
  // the other half with both indices reversed.
  const int n = n_modes;
  Mat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = h(n - 1 - i, n - 1 - j);
  return out;
}

FermionModel build_model(int n_modes) {
  if (n_modes <= 0 || n_modes % 2 != 0) fail("OddN", "n_modes must be even and positive");
  if (n_modes > 6) fail("TooLarge", "n_modes capped at 6 (Fock dimension 64)");

  const int n = n_modes;
  const int dim = 2 * n;
  FermionModel m;
  m.n_modes = n;

  m.sample_points = RealVec(dim);
  for (int j = 0; j < dim; ++j)
    m.sample_points(j) = -std::numbers::pi + (j + 0.5) * std::numbers::pi / n;

  m.mode_basis = Mat(dim, dim);
  const double norm = 1.0 / std::sqrt(double(dim));
  for (int col = 0; col < dim; ++col) {
    const double k = (col - n) + 0.5;  // n + 1/2 with n = col - N
    for (int j = 0; j < dim; ++j)
      m.mode_basis(j, col) = std::polar(norm, -k * m.sample_points(j));
  }

  m.alpha = AntiUnitaryOp{Mat::Identity(dim, dim)};

  m.tau = Mat::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) m.tau(dim - 1 - j, j) = 1.0;

  m.lagrangian_projector = Mat::Zero(dim, dim);
  for (int nn = 0; nn < n; ++nn) {
    Vec phi = m.mode_basis.col(nn + n);
    m.lagrangian_projector += phi * phi.adjoint();
  }

  m.minus_projector = Mat::Zero(dim, dim);
  m.plus_projector = Mat::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    if (m.sample_points(j) < 0)
      m.minus_projector(j, j) = 1.0;
    else
      m.plus_projector(j, j) = 1.0;
  }
  return m;
}

bool is_orthogonal(const FermionModel& model, const Mat& g, double tol) {
  if (g.rows() != model.dim_v() || g.cols() != model.dim_v())
    fail("DimensionMismatch", "element must act on V");
  if (!is_unitary(g, tol)) return false;
  // Commuting with entrywise conjugation means the matrix is real.
  return (g - g.conjugate()).norm() <= tol * (1.0 + g.norm());
}

bool is_theta_orthogonal(const FermionModel& model, const Mat& g, double tol) {
  if (!is_orthogonal(model, g, tol)) return false;
  const Mat& pm = model.minus_projector;
  const Mat& pp = model.plus_projector;
  return (pp * g * pm).norm() <= tol && (pm * g * pp).norm() <= tol;
}

OrthogonalElement random_theta_orthogonal(const FermionModel& model, std::uint64_t seed) {
  Rng rng(seed);
  const int n = model.n_modes;
  Mat gm = rng.special_orthogonal(n).cast<Cplx>();
  Mat gp = rng.special_orthogonal(n).cast<Cplx>();
  return OrthogonalElement{model.assemble_theta(gm, gp)};
}

OrthogonalElement reflect(const FermionModel& model, const OrthogonalElement& g, double tol) {
  if (!is_orthogonal(model, g.g, tol)) fail("NotOrthogonal", "reflect needs g in O(V)");
  return OrthogonalElement{model.tau * g.g * model.tau};
}

std::string orthogonal_to_json(const OrthogonalElement& g) {
  json j;
  j["dim"] = g.g.rows();
  std::vector<double> re, im;
  re.reserve(g.g.size());
  im.reserve(g.g.size());
  for (Eigen::Index r = 0; r < g.g.rows(); ++r)
    for (Eigen::Index c = 0; c < g.g.cols(); ++c) {
      re.push_back(g.g(r, c).real());
      im.push_back(g.g(r, c).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

OrthogonalElement orthogonal_from_json(const std::string& text) {
  json j = json::parse(text);
  const Eigen::Index dim = j.at("dim").get<Eigen::Index>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != std::size_t(dim * dim) || im.size() != std::size_t(dim * dim))
    fail("DimensionMismatch", "entry count does not match dim");
  Mat g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      const std::size_t k = std::size_t(r * dim + c);
      g(r, c) = Cplx(re[k], im[k]);
    }
  return OrthogonalElement{g};
}

}  // namespace fermifuse
