#include "fermifuse/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace fermifuse {

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> s(m);
  return s.singularValues()(0);
}

double frob(const Mat& m) { return m.norm(); }

bool is_unitary(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - Mat::Identity(m.cols(), m.cols())).norm() <= tol * std::sqrt(double(m.cols()));
}

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol * (1.0 + m.norm());
}

Mat adjoint(const Mat& m) { return m.adjoint(); }

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::vector<Vec> nullspace(const Mat& m, double tol) {
  if (tol <= 0) fail("BadTolerance", "nullspace requires tol > 0");
  const Eigen::Index n = m.cols();
  std::vector<Vec> out;
  if (n == 0) return out;
  if (m.rows() == 0 || m.norm() == 0.0) {
    for (Eigen::Index j = 0; j < n; ++j) out.push_back(Vec::Unit(n, j));
    return out;
  }
  Eigen::JacobiSVD<Mat> s(m, Eigen::ComputeFullV);
  const auto& sig = s.singularValues();
  const double cut = tol * sig(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double sv = j < sig.size() ? sig(j) : 0.0;
    if (sv <= cut) out.push_back(s.matrixV().col(j));
  }
  return out;
}

HermEig hermitian_eig(const Mat& m, double herm_tol) {
  if (m.rows() != m.cols()) fail("NotHermitian", "matrix is not square");
  if (!is_hermitian(m, herm_tol)) fail("NotHermitian", "||m - m*|| exceeds tolerance");
  Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) fail("EigFailed", "self-adjoint eigensolver did not converge");
  return HermEig{es.eigenvalues(), es.eigenvectors()};
}

Svd svd(const Mat& m) {
  Eigen::JacobiSVD<Mat> s(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return Svd{s.matrixU(), s.singularValues(), s.matrixV()};
}

Polar polar(const Mat& m, double tol) {
  if (m.rows() != m.cols()) fail("Singular", "polar decomposition needs a square matrix");
  Svd s = svd(m);
  const Eigen::Index n = m.rows();
  if (n == 0) return Polar{Mat(0, 0), Mat(0, 0)};
  if (s.sigma(n - 1) <= tol * s.sigma(0)) fail("Singular", "matrix is rank deficient to tolerance");
  Mat u = s.u * s.v.adjoint();
  Mat p = s.v * s.sigma.asDiagonal() * s.v.adjoint();
  return Polar{u, p};
}

Vec vectorize(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

Mat unvectorize(const Vec& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const Mat>(v.data(), rows, cols);
}

Cplx hs_inner(const Mat& a, const Mat& b) { return (a.adjoint() * b).trace(); }

std::vector<Mat> intertwiner_space(const std::vector<Mat>& rep_a,
                                   const std::vector<Mat>& rep_b,
                                   double tol) {
  if (rep_a.size() != rep_b.size())
    fail("DimensionMismatch", "intertwiner_space needs matching generator lists");
  Eigen::Index da = 0, db = 0;
  for (std::size_t i = 0; i < rep_a.size(); ++i) {
    const Mat& a = rep_a[i];
    const Mat& b = rep_b[i];
    if (a.rows() != a.cols() || b.rows() != b.cols())
      fail("DimensionMismatch", "representation matrices must be square");
    if (i == 0) {
      da = a.rows();
      db = b.rows();
    } else if (a.rows() != da || b.rows() != db) {
      fail("DimensionMismatch", "representation matrices must share dimensions");
    }
  }
  if (rep_a.empty()) fail("DimensionMismatch", "need at least one generator");

  // Constraint per generator: (B^T ⊗ I - I ⊗ A) vec(X) = 0, column-major vec.
  // Accumulate the normal matrix sum_i C_i^* C_i without materializing the
  // stacked system; C^*C expands into four Kronecker terms.
  const Eigen::Index nv = da * db;
  Mat normal = Mat::Zero(nv, nv);
  const Mat eye_a = Mat::Identity(da, da);
  const Mat eye_b = Mat::Identity(db, db);
  for (std::size_t i = 0; i < rep_a.size(); ++i) {
    const Mat& a = rep_a[i];
    const Mat& b = rep_b[i];
    normal += kron(b.conjugate() * b.transpose(), eye_a);
    normal += kron(eye_b, a.adjoint() * a);
    normal -= kron(b.conjugate(), a);
    normal -= kron(b.transpose(), a.adjoint());
  }

  HermEig eig = hermitian_eig(normal, 1e-6);
  const double lam_max = std::max(eig.values(nv - 1), 0.0);
  std::vector<Mat> out;
  if (lam_max <= 1e-28) {
    // All constraints vanish: every operator intertwines.
    for (Eigen::Index j = 0; j < nv; ++j)
      out.push_back(unvectorize(Vec::Unit(nv, j), da, db));
    return out;
  }
  // Squaring tol would drop below the eigenvalue noise floor of the normal
  // matrix (~eps * lam_max), so clamp the cut against that floor.
  const double cut = std::max(tol * tol, 1e-13) * lam_max;
  for (Eigen::Index j = 0; j < nv; ++j) {
    if (eig.values(j) <= cut) out.push_back(unvectorize(eig.vectors.col(j), da, db));
  }

  // The normal-matrix eigenvectors satisfy the constraints only to
  // O(sqrt(eps)); refinement against the original residuals, projected off
  // the well-separated non-null eigenspace, recovers O(eps).
  for (Mat& x : out) {
    for (int pass = 0; pass < 3; ++pass) {
      Mat grad = Mat::Zero(da, db);
      for (std::size_t i = 0; i < rep_a.size(); ++i) {
        const Mat r = x * rep_b[i] - rep_a[i] * x;
        grad += r * rep_b[i].adjoint() - rep_a[i].adjoint() * r;
      }
      const Vec g = vectorize(grad);
      Vec delta = Vec::Zero(nv);
      for (Eigen::Index k = 0; k < nv; ++k) {
        if (eig.values(k) <= cut) continue;
        delta += (eig.vectors.col(k).dot(g) / eig.values(k)) * eig.vectors.col(k);
      }
      x -= unvectorize(delta, da, db);
    }
  }
  // Re-orthonormalize the refined family.
  std::vector<Mat> refined;
  for (const Mat& cand : out) {
    Mat v = cand;
    for (int pass = 0; pass < 2; ++pass)
      for (const Mat& e : refined) v -= hs_inner(e, v) * e;
    if (v.norm() > 0.5) refined.push_back(v / v.norm());
  }
  if (refined.size() == out.size()) return refined;
  return out;
}

RealMat Rng::gaussian_real(Eigen::Index r, Eigen::Index c) {
  RealMat m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = gaussian();
  return m;
}

Mat Rng::gaussian_complex(Eigen::Index r, Eigen::Index c) {
  Mat m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Cplx(gaussian(), gaussian());
  return m;
}

Vec Rng::gaussian_vector(Eigen::Index n) {
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Cplx(gaussian(), gaussian());
  return v;
}

RealMat Rng::special_orthogonal(Eigen::Index n) {
  RealMat g = gaussian_real(n, n);
  // Modified Gram-Schmidt, deterministic sweep order.
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < j; ++k) g.col(j) -= g.col(k).dot(g.col(j)) * g.col(k);
    double nrm = g.col(j).norm();
    if (nrm < 1e-12) {
      // Degenerate draw; re-draw the column.
      g.col(j) = gaussian_real(n, 1);
      j -= 1;
      continue;
    }
    g.col(j) /= nrm;
  }
  if (g.determinant() < 0) g.col(0) = -g.col(0);
  return g;
}

}  // namespace fermifuse
