#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace fermifuse {

using Cplx = std::complex<double>;
using Mat  = Eigen::MatrixXcd;
using Vec  = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;
using RealVec = Eigen::VectorXd;

inline constexpr Cplx kI{0.0, 1.0};

/// Error with a stable machine-readable code plus a human message.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

namespace tol {
// Default tolerance for rank decisions; dims stay small and conditioning is
// benign, so this is configurable per call but rarely needs to be.
inline constexpr double rank  = 1e-9;
inline constexpr double tight = 1e-12;
inline constexpr double close = 1e-10;
inline constexpr double loose = 1e-8;
}  // namespace tol

double op_norm(const Mat& m);
double frob(const Mat& m);
bool is_unitary(const Mat& m, double tol = tol::loose);
bool is_hermitian(const Mat& m, double tol = tol::loose);

Mat adjoint(const Mat& m);
Mat kron(const Mat& a, const Mat& b);

/// Antilinear map v -> linear_part * conj(v), conjugation taken entrywise in
/// the standard basis.  All composition rules are explicit; composing two
/// antilinear maps yields a linear one.
struct AntiUnitaryOp {
  Mat linear_part;

  Vec apply(const Vec& v) const { return linear_part * v.conjugate(); }

  /// A ∘ B for two antilinear maps is linear.
  Mat compose(const AntiUnitaryOp& b) const {
    return linear_part * b.linear_part.conjugate();
  }
  /// A ∘ m for linear m stays antilinear.
  AntiUnitaryOp after_linear(const Mat& m) const {
    return AntiUnitaryOp{linear_part * m.conjugate()};
  }
  /// m ∘ A for linear m stays antilinear.
  AntiUnitaryOp then_linear(const Mat& m) const {
    return AntiUnitaryOp{m * linear_part};
  }
  /// A ∘ m ∘ A, a linear operator (used for J a J and for kappa).
  Mat sandwich(const Mat& m) const {
    return linear_part * m.conjugate() * linear_part.conjugate();
  }
  /// Adjoint of (M ∘ conj) is (M^T ∘ conj).
  AntiUnitaryOp adjoint() const { return AntiUnitaryOp{linear_part.transpose()}; }

  bool is_antiunitary(double tol = tol::loose) const { return is_unitary(linear_part, tol); }
  /// ||A^2 - id||.
  double involution_defect() const {
    Mat sq = compose(*this);
    return (sq - Mat::Identity(sq.rows(), sq.cols())).norm();
  }
};

/// Orthonormal basis of {v : ||m v|| <= tol * ||m|| * ||v||}; empty when m has
/// full column rank.  Singular value thresholding, deterministic.
std::vector<Vec> nullspace(const Mat& m, double tol = tol::rank);

struct HermEig {
  RealVec values;  // ascending
  Mat vectors;     // unitary, columns are eigenvectors
};
/// Throws NotHermitian when ||m - m*|| exceeds herm_tol * (1 + ||m||).
HermEig hermitian_eig(const Mat& m, double herm_tol = tol::loose);

struct Svd {
  Mat u;
  RealVec sigma;  // descending
  Mat v;
};
Svd svd(const Mat& m);

struct Polar {
  Mat unitary;
  Mat positive;
};
/// m = unitary * positive.  Throws Singular on rank-deficient input.
Polar polar(const Mat& m, double tol = tol::rank);

/// Orthonormal (Hilbert-Schmidt) basis of {X : X * rep_b[i] = rep_a[i] * X}.
/// rep_a[i] act on a space of dim dA, rep_b[i] on dim dB; X is dA x dB.
/// Solved through the accumulated normal matrix of the stacked vectorized
/// constraints, which keeps memory at O((dA*dB)^2).
std::vector<Mat> intertwiner_space(const std::vector<Mat>& rep_a,
                                   const std::vector<Mat>& rep_b,
                                   double tol = tol::rank);

/// vec / unvec in column-major order (Eigen native).
Vec vectorize(const Mat& m);
Mat unvectorize(const Vec& v, Eigen::Index rows, Eigen::Index cols);

/// Hilbert-Schmidt inner product tr(a^* b).
Cplx hs_inner(const Mat& a, const Mat& b);

/// Seeded deterministic RNG for test-case generation.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double gaussian() { return normal_(gen_); }
  std::uint64_t next_seed() { return gen_(); }

  RealMat gaussian_real(Eigen::Index r, Eigen::Index c);
  Mat gaussian_complex(Eigen::Index r, Eigen::Index c);
  Vec gaussian_vector(Eigen::Index n);
  /// Haar-ish real special orthogonal matrix via Gram-Schmidt.
  RealMat special_orthogonal(Eigen::Index n);

private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace fermifuse
