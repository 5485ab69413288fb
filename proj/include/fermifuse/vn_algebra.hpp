#pragma once

#include "fermifuse/linalg.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace fermifuse {

/// Finite-dimensional von Neumann algebra, stored as generators (closed
/// under adjoint, identity appended) plus a Hilbert-Schmidt-orthonormal
/// basis of the *-algebra they generate.
struct VNAlgebra {
  int ambient_dim = 0;
  std::vector<Mat> generators;
  std::vector<Mat> span_basis;

  int dim_span() const { return int(span_basis.size()); }
  /// HS coefficients of a over span_basis (exact for members).
  Vec coefficients(const Mat& a) const;
  Mat combine(const Vec& coeffs) const;
  Mat project(const Mat& a) const { return combine(coefficients(a)); }
  bool contains(const Mat& a, double tol = tol::loose) const;
};

VNAlgebra algebra_from_generators(int dim, const std::vector<Mat>& gens);
/// Wrap an already Hilbert-Schmidt-orthonormal spanning family.
VNAlgebra algebra_from_span(int dim, const std::vector<Mat>& onb);
VNAlgebra full_matrix_algebra(int dim);

VNAlgebra commutant(const VNAlgebra& alg);
VNAlgebra double_commutant(const VNAlgebra& alg);
VNAlgebra center(const VNAlgebra& alg);
bool is_factor(const VNAlgebra& alg);
/// ||P_span(a) - P_span(b)|| as subspace projector distance in HS space.
double span_distance(const VNAlgebra& a, const VNAlgebra& b);

/// Normal state, represented by its value functional.  Faithfulness is
/// checked where required (GNS Gram positive definite).
struct State {
  std::function<Cplx(const Mat&)> value;

  static State from_vector(const Vec& xi);
  static State from_density(const Mat& rho);
  /// phi ∘ pi for a *-map pi given as a matrix function.
  static State pulled_back(const State& phi, std::function<Mat(const Mat&)> pi);
};

/// Tomita data for (alg, ambient space, omega): the closed conjugation
/// S a omega = a* omega with polar decomposition S = J Delta^{1/2}.
struct TomitaData {
  AntiUnitaryOp s;
  AntiUnitaryOp j;
  Mat delta;
  Mat delta_half;              // positive factor of the polar decomposition
  double cyclic_margin = 0.0;  // sigma_min / sigma_max of a -> a omega
};
TomitaData tomita(const VNAlgebra& alg, const Vec& omega, double margin = 1e-8);

/// Orthonormalized GNS space L^2_phi(alg) with the standard bimodule
/// structure (left multiplication, right action J a* J).
struct GnsSpace {
  VNAlgebra algebra;
  State state;
  int dim = 0;
  Mat basis_vectors;                  // column i = coordinates of hat(b_i)
  Mat basis_vectors_inv;
  std::vector<Mat> left_span_images;  // left action of span_basis
  std::vector<Mat> right_span_images;
  Vec unit;                           // hat(1)
  TomitaData modular;

  Vec vector_of(const Mat& a) const;  // hat(a)
  Mat element_of(const Vec& v) const;
  Mat left_action(const Mat& a) const;
  Mat right_action(const Mat& a) const;
};
GnsSpace gns(const VNAlgebra& alg, const State& phi);  // throws NotFaithful

/// Matrix units for a finite factor; e[k*m+l] realizes |k><l|.
struct MatrixUnits {
  int m = 0;
  std::vector<Mat> e;
  const Mat& unit(int k, int l) const { return e[std::size_t(k * m + l)]; }
};
MatrixUnits matrix_units_of_factor(const VNAlgebra& alg, std::uint64_t seed = 0);

/// Hilbert-Schmidt model of a standard form: w maps the ambient space
/// unitarily onto m x m matrices (row-major vec) such that the left action
/// becomes matrix multiplication, J becomes the conjugate transpose and the
/// natural cone becomes the positive semidefinite matrices.  w(a omega) =
/// mat(a) rho^{1/2} for the density rho of the state of omega.
struct HsModel {
  int m = 0;
  MatrixUnits units;
  Mat rho;       // density in the units gauge, positive definite
  Mat rho_half;
  Mat w;         // ambient -> C^{m*m}

  Mat matrix_of(const Vec& v) const;  // unvec(row-major)(w v)
  /// min eigenvalue of the Hermitian part plus the anti-Hermitian defect.
  double psd_defect(const Vec& v) const;
};
HsModel hs_model(const VNAlgebra& alg, const Vec& omega, std::uint64_t seed = 0);

struct ConeData {
  std::vector<Vec> samples;  // {J a J a omega}
  double j_fix_residual = 0.0;
  double psd_floor = 0.0;    // most negative eigenvalue seen in the HS model
};
ConeData natural_cone(const VNAlgebra& alg, const Vec& omega, const TomitaData& td,
                      const HsModel& hs, int extra_samples = 8, std::uint64_t seed = 1);

/// (algebra, space, J, natural cone, cyclic separating vector) plus the HS
/// realization used for cone certificates.
struct StandardFormData {
  VNAlgebra algebra;
  Vec omega;
  TomitaData modular;
  HsModel hs;
  ConeData cone;
};
StandardFormData standard_form(const VNAlgebra& alg, const Vec& omega,
                               std::uint64_t seed = 0);

struct StandardFormCheck {
  double j_involution;
  double jaj_commutant;   // Haagerup axiom 1, as span distance
  double center_conj;     // axiom 2
  double cone_fixed;      // axiom 3
  double cone_psd_floor;  // axiom 4 certificate (>= -1e-9 passes)
  double cyclic_margin;
};
StandardFormCheck verify_standard_form(const StandardFormData& sf);

/// *-isomorphism between algebras, stored as a basis of the source together
/// with the images of that basis.
struct StarIso {
  const VNAlgebra* from = nullptr;
  const VNAlgebra* to = nullptr;
  std::vector<Mat> from_family;
  std::vector<Mat> to_images;
  Mat stack;       // vectorized from_family, one column each
  Mat pinv_stack;  // least-squares solver for coefficient extraction

  Mat apply(const Mat& a) const;
  void finalize();
  static StarIso identity(const VNAlgebra& alg);
  /// a -> u a u* onto the algebra `to`.
  static StarIso conjugation(const VNAlgebra& from, const VNAlgebra& to, const Mat& u);
};

/// The unique unitary of the standard-form uniqueness theorem:
/// pi(a) = u a u*, J2 = u J1 u*, cone1 -> cone2.  Gauge choices inside the
/// HS models cancel.  Throws NotIsomorphism.
Mat connecting_unitary(const StandardFormData& sf1, const StandardFormData& sf2,
                       const StarIso& pi);

}  // namespace fermifuse
