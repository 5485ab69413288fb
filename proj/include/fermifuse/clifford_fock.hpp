#pragma once

#include "fermifuse/fermion_model.hpp"
#include "fermifuse/linalg.hpp"

#include <optional>
#include <vector>

namespace fermifuse {

/// One Clifford monomial: coeff * rho(f_1) ... rho(f_k).
struct CliffordWord {
  Cplx coeff{1.0, 0.0};
  std::vector<Vec> factors;  // vectors in V, sample coordinates
};

/// An operator on Fock space, optionally with its generator-word provenance.
struct ClElement {
  Mat op;
  std::optional<std::vector<CliffordWord>> words;
};

enum class Side { minus, plus };

/// Fock space over the Lagrangian L = span{phi_0..phi_{N-1}}: the exterior
/// algebra basis is indexed by subsets of {0..N-1} in graded-lexicographic
/// order (by size, then lexicographically on the ascending index sequence).
/// Sign convention: c(phi_k) e_S = (-1)^{#{j in S : j < k}} e_{S + k}.
struct FockSpace {
  FermionModel model;
  int dim = 0;                              // 2^N
  std::vector<std::uint32_t> basis_masks;   // bit n <-> mode phi_n occupied
  std::vector<int> mask_to_index;
  std::vector<int> parity;                  // |S| mod 2
  std::vector<Mat> gammas;                  // rho of the sample basis vectors

  int n() const { return model.n_modes; }
  Vec vacuum() const { return Vec::Unit(dim, 0); }
  const Mat& gamma(int j) const { return gammas.at(std::size_t(j)); }
};

FockSpace make_fock(const FermionModel& model);

/// Exterior multiplication by v in range(P_L).  Throws NotInLagrangian.
Mat create(const FockSpace& fock, const Vec& v, double tol = tol::loose);
/// Contraction with w in range(1 - P_L); equals create(alpha(w))^*.
/// Throws NotInDual.
Mat annihilate(const FockSpace& fock, const Vec& w, double tol = tol::loose);

/// rho(f) = sqrt(2) (c(P_L f) + a((1-P_L) f)); a Clifford map.
ClElement rho(const FockSpace& fock, const Vec& f);

/// Operator of one word / a sum of words.
Mat word_op(const FockSpace& fock, const CliffordWord& word);
Mat words_op(const FockSpace& fock, const std::vector<CliffordWord>& words);

/// Klein transformation: identity on even wedge degrees, i on odd ones.
Mat klein(const FockSpace& fock);
/// Grading operator (+1 even / -1 odd); equals klein squared.
Mat grading(const FockSpace& fock);

/// Antilinear second quantization of alpha tau restricted to L; fixes the
/// vacuum.  In this model alpha tau fixes every mode, so the linear part is
/// the identity up to roundoff, but the operator is built factorwise.
AntiUnitaryOp lambda_alpha_tau(const FockSpace& fock);

/// J = k^{-1} Lambda_{alpha tau}; antiunitary with J^2 = 1.  Coincides with
/// the Tomita modular conjugation of (Cl(V_-)'', F, vacuum).
AntiUnitaryOp modular_j(const FockSpace& fock);

/// Hilbert-Schmidt-orthonormal monomial basis of Cl(V_-)'' resp. Cl(V_+)''.
std::vector<Mat> half_monomial_basis(const FockSpace& fock, Side side);

/// Hermitian unitary volume element of Cl(V_-) (product of its generators,
/// normalized).  Implements the grading of Cl(V_-) and commutes with the
/// even part of Cl(V_+).
Mat minus_volume(const FockSpace& fock);

/// Right action v <| a = J a* J v for a generated by {rho(f) : f in V_-}.
/// Throws NotInMinusAlgebra.
Mat right_action(const FockSpace& fock, const ClElement& a, double tol = tol::loose);

/// Unitary F -> C^m ⊗ C^m (m = 2^{N/2}, index (k,p) -> k*m+p) that aligns
/// Cl(V_-)'' with M ⊗ 1 and its commutant with 1 ⊗ M.  Built from the matrix
/// unit systems of the two factors; the Klein-type twist by the volume
/// element of Cl(V_-) enters for the odd part of Cl(V_+), whose elements
/// anticommute with the odd part of Cl(V_-) rather than commuting.
Mat fock_factorization(const FockSpace& fock, std::uint64_t seed = 0);

/// Bogoliubov automorphism on word provenance: rho(f) -> rho(g f).
/// (The route through an implementer for raw operators lives with the
/// implementer machinery.)
ClElement bogoliubov_words(const FockSpace& fock, const OrthogonalElement& g,
                           const ClElement& a);

/// Abstract element of Cl(V_side), presented by words whose factors are
/// ambient vectors supported on the corresponding semicircle coordinates.
struct HalfCliffordElement {
  Side side = Side::minus;
  std::vector<CliffordWord> words;
};

/// Embedding Cl(V_side) -> Cl(V) induced by extending vectors by zero.
ClElement iota(const FockSpace& fock, const HalfCliffordElement& a);

/// A private Fock representation of Cl(V_side) alone, used to evaluate the
/// intrinsic norm of abstract half elements (any faithful representation of
/// this simple C*-algebra computes the same norm).
struct HalfFock {
  Side side = Side::minus;
  int dim = 0;                 // 2^{N/2}
  std::vector<int> coords;     // ambient sample indices of the side
  std::vector<Mat> gammas;     // images of the side coordinate vectors
};
HalfFock make_half_fock(const FermionModel& model, Side side);
Mat half_op(const HalfFock& half, const std::vector<CliffordWord>& words);

}  // namespace fermifuse
