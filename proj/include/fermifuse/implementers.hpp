#pragma once

#include "fermifuse/clifford_fock.hpp"

#include <string>

namespace fermifuse {

enum class Parity { even, odd };

/// Unitary on Fock space together with the orthogonal transformation it
/// implements: u rho(f) u* = rho(g f).  The phase is fixed by convention:
/// the vacuum overlap <u vac, vac> is made real positive when its modulus
/// exceeds a small threshold, otherwise the first entry of u (row-major
/// scan) with modulus above the threshold is made real positive.
struct Implementer {
  Mat u;
  OrthogonalElement g;
  Parity parity = Parity::even;
};

/// Largest generator residual max_j ||u rho(chi_j) u* - rho(g chi_j)||.
double implementation_residual(const FockSpace& fock, const Mat& u, const Mat& g);

/// Recover the orthogonal element implemented by u, plus the residual of the
/// reconstruction (large residual means u is not an implementer).
struct ImplementedElement {
  Mat g;
  double residual = 0.0;
};
ImplementedElement implemented_element(const FockSpace& fock, const Mat& u);

/// Implementer of g in O(V).  Built as a product of closed-form plane
/// rotation implementers from a Givens factorization of g; the result spans
/// the one-dimensional intertwiner space between rho∘theta_g and rho and is
/// verified against the implementation equation.  Throws NotOrthogonal.
Implementer implement(const FockSpace& fock, const OrthogonalElement& g);

/// Same implementer through the stacked-nullspace Schur solve; kept as an
/// independent route for cross-checks at small N.  Throws NonUnique when the
/// intertwiner space does not have dimension one.
Implementer implement_via_schur(const FockSpace& fock, const OrthogonalElement& g);

/// Throws Indeterminate if u neither commutes nor anticommutes with the
/// grading.
Parity parity_of(const FockSpace& fock, const Mat& u, double tol = tol::loose);

/// kappa(U) = J U J, which implements tau g tau.  Throws OddInput.
Implementer kappa(const FockSpace& fock, const Implementer& imp);

/// Fusable: both even, both theta-orthogonal, and g'_- = tau g_+ tau.
bool fusable(const FermionModel& model, const Implementer& a, const Implementer& b,
             double tol = tol::loose);

/// Bogoliubov automorphism theta_g(a) = U a U* through the implementer.
ClElement bogoliubov(const FockSpace& fock, const OrthogonalElement& g, const ClElement& a);

/// min over unimodular z of ||a - z b||.
double phase_distance(const Mat& a, const Mat& b);

std::string implementer_to_json(const Implementer& imp);
Implementer implementer_from_json(const FockSpace& fock, const std::string& text);

}  // namespace fermifuse
