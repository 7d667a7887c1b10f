// Core operations on biphoton qutrits: construction, entanglement and
// polarization measures, operator factorization, algebraic Schmidt-mode
// construction, and the independent closed-form eigendecomposition used to
// cross-check the algebraic route.

#pragma once

#include "biphoton/types.hpp"

namespace biphoton {

/// Builds a valid qutrit from arbitrary nonzero amplitudes: scales to unit
/// norm and rotates the global phase so the first nonzero amplitude is real
/// and strictly positive. Idempotent: feeding the result back returns it
/// bit-for-bit.
/// Throws AllZeroError / NonFiniteError.
QutritState make_qutrit(Complex c1, Complex c2, Complex c3);

/// The one-parameter family N a_H^dag (cos(alpha) a_H^dag + sin(alpha) a_V^dag)|0>,
/// i.e. amplitudes (sqrt(2) cos a, sin a, 0)/sqrt(1 + cos^2 a).
QutritState alpha_family_qutrit(double alpha);

/// Two-photon wave function c1 psi_HH + c2 psi_HV + c3 psi_VV, with the
/// 1/sqrt(2) symmetrization on the HV term.
BiphotonWaveFunction wave_function(const QutritState& q);

/// Partial trace over either photon: diagonal (|c1|^2 + |c2|^2/2,
/// |c3|^2 + |c2|^2/2), off-diagonal (c1 c2* + c2 c3*)/sqrt(2).
ReducedDensityMatrix reduced_density(const QutritState& q);

/// Concurrence C = |2 c1 c3 - c2^2|, in [0, 1].
double concurrence(const QutritState& q);

/// Degree of polarization P = sqrt(1 - C^2); also equals |stokes_vector(q)|.
double degree_of_polarization(const QutritState& q);

/// Eigenvalues of the reduced density matrix, (1 +- P)/2, descending.
SchmidtWeights schmidt_eigenvalues(const QutritState& q);

/// Schmidt number K = 1/(l+^2 + l-^2) and entropy -sum l log2 l (0 log 0 = 0).
SchmidtEntropy schmidt_k_and_entropy(const QutritState& q);

/// Single-photon Stokes vector S_k = Tr(rho_r sigma_k); |S| = P.
StokesVector stokes_vector(const QutritState& q);

/// Factorizes |Psi> = N A^dag B^dag |0> through the roots of
/// c1 x^2/sqrt(2) + c2 x + c3/sqrt(2) = 0. x_a takes the principal-sqrt "+"
/// branch. When c1 = 0 the lost root is at infinity (mode (0,1)); when
/// c1 = c2 = 0 both roots are. phi0 makes the cross-commutator real
/// nonnegative and is 0 when the modes are orthogonal.
FactorizationResult factorize(const QutritState& q);

/// Schmidt modes built algebraically from the factorization:
/// mode_plus from psi_A + psi_B, mode_minus from i(psi_B - psi_A), with the
/// e^{+-i phi0} phases included, then phase-canonicalized; weights from
/// schmidt_eigenvalues; phi extracted so the reconstruction holds. Never
/// solves the eigenproblem (eigen_oracle is the independent check).
SchmidtDecomposition schmidt_decomposition(const QutritState& q);

/// C = (1 - k^2)/(1 + k^2) with k the cross-commutator.
double concurrence_from_commutator(const FactorizationResult& f);

/// Closed-form 2x2 Hermitian eigendecomposition (trace/determinant formula),
/// eigenvalues descending, orthonormal phase-canonicalized eigenvectors.
/// Throws NotHermitianError.
EigenDecomposition eigen_oracle(const ReducedDensityMatrix& rho,
                                const Tolerances& tol = {});

/// Rebuilds the wave function from a Schmidt decomposition:
/// sqrt(l+) m+ x m+ + e^{2i phi} sqrt(l-) m- x m-.
BiphotonWaveFunction reconstruct(const SchmidtDecomposition& sd);

/// Rebuilds the wave function from a factorization:
/// N (psi_A(s1) psi_B(s2) + psi_A(s2) psi_B(s1))/sqrt(2) with the phi0
/// phases applied to the modes.
BiphotonWaveFunction reconstruct(const FactorizationResult& f);

/// min over theta of ||a - e^{i theta} b||.
double residual_up_to_phase(const BiphotonWaveFunction& a, const BiphotonWaveFunction& b);
double residual_up_to_phase(const JonesVector& a, const JonesVector& b);

/// Rotates j by e^{-i arg(first nonzero component)} so that component is
/// real positive. Zero vector is returned unchanged.
JonesVector canonical_phase(const JonesVector& j);

}  // namespace biphoton
