// Value types for polarization biphoton qutrits: amplitude triples, Jones
// vectors, the symmetric two-photon wave function, reduced density matrix,
// Schmidt decomposition, operator factorization and Stokes vectors.
//
// All types are small immutable-by-convention structs; every operation on
// them is a pure function (see core.hpp).

#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace biphoton {

using Complex = std::complex<double>;

/// Numerical tolerances. norm: validity checks on closed-form arithmetic;
/// reconstruction: wave-function rebuild residuals; geometric: angle and
/// direction predicates on the Poincare sphere, which lose precision near
/// 0 and pi.
struct Tolerances {
    double norm = 1e-12;
    double reconstruction = 1e-10;
    double geometric = 1e-9;
};

/// Normalized amplitude triple (c1, c2, c3) of the two-photon polarization
/// state c1|2_H> + c2|1_H,1_V> + c3|2_V>, with the global phase fixed so the
/// first nonzero amplitude is real and strictly positive. Construct through
/// make_qutrit(); the fields themselves are plain data.
struct QutritState {
    Complex c1{};
    Complex c2{};
    Complex c3{};

    double norm_squared() const {
        return std::norm(c1) + std::norm(c2) + std::norm(c3);
    }
};

/// Single-photon polarization state (h, v), unit norm.
struct JonesVector {
    Complex h{};
    Complex v{};

    double norm_squared() const { return std::norm(h) + std::norm(v); }
    double norm() const { return std::sqrt(norm_squared()); }
};

/// <a|b> for Jones vectors (conjugate-linear in the first argument).
inline Complex inner(const JonesVector& a, const JonesVector& b) {
    return std::conj(a.h) * b.h + std::conj(a.v) * b.v;
}

/// Unit Jones vector orthogonal to j.
inline JonesVector orthogonal(const JonesVector& j) {
    return {-std::conj(j.v), std::conj(j.h)};
}

/// 2x2 complex matrix, row-major. Used for the reduced density matrix and
/// for Jones matrices of waveplates.
struct Mat2 {
    Complex m00{}, m01{}, m10{}, m11{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Mat2 adjoint() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    }
    Complex trace() const { return m00 + m11; }
    Complex det() const { return m00 * m11 - m01 * m10; }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
                a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
    }

    JonesVector apply(const JonesVector& j) const {
        return {m00 * j.h + m01 * j.v, m10 * j.h + m11 * j.v};
    }

    double frobenius_distance(const Mat2& o) const {
        return std::sqrt(std::norm(m00 - o.m00) + std::norm(m01 - o.m01) +
                         std::norm(m10 - o.m10) + std::norm(m11 - o.m11));
    }
};

/// Symmetric two-photon wave function Psi(sigma1, sigma2), sigma in {H=0, V=1},
/// unit Frobenius norm.
struct BiphotonWaveFunction {
    std::array<std::array<Complex, 2>, 2> psi{};

    Complex amplitude_c1() const { return psi[0][0]; }
    Complex amplitude_c2() const { return std::sqrt(2.0) * psi[0][1]; }
    Complex amplitude_c3() const { return psi[1][1]; }

    double frobenius_norm() const {
        return std::sqrt(std::norm(psi[0][0]) + std::norm(psi[0][1]) +
                         std::norm(psi[1][0]) + std::norm(psi[1][1]));
    }
};

/// <a|b> over all four tensor entries.
inline Complex inner(const BiphotonWaveFunction& a, const BiphotonWaveFunction& b) {
    Complex s = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += std::conj(a.psi[i][j]) * b.psi[i][j];
    return s;
}

/// Single-photon reduced density matrix of the pair state: Hermitian, unit
/// trace, positive semidefinite.
struct ReducedDensityMatrix {
    Mat2 rho;
};

/// Real Stokes 3-vector. |S| <= 1; |S| = 1 for pure single-photon states.
/// Component meaning follows the H/V-first numbering: s3 = +1 is linear H,
/// s1 = +1 is linear +45 deg, s2 = +1 is circular (sign fixed by the Pauli
/// trace S_k = Tr(rho sigma_k), so (1, -i)/sqrt(2) has s2 = -1).
struct StokesVector {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;

    double norm() const { return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3); }
};

inline StokesVector operator+(const StokesVector& a, const StokesVector& b) {
    return {a.s1 + b.s1, a.s2 + b.s2, a.s3 + b.s3};
}
inline StokesVector operator-(const StokesVector& a, const StokesVector& b) {
    return {a.s1 - b.s1, a.s2 - b.s2, a.s3 - b.s3};
}
inline StokesVector operator*(double c, const StokesVector& v) {
    return {c * v.s1, c * v.s2, c * v.s3};
}
inline double dot(const StokesVector& a, const StokesVector& b) {
    return a.s1 * b.s1 + a.s2 * b.s2 + a.s3 * b.s3;
}
inline StokesVector cross(const StokesVector& a, const StokesVector& b) {
    return {a.s2 * b.s3 - a.s3 * b.s2, a.s3 * b.s1 - a.s1 * b.s3,
            a.s1 * b.s2 - a.s2 * b.s1};
}

/// Root of the factorizing quadratic. The quadratic degenerates when c1 = 0;
/// the lost root is the distinguished point at infinity, whose mode vector
/// is the limit (0, 1) of (1, -x)/sqrt(1+|x|^2).
struct PolynomialRoot {
    Complex value{};
    bool at_infinity = false;

    static PolynomialRoot finite(Complex x) { return {x, false}; }
    static PolynomialRoot infinity() { return {Complex{0.0, 0.0}, true}; }
};

/// Operator factorization |Psi> = N A^dag B^dag |0>. mode_a/mode_b are the
/// normalized mode vectors of the factorizing operators *without* the
/// e^{+-i phi0} phase factors; phi0 is carried separately and is chosen so
/// the cross-commutator [A, B^dag] is real and nonnegative.
struct FactorizationResult {
    PolynomialRoot x_a;
    PolynomialRoot x_b;
    double phi0 = 0.0;
    JonesVector mode_a;
    JonesVector mode_b;
    double commutator = 0.0;  // |<mode_a|mode_b>|, in [0, 1]
    double norm_n = 0.0;      // 1/sqrt(1 + commutator^2), in (0, 1]
};

/// Two-term Schmidt decomposition: weights lambda_plus >= lambda_minus,
/// orthonormal mode pair, and the relative phase phi in [0, pi) such that
/// Psi = sqrt(lambda_plus) mode_plus x mode_plus
///     + e^{2i phi} sqrt(lambda_minus) mode_minus x mode_minus
/// up to a global phase. Mode phases are canonicalized (first nonzero
/// component real positive). basis_free marks the degenerate case
/// lambda_plus = lambda_minus where any orthonormal basis is valid and the
/// factorization-derived pair is returned.
struct SchmidtDecomposition {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    JonesVector mode_plus;
    JonesVector mode_minus;
    double phi = 0.0;
    bool basis_free = false;
};

/// Eigenvalues (descending) and orthonormal eigenvectors of a 2x2 Hermitian
/// matrix, from the closed-form trace/determinant solution.
struct EigenDecomposition {
    std::array<double, 2> values{};
    std::array<JonesVector, 2> vectors{};
};

/// Schmidt weights (lambda_plus, lambda_minus), lambda_plus >= lambda_minus.
struct SchmidtWeights {
    double plus = 0.0;
    double minus = 0.0;
};

/// Schmidt number K = 1/sum(lambda^2) and reduced entropy in bits.
struct SchmidtEntropy {
    double k = 0.0;
    double entropy = 0.0;
};

}  // namespace biphoton
