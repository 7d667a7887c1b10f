// Shared test helpers: seeded random states and unitaries, plus brute-force
// oracles (partial trace, Pauli-trace Stokes) kept independent of the
// library's closed-form paths.

#pragma once

#include <random>

#include "biphoton/core.hpp"
#include "biphoton/random.hpp"
#include "biphoton/types.hpp"

namespace testutil {

using biphoton::Complex;
using biphoton::Mat2;

inline Complex gaussian_complex(std::mt19937_64& rng) {
    return {biphoton::normal_double(rng), biphoton::normal_double(rng)};
}

// Complex-Gaussian amplitude triple, normalized: uniform on the state space.
inline biphoton::QutritState random_qutrit(std::mt19937_64& rng) {
    for (;;) {
        const Complex a = gaussian_complex(rng);
        const Complex b = gaussian_complex(rng);
        const Complex c = gaussian_complex(rng);
        if (std::norm(a) + std::norm(b) + std::norm(c) > 1e-12)
            return biphoton::make_qutrit(a, b, c);
    }
}

// Haar-random SU(2) from a uniform unit quaternion.
inline Mat2 random_su2(std::mt19937_64& rng) {
    double a, b, c, d, n2;
    do {
        a = biphoton::normal_double(rng);
        b = biphoton::normal_double(rng);
        c = biphoton::normal_double(rng);
        d = biphoton::normal_double(rng);
        n2 = a * a + b * b + c * c + d * d;
    } while (n2 < 1e-12);
    const double n = std::sqrt(n2);
    a /= n; b /= n; c /= n; d /= n;
    return {Complex{a, b}, Complex{c, d}, Complex{-c, d}, Complex{a, -b}};
}

// Trace over the second photon of Psi x Psi^dag.
inline Mat2 partial_trace_oracle(const biphoton::BiphotonWaveFunction& wf) {
    Mat2 rho;
    Complex* out[2][2] = {{&rho.m00, &rho.m01}, {&rho.m10, &rho.m11}};
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            Complex s = 0.0;
            for (int j = 0; j < 2; ++j) s += wf.psi[i][j] * std::conj(wf.psi[k][j]);
            *out[i][k] = s;
        }
    return rho;
}

// Stokes components from the literal Pauli traces S_k = Tr(rho sigma_k),
// with sigma_1 = sigma_x, sigma_2 = sigma_y, sigma_3 = sigma_z.
inline biphoton::StokesVector pauli_stokes_oracle(const Mat2& rho) {
    const Complex i{0.0, 1.0};
    const Mat2 sx{0.0, 1.0, 1.0, 0.0};
    const Mat2 sy{0.0, -i, i, 0.0};
    const Mat2 sz{1.0, 0.0, 0.0, -1.0};
    return {(rho * sx).trace().real(), (rho * sy).trace().real(),
            (rho * sz).trace().real()};
}

inline Mat2 projector(const biphoton::JonesVector& j) {
    return {j.h * std::conj(j.h), j.h * std::conj(j.v), j.v * std::conj(j.h),
            j.v * std::conj(j.v)};
}

}  // namespace testutil
