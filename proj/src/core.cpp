#include "biphoton/core.hpp"

#include <algorithm>
#include <cmath>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Index of the first exactly-nonzero amplitude, or -1.
int first_nonzero(const std::array<Complex, 3>& a) {
    for (int i = 0; i < 3; ++i)
        if (a[i] != Complex{0.0, 0.0}) return i;
    return -1;
}

// First amplitude carrying real weight, skipping rounding dust (anything
// more than 14 orders below the total norm): the phase convention must not
// latch onto a component that is only nonzero through cancellation noise.
int first_significant(const std::array<Complex, 3>& a, double n2) {
    constexpr double kDust = 1e-14;
    for (int i = 0; i < 3; ++i)
        if (std::norm(a[i]) > kDust * kDust * n2) return i;
    return first_nonzero(a);
}

Complex scrub_zero_signs(Complex z) {
    double re = z.real(), im = z.imag();
    if (re == 0.0) re = 0.0;
    if (im == 0.0) im = 0.0;
    return {re, im};
}

bool canonical_zero_signs(const std::array<Complex, 3>& a) {
    for (const Complex& z : a) {
        if (z.real() == 0.0 && std::signbit(z.real())) return false;
        if (z.imag() == 0.0 && std::signbit(z.imag())) return false;
    }
    return true;
}

// Mode vector (1, -x)/sqrt(1+|x|^2) of a factorizing root, evaluated in a
// form that stays finite for |x| up to the double range.
JonesVector mode_of_root(const PolynomialRoot& r) {
    if (r.at_infinity) return {0.0, 1.0};
    const double ax = std::abs(r.value);
    if (ax <= 1.0) {
        const double d = std::sqrt(1.0 + ax * ax);
        return {1.0 / d, scrub_zero_signs(-r.value / d)};
    }
    const double w = 1.0 / ax;  // scale by 1/|x| before normalizing
    const double d = std::sqrt(w * w + 1.0);
    const Complex dir = r.value / ax;
    return {w / d, scrub_zero_signs(-dir / d)};
}

JonesVector normalized(Complex h, Complex v) {
    const double n = std::sqrt(std::norm(h) + std::norm(v));
    return {h / n, v / n};
}

BiphotonWaveFunction symmetrized_product(const JonesVector& a, const JonesVector& b,
                                         double scale) {
    BiphotonWaveFunction wf;
    const Complex ah = a.h, av = a.v, bh = b.h, bv = b.v;
    wf.psi[0][0] = scale * (ah * bh + bh * ah) / kSqrt2;
    wf.psi[0][1] = scale * (ah * bv + bh * av) / kSqrt2;
    wf.psi[1][0] = wf.psi[0][1];
    wf.psi[1][1] = scale * (av * bv + bv * av) / kSqrt2;
    return wf;
}

}  // namespace

QutritState make_qutrit(Complex c1, Complex c2, Complex c3) {
    std::array<Complex, 3> a{c1, c2, c3};
    for (const Complex& z : a)
        if (!finite(z)) throw NonFiniteError{};
    if (first_nonzero(a) < 0) throw AllZeroError{};

    // pre-scale extreme magnitudes so the norm accumulation can neither
    // overflow nor flush to zero
    double peak = 0.0;
    for (const Complex& z : a)
        peak = std::max({peak, std::abs(z.real()), std::abs(z.imag())});
    if (peak < 1e-100 || peak > 1e100)
        for (Complex& z : a) z /= peak;

    // One or two rounds of normalize + phase-fix. Inputs already inside the
    // acceptance window (canonical phase, norm within a few ulp, positive
    // zero signs) are returned untouched, which makes the construction
    // bit-for-bit idempotent; renormalizing unconditionally would let the
    // last bit oscillate between rounds.
    for (int round = 0; round < 8; ++round) {
        const double n2 = std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
        if (n2 == 0.0) throw AllZeroError{};
        {
            const int k = first_significant(a, n2);
            if (std::abs(n2 - 1.0) <= 1e-14 && a[k].imag() == 0.0 &&
                a[k].real() > 0.0 && canonical_zero_signs(a))
                break;
        }
        const double n = std::sqrt(n2);
        if (n != 1.0)
            for (Complex& z : a) z /= n;
        const int k = first_significant(a, 1.0);
        if (k < 0) throw AllZeroError{};
        const Complex lead = a[k];
        if (lead.imag() != 0.0 || lead.real() < 0.0) {
            const Complex rot = std::conj(lead) / std::abs(lead);
            for (Complex& z : a) z *= rot;
        }
        a[k] = Complex{std::abs(a[k]), 0.0};
        for (Complex& z : a) z = scrub_zero_signs(z);
    }
    return {a[0], a[1], a[2]};
}

QutritState alpha_family_qutrit(double alpha) {
    if (!std::isfinite(alpha)) throw NonFiniteError{};
    const double c = std::cos(alpha), s = std::sin(alpha);
    return make_qutrit(kSqrt2 * c, s, 0.0);
}

BiphotonWaveFunction wave_function(const QutritState& q) {
    BiphotonWaveFunction wf;
    wf.psi[0][0] = q.c1;
    wf.psi[0][1] = q.c2 / kSqrt2;
    wf.psi[1][0] = wf.psi[0][1];
    wf.psi[1][1] = q.c3;
    return wf;
}

ReducedDensityMatrix reduced_density(const QutritState& q) {
    const double d0 = std::norm(q.c1) + 0.5 * std::norm(q.c2);
    const double d1 = std::norm(q.c3) + 0.5 * std::norm(q.c2);
    const Complex off = (q.c1 * std::conj(q.c2) + q.c2 * std::conj(q.c3)) / kSqrt2;
    return {{Complex{d0, 0.0}, off, std::conj(off), Complex{d1, 0.0}}};
}

double concurrence(const QutritState& q) {
    // |2 c1 c3 - c2^2| evaluated projectively: the norm is 1 within a few
    // ulp, and dividing it out keeps sqrt(1 - C^2) from amplifying the
    // last-bit normalization deficit near C = 1.
    return std::min(1.0, std::abs(2.0 * q.c1 * q.c3 - q.c2 * q.c2) / q.norm_squared());
}

double degree_of_polarization(const QutritState& q) {
    const double c = concurrence(q);
    return std::sqrt(std::max(0.0, 1.0 - c * c));
}

SchmidtWeights schmidt_eigenvalues(const QutritState& q) {
    const double p = degree_of_polarization(q);
    return {0.5 * (1.0 + p), 0.5 * (1.0 - p)};
}

SchmidtEntropy schmidt_k_and_entropy(const QutritState& q) {
    const auto [lp, lm] = schmidt_eigenvalues(q);
    const double k = 1.0 / (lp * lp + lm * lm);
    double s = 0.0;
    for (double l : {lp, lm})
        if (l > 0.0) s -= l * std::log2(l);
    return {k, s};
}

StokesVector stokes_vector(const QutritState& q) {
    const Mat2 rho = reduced_density(q).rho;
    return {2.0 * rho.m01.real(), -2.0 * rho.m01.imag(), rho.m00.real() - rho.m11.real()};
}

FactorizationResult factorize(const QutritState& q) {
    FactorizationResult f;

    if (q.c1 == Complex{0.0, 0.0}) {
        if (q.c2 == Complex{0.0, 0.0}) {
            // pure V pair: Q(x) has no roots at all
            f.x_a = PolynomialRoot::infinity();
            f.x_b = PolynomialRoot::infinity();
        } else {
            // linear polynomial: one finite root, the other escapes to infinity
            f.x_a = PolynomialRoot::finite(scrub_zero_signs(-q.c3 / (kSqrt2 * q.c2)));
            f.x_b = PolynomialRoot::infinity();
        }
    } else {
        const Complex disc = std::sqrt(q.c2 * q.c2 - 2.0 * q.c1 * q.c3);
        const Complex num_plus = -q.c2 + disc;
        const Complex num_minus = -q.c2 - disc;
        const Complex denom = kSqrt2 * q.c1;
        // Evaluate the larger-magnitude numerator directly and recover the
        // other root from the product x_a x_b = c3/c1 to avoid cancellation.
        Complex xa, xb;
        if (std::abs(num_plus) >= std::abs(num_minus)) {
            xa = num_plus / denom;
            xb = (xa == Complex{0.0, 0.0}) ? xa : (q.c3 / q.c1) / xa;
        } else {
            xb = num_minus / denom;
            xa = (xb == Complex{0.0, 0.0}) ? xb : (q.c3 / q.c1) / xb;
        }
        f.x_a = finite(xa) ? PolynomialRoot::finite(scrub_zero_signs(xa))
                           : PolynomialRoot::infinity();
        f.x_b = finite(xb) ? PolynomialRoot::finite(scrub_zero_signs(xb))
                           : PolynomialRoot::infinity();
    }

    f.mode_a = mode_of_root(f.x_a);
    f.mode_b = mode_of_root(f.x_b);

    // phi0 turns the raw overlap <mode_a|mode_b> real nonnegative; it is
    // indeterminate for orthogonal modes and set to 0 there.
    const Complex overlap = inner(f.mode_a, f.mode_b);
    f.commutator = std::min(1.0, std::abs(overlap));
    f.phi0 = (f.commutator == 0.0) ? 0.0 : 0.5 * std::arg(overlap);
    f.norm_n = 1.0 / std::sqrt(1.0 + f.commutator * f.commutator);
    return f;
}

SchmidtDecomposition schmidt_decomposition(const QutritState& q) {
    const FactorizationResult f = factorize(q);
    const Complex phase_a = std::polar(1.0, f.phi0);
    const Complex phase_b = std::polar(1.0, -f.phi0);
    const JonesVector psi_a{phase_a * f.mode_a.h, phase_a * f.mode_a.v};
    const JonesVector psi_b{phase_b * f.mode_b.h, phase_b * f.mode_b.v};

    SchmidtDecomposition sd;
    const auto [lp, lm] = schmidt_eigenvalues(q);
    sd.lambda_plus = lp;
    sd.lambda_minus = lm;
    sd.basis_free = (lp - lm < Tolerances{}.norm);

    sd.mode_plus = canonical_phase(normalized(psi_a.h + psi_b.h, psi_a.v + psi_b.v));
    const Complex dh = Complex{0.0, 1.0} * (psi_b.h - psi_a.h);
    const Complex dv = Complex{0.0, 1.0} * (psi_b.v - psi_a.v);
    if (std::sqrt(std::norm(dh) + std::norm(dv)) < 1e-150) {
        // coincident factorizing modes: the state is disentangled and the
        // second mode only enters with weight lambda_minus ~ 0
        sd.mode_minus = canonical_phase(orthogonal(sd.mode_plus));
    } else {
        sd.mode_minus = canonical_phase(normalized(dh, dv));
    }

    // Project the wave function on the two mode-pair products to recover the
    // coefficient phases; phi is half their difference, folded into [0, pi).
    const BiphotonWaveFunction wf = wave_function(q);
    Complex coef_plus = 0.0, coef_minus = 0.0;
    for (int i = 0; i < 2; ++i) {
        const Complex pi_ = (i == 0) ? sd.mode_plus.h : sd.mode_plus.v;
        const Complex mi = (i == 0) ? sd.mode_minus.h : sd.mode_minus.v;
        for (int j = 0; j < 2; ++j) {
            const Complex pj = (j == 0) ? sd.mode_plus.h : sd.mode_plus.v;
            const Complex mj = (j == 0) ? sd.mode_minus.h : sd.mode_minus.v;
            coef_plus += std::conj(pi_ * pj) * wf.psi[i][j];
            coef_minus += std::conj(mi * mj) * wf.psi[i][j];
        }
    }
    if (std::abs(coef_minus) < 1e-150 || std::abs(coef_plus) < 1e-150) {
        sd.phi = 0.0;
    } else {
        constexpr double kPi = 3.141592653589793238462643383279502884;
        double two_phi = std::arg(coef_minus) - std::arg(coef_plus);
        double phi = std::fmod(0.5 * two_phi, kPi);
        if (phi < 0.0) phi += kPi;
        if (phi >= kPi || phi == 0.0) phi = 0.0;
        sd.phi = phi;
    }
    return sd;
}

double concurrence_from_commutator(const FactorizationResult& f) {
    const double k2 = f.commutator * f.commutator;
    return (1.0 - k2) / (1.0 + k2);
}

EigenDecomposition eigen_oracle(const ReducedDensityMatrix& rho, const Tolerances& tol) {
    const Mat2& m = rho.rho;
    if (std::abs(m.m00.imag()) > tol.norm || std::abs(m.m11.imag()) > tol.norm ||
        std::abs(m.m01 - std::conj(m.m10)) > tol.norm)
        throw NotHermitianError{};

    const double a = m.m00.real();
    const double b = m.m11.real();
    const Complex c = m.m01;
    const double half_gap = std::sqrt(0.25 * (a - b) * (a - b) + std::norm(c));
    const double mean = 0.5 * (a + b);

    EigenDecomposition e;
    e.values = {mean + half_gap, mean - half_gap};

    // Candidate eigenvector columns of (m - lambda_plus I); pick the better
    // conditioned one, fall back to the standard basis for a scalar matrix.
    const JonesVector cand1{c, Complex{e.values[0] - a, 0.0}};
    const JonesVector cand2{Complex{e.values[0] - b, 0.0}, std::conj(c)};
    const JonesVector pick = (cand1.norm_squared() >= cand2.norm_squared()) ? cand1 : cand2;
    if (pick.norm() < 1e-150) {
        e.vectors = {JonesVector{1.0, 0.0}, JonesVector{0.0, 1.0}};
    } else {
        const JonesVector v0 = canonical_phase(normalized(pick.h, pick.v));
        e.vectors = {v0, canonical_phase(orthogonal(v0))};
    }
    return e;
}

BiphotonWaveFunction reconstruct(const SchmidtDecomposition& sd) {
    const double wp = std::sqrt(std::max(0.0, sd.lambda_plus));
    const Complex wm =
        std::polar(std::sqrt(std::max(0.0, sd.lambda_minus)), 2.0 * sd.phi);
    BiphotonWaveFunction wf;
    const std::array<Complex, 2> p{sd.mode_plus.h, sd.mode_plus.v};
    const std::array<Complex, 2> m{sd.mode_minus.h, sd.mode_minus.v};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) wf.psi[i][j] = wp * p[i] * p[j] + wm * m[i] * m[j];
    return wf;
}

BiphotonWaveFunction reconstruct(const FactorizationResult& f) {
    const Complex pa = std::polar(1.0, f.phi0);
    const Complex pb = std::polar(1.0, -f.phi0);
    const JonesVector psi_a{pa * f.mode_a.h, pa * f.mode_a.v};
    const JonesVector psi_b{pb * f.mode_b.h, pb * f.mode_b.v};
    return symmetrized_product(psi_a, psi_b, f.norm_n);
}

double residual_up_to_phase(const BiphotonWaveFunction& a, const BiphotonWaveFunction& b) {
    const Complex ov = inner(b, a);
    const Complex rot = (std::abs(ov) == 0.0) ? Complex{1.0, 0.0} : ov / std::abs(ov);
    double r2 = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r2 += std::norm(a.psi[i][j] - rot * b.psi[i][j]);
    return std::sqrt(r2);
}

double residual_up_to_phase(const JonesVector& a, const JonesVector& b) {
    const Complex ov = inner(b, a);
    const Complex rot = (std::abs(ov) == 0.0) ? Complex{1.0, 0.0} : ov / std::abs(ov);
    return std::sqrt(std::norm(a.h - rot * b.h) + std::norm(a.v - rot * b.v));
}

JonesVector canonical_phase(const JonesVector& j) {
    // The dominant component (h on ties) is the phase reference; keying on
    // "first nonzero" would let rounding dust in a vanishing h component
    // steal the reference.
    const bool use_h = std::norm(j.h) >= std::norm(j.v);
    const Complex lead = use_h ? j.h : j.v;
    if (lead == Complex{0.0, 0.0}) return j;
    JonesVector out = j;
    if (lead.imag() != 0.0 || lead.real() < 0.0) {
        const Complex rot = std::conj(lead) / std::abs(lead);
        out = {j.h * rot, j.v * rot};
    }
    if (use_h)
        out.h = Complex{std::abs(out.h), 0.0};
    else
        out.v = Complex{std::abs(out.v), 0.0};
    out.h = scrub_zero_signs(out.h);
    out.v = scrub_zero_signs(out.v);
    return out;
}

}  // namespace biphoton
