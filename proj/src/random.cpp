#include "biphoton/random.hpp"

#include <cmath>
#include <stdexcept>

namespace biphoton {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))

// Sequential inversion; fine for small means.
std::int64_t poisson_inversion(std::mt19937_64& rng, double mean) {
    const double u = uniform_double(rng);
    double p = std::exp(-mean);
    double cum = p;
    std::int64_t k = 0;
    while (u > cum && k < 2000) {
        ++k;
        p *= mean / static_cast<double>(k);
        cum += p;
    }
    return k;
}

// W. Hormann's PTRD transformed-rejection sampler, valid for mean >= 10.
std::int64_t poisson_ptrd(std::mt19937_64& rng, double mean) {
    const double smu = std::sqrt(mean);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        double u;
        double v = uniform_double(rng);
        if (v <= 0.86 * v_r) {
            u = v / v_r - 0.43;
            return static_cast<std::int64_t>(
                std::floor((2.0 * a / (0.5 - std::abs(u)) + b) * u + mean + 0.445));
        }
        if (v >= v_r) {
            u = uniform_double(rng) - 0.5;
        } else {
            u = v / v_r - 0.93;
            u = ((u < 0.0) ? -0.5 : 0.5) - u;
            v = uniform_double(rng) * v_r;
        }
        const double us = 0.5 - std::abs(u);
        if (us < 0.013 && v > us) continue;
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.445);
        v = v * inv_alpha / (a / (us * us) + b);
        if (kf >= 10.0) {
            if (std::log(v * smu) <=
                (kf + 0.5) * std::log(mean / kf) - mean - kLogSqrt2Pi + kf -
                    (1.0 / 12.0 - 1.0 / (360.0 * kf * kf)) / kf)
                return static_cast<std::int64_t>(kf);
        } else if (kf >= 0.0) {
            if (std::log(v) <= kf * std::log(mean) - mean - std::lgamma(kf + 1.0))
                return static_cast<std::int64_t>(kf);
        }
    }
}

}  // namespace

double uniform_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double normal_double(std::mt19937_64& rng) {
    double u1 = uniform_double(rng);
    while (u1 <= 0.0) u1 = uniform_double(rng);
    const double u2 = uniform_double(rng);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
}

std::int64_t poisson_sample(std::mt19937_64& rng, double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw std::invalid_argument("poisson_sample: mean must be finite and >= 0");
    if (mean == 0.0) return 0;
    if (mean < 10.0) return poisson_inversion(rng, mean);
    return poisson_ptrd(rng, mean);
}

}  // namespace biphoton
