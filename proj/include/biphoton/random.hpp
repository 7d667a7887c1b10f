// Seed-stable random sampling. std::poisson_distribution's algorithm is
// implementation-defined, which would tie golden seeded outputs to one
// standard library; these draws depend only on the fully specified
// mt19937_64 stream.

#pragma once

#include <cstdint>
#include <random>

namespace biphoton {

/// Uniform double in [0, 1) from the top 53 bits of the generator.
double uniform_double(std::mt19937_64& rng);

/// Standard normal deviate (Box-Muller, one value per call).
double normal_double(std::mt19937_64& rng);

/// Poisson draw with the given mean: sequential inversion below mean 10,
/// Hormann's PTRD transformed rejection above.
std::int64_t poisson_sample(std::mt19937_64& rng, double mean);

}  // namespace biphoton
