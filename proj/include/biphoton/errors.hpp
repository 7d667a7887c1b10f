// Error types thrown on invalid inputs. Degenerate-but-resolvable
// configurations are reported through result flags, not exceptions.

#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

struct AllZeroError : std::invalid_argument {
    AllZeroError() : std::invalid_argument("qutrit amplitudes are all zero") {}
};

struct NonFiniteError : std::invalid_argument {
    NonFiniteError() : std::invalid_argument("input contains a non-finite value") {}
};

struct NotHermitianError : std::invalid_argument {
    NotHermitianError() : std::invalid_argument("matrix is not Hermitian within tolerance") {}
};

struct NotNormalizedError : std::invalid_argument {
    NotNormalizedError() : std::invalid_argument("vector is not unit-norm within tolerance") {}
};

struct ZeroVectorError : std::invalid_argument {
    ZeroVectorError() : std::invalid_argument("zero vector has no direction") {}
};

struct OutOfRangeError : std::domain_error {
    explicit OutOfRangeError(const std::string& what) : std::domain_error(what) {}
};

struct NotAntipodalError : std::invalid_argument {
    NotAntipodalError() : std::invalid_argument("Schmidt-mode Stokes vectors must be antipodal") {}
};

struct NotUnitaryError : std::invalid_argument {
    NotUnitaryError() : std::invalid_argument("matrix is not unitary within tolerance") {}
};

struct NotAlignedError : std::invalid_argument {
    NotAlignedError() : std::invalid_argument("state is not in the Schmidt-aligned form (c2 != 0)") {}
};

struct NoCountsError : std::invalid_argument {
    NoCountsError() : std::invalid_argument("r0 + r90 = 0: no counts to estimate from") {}
};

}  // namespace biphoton
