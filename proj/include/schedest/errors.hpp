#pragma once

#include <stdexcept>

namespace schedest {

// Covariance matrix is not symmetric as stored (or not square).
struct NotSymmetricError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Triangular factorization of the covariance failed.
struct NotPositiveDefiniteError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Source dimension below two.
struct DimTooSmallError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Sensor index outside {1..n} or otherwise inconsistent.
struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Operation restricted to a dimension the argument does not have.
struct UnsupportedDimError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature could not meet its tolerance at maximum refinement.
struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace schedest
