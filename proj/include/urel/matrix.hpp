#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace urel {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSquareError : Error {
    using Error::Error;
};
struct NotHermitianError : Error {
    using Error::Error;
};
struct NotPsdError : Error {
    using Error::Error;
};
struct NotPositiveDefiniteError : Error {
    using Error::Error;
};
struct DimensionMismatchError : Error {
    using Error::Error;
};
struct InvalidWeightError : Error {
    using Error::Error;
};
struct InvalidPError : Error {
    using Error::Error;
};
struct InvalidKError : Error {
    using Error::Error;
};
struct BlockMismatchError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct UnknownCaseError : Error {
    using Error::Error;
};

// Default tolerances. PSD acceptance is scale-aware: a Hermitian matrix
// counts as PSD iff its minimum eigenvalue is >= -tol * max(1, spectral norm).
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kDefaultTol = 1e-9;

inline double hermitian_deviation(const Matrix& a) {
    return (a - a.adjoint()).norm();
}

inline bool is_hermitian(const Matrix& a, double tol = kHermitianTol) {
    if (a.rows() != a.cols()) return false;
    return hermitian_deviation(a) <= tol * std::max(1.0, a.norm());
}

inline bool all_finite(const Matrix& a) {
    return a.allFinite();
}

}  // namespace urel
