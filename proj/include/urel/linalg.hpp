#pragma once

#include <vector>

#include "urel/matrix.hpp"

namespace urel {

/// Result of a Hermitian eigendecomposition H = V diag(lambda) V*.
/// Eigenvalues are real and ascending; eigenvector columns are orthonormal.
struct EigenDecomposition {
    RealVector eigenvalues;
    Matrix eigenvectors;
};

/// Partition of a square matrix into consecutive diagonal blocks.
struct BlockStructure {
    std::vector<int> blockSizes;

    int dimension() const;
};

/// Hermitian polar decomposition S = U * P with U = sign(S), P = |S|.
struct PolarDecomposition {
    Matrix unitary;
    Matrix positive;
};

/// Weighted geometric mean A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}.
/// `regularized` is set when singular operands were lifted by eps*I.
struct GeometricMeanResult {
    Matrix value;
    bool regularized = false;
};

EigenDecomposition eigh(const Matrix& h);

Matrix matrix_sqrt(const Matrix& a);

Matrix matrix_power(const Matrix& a, double t);

GeometricMeanResult geometric_mean(const Matrix& a, const Matrix& b, double t = 0.5);

PolarDecomposition polar_hermitian(const Matrix& s);

Matrix abs_matrix(const Matrix& s);

/// Singular values in descending order, computed from the spectrum of A*A
/// (or |eigenvalues| directly when A is Hermitian).
RealVector singular_values(const Matrix& a);

double schatten_norm(const Matrix& a, double p);
double trace_norm(const Matrix& a);
double frobenius_norm(const Matrix& a);
double operator_norm(const Matrix& a);

double ky_fan_norm(const Matrix& a, int k);

bool is_psd(const Matrix& a, double tol = kPsdTol);

/// Minimum eigenvalue of the Hermitian part of a square matrix.
double min_eigenvalue(const Matrix& a);

Matrix kron(const Matrix& a, const Matrix& b);

Matrix pinch_block_diagonal(const Matrix& a, const BlockStructure& bs);

/// Average (1/k) sum_m U_m A U_m* over U_m = blockdiag(w^{j m} I) with
/// w = exp(2*pi*i/k). Agrees with pinch_block_diagonal up to rounding.
Matrix fourier_block_average(const Matrix& a, const BlockStructure& bs);

Matrix block_matrix(const std::vector<std::vector<Matrix>>& blocks);

/// trace(A^{-1} H A^{-1} K) for positive definite A and Hermitian H, K.
double riemannian_inner(const Matrix& a, const Matrix& h, const Matrix& k);

/// Determinant; Hermitian inputs go through the eigenvalue product to avoid
/// cancellation, everything else through partial-pivot LU.
Complex det(const Matrix& a);

}  // namespace urel
