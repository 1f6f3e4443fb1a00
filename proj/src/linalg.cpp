#include "urel/linalg.hpp"

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace urel {

namespace {

void require_square(const Matrix& a, const char* who) {
    if (a.rows() != a.cols()) {
        throw NotSquareError(std::string(who) + ": matrix is " + std::to_string(a.rows()) +
                             "x" + std::to_string(a.cols()));
    }
}

void require_hermitian(const Matrix& a, const char* who, double tol = kHermitianTol) {
    require_square(a, who);
    if (!is_hermitian(a, tol)) {
        throw NotHermitianError(std::string(who) + ": Hermitian deviation " +
                                std::to_string(hermitian_deviation(a)) + " exceeds tolerance");
    }
}

// Spectral function calculus: V f(lambda) V* on the Hermitian part.
template <typename F>
Matrix apply_spectral(const EigenDecomposition& ed, F f) {
    RealVector mapped(ed.eigenvalues.size());
    for (Eigen::Index i = 0; i < ed.eigenvalues.size(); ++i) {
        mapped(i) = f(ed.eigenvalues(i));
    }
    return ed.eigenvectors * mapped.asDiagonal() * ed.eigenvectors.adjoint();
}

Matrix hermitize(const Matrix& a) {
    return 0.5 * (a + a.adjoint());
}

}  // namespace

int BlockStructure::dimension() const {
    int d = 0;
    for (int b : blockSizes) {
        if (b <= 0) throw BlockMismatchError("BlockStructure: nonpositive block size");
        d += b;
    }
    return d;
}

EigenDecomposition eigh(const Matrix& h) {
    require_hermitian(h, "eigh");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(h));
    if (solver.info() != Eigen::Success) {
        throw Error("eigh: eigendecomposition failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix matrix_sqrt(const Matrix& a) {
    require_hermitian(a, "matrix_sqrt");
    auto ed = eigh(a);
    double scale = std::max(std::abs(ed.eigenvalues(0)),
                            std::abs(ed.eigenvalues(ed.eigenvalues.size() - 1)));
    if (ed.eigenvalues(0) < -kPsdTol * scale) {
        throw NotPsdError("matrix_sqrt: minimum eigenvalue " + std::to_string(ed.eigenvalues(0)) +
                          " below PSD tolerance");
    }
    return apply_spectral(ed, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

Matrix matrix_power(const Matrix& a, double t) {
    require_hermitian(a, "matrix_power");
    auto ed = eigh(a);
    double scale = std::max(1.0, std::abs(ed.eigenvalues(ed.eigenvalues.size() - 1)));
    if (ed.eigenvalues(0) <= 1e-14 * scale) {
        throw NotPositiveDefiniteError("matrix_power: minimum eigenvalue " +
                                       std::to_string(ed.eigenvalues(0)) + " is not positive");
    }
    return apply_spectral(ed, [t](double x) { return std::pow(x, t); });
}

GeometricMeanResult geometric_mean(const Matrix& a, const Matrix& b, double t) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatchError("geometric_mean: operand dimensions differ");
    }
    require_hermitian(a, "geometric_mean");
    require_hermitian(b, "geometric_mean");
    if (!(t >= 0.0 && t <= 1.0)) {
        throw InvalidWeightError("geometric_mean: weight " + std::to_string(t) +
                                 " outside [0,1]");
    }

    // Singular operands are lifted by eps*I; the mean is continuous from
    // above, so the lifted value dominates the exact one in the PSD order.
    const double eps = 1e-12 * std::max(1.0, std::real(a.trace() + b.trace()));
    Matrix a2 = hermitize(a);
    Matrix b2 = hermitize(b);
    bool regularized = false;
    if (min_eigenvalue(a2) < eps || min_eigenvalue(b2) < eps) {
        a2 += eps * Matrix::Identity(a.rows(), a.cols());
        b2 += eps * Matrix::Identity(a.rows(), a.cols());
        regularized = true;
    }

    auto eda = eigh(a2);
    Matrix sqrtA = apply_spectral(eda, [](double x) { return std::sqrt(std::max(x, 0.0)); });
    Matrix isqrtA = apply_spectral(eda, [](double x) {
        return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0;
    });
    Matrix sqrtB = apply_spectral(eigh(b2), [](double x) { return std::sqrt(std::max(x, 0.0)); });

    // A^{-1/2} B A^{-1/2} = V V* with V = A^{-1/2} B^{1/2}, so its t-th power
    // is P diag(sigma^{2t}) P* from the SVD V = P diag(sigma) Q*. Working on
    // the factor keeps the congruence accurate when A is ill conditioned.
    Matrix midPow;
    if (t == 0.0) {
        midPow = Matrix::Identity(a.rows(), a.cols());
    } else {
        Matrix v = isqrtA * sqrtB;
        Eigen::JacobiSVD<Matrix> svd(v, Eigen::ComputeFullU);
        RealVector powered = svd.singularValues();
        for (Eigen::Index i = 0; i < powered.size(); ++i) {
            powered(i) = std::pow(powered(i) * powered(i), t);
        }
        midPow = svd.matrixU() * powered.asDiagonal() * svd.matrixU().adjoint();
    }
    return {hermitize(sqrtA * midPow * sqrtA), regularized};
}

PolarDecomposition polar_hermitian(const Matrix& s) {
    require_hermitian(s, "polar_hermitian");
    auto ed = eigh(s);
    // sign(0) := +1 keeps U unitary on the kernel.
    Matrix u = apply_spectral(ed, [](double x) { return x < 0.0 ? -1.0 : 1.0; });
    Matrix p = apply_spectral(ed, [](double x) { return std::abs(x); });
    return {u, p};
}

Matrix abs_matrix(const Matrix& s) {
    require_hermitian(s, "abs_matrix");
    return apply_spectral(eigh(s), [](double x) { return std::abs(x); });
}

RealVector singular_values(const Matrix& a) {
    RealVector sv;
    if (a.rows() == a.cols() && is_hermitian(a)) {
        sv = eigh(a).eigenvalues.cwiseAbs();
    } else {
        Matrix gram = a.adjoint() * a;
        auto ed = eigh(hermitize(gram));
        sv = ed.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

double schatten_norm(const Matrix& a, double p) {
    if (!(p >= 1.0)) {
        throw InvalidPError("schatten_norm: p = " + std::to_string(p) + " is below 1");
    }
    RealVector sv = singular_values(a);
    if (std::isinf(p)) return sv.size() > 0 ? sv(0) : 0.0;
    if (p == 1.0) return sv.sum();
    if (p == 2.0) return std::sqrt(sv.squaredNorm());
    double acc = 0.0;
    for (double s : sv) acc += std::pow(s, p);
    return std::pow(acc, 1.0 / p);
}

double trace_norm(const Matrix& a) {
    return schatten_norm(a, 1.0);
}

double frobenius_norm(const Matrix& a) {
    return schatten_norm(a, 2.0);
}

double operator_norm(const Matrix& a) {
    return schatten_norm(a, std::numeric_limits<double>::infinity());
}

double ky_fan_norm(const Matrix& a, int k) {
    const int kmax = static_cast<int>(std::min(a.rows(), a.cols()));
    if (k < 1 || k > kmax) {
        throw InvalidKError("ky_fan_norm: k = " + std::to_string(k) + " outside [1, " +
                            std::to_string(kmax) + "]");
    }
    RealVector sv = singular_values(a);
    return sv.head(k).sum();
}

bool is_psd(const Matrix& a, double tol) {
    require_square(a, "is_psd");
    if (!is_hermitian(a, std::max(tol, kHermitianTol))) return false;
    auto ed = eigh(hermitize(a));
    double specNorm = std::max(std::abs(ed.eigenvalues(0)),
                               std::abs(ed.eigenvalues(ed.eigenvalues.size() - 1)));
    return ed.eigenvalues(0) >= -tol * std::max(1.0, specNorm);
}

double min_eigenvalue(const Matrix& a) {
    require_square(a, "min_eigenvalue");
    return eigh(hermitize(a)).eigenvalues(0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b);
}

Matrix pinch_block_diagonal(const Matrix& a, const BlockStructure& bs) {
    require_square(a, "pinch_block_diagonal");
    if (bs.dimension() != a.rows()) {
        throw BlockMismatchError("pinch_block_diagonal: block sizes sum to " +
                                 std::to_string(bs.dimension()) + ", matrix dimension is " +
                                 std::to_string(a.rows()));
    }
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    int off = 0;
    for (int b : bs.blockSizes) {
        out.block(off, off, b, b) = a.block(off, off, b, b);
        off += b;
    }
    return out;
}

Matrix fourier_block_average(const Matrix& a, const BlockStructure& bs) {
    require_square(a, "fourier_block_average");
    if (bs.dimension() != a.rows()) {
        throw BlockMismatchError("fourier_block_average: block sizes do not match dimension");
    }
    const int k = static_cast<int>(bs.blockSizes.size());
    std::vector<int> blockOf(a.rows());
    int off = 0;
    for (int j = 0; j < k; ++j) {
        for (int r = 0; r < bs.blockSizes[j]; ++r) blockOf[off + r] = j;
        off += bs.blockSizes[j];
    }
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    for (int m = 0; m < k; ++m) {
        Vector phase(a.rows());
        for (int r = 0; r < a.rows(); ++r) {
            phase(r) = std::polar(1.0, 2.0 * M_PI * m * blockOf[r] / k);
        }
        out += phase.asDiagonal() * a * phase.conjugate().asDiagonal();
    }
    return out / static_cast<double>(k);
}

Matrix block_matrix(const std::vector<std::vector<Matrix>>& blocks) {
    const size_t k = blocks.size();
    if (k == 0) throw BlockMismatchError("block_matrix: empty block grid");
    for (const auto& row : blocks) {
        if (row.size() != k) throw BlockMismatchError("block_matrix: grid is not square");
    }
    const Eigen::Index d = blocks[0][0].rows();
    for (const auto& row : blocks) {
        for (const auto& blk : row) {
            if (blk.rows() != d || blk.cols() != d) {
                throw BlockMismatchError("block_matrix: blocks differ in dimension");
            }
        }
    }
    Matrix out(static_cast<Eigen::Index>(k) * d, static_cast<Eigen::Index>(k) * d);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
            out.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(j) * d, d, d) =
                blocks[i][j];
        }
    }
    return out;
}

double riemannian_inner(const Matrix& a, const Matrix& h, const Matrix& k) {
    if (h.rows() != a.rows() || k.rows() != a.rows() || h.cols() != a.cols() ||
        k.cols() != a.cols()) {
        throw DimensionMismatchError("riemannian_inner: dimensions differ");
    }
    require_hermitian(h, "riemannian_inner");
    require_hermitian(k, "riemannian_inner");
    auto ed = eigh(a);
    double scale = std::max(1.0, std::abs(ed.eigenvalues(ed.eigenvalues.size() - 1)));
    if (ed.eigenvalues(0) <= 1e-14 * scale) {
        throw NotPositiveDefiniteError("riemannian_inner: base point is not positive definite");
    }
    Matrix ainv = apply_spectral(ed, [](double x) { return 1.0 / x; });
    return std::real((ainv * h * ainv * k).trace());
}

Complex det(const Matrix& a) {
    require_square(a, "det");
    if (is_hermitian(a)) {
        auto ed = eigh(a);
        double prod = 1.0;
        for (double lam : ed.eigenvalues) prod *= lam;
        return Complex(prod, 0.0);
    }
    return a.determinant();
}

}  // namespace urel
