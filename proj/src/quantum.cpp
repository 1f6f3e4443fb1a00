#include "urel/quantum.hpp"

#include <cmath>

#include "urel/linalg.hpp"

namespace urel {

namespace {
constexpr double kObservableHermitianTol = 1e-8;
constexpr double kTraceTol = 1e-10;
constexpr double kCovarianceSymmetryTol = 1e-10;
}  // namespace

Observable::Observable(Matrix m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ValidationError("Observable: matrix must be square and nonempty");
    }
    if (!all_finite(m)) {
        throw ValidationError("Observable: matrix has non-finite entries");
    }
    double dev = hermitian_deviation(m);
    if (dev > kObservableHermitianTol * std::max(1.0, m.norm())) {
        throw ValidationError("Observable: Hermitian deviation " + std::to_string(dev) +
                              " exceeds tolerance");
    }
    mat_ = 0.5 * (m + m.adjoint());
}

DensityState::DensityState(Matrix rho) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        throw ValidationError("DensityState: matrix must be square and nonempty");
    }
    if (!all_finite(rho)) {
        throw ValidationError("DensityState: matrix has non-finite entries");
    }
    if (!is_psd(rho, kPsdTol)) {
        throw ValidationError("DensityState: matrix is not positive semidefinite");
    }
    Complex tr = rho.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
        throw ValidationError("DensityState: trace deviates from 1 by " +
                              std::to_string(std::abs(tr - Complex(1.0, 0.0))));
    }
    rho_ = 0.5 * (rho + rho.adjoint());
}

DensityState DensityState::maximally_mixed(Eigen::Index dim) {
    if (dim < 1) throw ValidationError("DensityState: dimension must be positive");
    return DensityState(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityState DensityState::pure(const Vector& psi) {
    double n = psi.norm();
    if (!(n > 0.0) || !psi.allFinite()) {
        throw ValidationError("DensityState: pure state vector must be nonzero and finite");
    }
    Vector unit = psi / n;
    return DensityState(unit * unit.adjoint());
}

ObservableTuple::ObservableTuple(std::vector<Observable> obs) : obs_(std::move(obs)) {
    if (obs_.empty()) throw ValidationError("ObservableTuple: empty tuple");
    for (const auto& o : obs_) {
        if (o.dim() != obs_.front().dim()) {
            throw ValidationError("ObservableTuple: observables differ in dimension");
        }
    }
}

Complex expectation(const DensityState& state, const Matrix& x) {
    if (x.rows() != state.dim() || x.cols() != state.dim()) {
        throw DimensionMismatchError("expectation: operand dimension " +
                                     std::to_string(x.rows()) + " differs from state dimension " +
                                     std::to_string(state.dim()));
    }
    return (state.rho() * x).trace();
}

ObservableTuple center(const DensityState& state, const ObservableTuple& tuple) {
    if (tuple.dim() != state.dim()) {
        throw DimensionMismatchError("center: tuple and state dimensions differ");
    }
    std::vector<Observable> out;
    out.reserve(tuple.size());
    const Matrix id = Matrix::Identity(state.dim(), state.dim());
    for (const auto& o : tuple.observables()) {
        double mean = std::real(expectation(state, o.matrix()));
        out.emplace_back(Matrix(o.matrix() - mean * id));
    }
    return ObservableTuple(std::move(out));
}

Matrix commutator(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols()) {
        throw DimensionMismatchError("commutator: operands must be square of equal dimension");
    }
    return x * y - y * x;
}

Matrix anticommutator(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols()) {
        throw DimensionMismatchError("anticommutator: operands must be square of equal dimension");
    }
    return x * y + y * x;
}

MomentMatrices moment_matrices(const DensityState& state, const ObservableTuple& tuple) {
    ObservableTuple centered = center(state, tuple);
    const auto n = static_cast<Eigen::Index>(centered.size());

    Matrix gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            gram(i, j) = 0.5 * expectation(state, centered[i].matrix() * centered[j].matrix());
        }
    }
    gram = 0.5 * (gram + gram.adjoint());

    Matrix cov = gram + gram.transpose();
    double asym = cov.imag().norm();
    if (asym > kCovarianceSymmetryTol * std::max(1.0, cov.norm())) {
        throw ValidationError("moment_matrices: covariance asymmetry " + std::to_string(asym) +
                              " exceeds tolerance");
    }
    RealMatrix covReal = cov.real();
    covReal = 0.5 * (covReal + covReal.transpose()).eval();

    MomentMatrices mm;
    mm.gram = gram;
    mm.covariance = covReal;
    mm.commutator = gram - gram.transpose();
    mm.centered = true;
    return mm;
}

RealVector variances(const DensityState& state, const ObservableTuple& tuple) {
    return moment_matrices(state, tuple).covariance.diagonal();
}

}  // namespace urel
