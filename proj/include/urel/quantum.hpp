#pragma once

#include <vector>

#include "urel/matrix.hpp"

namespace urel {

/// A Hermitian matrix. Inputs within 1e-8 of Hermitian are symmetrized to
/// (x + x*)/2; anything further off is rejected.
class Observable {
public:
    explicit Observable(Matrix m);

    const Matrix& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

private:
    Matrix mat_;
};

/// A density matrix: PSD with unit trace. Realizes the state
/// phi(x) = trace(rho x).
class DensityState {
public:
    explicit DensityState(Matrix rho);

    static DensityState maximally_mixed(Eigen::Index dim);
    static DensityState pure(const Vector& psi);

    const Matrix& rho() const { return rho_; }
    Eigen::Index dim() const { return rho_.rows(); }

private:
    Matrix rho_;
};

/// Ordered, nonempty list of observables of a common dimension.
class ObservableTuple {
public:
    explicit ObservableTuple(std::vector<Observable> obs);

    const Observable& operator[](size_t i) const { return obs_[i]; }
    size_t size() const { return obs_.size(); }
    Eigen::Index dim() const { return obs_.front().dim(); }
    const std::vector<Observable>& observables() const { return obs_; }

private:
    std::vector<Observable> obs_;
};

/// Moment matrices of a centered tuple under a state:
///   gram(i,j)       = (1/2) phi(x_i x_j)          (Hermitian PSD)
///   covariance      = gram + gram^T = 2 Re(gram)   (real symmetric PSD)
///   commutator(i,j) = (1/2) phi([x_i, x_j])        (Hermitian, i*comm real skew)
struct MomentMatrices {
    Matrix gram;
    RealMatrix covariance;
    Matrix commutator;
    bool centered = true;
};

Complex expectation(const DensityState& state, const Matrix& x);

/// Replaces each x_j by x_j - phi(x_j) I.
ObservableTuple center(const DensityState& state, const ObservableTuple& tuple);

Matrix commutator(const Matrix& x, const Matrix& y);
Matrix anticommutator(const Matrix& x, const Matrix& y);

/// Centers the tuple if needed, then assembles the moment matrices.
MomentMatrices moment_matrices(const DensityState& state, const ObservableTuple& tuple);

/// Variances sigma^2(x_j) of the centered tuple; equal to the covariance
/// diagonal entries exactly.
RealVector variances(const DensityState& state, const ObservableTuple& tuple);

}  // namespace urel
