#include "urel/relations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "urel/rng.hpp"

namespace urel {

namespace {

const std::map<RelationId, std::string>& relation_names() {
    static const std::map<RelationId, std::string> names = {
        {RelationId::DetSumDifference, "det_sum_difference"},
        {RelationId::RobertsonSup, "robertson_sup"},
        {RelationId::SchrodingerHeisenberg, "schrodinger_heisenberg"},
        {RelationId::GeometricMeanMajorization, "geometric_mean_majorization"},
        {RelationId::NormBound, "norm_bound"},
        {RelationId::FrobeniusChain, "frobenius_chain"},
        {RelationId::DiagonalProductBound, "diagonal_product_bound"},
        {RelationId::VarianceProductBound, "variance_product_bound"},
        {RelationId::VarianceMeanBound, "variance_mean_bound"},
        {RelationId::RowSumBound, "row_sum_bound"},
        {RelationId::BlockCommutatorTraceBound, "block_commutator_trace_bound"},
        {RelationId::TwoObservableTraceBound, "two_observable_trace_bound"},
        {RelationId::PinchingTraceStep, "pinching_trace_step"},
    };
    return names;
}

BoundReport make_bound(RelationId id, double lhs, double rhs, double tol) {
    BoundReport r;
    r.relationId = id;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.tol = tol;
    r.satisfied = bound_satisfied(lhs, rhs, tol);
    return r;
}

ChainReport make_chain(RelationId id, std::vector<std::pair<std::string, double>> values,
                       double tol) {
    ChainReport r;
    r.relationId = id;
    r.values = std::move(values);
    r.tol = tol;
    r.satisfied = true;
    r.minGap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < r.values.size(); ++i) {
        double lo = r.values[i].second;
        double hi = r.values[i + 1].second;
        r.minGap = std::min(r.minGap, hi - lo);
        if (!bound_satisfied(lo, hi, tol)) r.satisfied = false;
    }
    return r;
}

void require_psd_input(const Matrix& a, const char* who) {
    if (!is_psd(a, kPsdTol)) {
        throw NotPsdError(std::string(who) + ": operand is not positive semidefinite");
    }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* who) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatchError(std::string(who) + ": operand dimensions differ");
    }
}

double real_det(const Matrix& hermitian) {
    return std::real(det(hermitian));
}

std::vector<double> clamped_real_diagonal(const Matrix& a) {
    std::vector<double> d(static_cast<size_t>(a.rows()));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        d[static_cast<size_t>(i)] = std::max(0.0, std::real(a(i, i)));
    }
    return d;
}

double product(const std::vector<double>& v) {
    double p = 1.0;
    for (double x : v) p *= x;
    return p;
}

// sigma^2(x_k) = 0 makes the k-th commutator row vanish analytically, so the
// variance-product relations hold with both sides 0; flag instead of
// comparing rounding noise.
bool degenerate_variances(const RealVector& var) {
    double maxVar = var.maxCoeff();
    double minVar = var.minCoeff();
    return minVar <= 1e-12 * std::max(1.0, maxVar);
}

void validate_hermitian_tuple(const std::vector<Matrix>& h, size_t minSize, const char* who) {
    if (h.size() < minSize) {
        throw DimensionMismatchError(std::string(who) + ": needs at least " +
                                     std::to_string(minSize) + " observables");
    }
    for (const auto& m : h) {
        if (m.rows() != h.front().rows() || m.cols() != h.front().cols()) {
            throw DimensionMismatchError(std::string(who) + ": observables differ in dimension");
        }
        if (m.rows() != m.cols()) {
            throw NotSquareError(std::string(who) + ": observables must be square");
        }
        if (!is_hermitian(m, 1e-8)) {
            throw NotHermitianError(std::string(who) + ": observable is not Hermitian");
        }
    }
}

Matrix commutator_block_matrix(const std::vector<Matrix>& h) {
    const size_t k = h.size();
    std::vector<std::vector<Matrix>> blocks(k, std::vector<Matrix>(k));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
            blocks[i][j] = commutator(h[i], h[j]);
        }
    }
    return block_matrix(blocks);
}

}  // namespace

std::string to_string(RelationId id) {
    return relation_names().at(id);
}

std::optional<RelationId> parse_relation_id(const std::string& name) {
    for (const auto& [id, n] : relation_names()) {
        if (n == name) return id;
    }
    return std::nullopt;
}

const std::vector<RelationId>& all_relations() {
    static const std::vector<RelationId> ids = [] {
        std::vector<RelationId> v;
        for (const auto& [id, n] : relation_names()) v.push_back(id);
        return v;
    }();
    return ids;
}

bool bound_satisfied(double lhs, double rhs, double tol) {
    return lhs <= rhs + tol * std::max(1.0, std::abs(rhs));
}

BoundReport det_sum_difference(const Matrix& a, const Matrix& b, double tol) {
    require_same_dim(a, b, "det_sum_difference");
    require_psd_input(a, "det_sum_difference");
    require_psd_input(b, "det_sum_difference");
    double dDiff = real_det(a - b);
    double dSum = real_det(a + b);
    auto r = make_bound(RelationId::DetSumDifference, dDiff * dDiff, dSum * dSum, tol);
    r.witness["det_difference"] = dDiff;
    r.witness["det_sum"] = dSum;
    return r;
}

std::optional<std::pair<Matrix, Matrix>> square_order_counterexample(int dim, int trials,
                                                                     uint64_t seed) {
    if (dim < 1) throw DimensionMismatchError("square_order_counterexample: dim must be >= 1");
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::stream(seed, static_cast<uint64_t>(t));
        Matrix g = gaussian_matrix(dim, dim, rng);
        Matrix hmat = gaussian_matrix(dim, dim, rng);
        Matrix a = g * g.adjoint();
        Matrix b = hmat * hmat.adjoint();
        // Near-commuting pairs satisfy the order; skip them early.
        Matrix comm = a * b - b * a;
        if (comm.norm() < 0.1 * a.norm() * b.norm()) continue;
        Matrix sum = a + b;
        Matrix diff = a - b;
        Matrix gap = sum * sum - diff * diff;
        if (min_eigenvalue(gap) < -1e-6) {
            // Re-verify the witness before returning it.
            if (is_psd(a, kPsdTol) && is_psd(b, kPsdTol) && min_eigenvalue(gap) < -1e-6) {
                return std::make_pair(a, b);
            }
        }
    }
    return std::nullopt;
}

BoundReport geometric_mean_majorization(const Matrix& a, const Matrix& b, double tol) {
    require_same_dim(a, b, "geometric_mean_majorization");
    require_psd_input(a, "geometric_mean_majorization");
    require_psd_input(b, "geometric_mean_majorization");

    Matrix diff = a - b;
    Matrix u = polar_hermitian(diff).unitary;
    Matrix sum = a + b;
    GeometricMeanResult mean = geometric_mean(sum, u * sum * u.adjoint());
    Matrix gap = mean.value - abs_matrix(diff);

    double minEig = min_eigenvalue(gap);
    double specNorm = operator_norm(gap);
    double effTol = tol * std::max(1.0, specNorm);

    BoundReport r;
    r.relationId = RelationId::GeometricMeanMajorization;
    r.lhs = -minEig;
    r.rhs = 0.0;
    r.margin = minEig;
    r.tol = effTol;
    r.satisfied = minEig >= -effTol;
    r.witness["unitary"] = u;
    r.witness["gap_min_eigenvalue"] = minEig;
    r.witness["regularized"] = mean.regularized ? 1.0 : 0.0;
    return r;
}

BoundReport diagonal_product_bound(const Matrix& a, const Matrix& b, double tol) {
    require_same_dim(a, b, "diagonal_product_bound");
    require_psd_input(a, "diagonal_product_bound");
    require_psd_input(b, "diagonal_product_bound");

    const double n = static_cast<double>(a.rows());
    std::vector<double> absDiag = clamped_real_diagonal(abs_matrix(a - b));
    std::vector<double> sumDiag = clamped_real_diagonal(a + b);

    double lhs = std::pow(product(absDiag), 2.0 / n);
    double meanTrace = std::real(a.trace() + b.trace()) / n;
    double rhs = meanTrace * std::pow(product(sumDiag), 1.0 / n);

    auto r = make_bound(RelationId::DiagonalProductBound, lhs, rhs, tol);
    r.witness["abs_difference_diagonal"] = absDiag;
    r.witness["sum_diagonal"] = sumDiag;
    return r;
}

BoundReport robertson_sup(const MomentMatrices& mm, double tol) {
    double dComm = real_det(mm.commutator);
    double dCov = real_det(mm.covariance.cast<Complex>());
    auto r = make_bound(RelationId::RobertsonSup, dComm * dComm, dCov * dCov, tol);
    r.witness["det_commutator"] = dComm;
    r.witness["det_covariance"] = dCov;
    return r;
}

BoundReport robertson_sup(const DensityState& state, const ObservableTuple& tuple, double tol) {
    return robertson_sup(moment_matrices(state, tuple), tol);
}

BoundReport schrodinger_heisenberg(const DensityState& state, const Matrix& x, const Matrix& y,
                                   double tol) {
    if (!is_hermitian(x, 1e-8) || !is_hermitian(y, 1e-8)) {
        throw NotHermitianError("schrodinger_heisenberg: observables must be Hermitian");
    }
    const Matrix id = Matrix::Identity(state.dim(), state.dim());
    Matrix xc = x - std::real(expectation(state, x)) * id;
    Matrix yc = y - std::real(expectation(state, y)) * id;

    Complex phiComm = expectation(state, commutator(xc, yc));
    double varX = std::real(expectation(state, xc * xc));
    double varY = std::real(expectation(state, yc * yc));
    double reYX = std::real(expectation(state, yc * xc));

    double lhs = 0.25 * std::norm(phiComm);
    double rhs = varX * varY - reYX * reYX;
    auto r = make_bound(RelationId::SchrodingerHeisenberg, lhs, rhs, tol);
    r.witness["phi_commutator_abs"] = std::abs(phiComm);
    return r;
}

std::vector<BoundReport> norm_bound(const MomentMatrices& mm, NormFamily family, double tol) {
    const Matrix comm = mm.commutator;
    const Matrix cov = mm.covariance.cast<Complex>();
    const int n = static_cast<int>(comm.rows());

    std::vector<BoundReport> out;
    auto push = [&](const std::string& label, double lhs, double rhs) {
        auto r = make_bound(RelationId::NormBound, lhs, rhs, tol);
        r.witness["norm"] = label;
        out.push_back(std::move(r));
    };

    if (family == NormFamily::KyFan || family == NormFamily::All) {
        for (int k = 1; k <= n; ++k) {
            push("kyfan:" + std::to_string(k), ky_fan_norm(comm, k), ky_fan_norm(cov, k));
        }
    }
    if (family == NormFamily::Schatten || family == NormFamily::All) {
        for (double p : {1.0, 2.0, 3.0}) {
            push("schatten:" + std::to_string(static_cast<int>(p)), schatten_norm(comm, p),
                 schatten_norm(cov, p));
        }
        push("schatten:inf", operator_norm(comm), operator_norm(cov));
    }
    return out;
}

std::vector<BoundReport> norm_bound(const DensityState& state, const ObservableTuple& tuple,
                                    NormFamily family, double tol) {
    return norm_bound(moment_matrices(state, tuple), family, tol);
}

BoundReport norm_bound_aggregate(const MomentMatrices& mm, double tol) {
    auto reports = norm_bound(mm, NormFamily::All, tol);
    size_t worst = 0;
    for (size_t i = 1; i < reports.size(); ++i) {
        if (reports[i].margin < reports[worst].margin) worst = i;
    }
    BoundReport r = reports[worst];
    for (const auto& member : reports) {
        if (!member.satisfied) r.satisfied = false;
    }
    return r;
}

ChainReport frobenius_chain(const MomentMatrices& mm, double tol) {
    const int n = static_cast<int>(mm.commutator.rows());
    double halfSum = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            halfSum += 0.5 * std::norm(2.0 * mm.commutator(i, j));
        }
    }
    double covFrobSq = mm.covariance.squaredNorm();
    double covTrace = mm.covariance.trace();
    double varSum = mm.covariance.diagonal().sum();

    return make_chain(RelationId::FrobeniusChain,
                      {{"half_sum_sq_commutators", halfSum},
                       {"cov_frobenius_sq", covFrobSq},
                       {"cov_trace_sq", covTrace * covTrace},
                       {"variance_sum_sq", varSum * varSum}},
                      tol);
}

ChainReport frobenius_chain(const DensityState& state, const ObservableTuple& tuple, double tol) {
    return frobenius_chain(moment_matrices(state, tuple), tol);
}

BoundReport variance_product_bound(const MomentMatrices& mm, double tol) {
    const double n = static_cast<double>(mm.commutator.rows());
    RealVector var = mm.covariance.diagonal();
    std::vector<double> absDiag = clamped_real_diagonal(abs_matrix(2.0 * mm.commutator));

    double lhs = 0.25 * std::pow(product(absDiag), 2.0 / n);
    double varSum = var.sum();
    double varProd = 1.0;
    for (double v : var) varProd *= std::max(0.0, v);
    double rhs = (varSum / n) * std::pow(varProd, 1.0 / n);

    auto r = make_bound(RelationId::VarianceProductBound, lhs, rhs, tol);
    r.witness["abs_commutator_diagonal"] = absDiag;
    if (degenerate_variances(var)) {
        r.satisfied = true;
        r.witness["degenerate"] = 1.0;
    }
    return r;
}

BoundReport variance_product_bound(const DensityState& state, const ObservableTuple& tuple,
                                   double tol) {
    return variance_product_bound(moment_matrices(state, tuple), tol);
}

BoundReport variance_mean_bound(const MomentMatrices& mm, double tol) {
    const double n = static_cast<double>(mm.commutator.rows());
    RealVector var = mm.covariance.diagonal();
    std::vector<double> absDiag = clamped_real_diagonal(abs_matrix(2.0 * mm.commutator));

    double lhs = 0.5 * std::pow(product(absDiag), 1.0 / n);
    double rhs = var.sum() / n;

    auto r = make_bound(RelationId::VarianceMeanBound, lhs, rhs, tol);
    r.witness["abs_commutator_diagonal"] = absDiag;
    if (degenerate_variances(var)) {
        r.satisfied = true;
        r.witness["degenerate"] = 1.0;
    }
    return r;
}

BoundReport variance_mean_bound(const DensityState& state, const ObservableTuple& tuple,
                                double tol) {
    return variance_mean_bound(moment_matrices(state, tuple), tol);
}

BoundReport row_sum_bound(const MomentMatrices& mm, double tol) {
    const int n = static_cast<int>(mm.commutator.rows());
    RealVector var = mm.covariance.diagonal();

    std::vector<double> rowSums(static_cast<size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            rowSums[static_cast<size_t>(k)] += std::norm(2.0 * mm.commutator(i, k));
        }
    }
    double lhs = 0.25 * std::pow(product(rowSums), 1.0 / n);

    double covOpNorm = operator_norm(mm.covariance.cast<Complex>());
    double sigmaProd = 1.0;
    for (double v : var) sigmaProd *= std::sqrt(std::max(0.0, v));
    double rhs = covOpNorm * std::sqrt(var.sum() / n) * std::pow(sigmaProd, 1.0 / n);

    auto r = make_bound(RelationId::RowSumBound, lhs, rhs, tol);
    r.witness["commutator_row_sums"] = rowSums;
    if (degenerate_variances(var)) {
        r.satisfied = true;
        r.witness["degenerate"] = 1.0;
    }
    return r;
}

BoundReport row_sum_bound(const DensityState& state, const ObservableTuple& tuple, double tol) {
    return row_sum_bound(moment_matrices(state, tuple), tol);
}

std::pair<Matrix, double> gram_negative_example(double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    Matrix h1(2, 2);
    h1 << 0.5 * s, c, c, s;
    Matrix h2(2, 2);
    h2 << c, s, s, 0.5 * c;

    // G(i,j) = <H_i e_j, H_j e_i>, conjugating the second argument.
    std::array<Matrix, 2> h = {h1, h2};
    Matrix g(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Vector u = h[static_cast<size_t>(i)].col(j);
            Vector v = h[static_cast<size_t>(j)].col(i);
            g(i, j) = v.dot(u);  // Eigen's dot conjugates its callee
        }
    }
    return {g, std::real(det(g))};
}

BoundReport block_commutator_trace_bound(const std::vector<Matrix>& h, double tol) {
    validate_hermitian_tuple(h, 2, "block_commutator_trace_bound");
    const size_t k = h.size();

    Matrix a = commutator_block_matrix(h);
    if (!is_hermitian(a)) {
        throw NotHermitianError("block_commutator_trace_bound: block matrix is not Hermitian");
    }

    std::vector<std::vector<Matrix>> anti(k, std::vector<Matrix>(k));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
            anti[i][j] = anticommutator(h[i], h[j]);
        }
    }
    double antiTrace = std::real(block_matrix(anti).trace());

    double lhs = trace_norm(a);
    double rhs = (static_cast<double>(k) - 1.0) * antiTrace;

    auto r = make_bound(RelationId::BlockCommutatorTraceBound, lhs, rhs, tol);
    auto ev = eigh(a).eigenvalues;
    r.witness["block_eigenvalues"] = std::vector<double>(ev.begin(), ev.end());
    return r;
}

ChainReport two_observable_trace_bound(const Matrix& h1, const Matrix& h2, double tol) {
    validate_hermitian_tuple({h1, h2}, 2, "two_observable_trace_bound");

    double v1 = 2.0 * trace_norm(commutator(h1, h2));
    double v2 = 2.0 * (trace_norm(h1 * h2) + trace_norm(h2 * h1));
    double trH1sq = std::real((h1 * h1).trace());
    double trH2sq = std::real((h2 * h2).trace());
    double v3 = 4.0 * std::sqrt(trH1sq * trH2sq);
    double v4 = 2.0 * (trH1sq + trH2sq);

    return make_chain(RelationId::TwoObservableTraceBound,
                      {{"block_trace_norm", v1},
                       {"triangle", v2},
                       {"cauchy_schwarz", v3},
                       {"am_gm", v4}},
                      tol);
}

BoundReport pinching_trace_step(const std::vector<Matrix>& h, double tol) {
    validate_hermitian_tuple(h, 2, "pinching_trace_step");
    const size_t k = h.size();
    const Eigen::Index d = h.front().rows();

    Matrix a = commutator_block_matrix(h);
    BlockStructure bs{std::vector<int>(k, static_cast<int>(d))};

    // Per-block D_i = -sum_j [H_i,H_j]^2, assembled block-diagonally.
    Matrix dMat = Matrix::Zero(a.rows(), a.cols());
    double rhs = 0.0;
    Matrix dSqrt = Matrix::Zero(a.rows(), a.cols());
    for (size_t i = 0; i < k; ++i) {
        Matrix di = Matrix::Zero(d, d);
        for (size_t j = 0; j < k; ++j) {
            Matrix c = commutator(h[i], h[j]);
            di -= c * c;
        }
        const Eigen::Index off = static_cast<Eigen::Index>(i) * d;
        dMat.block(off, off, d, d) = di;
        Matrix root = matrix_sqrt(di);
        dSqrt.block(off, off, d, d) = root;
        rhs += std::real(root.trace());
    }

    double lhs = trace_norm(a);
    auto r = make_bound(RelationId::PinchingTraceStep, lhs, rhs, tol);

    // The direct block formula must match the pinching of A^2 ...
    double pinchDeviation =
        (pinch_block_diagonal(Matrix(a * a), bs) - dMat).cwiseAbs().maxCoeff();
    r.witness["pinch_deviation"] = pinchDeviation;

    // ... and operator concavity of the square root puts the phase average
    // of |A| below D^{1/2}.
    Matrix concavityGap = dSqrt - fourier_block_average(abs_matrix(a), bs);
    double concavityMinEig = min_eigenvalue(concavityGap);
    r.witness["concavity_min_eigenvalue"] = concavityMinEig;
    if (!is_psd(concavityGap, tol)) r.satisfied = false;

    return r;
}

std::optional<RelationReport> evaluate_relation(RelationId id, const DensityState& state,
                                                const ObservableTuple& centeredTuple,
                                                const MomentMatrices& mm, double tol) {
    const size_t n = centeredTuple.size();
    std::vector<Matrix> raw;
    auto matrices = [&]() -> const std::vector<Matrix>& {
        if (raw.empty()) {
            for (const auto& o : centeredTuple.observables()) raw.push_back(o.matrix());
        }
        return raw;
    };

    switch (id) {
        case RelationId::DetSumDifference:
            return RelationReport(det_sum_difference(mm.gram, mm.gram.transpose(), tol));
        case RelationId::RobertsonSup:
            return RelationReport(robertson_sup(mm, tol));
        case RelationId::SchrodingerHeisenberg:
            if (n != 2) return std::nullopt;
            return RelationReport(schrodinger_heisenberg(state, centeredTuple[0].matrix(),
                                                         centeredTuple[1].matrix(), tol));
        case RelationId::GeometricMeanMajorization:
            return RelationReport(geometric_mean_majorization(mm.gram, mm.gram.transpose(), tol));
        case RelationId::NormBound:
            return RelationReport(norm_bound_aggregate(mm, tol));
        case RelationId::FrobeniusChain:
            return RelationReport(frobenius_chain(mm, tol));
        case RelationId::DiagonalProductBound:
            return RelationReport(diagonal_product_bound(mm.gram, mm.gram.transpose(), tol));
        case RelationId::VarianceProductBound:
            return RelationReport(variance_product_bound(mm, tol));
        case RelationId::VarianceMeanBound:
            return RelationReport(variance_mean_bound(mm, tol));
        case RelationId::RowSumBound:
            return RelationReport(row_sum_bound(mm, tol));
        case RelationId::BlockCommutatorTraceBound:
            if (n < 2) return std::nullopt;
            return RelationReport(block_commutator_trace_bound(matrices(), tol));
        case RelationId::TwoObservableTraceBound:
            if (n != 2) return std::nullopt;
            return RelationReport(
                two_observable_trace_bound(matrices()[0], matrices()[1], tol));
        case RelationId::PinchingTraceStep:
            if (n < 2) return std::nullopt;
            return RelationReport(pinching_trace_step(matrices(), tol));
    }
    throw UnknownCaseError("evaluate_relation: unknown relation id");
}

}  // namespace urel
