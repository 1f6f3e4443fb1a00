#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "urel/linalg.hpp"
#include "urel/quantum.hpp"

namespace urel {

enum class RelationId {
    DetSumDifference,
    RobertsonSup,
    SchrodingerHeisenberg,
    GeometricMeanMajorization,
    NormBound,
    FrobeniusChain,
    DiagonalProductBound,
    VarianceProductBound,
    VarianceMeanBound,
    RowSumBound,
    BlockCommutatorTraceBound,
    TwoObservableTraceBound,
    PinchingTraceStep,
};

std::string to_string(RelationId id);
std::optional<RelationId> parse_relation_id(const std::string& name);
const std::vector<RelationId>& all_relations();

using WitnessValue = std::variant<double, std::string, std::vector<double>, Matrix>;
using Witness = std::map<std::string, WitnessValue>;

/// Evaluated inequality. satisfied <=> lhs <= rhs + tol * max(1, |rhs|),
/// where tol is the effective absolute-relative tolerance stored here.
struct BoundReport {
    RelationId relationId;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    bool satisfied = false;
    double tol = kDefaultTol;
    Witness witness;
};

/// Evaluated chain of named values, each consecutive pair nondecreasing
/// within tolerance.
struct ChainReport {
    RelationId relationId;
    std::vector<std::pair<std::string, double>> values;
    bool satisfied = false;
    double tol = kDefaultTol;
    double minGap = 0.0;  // min over consecutive differences
};

bool bound_satisfied(double lhs, double rhs, double tol);

// --- Determinant and operator-order relations on PSD pairs ---

/// det(A-B)^2 <= det(A+B)^2.
BoundReport det_sum_difference(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

/// Searches for PSD A, B with (A+B)^2 - (A-B)^2 not PSD; the operator-order
/// analogue of det_sum_difference fails in general. Returns a re-verified
/// witness pair, or nullopt when the search comes up empty.
std::optional<std::pair<Matrix, Matrix>> square_order_counterexample(int dim, int trials,
                                                                     uint64_t seed);

/// |A-B| <= (A+B) # U(A+B)U* with U = sign(A-B). The report carries the
/// unitary and the minimum eigenvalue of the PSD gap.
BoundReport geometric_mean_majorization(const Matrix& a, const Matrix& b,
                                        double tol = kDefaultTol);

/// [prod_j <|A-B|e_j,e_j>]^{2/n} <= ((tr A + tr B)/n) [prod_j <(A+B)e_j,e_j>]^{1/n}.
BoundReport diagonal_product_bound(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

// --- State/tuple uncertainty relations ---

/// det((1/2) phi[x_i,x_j])^2 <= det(Cov)^2.
BoundReport robertson_sup(const MomentMatrices& mm, double tol = kDefaultTol);
BoundReport robertson_sup(const DensityState& state, const ObservableTuple& tuple,
                          double tol = kDefaultTol);

/// phi(x^2) phi(y^2) - |Re phi(yx)|^2 >= (1/4)|phi[x,y]|^2, evaluated
/// directly from expectations (independent of the moment-matrix route).
BoundReport schrodinger_heisenberg(const DensityState& state, const Matrix& x, const Matrix& y,
                                   double tol = kDefaultTol);

enum class NormFamily { KyFan, Schatten, All };

/// |||(1/2) phi[x_i,x_j]||| <= |||Cov||| per norm; the full Ky Fan family
/// certifies every unitarily invariant norm by Fan dominance.
std::vector<BoundReport> norm_bound(const MomentMatrices& mm, NormFamily family,
                                    double tol = kDefaultTol);
std::vector<BoundReport> norm_bound(const DensityState& state, const ObservableTuple& tuple,
                                    NormFamily family, double tol = kDefaultTol);

/// Worst member of the norm family as a single report (used by campaigns).
BoundReport norm_bound_aggregate(const MomentMatrices& mm, double tol = kDefaultTol);

/// (1/2) sum_{i<j} |phi[x_i,x_j]|^2 <= ||Cov||_2^2 <= (tr Cov)^2 <= (sum Var)^2.
ChainReport frobenius_chain(const MomentMatrices& mm, double tol = kDefaultTol);
ChainReport frobenius_chain(const DensityState& state, const ObservableTuple& tuple,
                            double tol = kDefaultTol);

/// (1/4) prod_k <|(phi[x_i,x_j])|e_k,e_k>^{2/n} <= (sum var/n)(prod var)^{1/n}.
BoundReport variance_product_bound(const MomentMatrices& mm, double tol = kDefaultTol);
BoundReport variance_product_bound(const DensityState& state, const ObservableTuple& tuple,
                                   double tol = kDefaultTol);

/// (1/2) prod_k <|(phi[x_i,x_j])|e_k,e_k>^{1/n} <= sum var / n.
BoundReport variance_mean_bound(const MomentMatrices& mm, double tol = kDefaultTol);
BoundReport variance_mean_bound(const DensityState& state, const ObservableTuple& tuple,
                                double tol = kDefaultTol);

/// (1/4) prod_k [sum_{i != k} |phi[x_i,x_k]|^2]^{1/n}
///   <= ||Cov||_op (sum var/n)^{1/2} (prod sigma)^{1/n}.
BoundReport row_sum_bound(const MomentMatrices& mm, double tol = kDefaultTol);
BoundReport row_sum_bound(const DensityState& state, const ObservableTuple& tuple,
                          double tol = kDefaultTol);

// --- Block-matrix relations on bare Hermitian tuples ---

/// The 2x2 matrix (<H_i e_j, H_j e_i>) for the printed H_1(theta), H_2(theta)
/// pair, together with its determinant (negative on the whole grid).
std::pair<Matrix, double> gram_negative_example(double theta);

/// ||([H_i, H_j])||_1 <= (k-1) tr(({H_i, H_j})).
BoundReport block_commutator_trace_bound(const std::vector<Matrix>& h, double tol = kDefaultTol);

/// Chain 2 tr|[H1,H2]| <= 2(||H1 H2||_1 + ||H2 H1||_1)
///   <= 4 sqrt(tr H1^2 tr H2^2) <= 2(tr H1^2 + tr H2^2).
ChainReport two_observable_trace_bound(const Matrix& h1, const Matrix& h2,
                                       double tol = kDefaultTol);

/// ||A||_1 <= sum_i tr((sum_j |[H_i,H_j]|^2)^{1/2}) for the block commutator
/// matrix A. Also verifies that the block-diagonal D equals the pinching of
/// A^2 and that D^{1/2} dominates the phase average of |A| in the PSD order.
BoundReport pinching_trace_step(const std::vector<Matrix>& h, double tol = kDefaultTol);

// --- Campaign dispatch ---

using RelationReport = std::variant<BoundReport, ChainReport>;

/// Evaluates one relation on a centered instance; nullopt when the relation
/// does not apply (two-observable relations with n != 2).
std::optional<RelationReport> evaluate_relation(RelationId id, const DensityState& state,
                                                const ObservableTuple& centeredTuple,
                                                const MomentMatrices& mm,
                                                double tol = kDefaultTol);

}  // namespace urel
