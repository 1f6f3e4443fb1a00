#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "test_util.hpp"
#include "urel/harness.hpp"
#include "urel/relations.hpp"

using namespace urel;
using namespace urel::testutil;

namespace {

ObservableTuple pauli_xy() {
    return ObservableTuple({Observable{pauli_x()}, Observable{pauli_y()}});
}

/// Diagonal (hence commuting) tuple of the given size.
ObservableTuple commuting_tuple(int dim, int n, Rng& rng) {
    std::vector<Observable> obs;
    for (int j = 0; j < n; ++j) {
        RealVector d(dim);
        for (int i = 0; i < dim; ++i) d(i) = rng.normal();
        obs.emplace_back(Matrix(d.cast<Complex>().asDiagonal()));
    }
    return ObservableTuple(std::move(obs));
}

ObservableTuple random_tuple(int dim, int n, Rng& rng) {
    std::vector<Observable> obs;
    for (int j = 0; j < n; ++j) obs.emplace_back(random_hermitian(dim, rng));
    return ObservableTuple(std::move(obs));
}

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_CASE("det_sum_difference on explicit pairs") {
    Rng rng(41);
    Matrix a = random_psd(3, rng);
    auto same = det_sum_difference(a, a);
    CHECK(same.lhs == 0.0);
    double want = std::pow(det(Matrix(2.0 * a)).real(), 2);
    CHECK(std::abs(same.rhs - want) < 1e-9 * std::max(1.0, want));
    CHECK(same.satisfied);

    auto r = det_sum_difference(diag2(2, 1), diag2(1, 2));
    CHECK(std::abs(r.lhs - 1.0) < 1e-12);
    CHECK(std::abs(r.rhs - 81.0) < 1e-10);
    CHECK(r.satisfied);
}

TEST_CASE("det_sum_difference holds for random PSD pairs, dims 2-8") {
    Rng rng(42);
    for (int dim = 2; dim <= 8; ++dim) {
        for (int rep = 0; rep < 10; ++rep) {
            auto r = det_sum_difference(random_psd(dim, rng), random_psd(dim, rng));
            CHECK(r.satisfied);
        }
    }
    CHECK_THROWS_AS(det_sum_difference(diag2(1, -1), diag2(1, 1)), NotPsdError);
    CHECK_THROWS_AS(det_sum_difference(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                    DimensionMismatchError);
}

TEST_CASE("square_order_counterexample finds a witness at dim 2") {
    auto witness = square_order_counterexample(2, 1000, 42);
    REQUIRE(witness.has_value());
    const auto& [a, b] = *witness;
    CHECK(is_psd(a, kPsdTol));
    CHECK(is_psd(b, kPsdTol));
    Matrix sum = a + b;
    Matrix diff = a - b;
    CHECK(min_eigenvalue(Matrix(sum * sum - diff * diff)) < -1e-6);
}

TEST_CASE("square_order_counterexample finds nothing at dim 1") {
    CHECK_FALSE(square_order_counterexample(1, 200, 7).has_value());
}

TEST_CASE("commuting pairs satisfy the square order") {
    // (A+B)^2 - (A-B)^2 = 2(AB+BA) is PSD when A and B commute.
    Matrix a = diag2(2, 1);
    Matrix b = diag2(1, 2);
    Matrix sum = a + b;
    Matrix diff = a - b;
    CHECK(is_psd(Matrix(sum * sum - diff * diff), 1e-12));
}

TEST_CASE("robertson_sup saturates on the Pauli pair") {
    auto r = robertson_sup(ground_state(), pauli_xy());
    CHECK(std::abs(r.lhs - 1.0) < 1e-12);
    CHECK(std::abs(r.rhs - 1.0) < 1e-12);
    CHECK(r.satisfied);
}

TEST_CASE("robertson_sup lhs vanishes for odd tuples and commuting tuples") {
    Rng rng(43);
    DensityState state = random_density(4, rng, StateKind::MixedFullRank);
    auto odd = robertson_sup(state, random_tuple(4, 3, rng));
    CHECK(std::abs(odd.lhs) < 1e-9 * std::max(1.0, odd.rhs));
    CHECK(odd.satisfied);

    auto comm = robertson_sup(state, commuting_tuple(4, 4, rng));
    CHECK(std::abs(comm.lhs) < 1e-9 * std::max(1.0, comm.rhs));
    CHECK(comm.rhs >= 0.0);
}

TEST_CASE("robertson_sup equals det_sum_difference on (M, M^T)") {
    Rng rng(44);
    for (int rep = 0; rep < 10; ++rep) {
        DensityState state = random_density(3, rng, StateKind::MixedFullRank);
        MomentMatrices mm = moment_matrices(state, random_tuple(3, 4, rng));
        auto viaMoments = robertson_sup(mm);
        auto viaPair = det_sum_difference(mm.gram, mm.gram.transpose());
        CHECK(std::abs(viaMoments.lhs - viaPair.lhs) <
              1e-10 * std::max(1.0, std::abs(viaPair.lhs)));
        CHECK(std::abs(viaMoments.rhs - viaPair.rhs) <
              1e-10 * std::max(1.0, std::abs(viaPair.rhs)));
    }
}

TEST_CASE("robertson_sup verdict is invariant under uniform tuple scaling") {
    Rng rng(45);
    for (int rep = 0; rep < 5; ++rep) {
        DensityState state = random_density(3, rng, StateKind::MixedFullRank);
        ObservableTuple tuple = random_tuple(3, 2, rng);
        std::vector<Observable> scaled;
        for (const auto& o : tuple.observables()) {
            scaled.emplace_back(Matrix(2.0 * o.matrix()));
        }
        auto base = robertson_sup(state, tuple);
        auto bumped = robertson_sup(state, ObservableTuple(std::move(scaled)));
        CHECK(base.satisfied == bumped.satisfied);
        // both sides scale by c^{4n} = 2^8
        CHECK(std::abs(bumped.lhs - 256.0 * base.lhs) <
              1e-8 * std::max(1.0, std::abs(bumped.lhs)));
        CHECK(std::abs(bumped.rhs - 256.0 * base.rhs) <
              1e-8 * std::max(1.0, std::abs(bumped.rhs)));
    }
}

TEST_CASE("schrodinger_heisenberg saturates on the Pauli pair") {
    auto r = schrodinger_heisenberg(ground_state(), pauli_x(), pauli_y());
    CHECK(std::abs(r.lhs - 1.0) < 1e-12);
    CHECK(std::abs(r.rhs - 1.0) < 1e-12);
    CHECK(r.satisfied);
}

TEST_CASE("schrodinger_heisenberg commuting pair has zero lhs") {
    Rng rng(46);
    DensityState state = random_density(2, rng, StateKind::MixedFullRank);
    auto r = schrodinger_heisenberg(state, diag2(1, 2), diag2(3, -1));
    CHECK(std::abs(r.lhs) < 1e-14);
    CHECK(r.satisfied);
}

TEST_CASE("schrodinger_heisenberg is the square root of robertson at n=2") {
    Rng rng(47);
    for (int rep = 0; rep < 10; ++rep) {
        DensityState state = random_density(3, rng,
                                            rep % 2 ? StateKind::Pure
                                                    : StateKind::MixedFullRank);
        ObservableTuple tuple = random_tuple(3, 2, rng);
        auto rob = robertson_sup(state, tuple);
        auto sh = schrodinger_heisenberg(state, tuple[0].matrix(), tuple[1].matrix());
        double scale = std::max(1.0, rob.lhs);
        CHECK(std::abs(rob.lhs - sh.lhs * sh.lhs) < 1e-10 * scale);
        CHECK(std::abs(rob.rhs - sh.rhs * sh.rhs) < 1e-10 * std::max(1.0, rob.rhs));
        CHECK(rob.satisfied == sh.satisfied);
    }
}

TEST_CASE("geometric_mean_majorization explicit cases") {
    Rng rng(48);
    Matrix a = random_psd(3, rng);
    auto same = geometric_mean_majorization(a, a);
    CHECK(same.satisfied);
    // gap = (2A)#(2A) - 0 = 2A
    CHECK(std::abs(same.margin - 2.0 * min_eigenvalue(a)) < 1e-9 * std::max(1.0, a.norm()));

    auto comm = geometric_mean_majorization(diag2(3, 1), diag2(1, 3));
    CHECK(comm.satisfied);
    // |A-B| = 2I, A+B = 4I: gap = 4I - 2I = 2I
    CHECK(std::abs(comm.margin - 2.0) < 1e-10);
}

TEST_CASE("geometric_mean_majorization gap is PSD for random pairs") {
    Rng rng(49);
    for (int dim = 2; dim <= 6; ++dim) {
        for (int rep = 0; rep < 10; ++rep) {
            auto r = geometric_mean_majorization(random_psd(dim, rng), random_psd(dim, rng));
            CHECK(r.satisfied);
            CHECK(std::holds_alternative<Matrix>(r.witness.at("unitary")));
        }
    }
}

TEST_CASE("norm_bound on the Pauli pair and commuting tuples") {
    MomentMatrices mm = moment_matrices(ground_state(), pauli_xy());
    auto reports = norm_bound(mm, NormFamily::All);
    for (const auto& r : reports) {
        CHECK(r.satisfied);
        const std::string& label = std::get<std::string>(r.witness.at("norm"));
        if (label == "schatten:inf") {
            CHECK(std::abs(r.lhs - 1.0) < 1e-12);
            CHECK(std::abs(r.rhs - 1.0) < 1e-12);
        }
    }

    Rng rng(50);
    DensityState state = random_density(3, rng, StateKind::MixedFullRank);
    auto commuting = norm_bound(moment_matrices(state, commuting_tuple(3, 3, rng)),
                                NormFamily::All);
    for (const auto& r : commuting) CHECK(std::abs(r.lhs) < 1e-10);
}

TEST_CASE("norm_bound Ky Fan family holds on random instances") {
    Rng rng(51);
    for (int rep = 0; rep < 20; ++rep) {
        DensityState state = random_density(4, rng,
                                            rep % 2 ? StateKind::Pure
                                                    : StateKind::MixedFullRank);
        MomentMatrices mm = moment_matrices(state, random_tuple(4, 2 + rep % 4, rng));
        for (const auto& r : norm_bound(mm, NormFamily::KyFan)) CHECK(r.satisfied);
        CHECK(norm_bound_aggregate(mm).satisfied);
    }
}

TEST_CASE("frobenius_chain on the Pauli pair is [2, 2, 4, 4]") {
    auto c = frobenius_chain(ground_state(), pauli_xy());
    REQUIRE(c.values.size() == 4);
    CHECK(std::abs(c.values[0].second - 2.0) < 1e-12);
    CHECK(std::abs(c.values[1].second - 2.0) < 1e-12);
    CHECK(std::abs(c.values[2].second - 4.0) < 1e-12);
    CHECK(std::abs(c.values[3].second - 4.0) < 1e-12);
    CHECK(c.satisfied);
}

TEST_CASE("frobenius_chain commuting start and random monotonicity") {
    Rng rng(52);
    DensityState state = random_density(3, rng, StateKind::MixedFullRank);
    auto commuting = frobenius_chain(state, commuting_tuple(3, 3, rng));
    CHECK(std::abs(commuting.values[0].second) < 1e-12);
    CHECK(commuting.satisfied);

    for (int rep = 0; rep < 20; ++rep) {
        DensityState s = random_density(4, rng,
                                        rep % 2 ? StateKind::Pure
                                                : StateKind::MixedRandomRank);
        auto c = frobenius_chain(s, random_tuple(4, 2 + rep % 4, rng));
        CHECK(c.satisfied);
    }
}

TEST_CASE("diagonal_product_bound explicit pair and random instances") {
    auto r = diagonal_product_bound(diag2(2, 1), diag2(1, 2));
    CHECK(std::abs(r.lhs - 1.0) < 1e-12);
    CHECK(std::abs(r.rhs - 9.0) < 1e-12);
    CHECK(r.satisfied);

    Rng rng(53);
    Matrix a = random_psd(3, rng);
    CHECK(diagonal_product_bound(a, a).lhs == 0.0);

    for (int dim = 2; dim <= 6; ++dim) {
        for (int rep = 0; rep < 10; ++rep) {
            CHECK(diagonal_product_bound(random_psd(dim, rng), random_psd(dim, rng)).satisfied);
        }
    }
}

TEST_CASE("variance_product_bound saturates on the Pauli pair") {
    auto r = variance_product_bound(ground_state(), pauli_xy());
    CHECK(std::abs(r.lhs - 1.0) < 1e-12);
    CHECK(std::abs(r.rhs - 1.0) < 1e-12);
    CHECK(r.satisfied);
}

TEST_CASE("variance_product_bound matches rescaled diagonal_product_bound on (M, M^T)") {
    Rng rng(54);
    for (int rep = 0; rep < 10; ++rep) {
        DensityState state = random_density(3, rng, StateKind::MixedFullRank);
        MomentMatrices mm = moment_matrices(state, random_tuple(3, 2 + rep % 3, rng));
        auto direct = variance_product_bound(mm);
        auto viaPair = diagonal_product_bound(mm.gram, mm.gram.transpose());
        CHECK(std::abs(direct.lhs - viaPair.lhs) < 1e-10 * std::max(1.0, direct.lhs));
        CHECK(std::abs(direct.rhs - viaPair.rhs) < 1e-10 * std::max(1.0, direct.rhs));
        CHECK(direct.satisfied);
    }
}

TEST_CASE("variance_mean_bound saturates on the Pauli pair and obeys AM-GM") {
    auto r = variance_mean_bound(ground_state(), pauli_xy());
    CHECK(std::abs(r.lhs - 1.0) < 1e-12);
    CHECK(std::abs(r.rhs - 1.0) < 1e-12);
    CHECK(r.satisfied);

    Rng rng(55);
    for (int rep = 0; rep < 10; ++rep) {
        DensityState state = random_density(4, rng, StateKind::MixedFullRank);
        MomentMatrices mm = moment_matrices(state, random_tuple(4, 2 + rep % 4, rng));
        auto meanR = variance_mean_bound(mm);
        auto prodR = variance_product_bound(mm);
        CHECK(meanR.satisfied);
        // lhs_mean^2 = lhs_prod, and rhs_prod <= rhs_mean^2 by AM-GM
        CHECK(std::abs(meanR.lhs * meanR.lhs - prodR.lhs) <
              1e-10 * std::max(1.0, prodR.lhs));
        CHECK(prodR.rhs <= meanR.rhs * meanR.rhs * (1.0 + 1e-10) + 1e-12);
    }
}

TEST_CASE("row_sum_bound saturates on the Pauli pair") {
    auto r = row_sum_bound(ground_state(), pauli_xy());
    CHECK(std::abs(r.lhs - 1.0) < 1e-12);
    CHECK(std::abs(r.rhs - 1.0) < 1e-12);
    CHECK(r.satisfied);
}

TEST_CASE("row_sum_bound commuting tuples and random instances") {
    Rng rng(56);
    DensityState state = random_density(3, rng, StateKind::MixedFullRank);
    auto comm = row_sum_bound(state, commuting_tuple(3, 3, rng));
    CHECK(std::abs(comm.lhs) < 1e-10);
    CHECK(comm.satisfied);

    for (int rep = 0; rep < 20; ++rep) {
        DensityState s = random_density(4, rng,
                                        rep % 2 ? StateKind::Pure
                                                : StateKind::MixedFullRank);
        CHECK(row_sum_bound(s, random_tuple(4, 2 + rep % 4, rng)).satisfied);
    }
}

TEST_CASE("degenerate variances are flagged and reported satisfied") {
    // A scalar observable centers to zero, so sigma^2 = 0.
    Rng rng(57);
    DensityState state = random_density(2, rng, StateKind::MixedFullRank);
    ObservableTuple tuple({Observable{pauli_x()}, Observable{3.0 * Matrix::Identity(2, 2)}});
    std::vector<BoundReport> reports = {variance_product_bound(state, tuple),
                                        variance_mean_bound(state, tuple),
                                        row_sum_bound(state, tuple)};
    for (const auto& r : reports) {
        CHECK(r.satisfied);
        CHECK(r.witness.count("degenerate") == 1);
    }
}

TEST_CASE("gram_negative_example at theta = 0") {
    auto [g, d] = gram_negative_example(0.0);
    CHECK(std::abs(g(0, 0).real() - 1.0) < 1e-14);
    CHECK(std::abs(g(0, 1).real() - 1.0) < 1e-14);
    CHECK(std::abs(g(1, 0).real() - 1.0) < 1e-14);
    CHECK(std::abs(g(1, 1).real() - 0.25) < 1e-14);
    CHECK(std::abs(d + 0.75) < 1e-12);
    CHECK_FALSE(is_psd(g, kPsdTol));
}

TEST_CASE("gram_negative_example at theta = pi/2, direct oracle") {
    const double theta = M_PI / 2.0;
    auto [g, d] = gram_negative_example(theta);

    // Rebuild the matrices and the 2x2 determinant from scratch.
    Matrix h1(2, 2), h2(2, 2);
    h1 << 0.5 * std::sin(theta), std::cos(theta), std::cos(theta), std::sin(theta);
    h2 << std::cos(theta), std::sin(theta), std::sin(theta), 0.5 * std::cos(theta);
    auto inner = [](const Vector& u, const Vector& v) {  // <u, v> = v* u
        Complex acc(0, 0);
        for (Eigen::Index i = 0; i < u.size(); ++i) acc += std::conj(v(i)) * u(i);
        return acc;
    };
    Complex g00 = inner(h1.col(0), h1.col(0));
    Complex g01 = inner(h1.col(1), h2.col(0));
    Complex g10 = inner(h2.col(0), h1.col(1));
    Complex g11 = inner(h2.col(1), h2.col(1));
    Complex want = g00 * g11 - g01 * g10;
    CHECK(std::abs(d - want.real()) < 1e-12);
    CHECK(d < 0.0);
    CHECK(std::abs(g(0, 1) - g01) < 1e-14);
}

TEST_CASE("gram_negative_example is negative on the 64-point grid") {
    for (int i = 0; i < 64; ++i) {
        double theta = 2.0 * M_PI * i / 64.0;
        auto [g, d] = gram_negative_example(theta);
        CHECK(d < 0.0);
    }
}

TEST_CASE("block_commutator_trace_bound on the Pauli pair (8, 8)") {
    auto r = block_commutator_trace_bound({pauli_x(), pauli_y()});
    CHECK(std::abs(r.lhs - 8.0) < 1e-12);
    CHECK(std::abs(r.rhs - 8.0) < 1e-12);
    CHECK(r.satisfied);
}

TEST_CASE("block_commutator_trace_bound on the Pauli triple (16, 24)") {
    auto r = block_commutator_trace_bound({pauli_x(), pauli_y(), pauli_z()});
    CHECK(std::abs(r.lhs - 16.0) < 1e-12);
    CHECK(std::abs(r.rhs - 24.0) < 1e-12);
    CHECK(r.satisfied);

    // spectrum of the 6x6 block matrix: -2 with multiplicity 4, +4 twice
    const auto& ev = std::get<std::vector<double>>(r.witness.at("block_eigenvalues"));
    REQUIRE(ev.size() == 6);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(ev[static_cast<size_t>(i)] + 2.0) < 1e-12);
    for (int i = 4; i < 6; ++i) CHECK(std::abs(ev[static_cast<size_t>(i)] - 4.0) < 1e-12);
}

TEST_CASE("block_commutator_trace_bound lhs vanishes iff the tuple commutes") {
    Rng rng(58);
    std::vector<Matrix> commuting;
    for (int j = 0; j < 3; ++j) {
        RealVector d(3);
        for (int i = 0; i < 3; ++i) d(i) = rng.normal();
        commuting.push_back(Matrix(d.cast<Complex>().asDiagonal()));
    }
    CHECK(block_commutator_trace_bound(commuting).lhs < 1e-12);

    auto noncommuting = block_commutator_trace_bound({pauli_x(), pauli_z(), pauli_z()});
    CHECK(noncommuting.lhs > 0.1);

    CHECK_THROWS_AS(block_commutator_trace_bound({pauli_x()}), DimensionMismatchError);
    Matrix skew(2, 2);
    skew << Complex(0, 0), Complex(1, 0), Complex(-1, 0), Complex(0, 0);
    CHECK_THROWS_AS(block_commutator_trace_bound({pauli_x(), skew}), NotHermitianError);
}

TEST_CASE("block_commutator_trace_bound holds for random tuples") {
    Rng rng(59);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Matrix> h;
        int k = 2 + rep % 4;
        for (int j = 0; j < k; ++j) h.push_back(random_hermitian(3, rng));
        CHECK(block_commutator_trace_bound(h).satisfied);
    }
}

TEST_CASE("two_observable_trace_bound Pauli chain is [8, 8, 8, 8]") {
    auto c = two_observable_trace_bound(pauli_x(), pauli_y());
    REQUIRE(c.values.size() == 4);
    for (const auto& [name, value] : c.values) CHECK(std::abs(value - 8.0) < 1e-12);
    CHECK(c.satisfied);
}

TEST_CASE("two_observable_trace_bound commuting start and random chains") {
    auto comm = two_observable_trace_bound(diag2(1, 2), diag2(-1, 3));
    CHECK(std::abs(comm.values[0].second) < 1e-12);
    CHECK(comm.satisfied);

    Rng rng(60);
    for (int rep = 0; rep < 20; ++rep) {
        Matrix h1 = random_hermitian(4, rng);
        Matrix h2 = random_hermitian(4, rng);
        CHECK(two_observable_trace_bound(h1, h2).satisfied);
    }
}

TEST_CASE("pinching_trace_step on the Pauli triple") {
    auto r = pinching_trace_step({pauli_x(), pauli_y(), pauli_z()});
    CHECK(std::abs(r.lhs - 16.0) < 1e-12);
    CHECK(std::abs(r.rhs - 6.0 * std::sqrt(8.0)) < 1e-12);
    CHECK(r.satisfied);
    CHECK(std::get<double>(r.witness.at("pinch_deviation")) < 1e-12);
    CHECK(std::get<double>(r.witness.at("concavity_min_eigenvalue")) > -1e-9);
}

TEST_CASE("pinching_trace_step commuting tuple gives 0 <= 0") {
    auto r = pinching_trace_step({diag2(1, 2), diag2(3, -1)});
    CHECK(std::abs(r.lhs) < 1e-12);
    CHECK(std::abs(r.rhs) < 1e-12);
    CHECK(r.satisfied);
}

TEST_CASE("pinching_trace_step sits between the trace norm and the full bound") {
    Rng rng(61);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Matrix> h;
        int k = 2 + rep % 4;
        for (int j = 0; j < k; ++j) h.push_back(random_hermitian(3, rng));
        auto mid = pinching_trace_step(h);
        auto full = block_commutator_trace_bound(h);
        CHECK(mid.satisfied);
        CHECK(bound_satisfied(mid.lhs, mid.rhs, 1e-9));
        CHECK(bound_satisfied(mid.rhs, full.rhs, 1e-9));
        CHECK(std::abs(mid.lhs - full.lhs) < 1e-10 * std::max(1.0, full.lhs));
    }
}

TEST_CASE("reports are invariant under joint unitary conjugation") {
    Rng rng(62);
    for (int rep = 0; rep < 5; ++rep) {
        DensityState state = random_density(3, rng, StateKind::MixedFullRank);
        ObservableTuple tuple = random_tuple(3, 3, rng);
        Matrix u = random_unitary(3, rng);

        std::vector<Observable> rotated;
        for (const auto& o : tuple.observables()) {
            rotated.emplace_back(Matrix(u * o.matrix() * u.adjoint()));
        }
        DensityState rotatedState{Matrix(u * state.rho() * u.adjoint())};
        ObservableTuple rotatedTuple{std::move(rotated)};

        auto base = moment_matrices(state, tuple);
        auto rot = moment_matrices(rotatedState, rotatedTuple);

        auto checkClose = [](double x, double y) {
            CHECK(std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(x)));
        };
        checkClose(robertson_sup(base).lhs, robertson_sup(rot).lhs);
        checkClose(robertson_sup(base).rhs, robertson_sup(rot).rhs);
        checkClose(variance_product_bound(base).lhs, variance_product_bound(rot).lhs);
        checkClose(variance_product_bound(base).rhs, variance_product_bound(rot).rhs);
        checkClose(row_sum_bound(base).lhs, row_sum_bound(rot).lhs);
        checkClose(row_sum_bound(base).rhs, row_sum_bound(rot).rhs);
        auto c1 = frobenius_chain(base);
        auto c2 = frobenius_chain(rot);
        for (size_t i = 0; i < c1.values.size(); ++i) {
            checkClose(c1.values[i].second, c2.values[i].second);
        }
    }
}

TEST_CASE("relation id round-trips") {
    for (RelationId id : all_relations()) {
        auto parsed = parse_relation_id(to_string(id));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == id);
    }
    CHECK_FALSE(parse_relation_id("nonsense").has_value());
}

TEST_CASE("evaluate_relation dispatches and skips inapplicable relations") {
    Rng rng(63);
    DensityState state = random_density(3, rng, StateKind::MixedFullRank);
    ObservableTuple tuple = center(state, random_tuple(3, 3, rng));
    MomentMatrices mm = moment_matrices(state, tuple);

    CHECK_FALSE(
        evaluate_relation(RelationId::SchrodingerHeisenberg, state, tuple, mm).has_value());
    CHECK_FALSE(
        evaluate_relation(RelationId::TwoObservableTraceBound, state, tuple, mm).has_value());
    for (RelationId id : all_relations()) {
        if (id == RelationId::SchrodingerHeisenberg ||
            id == RelationId::TwoObservableTraceBound) {
            continue;
        }
        auto rep = evaluate_relation(id, state, tuple, mm);
        REQUIRE(rep.has_value());
        TrialCell cell = summarize(*rep);
        CHECK(cell.satisfied);
    }
}
