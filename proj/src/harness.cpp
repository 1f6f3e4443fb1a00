#include "urel/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace urel {

std::string to_string(StateKind kind) {
    switch (kind) {
        case StateKind::Pure: return "pure";
        case StateKind::MixedFullRank: return "mixed-full-rank";
        case StateKind::MixedRandomRank: return "mixed-random-rank";
    }
    throw UnknownCaseError("to_string: unknown state kind");
}

std::optional<StateKind> parse_state_kind(const std::string& name) {
    if (name == "pure") return StateKind::Pure;
    if (name == "mixed-full-rank") return StateKind::MixedFullRank;
    if (name == "mixed-random-rank") return StateKind::MixedRandomRank;
    return std::nullopt;
}

Matrix random_hermitian(int dim, Rng& rng) {
    Matrix g = gaussian_matrix(dim, dim, rng);
    return 0.5 * (g + g.adjoint());
}

DensityState random_density(int dim, Rng& rng, StateKind kind) {
    if (kind == StateKind::Pure) {
        Vector psi(dim);
        for (int i = 0; i < dim; ++i) psi(i) = rng.complex_normal();
        return DensityState::pure(psi);
    }
    int rank = dim;
    if (kind == StateKind::MixedRandomRank) rank = 1 + rng.uniform_int(dim);
    Matrix g = gaussian_matrix(dim, rank, rng);
    Matrix rho = g * g.adjoint();
    return DensityState(rho / rho.trace());
}

Matrix random_unitary(int dim, Rng& rng) {
    Matrix g = gaussian_matrix(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    Vector phases(dim);
    for (int i = 0; i < dim; ++i) {
        Complex rii = r(i, i);
        phases(i) = std::abs(rii) > 0.0 ? rii / std::abs(rii) : Complex(1.0, 0.0);
    }
    return q * phases.asDiagonal();
}

ProblemInstance draw_instance(const CampaignConfig& config, uint64_t trial) {
    Rng rng = Rng::stream(config.seed, trial);
    int dim = config.dims[static_cast<size_t>(rng.uniform_int(static_cast<int>(config.dims.size())))];
    int n = config.numObservables[static_cast<size_t>(
        rng.uniform_int(static_cast<int>(config.numObservables.size())))];
    DensityState state = random_density(dim, rng, config.stateKind);
    std::vector<Observable> obs;
    obs.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) obs.emplace_back(random_hermitian(dim, rng));
    return {std::move(state), ObservableTuple(std::move(obs))};
}

namespace {

double chain_ratio(const ChainReport& c) {
    double worst = std::numeric_limits<double>::quiet_NaN();
    for (size_t i = 0; i + 1 < c.values.size(); ++i) {
        double hi = c.values[i + 1].second;
        if (hi <= 1e-300) continue;
        double r = c.values[i].second / hi;
        if (std::isnan(worst) || r > worst) worst = r;
    }
    return worst;
}

}  // namespace

TrialCell summarize(const RelationReport& report) {
    TrialCell cell;
    cell.status = TrialCell::Status::Evaluated;
    if (std::holds_alternative<BoundReport>(report)) {
        const auto& b = std::get<BoundReport>(report);
        cell.lhs = b.lhs;
        cell.rhs = b.rhs;
        cell.margin = b.margin;
        cell.satisfied = b.satisfied;
        cell.ratio = b.rhs > 1e-300 ? b.lhs / b.rhs : std::numeric_limits<double>::quiet_NaN();
    } else {
        const auto& c = std::get<ChainReport>(report);
        cell.lhs = c.values.front().second;
        cell.rhs = c.values.back().second;
        cell.margin = c.minGap;
        cell.satisfied = c.satisfied;
        cell.ratio = chain_ratio(c);
    }
    return cell;
}

uint64_t CampaignResult::total_violations() const {
    uint64_t v = 0;
    for (const auto& [name, stats] : perRelation) v += stats.violations;
    return v;
}

CampaignResult run_campaign(
    const CampaignConfig& config,
    const std::function<void(uint64_t, RelationId, const TrialCell&)>& perTrial) {
    if (config.trials < 1) throw ValidationError("run_campaign: trials must be >= 1");
    if (config.dims.empty() || config.numObservables.empty()) {
        throw ValidationError("run_campaign: dims and numObservables must be nonempty");
    }
    for (int d : config.dims) {
        if (d < 2) throw ValidationError("run_campaign: dims entries must be >= 2");
    }

    const auto start = std::chrono::steady_clock::now();
    const size_t nRel = config.relations.size();
    const auto trials = static_cast<uint64_t>(config.trials);
    std::vector<std::vector<TrialCell>> rows(trials, std::vector<TrialCell>(nRel));

    auto runTrial = [&](uint64_t t) {
        std::vector<TrialCell>& row = rows[t];
        ProblemInstance inst = draw_instance(config, t);
        try {
            ObservableTuple centered = center(inst.state, inst.tuple);
            MomentMatrices mm = moment_matrices(inst.state, centered);
            for (size_t r = 0; r < nRel; ++r) {
                try {
                    auto rep = evaluate_relation(config.relations[r], inst.state, centered, mm,
                                                 config.tol);
                    if (rep) row[r] = summarize(*rep);
                } catch (const Error&) {
                    row[r].status = TrialCell::Status::Error;
                }
            }
        } catch (const Error&) {
            for (size_t r = 0; r < nRel; ++r) row[r].status = TrialCell::Status::Error;
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    unsigned nThreads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                           : std::max(1u, hw);
    nThreads = std::min<unsigned>(nThreads, static_cast<unsigned>(trials));

    if (nThreads <= 1) {
        for (uint64_t t = 0; t < trials; ++t) runTrial(t);
    } else {
        std::atomic<uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nThreads);
        for (unsigned w = 0; w < nThreads; ++w) {
            pool.emplace_back([&] {
                for (uint64_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
                    runTrial(t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // Sequential fold in trial order: identical result for any thread count.
    CampaignResult result;
    result.config = config;
    std::vector<RelationStats> stats(nRel);
    std::vector<std::optional<uint64_t>> worstTrial(nRel);
    for (uint64_t t = 0; t < trials; ++t) {
        for (size_t r = 0; r < nRel; ++r) {
            const TrialCell& cell = rows[t][r];
            if (perTrial) perTrial(t, config.relations[r], cell);
            if (cell.status == TrialCell::Status::NotApplicable) continue;
            if (cell.status == TrialCell::Status::Error) {
                ++stats[r].errors;
                continue;
            }
            ++stats[r].trials;
            if (!cell.satisfied) ++stats[r].violations;
            if (cell.margin < stats[r].minMargin) {
                stats[r].minMargin = cell.margin;
                worstTrial[r] = t;
            }
            if (!std::isnan(cell.ratio)) {
                int bucket = static_cast<int>(cell.ratio * kHistogramBuckets);
                bucket = std::clamp(bucket, 0, kHistogramBuckets - 1);
                ++stats[r].histogram[static_cast<size_t>(bucket)];
            }
        }
    }

    for (size_t r = 0; r < nRel; ++r) {
        if (worstTrial[r]) {
            uint64_t t = *worstTrial[r];
            ProblemInstance inst = draw_instance(config, t);
            ObservableTuple centered = center(inst.state, inst.tuple);
            const TrialCell& cell = rows[t][r];
            stats[r].worst.emplace(WorstWitness{t, cell.lhs, cell.rhs, cell.margin,
                                                cell.satisfied, inst.state, centered});
        }
        result.perRelation[to_string(config.relations[r])] = std::move(stats[r]);
    }

    result.elapsed = std::chrono::steady_clock::now() - start;
    return result;
}

}  // namespace urel
