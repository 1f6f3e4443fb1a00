#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "urel/quantum.hpp"
#include "urel/relations.hpp"
#include "urel/rng.hpp"

namespace urel {

enum class StateKind { Pure, MixedFullRank, MixedRandomRank };

std::string to_string(StateKind kind);
std::optional<StateKind> parse_state_kind(const std::string& name);

/// (G + G*)/2 with G entrywise standard complex Gaussian.
Matrix random_hermitian(int dim, Rng& rng);

DensityState random_density(int dim, Rng& rng, StateKind kind);

/// Haar-style random unitary: QR of a Gaussian matrix with phase fixing.
Matrix random_unitary(int dim, Rng& rng);

struct CampaignConfig {
    std::vector<int> dims = {2, 3, 4};
    std::vector<int> numObservables = {2, 3};
    int trials = 100;
    uint64_t seed = 0;
    std::vector<RelationId> relations = all_relations();
    double tol = kDefaultTol;
    StateKind stateKind = StateKind::MixedFullRank;
    // Execution detail only; never part of the result identity or its
    // serialization. 0 = hardware concurrency.
    int threads = 0;
};

inline constexpr int kHistogramBuckets = 10;

struct ProblemInstance {
    DensityState state;
    ObservableTuple tuple;
};

/// Deterministic instance for a trial index: stream(seed, trial) drives the
/// dimension, tuple size, state, and observables, in that order.
ProblemInstance draw_instance(const CampaignConfig& config, uint64_t trial);

/// Per-trial, per-relation summary used for aggregation and CSV export.
struct TrialCell {
    enum class Status : uint8_t { NotApplicable, Evaluated, Error };
    Status status = Status::NotApplicable;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double ratio = std::numeric_limits<double>::quiet_NaN();
    bool satisfied = true;
};

TrialCell summarize(const RelationReport& report);

struct WorstWitness {
    uint64_t trial;
    double lhs;
    double rhs;
    double margin;
    bool satisfied;
    DensityState state;
    ObservableTuple tuple;  // stored centered, as evaluated
};

struct RelationStats {
    uint64_t trials = 0;
    uint64_t violations = 0;
    uint64_t errors = 0;
    double minMargin = std::numeric_limits<double>::infinity();
    std::array<uint64_t, kHistogramBuckets> histogram{};
    std::optional<WorstWitness> worst;
};

struct CampaignResult {
    CampaignConfig config;
    std::map<std::string, RelationStats> perRelation;
    std::chrono::duration<double> elapsed{};

    uint64_t total_violations() const;
};

/// Runs `config.trials` independent trials, each drawing an instance,
/// centering it, and evaluating the configured relations. Aggregation is
/// keyed by trial index, so the result is identical for any thread count.
/// Per-trial errors are counted, never fatal. `perTrial`, when set, is
/// invoked in trial order after the parallel phase.
CampaignResult run_campaign(
    const CampaignConfig& config,
    const std::function<void(uint64_t, RelationId, const TrialCell&)>& perTrial = nullptr);

}  // namespace urel
