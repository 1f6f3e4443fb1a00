#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "urel/harness.hpp"
#include "urel/io.hpp"
#include "urel/relations.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitInputError = 2;

using urel::RelationId;

std::vector<RelationId> parse_relations_arg(const std::string& arg) {
    if (arg.empty() || arg == "all") return urel::all_relations();
    std::vector<RelationId> out;
    std::stringstream ss(arg);
    std::string name;
    while (std::getline(ss, name, ',')) {
        auto id = urel::parse_relation_id(name);
        if (!id) throw urel::ParseError("unknown relation '" + name + "'");
        out.push_back(*id);
    }
    if (out.empty()) throw urel::ParseError("empty relation list");
    return out;
}

int threads_from_env() {
    const char* env = std::getenv("UR_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    try {
        int v = std::stoi(env);
        if (v < 0) throw std::out_of_range("negative");
        return v;
    } catch (const std::exception&) {
        throw urel::ParseError(std::string("UR_THREADS must be a nonnegative integer, got '") +
                               env + "'");
    }
}

void print_bound_line(const urel::BoundReport& r) {
    std::cout << "  " << std::left << std::setw(30) << to_string(r.relationId) << std::right
              << "  lhs = " << std::setw(14) << std::setprecision(8) << r.lhs
              << "  rhs = " << std::setw(14) << r.rhs << "  "
              << (r.satisfied ? "ok" : "VIOLATED") << "\n";
}

void print_chain_line(const urel::ChainReport& c) {
    std::cout << "  " << std::left << std::setw(30) << to_string(c.relationId) << std::right
              << "  [";
    for (size_t i = 0; i < c.values.size(); ++i) {
        std::cout << std::setprecision(8) << c.values[i].second;
        if (i + 1 < c.values.size()) std::cout << " <= ";
    }
    std::cout << "]  " << (c.satisfied ? "ok" : "VIOLATED") << "\n";
}

int run_eval(const std::string& input, const std::string& relationsArg, double tol,
             const std::string& output) {
    auto relations = parse_relations_arg(relationsArg);
    auto [state, tuple] = urel::load_problem(input);
    urel::ObservableTuple centered = urel::center(state, tuple);
    urel::MomentMatrices mm = urel::moment_matrices(state, centered);

    nlohmann::json relJson = nlohmann::json::object();
    bool anyViolation = false;
    std::cout << "evaluating " << input << " (dim " << state.dim() << ", " << tuple.size()
              << " observables)\n";
    for (RelationId id : relations) {
        auto rep = urel::evaluate_relation(id, state, centered, mm, tol);
        if (!rep) {
            std::cout << "  " << std::left << std::setw(30) << to_string(id)
                      << "  skipped (needs a 2-observable tuple)\n";
            continue;
        }
        urel::TrialCell cell = urel::summarize(*rep);
        if (!cell.satisfied) anyViolation = true;
        if (std::holds_alternative<urel::BoundReport>(*rep)) {
            print_bound_line(std::get<urel::BoundReport>(*rep));
        } else {
            print_chain_line(std::get<urel::ChainReport>(*rep));
        }
        relJson[to_string(id)] = {{"trials", 1},
                                  {"violations", cell.satisfied ? 0 : 1},
                                  {"minMargin", cell.margin},
                                  {"report", urel::report_to_json(*rep)}};
    }

    if (!output.empty()) {
        nlohmann::json reportNames = nlohmann::json::array();
        for (RelationId id : relations) reportNames.push_back(to_string(id));
        nlohmann::json doc{{"config", {{"input", input},
                                       {"relations", std::move(reportNames)},
                                       {"tol", tol}}},
                           {"relations", std::move(relJson)},
                           {"version", "1"}};
        urel::write_text_file(output, doc.dump(2) + "\n");
        std::cout << "report written to " << output << "\n";
    }
    return anyViolation ? kExitViolations : kExitOk;
}

int run_fuzz(const urel::CampaignConfig& config, const std::string& output,
             const std::string& csvPath) {
    std::optional<std::ofstream> csv;
    std::function<void(uint64_t, RelationId, const urel::TrialCell&)> sink;
    if (!csvPath.empty()) {
        csv.emplace(csvPath);
        if (!*csv) throw urel::Error("cannot open " + csvPath + " for writing");
        *csv << "trial,relation,lhs,rhs,margin,ratio,satisfied\n";
        csv->precision(17);
        sink = [&](uint64_t trial, RelationId id, const urel::TrialCell& cell) {
            if (cell.status != urel::TrialCell::Status::Evaluated) return;
            *csv << trial << ',' << to_string(id) << ',' << cell.lhs << ',' << cell.rhs << ','
                 << cell.margin << ',' << cell.ratio << ',' << (cell.satisfied ? 1 : 0) << "\n";
        };
    }

    urel::CampaignResult result = urel::run_campaign(config, sink);

    std::cout << "campaign: " << config.trials << " trials, seed " << config.seed << ", "
              << to_string(config.stateKind) << " states, tol " << config.tol << "\n";
    for (const auto& [name, stats] : result.perRelation) {
        std::cout << "  " << std::left << std::setw(30) << name << std::right << " trials "
                  << std::setw(6) << stats.trials << "  violations " << stats.violations;
        if (stats.trials > 0) {
            std::cout << "  min margin " << std::setprecision(6) << stats.minMargin;
        }
        if (stats.errors > 0) std::cout << "  errors " << stats.errors;
        std::cout << "\n";
    }
    std::cout << "elapsed " << std::setprecision(3) << result.elapsed.count() << " s\n";

    if (!output.empty()) {
        urel::save_report(output, result);
        std::cout << "report written to " << output << "\n";
    }
    return result.total_violations() > 0 ? kExitViolations : kExitOk;
}

int demo_gram_example(double theta) {
    auto [g, d] = urel::gram_negative_example(theta);
    std::cout << "G(theta=" << theta << ") = [[" << g(0, 0).real() << ", " << g(0, 1).real()
              << "], [" << g(1, 0).real() << ", " << g(1, 1).real() << "]]\n";
    std::cout << "det = " << std::setprecision(12) << d << "\n";
    std::cout << (d < 0 ? "matrix (<H_i e_j, H_j e_i>) is not PSD, as claimed\n"
                        : "determinant unexpectedly nonnegative\n");
    return d < 0 ? kExitOk : kExitViolations;
}

int demo_pauli_equalities() {
    // |0><0| with (sigma_x, sigma_y): four relations meet with equality.
    urel::Matrix rho = urel::Matrix::Zero(2, 2);
    rho(0, 0) = 1.0;
    urel::DensityState state{rho};
    urel::Matrix sx(2, 2);
    sx << urel::Complex(0, 0), urel::Complex(1, 0), urel::Complex(1, 0), urel::Complex(0, 0);
    urel::Matrix sy(2, 2);
    sy << urel::Complex(0, 0), urel::Complex(0, -1), urel::Complex(0, 1), urel::Complex(0, 0);
    urel::ObservableTuple tuple({urel::Observable{sx}, urel::Observable{sy}});

    auto rob = urel::robertson_sup(state, tuple);
    auto chain = urel::frobenius_chain(state, tuple);
    auto mean = urel::variance_mean_bound(state, tuple);
    auto row = urel::row_sum_bound(state, tuple);

    print_bound_line(rob);
    print_chain_line(chain);
    print_bound_line(mean);
    print_bound_line(row);

    bool tight = std::abs(rob.lhs - rob.rhs) < 1e-9 && std::abs(mean.lhs - mean.rhs) < 1e-9 &&
                 std::abs(row.lhs - row.rhs) < 1e-9 &&
                 std::abs(chain.values[0].second - chain.values[1].second) < 1e-9 &&
                 std::abs(chain.values[2].second - chain.values[3].second) < 1e-9;
    std::cout << (tight ? "all equalities hold\n" : "equalities failed\n");
    return tight ? kExitOk : kExitViolations;
}

int demo_square_order_counterexample(int trials, uint64_t seed) {
    auto witness = urel::square_order_counterexample(2, trials, seed);
    if (!witness) {
        std::cout << "no counterexample found in " << trials << " trials\n";
        return kExitViolations;
    }
    const auto& [a, b] = *witness;
    urel::Matrix sum = a + b;
    urel::Matrix diff = a - b;
    double minEig = urel::min_eigenvalue(urel::Matrix(sum * sum - diff * diff));
    std::cout << "found PSD A, B with (A+B)^2 - (A-B)^2 not PSD\n";
    std::cout << "A = [[" << a(0, 0) << ", " << a(0, 1) << "], [" << a(1, 0) << ", " << a(1, 1)
              << "]]\n";
    std::cout << "B = [[" << b(0, 0) << ", " << b(0, 1) << "], [" << b(1, 0) << ", " << b(1, 1)
              << "]]\n";
    std::cout << "min eigenvalue of the gap = " << std::setprecision(8) << minEig << "\n";
    return minEig < -1e-6 ? kExitOk : kExitViolations;
}

int demo_pinching_identity(uint64_t seed) {
    urel::Rng rng(seed);
    urel::Matrix a = urel::random_hermitian(6, rng);
    urel::BlockStructure bs{{2, 2, 2}};
    double dev = (urel::pinch_block_diagonal(a, bs) - urel::fourier_block_average(a, bs))
                     .cwiseAbs()
                     .maxCoeff();
    std::cout << "random 6x6 Hermitian, blocks (2,2,2)\n";
    std::cout << "max |pinch - fourier average| = " << std::setprecision(6) << dev << "\n";
    std::cout << (dev < 1e-12 ? "pinching equals the phase average\n" : "identity failed\n");
    return dev < 1e-12 ? kExitOk : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"urel - numerical verification of uncertainty relations for observable tuples"};
    app.require_subcommand(1);

    auto* evalCmd = app.add_subcommand("eval", "evaluate relations on a problem file");
    std::string evalInput;
    std::string evalRelations = "all";
    std::string evalOutput;
    double evalTol = urel::kDefaultTol;
    evalCmd->add_option("--input", evalInput, "problem JSON file")->required();
    evalCmd->add_option("--relations", evalRelations, "all or comma-separated relation names");
    evalCmd->add_option("--tol", evalTol, "verdict tolerance");
    evalCmd->add_option("--output", evalOutput, "report JSON path");

    auto* fuzzCmd = app.add_subcommand("fuzz", "random verification campaign");
    urel::CampaignConfig config;
    config.trials = 10000;
    config.seed = 42;
    std::string fuzzRelations = "all";
    std::string fuzzState = "mixed-full-rank";
    std::string fuzzOutput;
    std::string fuzzCsv;
    fuzzCmd->add_option("--dims", config.dims, "matrix dimensions to draw from")->delimiter(',');
    fuzzCmd->add_option("--num-obs", config.numObservables, "tuple sizes to draw from")
        ->delimiter(',');
    fuzzCmd->add_option("--trials", config.trials, "number of random instances");
    fuzzCmd->add_option("--seed", config.seed, "campaign seed");
    fuzzCmd->add_option("--state", fuzzState, "pure | mixed-full-rank | mixed-random-rank");
    fuzzCmd->add_option("--relations", fuzzRelations, "all or comma-separated relation names");
    fuzzCmd->add_option("--tol", config.tol, "verdict tolerance");
    fuzzCmd->add_option("--output", fuzzOutput, "report JSON path");
    fuzzCmd->add_option("--csv", fuzzCsv, "per-trial tightness CSV path");

    auto* demoCmd = app.add_subcommand("demo", "reproduce a named phenomenon");
    std::string demoCase;
    double theta = 0.0;
    int demoTrials = 1000;
    uint64_t demoSeed = 42;
    demoCmd->add_option("--case", demoCase,
                        "gram-example | pauli-equalities | square-order-counterexample | "
                        "pinching-identity")
        ->required();
    demoCmd->add_option("--theta", theta, "angle for gram-example");
    demoCmd->add_option("--trials", demoTrials, "search budget for the counterexample");
    demoCmd->add_option("--seed", demoSeed, "seed for seeded demos");

    auto* versionCmd = app.add_subcommand("version", "print version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (versionCmd->parsed()) {
            std::cout << "urel " << kVersion << "\n";
            return kExitOk;
        }
        if (evalCmd->parsed()) {
            return run_eval(evalInput, evalRelations, evalTol, evalOutput);
        }
        if (fuzzCmd->parsed()) {
            auto kind = urel::parse_state_kind(fuzzState);
            if (!kind) throw urel::ParseError("unknown state kind '" + fuzzState + "'");
            config.stateKind = *kind;
            config.relations = parse_relations_arg(fuzzRelations);
            config.threads = threads_from_env();
            return run_fuzz(config, fuzzOutput, fuzzCsv);
        }
        if (demoCmd->parsed()) {
            if (demoCase == "gram-example") return demo_gram_example(theta);
            if (demoCase == "pauli-equalities") return demo_pauli_equalities();
            if (demoCase == "square-order-counterexample") {
                return demo_square_order_counterexample(demoTrials, demoSeed);
            }
            if (demoCase == "pinching-identity") return demo_pinching_identity(demoSeed);
            throw urel::UnknownCaseError("unknown demo case '" + demoCase + "'");
        }
    } catch (const urel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
