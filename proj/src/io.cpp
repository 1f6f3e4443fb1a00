#include "urel/io.hpp"

#include <fstream>
#include <sstream>

namespace urel {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError(where + ": complex number must be a two-element array [re, im]");
    }
    Complex z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ParseError(where + ": non-finite complex entry");
    }
    return z;
}

json witness_to_json(const Witness& w) {
    json out = json::object();
    for (const auto& [key, value] : w) {
        if (std::holds_alternative<double>(value)) {
            out[key] = std::get<double>(value);
        } else if (std::holds_alternative<std::string>(value)) {
            out[key] = std::get<std::string>(value);
        } else if (std::holds_alternative<std::vector<double>>(value)) {
            out[key] = std::get<std::vector<double>>(value);
        } else {
            out[key] = matrix_to_json(std::get<Matrix>(value));
        }
    }
    return out;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            data.push_back(complex_to_json(m(i, j)));
        }
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
        throw ParseError("matrix: expected object with rows, cols, data");
    }
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
        throw ParseError("matrix: rows and cols must be integers");
    }
    const auto rows = j["rows"].get<Eigen::Index>();
    const auto cols = j["cols"].get<Eigen::Index>();
    if (rows < 1 || cols < 1) throw ParseError("matrix: rows and cols must be positive");
    const json& data = j["data"];
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
        throw ParseError("matrix: data length " + std::to_string(data.size()) +
                         " does not equal rows*cols");
    }
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index jj = 0; jj < cols; ++jj) {
            m(i, jj) = complex_from_json(data[static_cast<size_t>(i * cols + jj)],
                                         "matrix data[" + std::to_string(i * cols + jj) + "]");
        }
    }
    return m;
}

json problem_to_json(const DensityState& state, const ObservableTuple& tuple) {
    json obs = json::array();
    for (const auto& o : tuple.observables()) obs.push_back(matrix_to_json(o.matrix()));
    return json{{"dim", state.dim()}, {"observables", std::move(obs)},
                {"state", matrix_to_json(state.rho())}};
}

std::pair<DensityState, ObservableTuple> problem_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("problem: top level must be an object");
    if (!j.contains("dim") || !j["dim"].is_number_integer()) {
        throw ParseError("problem: missing integer field 'dim'");
    }
    const auto dim = j["dim"].get<Eigen::Index>();
    if (dim < 1) throw ParseError("problem: 'dim' must be positive");

    if (!j.contains("observables") || !j["observables"].is_array() || j["observables"].empty()) {
        throw ParseError("problem: 'observables' must be a nonempty array");
    }
    std::vector<Observable> obs;
    for (size_t i = 0; i < j["observables"].size(); ++i) {
        Matrix m = matrix_from_json(j["observables"][i]);
        if (m.rows() != dim || m.cols() != dim) {
            throw ParseError("problem: observable " + std::to_string(i) + " is not " +
                             std::to_string(dim) + "x" + std::to_string(dim));
        }
        obs.emplace_back(std::move(m));  // ValidationError if not Hermitian
    }

    if (!j.contains("state")) throw ParseError("problem: missing field 'state'");
    const json& st = j["state"];
    DensityState state = [&]() -> DensityState {
        if (st.is_string()) {
            if (st.get<std::string>() == "maximally_mixed") {
                return DensityState::maximally_mixed(dim);
            }
            throw ParseError("problem: unknown state keyword '" + st.get<std::string>() + "'");
        }
        if (st.is_object() && st.contains("pure")) {
            const json& amps = st["pure"];
            if (!amps.is_array() || static_cast<Eigen::Index>(amps.size()) != dim) {
                throw ParseError("problem: 'pure' must be an array of dim complex amplitudes");
            }
            Vector psi(dim);
            for (Eigen::Index i = 0; i < dim; ++i) {
                psi(i) = complex_from_json(amps[static_cast<size_t>(i)],
                                           "pure amplitude " + std::to_string(i));
            }
            return DensityState::pure(psi);
        }
        Matrix rho = matrix_from_json(st);
        if (rho.rows() != dim) {
            throw ParseError("problem: state matrix dimension does not match 'dim'");
        }
        return DensityState(std::move(rho));  // ValidationError if not a state
    }();

    return {std::move(state), ObservableTuple(std::move(obs))};
}

std::pair<DensityState, ObservableTuple> load_problem(const std::string& path) {
    std::string text = read_text_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("load_problem: " + path + ": " + e.what());
    }
    return problem_from_json(j);
}

void save_problem(const std::string& path, const DensityState& state,
                  const ObservableTuple& tuple) {
    write_text_file(path, problem_to_json(state, tuple).dump(2) + "\n");
}

json report_to_json(const RelationReport& report) {
    if (std::holds_alternative<BoundReport>(report)) {
        const auto& b = std::get<BoundReport>(report);
        return json{{"relation", to_string(b.relationId)}, {"lhs", b.lhs},
                    {"rhs", b.rhs},      {"margin", b.margin},
                    {"satisfied", b.satisfied}, {"tol", b.tol},
                    {"witness", witness_to_json(b.witness)}};
    }
    const auto& c = std::get<ChainReport>(report);
    json values = json::array();
    for (const auto& [name, value] : c.values) {
        values.push_back(json{{"name", name}, {"value", value}});
    }
    return json{{"relation", to_string(c.relationId)}, {"values", std::move(values)},
                {"satisfied", c.satisfied},            {"tol", c.tol},
                {"minGap", c.minGap}};
}

json campaign_result_to_json(const CampaignResult& result) {
    const CampaignConfig& cfg = result.config;
    json relationNames = json::array();
    for (RelationId id : cfg.relations) relationNames.push_back(to_string(id));
    json config{{"dims", cfg.dims},
                {"numObservables", cfg.numObservables},
                {"trials", cfg.trials},
                {"seed", cfg.seed},
                {"relations", std::move(relationNames)},
                {"tol", cfg.tol},
                {"stateKind", to_string(cfg.stateKind)}};

    json relations = json::object();
    for (const auto& [name, stats] : result.perRelation) {
        json entry{{"trials", stats.trials},
                   {"violations", stats.violations},
                   {"errors", stats.errors},
                   {"histogram", stats.histogram}};
        if (stats.trials > 0) {
            entry["minMargin"] = stats.minMargin;
        }
        if (stats.worst) {
            const WorstWitness& w = *stats.worst;
            entry["worstWitness"] = json{{"trial", w.trial},
                                         {"lhs", w.lhs},
                                         {"rhs", w.rhs},
                                         {"margin", w.margin},
                                         {"satisfied", w.satisfied},
                                         {"problem", problem_to_json(w.state, w.tuple)}};
        }
        relations[name] = std::move(entry);
    }

    return json{{"config", std::move(config)}, {"relations", std::move(relations)},
                {"version", "1"}};
}

std::string campaign_report_text(const CampaignResult& result) {
    return campaign_result_to_json(result).dump(2) + "\n";
}

void save_report(const std::string& path, const CampaignResult& result) {
    write_text_file(path, campaign_report_text(result));
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw Error("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace urel
