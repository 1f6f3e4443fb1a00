#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "urel/harness.hpp"
#include "urel/quantum.hpp"
#include "urel/relations.hpp"

namespace urel {

// Wire formats. Complex numbers are two-element arrays [re, im]; matrices
// are {"rows", "cols", "data": [[re,im], ...]} in row-major order.

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json problem_to_json(const DensityState& state, const ObservableTuple& tuple);
std::pair<DensityState, ObservableTuple> problem_from_json(const nlohmann::json& j);

std::pair<DensityState, ObservableTuple> load_problem(const std::string& path);
void save_problem(const std::string& path, const DensityState& state,
                  const ObservableTuple& tuple);

nlohmann::json report_to_json(const RelationReport& report);

/// Campaign report: {"config": {...}, "relations": {...}, "version": "1"}.
/// Serialization depends only on the campaign identity (threads and elapsed
/// time are excluded), so equal configs give byte-identical text.
nlohmann::json campaign_result_to_json(const CampaignResult& result);
std::string campaign_report_text(const CampaignResult& result);
void save_report(const std::string& path, const CampaignResult& result);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace urel
