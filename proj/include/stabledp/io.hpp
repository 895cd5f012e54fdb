#pragma once

#include <string>

#include <json.hpp>

#include "stabledp/problem.hpp"
#include "stabledp/sensitivity.hpp"

namespace stabledp {

using Json = nlohmann::ordered_json;

Json instance_to_json(const ProblemInstance& instance);
// Throws ParseError on malformed documents. A document without "problem" is
// read as a raw DAG.
ProblemInstance instance_from_json(const Json& doc);
ProblemInstance parse_instance(const std::string& text);
ProblemInstance read_instance_file(const std::string& path);

// Index lists for sequence problems, index tuples for LCS, [l, r] pairs for
// RNA, vertex ids for raw DAGs.
Json solution_to_json(ProblemKind kind, const Solution& solution);
Solution solution_from_json(ProblemKind kind, const Json& doc);

Json ratio_stats_to_json(const RatioStats& stats);
Json report_to_json(const SensitivityReport& report);
// Header line plus one row of the report's scalar fields.
std::string report_to_csv(const SensitivityReport& report);

// Pretty-printed with a trailing newline.
std::string dump(const Json& doc);

}  // namespace stabledp
