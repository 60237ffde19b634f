#pragma once

#include <string>

#include <json.hpp>

#include "khlab/verify.hpp"

namespace khlab {

using nlohmann::json;

enum class Coeff { Z, F2, Q };

Coeff parse_coeff(const std::string& s);
Ring parse_theory(const std::string& s);

// {command, theory, coeff, reduced?, bigradings: [{i, j, rank, torsion: [..]}],
//  euler: "...", xi_action?: [...]}
json homology_report(const Diagram& d, Ring theory, Coeff coeff, bool reduced, int jobs);

json jones_report(const Diagram& d, int jobs);

json verify_report(const std::vector<SuiteResult>& results);

json s_report(const Diagram& d, int jobs);

json cobordism_report(const Diagram& start, const MovieScript& script, int jobs);

json burnside_report(const Diagram& d, int jobs);

// human table rendering for --pretty / --format tsv
std::string homology_tsv(const json& report);

// structural check against the shipped schema (schemas/khlab-output.schema.json)
bool matches_output_schema(const json& report, std::string* why = nullptr);

}  // namespace khlab
