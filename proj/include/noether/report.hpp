#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "noether/classifier.hpp"
#include "noether/symmetry.hpp"

namespace noether {

/// Serialized report. Stable keys:
///   invariance   {status, max_residual, witness?}
///   noether      printed expression
///   conditions   {euler_lagrange|dubois_reymond|weierstrass: {status, residual, witness?}}
///   classes      {pontryagin, theorem4}
///   conservation {deviation, status, mean, scale}
/// plus "problem", "trajectory" and an optional "finding".
nlohmann::ordered_json report_to_json(const AnalysisReport& report, const std::string& problem,
                                      const std::string& trajectory);

nlohmann::ordered_json invariance_to_json(const InvarianceVerdict& verdict);

/// Schema check for emitted reports; returns one message per violation.
std::vector<std::string> validate_report_json(const nlohmann::json& doc);

void print_report_table(std::ostream& out, const AnalysisReport& report, const std::string& problem,
                        const std::string& trajectory);

}  // namespace noether
