#pragma once

#include <string>

#include "json.hpp"

#include "hpe/problems.hpp"

namespace hpe {

/// Operators serialize by kind with their payload (matrices as row-major
/// arrays) and any declared moduli; infinite box bounds become "inf"/"-inf".
nlohmann::json operator_to_json(const Operator& op);
Operator operator_from_json(const nlohmann::json& j);

nlohmann::json problem_to_json(const ProblemInstance& problem);
/// Re-validates the stored solution's inclusion residual (<= 1e-8).
ProblemInstance problem_from_json(const nlohmann::json& j);

/// File front ends; malformed content raises ConfigError.
void save_problem(const ProblemInstance& problem, const std::string& path);
ProblemInstance load_problem(const std::string& path);

}  // namespace hpe
