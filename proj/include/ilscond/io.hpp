#pragma once

#include <string>

#include "json.hpp"

#include "ilscond/conditioning.hpp"
#include "ilscond/diagnostics.hpp"
#include "ilscond/probe.hpp"

namespace ilscond {

// Problem files carry m_plus, m_minus, b, either A (row-major array of rows)
// or a gsvd block {thetas, X, Q_plus?, Q_minus?}, and optional norm_a /
// norm_b overrides. All numbers are IEEE doubles in decimal.
IlsProblem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const IlsProblem& p);
IlsProblem load_problem(const std::string& path);

nlohmann::json solution_to_json(const IlsSolution& s);
nlohmann::json report_to_json(const ConditioningReport& r);
nlohmann::json diagnostics_to_json(const TheoremDiagnostics& d);
nlohmann::json probe_result_to_json(const ProbeResult& r);

}  // namespace ilscond
