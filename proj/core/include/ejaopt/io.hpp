#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ejaopt/algebra.hpp"
#include "ejaopt/condition.hpp"
#include "ejaopt/majorization.hpp"
#include "ejaopt/orbit_opt.hpp"
#include "ejaopt/schur_functions.hpp"

namespace ejaopt {

/// Structured-text (JSON) forms.
///
///   algebra:  {"kind":"diag","n":4} | {"kind":"sym","n":3} |
///             {"kind":"spin","d":4} | {"kind":"product","factors":[...]}
///   element:  {"algebra":..., "coords":[...]}
///   function: {"fn":"schatten","p":2} | {"fn":"cond_vector_norm"} | ...
///   problem:  {"algebra":..., "fn":..., "a":..., "sense":"min"|"max",
///              "feasible": {"orbit_of":...} | {"weak_orbit_of":...} |
///                          {"orbit_spectrum":[...]} | {"spectral_set":[[...],...]}}
///
/// Inside a problem an element may be written as a bare coordinate array, a
/// full square row-major matrix (flat or nested) for sym factors, or an
/// object with "coords" or per-factor "factors". Square matrices are
/// symmetrized as (M + M^T)/2; asymmetry above 1e-8 is reported through the
/// diagnostics list.
///
/// Every parse failure throws ParseError.

inline constexpr double kAsymmetryReportThreshold = 1e-8;

nlohmann::json to_json(const Algebra& algebra);
Algebra algebra_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Element& x);
/// Element with its own "algebra" key.
Element element_from_json(const nlohmann::json& j, std::vector<std::string>* diagnostics = nullptr);
/// Element of a known algebra (any of the accepted shapes).
Element element_from_json(const Algebra& algebra, const nlohmann::json& j,
                          std::vector<std::string>* diagnostics = nullptr);

nlohmann::json to_json(const SymmetricFunction& fn);
SymmetricFunction function_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MajorizationVerdict& verdict);
nlohmann::json to_json(const Certificate& certificate);
nlohmann::json to_json(const Solution& solution);
nlohmann::json to_json(const ConditionReport& report);
nlohmann::json to_json(const CounterexampleReport& report);

OrbitProblem problem_from_json(const nlohmann::json& j,
                               std::vector<std::string>* diagnostics = nullptr);
nlohmann::json to_json(const OrbitProblem& problem);

/// Parses text; wraps nlohmann parse errors in ParseError.
nlohmann::json parse_json_text(const std::string& text);
nlohmann::json read_json_file(const std::string& path);

/// Serializes with every floating-point number printed with 17 significant
/// digits (printf "%.17g"), object keys in sorted order, and the given
/// indentation. Non-finite numbers become null.
std::string dump_report(const nlohmann::json& j, int indent = 2);

}  // namespace ejaopt
