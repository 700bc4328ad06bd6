#pragma once

#include <string>

#include "nprk/tableau.hpp"

namespace nprk {

/// 17 significant digits, enough to parse back to exactly `v`.
std::string format_real(double v);

/// JSON form: {"name", "s", "a": [[i,j,k,"value"],...], "b": [[j,k,"value"],...],
/// "class"}. Indices are 1-based; values are decimal strings.
std::string method_to_json(const NprkMethod& m, int indent = 2);

/// Accepts values as strings or numbers. Throws InvalidMethod.
NprkMethod method_from_json(const std::string& text);

}  // namespace nprk
