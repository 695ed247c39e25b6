#pragma once

#include <string>

#include <json.hpp>

#include "upsilon/checks.hpp"
#include "upsilon/cp_map.hpp"
#include "upsilon/feasible.hpp"

namespace upsilon {

using Json = nlohmann::ordered_json;

// Wire schema: {"dims": [...], "entries": [[re, im], ...]} with entries in
// row-major order.
Json to_json(const SquareOperator& m);
SquareOperator square_operator_from_json(const Json& j);

// {"dims": [dim_in, dim_out], "trace_preserving": bool,
//  "kraus": [[[re, im], ...], ...]} with each operator row-major.
Json to_json(const CpMap& n);
CpMap cp_map_from_json(const Json& j);

Json to_json(const OptimizationReport& report);
Json to_json(const CheckResult& result);

// Round-trip-safe decimal text for binary64 (17 significant digits).
std::string format_double(double v);

}  // namespace upsilon
