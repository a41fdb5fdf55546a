#pragma once

// Deterministic text output: every number with 17 significant digits.

#include <string>

#include <json.hpp>

#include "hyperlab/tensor_core.hpp"

namespace hyperlab {

/// %.17g; non-finite values print as null.
std::string format_number(double x);

/// JSON text with objects in key order and doubles via format_number.
std::string dump_json(const nlohmann::json& j, int indent = 2);

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& m);  // array of rows

}  // namespace hyperlab
