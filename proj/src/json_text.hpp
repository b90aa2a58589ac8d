#pragma once

// Deterministic JSON text: doubles are printed with 17 significant digits and
// non-finite values become the strings "inf", "-inf" and "nan".

#include <string>

#include "json.hpp"

namespace lapnum::detail {

using Json = nlohmann::ordered_json;

std::string format_double(double x);
std::string dump_json(const Json& j, int indent = 2);

}  // namespace lapnum::detail
