#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

namespace abcover {

/// Reads the TOML subset used by documents: comments, [tables],
/// [[arrays of tables]], dotted and quoted keys, strings, integers,
/// booleans, arrays and inline tables. Floats and dates are rejected.
/// Errors are parse_error with "source:line:col".
nlohmann::ordered_json parse_toml(std::string_view text, const std::string& source = "<input>");

}  // namespace abcover
