#pragma once

#include <string>

#include <json.hpp>

namespace lpdmt {

/// Minimal TOML reader covering what the config and channel-model files
/// need: comments, [section] tables, key = value pairs with strings,
/// numbers, booleans, arrays (multi-line allowed) and inline tables.
/// Produces a nlohmann::json object so TOML and JSON configs share one
/// mapping path. Throws std::runtime_error with line context on bad input.
nlohmann::json parse_toml_lite(const std::string& text);

}  // namespace lpdmt
