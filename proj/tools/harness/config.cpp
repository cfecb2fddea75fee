#include "harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace clockgame::cli {

Json load_config_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  Json parsed = Json::parse(text, nullptr, false);
  if (parsed.is_discarded()) throw ConfigError("config: '" + path + "' is not valid JSON");
  if (!parsed.is_object()) throw ConfigError("config: top level must be a JSON object");
  return parsed;
}

void reject_unknown_fields(const Json& config, const std::vector<std::string>& allowed,
                           const std::string& command) {
  for (const auto& [key, value] : config.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("config: unknown field '" + key + "' for command " + command);
  }
}

long long require_int(const Json& config, const std::string& field, long long fallback,
                      long long min_value, long long max_value) {
  if (!config.contains(field)) return fallback;
  const Json& value = config.at(field);
  if (!value.is_number_integer())
    throw ConfigError("config: field '" + field + "' must be an integer");
  const long long v = value.get<long long>();
  if (v < min_value || v > max_value)
    throw ConfigError("config: field '" + field + "' out of range [" +
                      std::to_string(min_value) + ", " + std::to_string(max_value) + "]");
  return v;
}

double require_number(const Json& config, const std::string& field, double fallback) {
  if (!config.contains(field)) return fallback;
  const Json& value = config.at(field);
  if (!value.is_number()) throw ConfigError("config: field '" + field + "' must be a number");
  return value.get<double>();
}

bool require_bool(const Json& config, const std::string& field, bool fallback) {
  if (!config.contains(field)) return fallback;
  const Json& value = config.at(field);
  if (!value.is_boolean()) throw ConfigError("config: field '" + field + "' must be a boolean");
  return value.get<bool>();
}

std::string require_string(const Json& config, const std::string& field,
                           const std::string& fallback) {
  if (!config.contains(field)) return fallback;
  const Json& value = config.at(field);
  if (!value.is_string()) throw ConfigError("config: field '" + field + "' must be a string");
  return value.get<std::string>();
}

std::vector<long long> int_grid(const Json& config, const std::string& field,
                                std::vector<long long> fallback, long long min_value,
                                long long max_value) {
  if (!config.contains(field)) return fallback;
  const Json& value = config.at(field);
  std::vector<long long> grid;
  if (value.is_number_integer()) {
    grid.push_back(value.get<long long>());
  } else if (value.is_array()) {
    for (const Json& item : value) {
      if (!item.is_number_integer())
        throw ConfigError("config: field '" + field + "' must hold integers");
      grid.push_back(item.get<long long>());
    }
  } else {
    throw ConfigError("config: field '" + field + "' must be an integer or integer array");
  }
  if (grid.empty()) throw ConfigError("config: field '" + field + "' must not be empty");
  for (long long v : grid) {
    if (v < min_value || v > max_value)
      throw ConfigError("config: field '" + field + "' out of range [" +
                        std::to_string(min_value) + ", " + std::to_string(max_value) + "]");
  }
  return grid;
}

std::vector<double> number_grid(const Json& config, const std::string& field,
                                std::vector<double> fallback) {
  if (!config.contains(field)) return fallback;
  const Json& value = config.at(field);
  std::vector<double> grid;
  if (value.is_number()) {
    grid.push_back(value.get<double>());
  } else if (value.is_array()) {
    for (const Json& item : value) {
      if (!item.is_number())
        throw ConfigError("config: field '" + field + "' must hold numbers");
      grid.push_back(item.get<double>());
    }
  } else {
    throw ConfigError("config: field '" + field + "' must be a number or number array");
  }
  if (grid.empty()) throw ConfigError("config: field '" + field + "' must not be empty");
  return grid;
}

}  // namespace clockgame::cli
