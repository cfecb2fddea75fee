#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace clockgame::cli {

// Rejected configuration; mapped to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invariant breach detected while running; mapped to exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

struct CommonOptions {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> trials;
  std::string out;      // empty: CSV to stdout, no SVG written
  bool reproducible = false;
};

// Reads the JSON document from a file, or stdin when the path is "-".
Json load_config_document(const std::string& path);

void reject_unknown_fields(const Json& config, const std::vector<std::string>& allowed,
                           const std::string& command);

long long require_int(const Json& config, const std::string& field, long long fallback,
                      long long min_value, long long max_value);
double require_number(const Json& config, const std::string& field, double fallback);
bool require_bool(const Json& config, const std::string& field, bool fallback);
std::string require_string(const Json& config, const std::string& field,
                           const std::string& fallback);

// Accepts a scalar or an array of integers.
std::vector<long long> int_grid(const Json& config, const std::string& field,
                                std::vector<long long> fallback, long long min_value,
                                long long max_value);
std::vector<double> number_grid(const Json& config, const std::string& field,
                                std::vector<double> fallback);

}  // namespace clockgame::cli
