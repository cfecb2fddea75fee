#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace clockgame::cli {

// Shortest round-trip-stable decimal form with '.' separator; keeps CSV
// output byte-stable across runs.
std::string format_double(double value);

struct CsvMetadata {
  std::uint64_t seed = 0;
  std::string version;
  std::string generator = "splitmix64";
  bool include_timestamp = true;  // dropped under --reproducible
};

void write_metadata(std::ostream& out, const CsvMetadata& meta);
void write_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace clockgame::cli
