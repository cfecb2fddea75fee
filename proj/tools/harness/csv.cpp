#include "harness/csv.hpp"

#include <cstdio>
#include <ctime>

namespace clockgame::cli {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

void write_metadata(std::ostream& out, const CsvMetadata& meta) {
  out << "#seed=" << meta.seed << ",version=" << meta.version
      << ",generator=" << meta.generator << "\n";
  if (meta.include_timestamp) {
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "#timestamp=" << stamp << "\n";
  }
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << "\n";
}

}  // namespace clockgame::cli
