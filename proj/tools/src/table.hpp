#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace dsp6::cli {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> comments;  // "# ..." lines in CSV, "comments" array in JSON
  nlohmann::json meta = nlohmann::json::object();
};

/// Shortest round-trip form; non-finite values as nan/inf.
std::string format_number(double v);

void write_table(std::ostream& os, const Table& t, OutputFormat f);

/// Reads a CSV written by write_table (comment lines skipped).
Table read_csv(std::istream& is);

std::size_t column_index(const Table& t, const std::string& name);

}  // namespace dsp6::cli
