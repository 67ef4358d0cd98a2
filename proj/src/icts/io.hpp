#pragma once

#include <string>
#include <vector>

#include "icts/tomography.hpp"

namespace icts::io {

// Shortest round-trip decimal form, '.' separator; keeps CSV interchange
// bit-exact across runs.
std::string format_double(double value);

struct CsvTable {
  std::string header;                     // one line of column names
  std::vector<std::vector<double>> rows;
};

// "# config_hash=<hash> seed=<seed>" metadata line, then the header, then rows.
std::string csv_text(const CsvTable& table, const std::string& config_hash,
                     std::uint64_t seed);

// One row per coarse point: delay_m, visibility, phase_rad, stderr.
std::string scan_csv(const tomo::ScanResult& result);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace icts::io
