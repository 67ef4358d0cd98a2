#include "icts/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "icts/errors.hpp"

namespace icts::io {

std::string format_double(double value) {
  char buf[64];
  // %.17g round-trips every double; trim to the shortest form that still does
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == value) return buf;
  }
  return buf;
}

std::string csv_text(const CsvTable& table, const std::string& config_hash,
                     std::uint64_t seed) {
  std::string out = "# config_hash=" + config_hash + " seed=" +
                    std::to_string(seed) + "\n";
  out += table.header;
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string scan_csv(const tomo::ScanResult& result) {
  CsvTable table;
  table.header = "delay_m,visibility,phase_rad,stderr";
  table.rows.reserve(result.points.size());
  for (const auto& point : result.points) {
    table.rows.push_back(
        {point.delay_m, point.visibility, point.phase_rad, point.stderr_vis});
  }
  return csv_text(table, result.config_hash, result.seed);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("failed while writing " + path);
}

}  // namespace icts::io
