#include "dwlab/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace dwlab {

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) {
    throw std::invalid_argument("csv: header/column count mismatch");
  }
  size_t rows = columns.empty() ? 0 : columns[0].size();
  for (const auto& col : columns) {
    if (col.size() != rows) {
      throw std::invalid_argument("csv: ragged columns");
    }
  }
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) {
    throw std::runtime_error("csv: cannot open " + path);
  }
  for (size_t c = 0; c < header.size(); ++c) {
    std::fprintf(fp, "%s%s", header[c].c_str(), c + 1 < header.size() ? "," : "\n");
  }
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < columns.size(); ++c) {
      std::fprintf(fp, "%.12e%s", columns[c][r], c + 1 < columns.size() ? "," : "\n");
    }
  }
  if (std::fclose(fp) != 0) {
    throw std::runtime_error("csv: write failed for " + path);
  }
}

void write_field_csv(const std::string& path, const Field& f, const std::string& name) {
  const RadialGrid& g = f.grid();
  std::vector<double> r(static_cast<size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) r[static_cast<size_t>(i)] = g.node(i);
  write_csv(path, {"r", name}, {r, f.values()});
}

}  // namespace dwlab
