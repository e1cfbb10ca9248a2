#pragma once

#include <string>
#include <vector>

#include "dwlab/grid.hpp"

namespace dwlab {

// Writes equal-length columns as UTF-8 CSV, every number as %.12e so reruns
// are byte-identical. Throws std::runtime_error on I/O failure.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

// Convenience: columns r,<name> from one field.
void write_field_csv(const std::string& path, const Field& f, const std::string& name);

}  // namespace dwlab
