#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dwlab/rates.hpp"

namespace dwlab {

struct SvgSeries {
  std::string label;
  std::vector<double> t;
  std::vector<double> value;  // nonpositive entries are skipped
};

// Self-contained log-log SVG plot. Fitted slopes and the optional reference
// slope are embedded as XML comments so the numbers survive in the artifact.
void emit_loglog_svg(const std::string& path, const std::string& title,
                     const std::vector<SvgSeries>& series, const std::vector<DecayFit>& fits,
                     std::optional<double> reference_slope);

}  // namespace dwlab
