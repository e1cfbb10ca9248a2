#pragma once

#include <cmath>
#include <optional>

#include "dwlab/grid.hpp"

namespace dwlab {

// <r> = (1 + r^2)^{1/2}, the smooth stand-in for |x| near the origin.
inline double angle_bracket(double r) { return std::sqrt(1.0 + r * r); }

// Compactly supported C^infinity bump on (center-width, center+width):
// amp * exp(-1/(1 - s^2)) with s = (r-center)/width; peak value amp/e.
double smooth_bump(double r, double center, double width, double amp);

// Same bump rescaled so the peak value is exactly amp.
double peak_bump(double r, double center, double width, double amp);

struct BumpSpec {
  double center = 0.0;
  double width = 0.0;
  double height = 0.0;
};

// Damping coefficient a(r) = a0 * r^alpha plus an optional compactly
// supported perturbation bump. Growing at infinity: alpha > 0, a0 > 0.
struct DampingProfile {
  double alpha = 1.0;
  double a0 = 1.0;
  std::optional<BumpSpec> bump;

  double eval(double r) const;
};

// Validates alpha > 0, a0 > 0, bump width > 0 if present; throws std::invalid_argument.
DampingProfile make_damping(double alpha, double a0, std::optional<BumpSpec> bump = std::nullopt);

// Samples a(r) on the grid; throws std::invalid_argument if a <= 0 anywhere.
Field sample_damping(const DampingProfile& p, const GridPtr& grid);

// Envelope constants of a against <r>^alpha over the grid:
// a1 = inf a/<r>^alpha, a2 = sup a/<r>^alpha.
struct DampingEnvelope {
  double a1 = 0.0;
  double a2 = 0.0;
};
DampingEnvelope damping_envelope(const DampingProfile& p, const GridPtr& grid);

// Compactly supported initial data for the wave run. u0 and u1 are bumps
// sharing one center/width; support_radius = center + width.
struct InitialData {
  Field u0;
  Field u1;
  double support_radius = 0.0;
};

// Validates r0 < center - width and center + width < r_max.
InitialData bump_initial_data(const GridPtr& grid, double center, double width, double amp_u0,
                              double amp_u1);

}  // namespace dwlab
