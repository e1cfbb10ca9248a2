#pragma once

#include <vector>

#include "dwlab/damping.hpp"
#include "dwlab/grid.hpp"

namespace dwlab {

// Radial integral of f over the exterior shell: omega_{dim-1} * int f(r) r^{dim-1} dr,
// composite Simpson on the uniform grid (trapezoid closure on the last panel
// when the panel count is even). Exact for cubics when the node count is odd.
double integrate_radial(const Field& f);

// Same with an extra pointwise weight field.
double quadrature(const Field& samples, const Field& weight);

enum class WeightKind {
  lebesgue,              // dx
  dmu,                   // a(x) dx
  dmu_sqrt_a_outside,    // alias of dmu: ||sqrt(a) f||_{L^2(dx)} = ||f||_{L^2(dmu)}
};

// L^2 norm of f with the selected measure.
double weighted_l2_norm(const Field& f, const DampingProfile& p, WeightKind kind);

// Cumulative Simpson antiderivative of the plain 1-d samples (no r^{dim-1}
// factor): out[i] ~ int_{x0}^{x_i} f. out[0] = 0; odd prefixes close with the
// quadratic through the first three nodes.
std::vector<double> cumulative_simpson(const std::vector<double>& f, double dr);

// Node coefficients of the composite rule: integral ~ sum_i coeff[i] * f[i].
// dr/3 * (1,4,2,...,4,1) for an even panel count; trapezoid closure otherwise.
std::vector<double> simpson_coefficients(int n, double dr);

}  // namespace dwlab
