#pragma once

#include <functional>

#include "dwlab/damping.hpp"
#include "dwlab/grid.hpp"

namespace dwlab {

// Change of variables rho = psi(r) = r^{1+alpha/2} turning the weighted
// generator -a^{-1} Lap (pure power a = a0 r^alpha) into a Schroedinger-type
// operator B on the rho half-line, unitarily via J below:
//   L (J v) = J (B v),
//   (J v)(r) = sqrt((2+alpha)/2) r^{(dim-2) alpha / 4} v(psi(r)),
//   B v = m_tilde^{-1} [ -(1+alpha/2)^2 (v'' + (dim-1)/rho v')
//                        - (dim-2)^2 alpha (4+alpha) / (16 rho^2) v ].
// J maps L^2(rho^{dim-1} drho) isometrically onto L^2(dmu)/sqrt(a0).
struct TransformParams {
  double alpha = 1.0;
  double a0 = 1.0;
  int dim = 2;
};

TransformParams make_transform_params(double alpha, double a0, int dim);

double psi_map(double r, double alpha);        // r^{1+alpha/2}
double psi_inverse(double rho, double alpha);  // rho^{2/(2+alpha)}
// Volume factor of the substitution: d(rho^dim ball) = jacobian_det * d(r ball).
double jacobian_det(double r, double alpha, int dim);
// Pointwise amplitude of J.
double j_scale(double r, const TransformParams& tp);

// Pulls v (sampled on the rho grid image_grid = psi(r grid) is NOT assumed;
// v is a callable evaluated exactly) back to the r grid.
Field j_transform(const GridPtr& r_grid, const TransformParams& tp,
                  const std::function<double(double)>& v_of_rho);

// Coefficient m_tilde(rho) = a(psi^{-1}(rho)) / psi^{-1}(rho)^alpha sampled on
// a rho grid; constant a0 for pure power damping.
Field make_m_tilde(const DampingProfile& p, const GridPtr& rho_grid);

// FD action of B on a rho-grid field (centered differences, ends zero).
Field apply_B_radial(const Field& v, const TransformParams& tp, const Field& m_tilde);

// Stationary solution of B in dim >= 3, vanishing at rho = 1:
//   psi0(rho) = rho^{m+} - rho^{m-},  m+- the roots of the B kernel,
//   m+ = -(dim-2) alpha / (2(2+alpha)), m- = m+ - 2(dim-2)/(2+alpha).
double psi0_value(double rho, const TransformParams& tp);
Field psi0_stationary(const GridPtr& rho_grid, const TransformParams& tp);

// Critical exponent 2 dim (2+alpha) / (alpha (dim-2)); infinity when dim = 2.
double p_alpha(double alpha, int dim);

}  // namespace dwlab
