#pragma once

#include <optional>

#include "dwlab/damping.hpp"
#include "dwlab/grid.hpp"

namespace dwlab {

// Potential and radial derivative of a compactly supported radial source,
// normalized so that -Laplacian(value) = source away from the origin.
struct NewtonPotential {
  Field value;
  Field derivative;
};

// Requires the source to vanish near r_max (its tail integrals are taken over
// the grid only). derivative[i] = -r^{1-dim} * int_{r0}^{r} source s^{dim-1} ds.
NewtonPotential newton_potential_radial(const Field& source);

// Exactly solvable part of the damping: b1 = Laplacian of the leading weight
// term a0 <r>^{2+alpha} / ((2+alpha)(dim+alpha)).
double b1_value(const DampingProfile& p, int dim, double r);
double leading_term(const DampingProfile& p, int dim, double r);
double leading_term_derivative(const DampingProfile& p, int dim, double r);

// C^infinity cutoff: 1 on [r0, R], 0 beyond R+1, exp(-1/s) blend between.
double collar_cutoff(double r, double R);

struct VerificationReport {
  double ellip_min = 0.0;        // min over interior nodes of Lap_h A / a
  double ellip_max = 0.0;        // max over interior nodes of Lap_h A / a
  double tol_h = 0.0;            // Richardson estimate of the FD error in the ratio
  bool ellip_pass = false;       // 1 - eps - tol_h <= ratio <= 1 + eps + tol_h everywhere
  double grad_ratio_sup = 0.0;   // sup |A'|^2 / (a A)
  bool grad_pass = false;        // grad_ratio_sup <= h + eps
  double A1eps = 0.0;            // inf A / <r>^{2+alpha}
  double A2eps = 0.0;            // sup A / <r>^{2+alpha}
};

// Weight A solving Lap A ~ a with controlled gradient ratio. h = (2+alpha)/(dim+alpha).
struct AuxiliaryWeight {
  double epsilon = 0.0;
  double h = 0.0;
  double R_eps = 0.0;      // cutoff radius: |a - b1|/a <= eps beyond it
  double lambda_eps = 0.0; // additive shift keeping A positive and the ratio below h+eps
  Field A;
  Field dA;                // semi-analytic radial derivative
  Field lapA;              // centered FD Laplacian (boundary nodes copy neighbors)
  VerificationReport report;
};

// Builds the weight on the grid: leading term minus the potential of the
// cutoff remainder plus lambda. eps must lie in (0, 1/3). When with_tolerance
// is set the report includes a Richardson FD tolerance from one refined build.
AuxiliaryWeight assemble_aux_weight(const DampingProfile& p, const GridPtr& grid, double eps,
                                    bool with_tolerance = true);

// Re-checks (ellip) and the gradient bound against an externally chosen tol_h.
VerificationReport verify_elliptic_bounds(const AuxiliaryWeight& w, const DampingProfile& p,
                                          double tol_h);

// Time-dependent multiplier Phi(t,x) = exp(A/((h+2 eps)(1+t))) and the exact
// derivative fields used by the energy identities. Values can overflow to inf
// when A/(1+t) is large; energy integrals use log-space expressions instead.
struct WeightSnapshot {
  double t = 0.0;
  Field phi;
  Field dphi_dt;
  Field dphi_dr;
  Field lap_phi;
};
WeightSnapshot phi_weight(const AuxiliaryWeight& w, double t);

}  // namespace dwlab
