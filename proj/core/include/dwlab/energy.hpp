#pragma once

#include <optional>
#include <vector>

#include "dwlab/aux_weight.hpp"
#include "dwlab/damping.hpp"
#include "dwlab/grid.hpp"

namespace dwlab {

// Integral of f * Phi over the exterior domain at time t, evaluated per node
// as sign(f) exp(A/((h+2eps)(1+t)) + log|f| + (dim-1) log r) so the weight
// never overflows where f is small. Summed left to right, deterministic.
double phi_weighted_integral(const Field& f, const AuxiliaryWeight& w, double t);

// Radial derivative: centered interior, second-order one-sided at the ends.
Field radial_gradient(const Field& f);

struct EnergyRecord {
  double t = 0.0;
  double E_dx = 0.0;    // int |du|^2 Phi
  double E_dt = 0.0;    // int u_t^2 Phi
  double E_a = 0.0;     // int a u^2 Phi
  double E_star = 0.0;  // 2 int u u_t Phi
  double E1 = 0.0;      // E_dx + E_dt
  double E2 = 0.0;      // E_star + E_a
  double l2a_u = 0.0;   // || sqrt(a) u ||_{L^2}, no Phi
  double l2a_diff = 0.0;  // || sqrt(a) (u - v) ||_{L^2} when v is supplied
  double hardy_margin = 0.0;    // E_dx - (1-eps)/((h+2eps)(1+t)) E_a
  double mono_violation = 0.0;  // filled by monotonicity_check_e1
  double ea_ut = 0.0;   // int a u_t^2 Phi
  double aa_ut = 0.0;   // int (A/a) u_t^2 Phi
};

EnergyRecord compute_energies(const Field& u, const Field& u_t, const Field* v,
                              const AuxiliaryWeight& w, const DampingProfile& p, double t);

// Residual of d/dt E1 = -2 int a u_t^2 Phi - 2 int u_t u_r Phi_r
//                       + int (u_r^2 + u_t^2) Phi_t,
// with d/dt E1 from the centered difference of the neighbor records.
double identity_residual_e1(const EnergyRecord& prev, const EnergyRecord& cur,
                            const EnergyRecord& next, const Field& u, const Field& u_t,
                            const AuxiliaryWeight& w, const DampingProfile& p);

// Same for E2: d/dt E2 = 2 int u_t^2 Phi - 2 int u_r^2 Phi - 2 int u u_r Phi_r
//                        + int (2 u u_t + a u^2) Phi_t.
struct E2Identity {
  double ddt = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double term_ut2 = 0.0;
  double term_grad = 0.0;
  double term_cross = 0.0;
  double term_phi_t = 0.0;
};
E2Identity identity_residual_e2(const EnergyRecord& prev, const EnergyRecord& cur,
                                const EnergyRecord& next, const Field& u, const Field& u_t,
                                const AuxiliaryWeight& w, const DampingProfile& p);

// Weighted Hardy margin already stored in the record; recomputed here.
double hardy_margin(const EnergyRecord& rec, const AuxiliaryWeight& w);

// Dissipation check between consecutive samples: the difference quotient of
// E1 must not exceed -avg(int a u_t^2 Phi). Fills rec.mono_violation with the
// signed excess and returns the worst one.
double monotonicity_check_e1(std::vector<EnergyRecord>& records);

// Constants the desk checks compare against.
struct TheoryConstants {
  double h = 0.0;
  double eps = 0.0;
  double a1 = 0.0;      // inf a/<r>^alpha
  double a2 = 0.0;      // sup a/<r>^alpha
  double A2eps = 0.0;   // sup A/<r>^{2+alpha}
  double R0 = 0.0;      // initial support radius
  double lambda0 = 0.0; // (1-eps)(1-4eps)/((1+eps)(h+2eps))
  double delta = 0.0;   // 1/h - lambda0
  double nu = 0.0;      // 4/a1 + 2 A2eps (R0+1)^2/(eps a1^2) + 1/(eps a1)
  double p_alpha_val = 0.0;

  double t_star(double m) const { return 2.0 * m / a1; }
  double t_star2(double lambda) const;
};

TheoryConstants make_theory_constants(const DampingProfile& p, const GridPtr& grid,
                                      const AuxiliaryWeight& w, double R0);

// The three auxiliary bounds behind the decay argument, as margins >= 0:
//   m1: int a u_t^2 Phi / a1            - int u_t^2 Phi
//   m2: (A2eps/a1) (R0+1+t)^2 E_dt      - int (A/a) u_t^2 Phi
//   m3: (2/sqrt(a1)) sqrt(E_a E_dt)     - |E_star|
struct AppfpsMargins {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
};
AppfpsMargins appfps_checks(const EnergyRecord& rec, const TheoryConstants& tc);

}  // namespace dwlab
