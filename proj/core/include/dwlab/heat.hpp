#pragma once

#include <vector>

#include "dwlab/damping.hpp"
#include "dwlab/grid.hpp"
#include "dwlab/wave.hpp"

namespace dwlab {

// Crank-Nicolson stepper for v_t = a^{-1} Lap v with homogeneous Dirichlet
// ends. The tridiagonal system is factored once; each step is one sweep.
// Unconditionally stable, second order in dt and dr.
class CrankNicolson {
 public:
  CrankNicolson(GridPtr grid, const DampingProfile& p, double dt);

  double dt() const { return dt_; }

  // Advances the full node vector one step in place (ends pinned to zero).
  void step(std::vector<double>& v) const;

 private:
  GridPtr grid_;
  double dt_;
  std::vector<double> lower_, diag_, upper_;      // explicit half (I + L)
  std::vector<double> fac_w_, fac_d_;             // Thomas factorization of (I - L)
  mutable std::vector<double> rhs_;
};

struct HeatSnapshot {
  double t = 0.0;
  Field v;
};

struct HeatResult {
  std::vector<HeatSnapshot> snapshots;
  // Outer-boundary contamination monitor: sup over snapshots of
  // |v(second-to-last node)| / ||v||_{L^2(dmu)}.
  double max_tail_ratio = 0.0;
  bool tail_warning = false;  // ratio exceeded 1e-10 somewhere
};

// v0 = u0 + u1/a, the parabolic profile matching the wave data.
Field heat_initial_from_wave(const InitialData& data, const DampingProfile& p);

// Runs to time T sampling at the given times (snapped to the nearest step).
HeatResult evolve_heat(const Field& v0, const DampingProfile& p, double T, double dt,
                       const std::vector<double>& sample_times);

// Generator action L f = -Lap_h f / a at interior nodes; ends zero.
Field apply_generator(const Field& f, const DampingProfile& p);

// e^{-tau L} g by Crank-Nicolson with ceil(tau/dt) uniform steps.
Field semigroup_apply(const Field& g, const DampingProfile& p, double tau, double dt);

// Snapshot times the reconstruction below needs: 0, t/2, t and the midpoint
// quadrature nodes of both half intervals. Requires dt_quad to divide t/2.
std::vector<double> duhamel_sample_times(double t, double dt_quad);

// Rebuilds u(t) from the parabolic flow: the damped wave solution satisfies
//   u(t) = e^{-tL} v0
//        - int_{t/2}^{t} e^{-(t-s)L} [a^{-1} u_tt(s)] ds
//        - e^{-(t/2)L} [a^{-1} u_t(t/2)]
//        + int_0^{t/2} L e^{-(t-s)L} [a^{-1} u_t(s)] ds,
// with v0 = u0 + a^{-1} u1. Integrals use the midpoint rule with step
// dt_quad; semigroups use Crank-Nicolson with step dt_heat. The snapshots
// must cover duhamel_sample_times(t, dt_quad).
Field duhamel_reconstruct(const std::vector<WaveSnapshot>& snaps, const DampingProfile& p,
                          double t, double dt_quad, double dt_heat);

}  // namespace dwlab
