#pragma once

#include <functional>
#include <vector>

#include "dwlab/damping.hpp"
#include "dwlab/grid.hpp"

namespace dwlab {

// Centered radial Laplacian f'' + (dim-1)/r f' at interior nodes; ends zero.
Field radial_laplacian(const Field& f);

// Two time levels of the leapfrog scheme for u_tt = Lap u - a u_t with
// homogeneous Dirichlet ends. The damping term is treated implicitly
// (centered average), keeping the update explicit and second order.
struct WaveState {
  Field u;       // level k
  Field u_prev;  // level k-1
  double t = 0.0;
  double dt = 0.0;
};

// Seeds u_prev by the Taylor step u0 - dt u1 + dt^2/2 (Lap u0 - a u1).
WaveState make_initial_state(const InitialData& data, const DampingProfile& p, double dt);

// One leapfrog update of the full interior. Requires dt <= 0.75 dr.
WaveState step_wave(const WaveState& s, const DampingProfile& p);

struct WaveSnapshot {
  double t = 0.0;
  Field u;
  Field u_t;   // centered difference across the stored levels
  Field u_tt;  // second difference; equals Lap_h u - a u_t by the scheme
};

struct WaveRunConfig {
  double dt = 0.0;
  double T = 0.0;
  std::vector<double> sample_times;  // snapped to the nearest step
  // Nodes with r > support_radius + t + 2 dr are never written, so the
  // discrete solution vanishes identically beyond the light cone.
  double support_radius = 0.0;
  std::function<void(int step, double t, const std::vector<double>& u)> on_step;
};

struct WaveResult {
  std::vector<WaveSnapshot> snapshots;
  double max_beyond_cone = 0.0;  // sup over steps of |u| past support_radius + t + 2 dr
  double max_abs = 0.0;          // sup over steps and nodes; finite iff the run stayed stable
};

// Runs the scheme to time T. Throws std::runtime_error if the solution
// stops being finite.
WaveResult solve_wave(const WaveRunConfig& cfg, const InitialData& data, const DampingProfile& p);

// Largest |u| at nodes with r > R0 + t + margin.
double support_excess(const Field& u, double R0, double t, double margin);

}  // namespace dwlab
