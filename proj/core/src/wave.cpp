#include "dwlab/wave.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace dwlab {

namespace {

void check_cfl(double dt, double dr) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("wave: dt must be positive");
  }
  if (dt > 0.75 * dr) {
    throw std::invalid_argument("wave: dt must be <= 0.75 dr for stability");
  }
}

// Leapfrog update of nodes 1..i_hi; everything above i_hi is left untouched.
void leapfrog_window(const std::vector<double>& um, const std::vector<double>& u,
                     std::vector<double>& up, const std::vector<double>& a, const RadialGrid& g,
                     double dt, int i_hi) {
  double dr = g.dr();
  double inv_dr2 = 1.0 / (dr * dr);
  for (int i = 1; i <= i_hi; ++i) {
    double lap = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_dr2 +
                 (g.dim() - 1) / g.node(i) * (u[i + 1] - u[i - 1]) / (2.0 * dr);
    double ad = 0.5 * a[i] * dt;
    up[i] = (2.0 * u[i] - (1.0 - ad) * um[i] + dt * dt * lap) / (1.0 + ad);
  }
  up[0] = 0.0;
}

WaveSnapshot make_snapshot(const GridPtr& grid, double t, const std::vector<double>& um,
                           const std::vector<double>& u, const std::vector<double>& up,
                           double dt) {
  int n = grid->size();
  WaveSnapshot s{t, Field::zeros(grid), Field::zeros(grid), Field::zeros(grid)};
  for (int i = 0; i < n; ++i) {
    s.u[i] = u[i];
    s.u_t[i] = (up[i] - um[i]) / (2.0 * dt);
    s.u_tt[i] = (up[i] - 2.0 * u[i] + um[i]) / (dt * dt);
  }
  return s;
}

}  // namespace

Field radial_laplacian(const Field& f) {
  const RadialGrid& g = f.grid();
  double dr = g.dr();
  Field out = Field::zeros(f.grid_ptr());
  for (int i = 1; i + 1 < g.size(); ++i) {
    out[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1]) / (dr * dr) +
             (g.dim() - 1) / g.node(i) * (f[i + 1] - f[i - 1]) / (2.0 * dr);
  }
  return out;
}

WaveState make_initial_state(const InitialData& data, const DampingProfile& p, double dt) {
  const GridPtr& grid = data.u0.grid_ptr();
  check_cfl(dt, grid->dr());
  Field a = sample_damping(p, grid);
  Field lap = radial_laplacian(data.u0);
  Field um = Field::zeros(grid);
  for (int i = 1; i + 1 < grid->size(); ++i) {
    um[i] = data.u0[i] - dt * data.u1[i] + 0.5 * dt * dt * (lap[i] - a[i] * data.u1[i]);
  }
  return WaveState{data.u0, std::move(um), 0.0, dt};
}

WaveState step_wave(const WaveState& s, const DampingProfile& p) {
  const GridPtr& grid = s.u.grid_ptr();
  check_cfl(s.dt, grid->dr());
  Field a = sample_damping(p, grid);
  Field up = Field::zeros(grid);
  leapfrog_window(s.u_prev.values(), s.u.values(), up.values(), a.values(), *grid, s.dt,
                  grid->size() - 2);
  return WaveState{std::move(up), s.u, s.t + s.dt, s.dt};
}

double support_excess(const Field& u, double R0, double t, double margin) {
  const RadialGrid& g = u.grid();
  double edge = R0 + t + margin;
  double worst = 0.0;
  for (int i = g.size() - 1; i >= 0; --i) {
    if (g.node(i) <= edge) break;
    worst = std::max(worst, std::abs(u[i]));
  }
  return worst;
}

WaveResult solve_wave(const WaveRunConfig& cfg, const InitialData& data, const DampingProfile& p) {
  const GridPtr& grid = data.u0.grid_ptr();
  const RadialGrid& g = *grid;
  int n = g.size();
  double dr = g.dr();
  check_cfl(cfg.dt, dr);
  if (!(cfg.T > 0.0)) {
    throw std::invalid_argument("wave: T must be positive");
  }
  if (!(cfg.support_radius > g.r0() && cfg.support_radius < g.r_max())) {
    throw std::invalid_argument("wave: support_radius must lie inside the grid");
  }

  long total_steps = std::lround(cfg.T / cfg.dt);
  std::set<long> want;
  for (double ts : cfg.sample_times) {
    if (ts < 0.0 || ts > cfg.T + 0.5 * cfg.dt) {
      throw std::invalid_argument("wave: sample time outside [0, T]: " + std::to_string(ts));
    }
    want.insert(std::min(std::lround(ts / cfg.dt), total_steps));
  }

  Field a = sample_damping(p, grid);
  Field lap0 = radial_laplacian(data.u0);
  std::vector<double> um(static_cast<size_t>(n), 0.0);  // level k-1
  std::vector<double> u = data.u0.values();             // level k
  std::vector<double> up(static_cast<size_t>(n), 0.0);  // level k+1

  for (int i = 1; i + 1 < n; ++i) {
    um[i] = u[i] - cfg.dt * data.u1[i] + 0.5 * cfg.dt * cfg.dt * (lap0[i] - a[i] * data.u1[i]);
  }

  WaveResult result;
  if (want.count(0)) {
    WaveSnapshot s0{0.0, data.u0, data.u1, Field::zeros(grid)};
    for (int i = 1; i + 1 < n; ++i) s0.u_tt[i] = lap0[i] - a[i] * data.u1[i];
    result.snapshots.push_back(std::move(s0));
  }

  // Step k produces level k at time k dt; a sampled level k is emitted one
  // step later so the centered u_t can use level k+1.
  long steps_needed = total_steps + (want.count(total_steps) ? 1 : 0);
  for (long k = 1; k <= steps_needed; ++k) {
    double t_new = cfg.dt * static_cast<double>(k);
    double edge = cfg.support_radius + t_new + 2.0 * dr;
    int i_hi = std::min(n - 2, g.index_below(edge));
    leapfrog_window(um, u, up, a.values(), g, cfg.dt, i_hi);

    double local_max = 0.0;
    for (int i = 0; i < n; ++i) local_max = std::max(local_max, std::abs(up[i]));
    result.max_abs = std::max(result.max_abs, local_max);
    if (!std::isfinite(local_max)) {
      throw std::runtime_error("wave: solution blew up at t = " + std::to_string(t_new));
    }

    if (want.count(k - 1) && k >= 2) {
      result.snapshots.push_back(make_snapshot(grid, cfg.dt * static_cast<double>(k - 1), um, u,
                                               up, cfg.dt));
    }

    for (int i = n - 1; i >= 0 && g.node(i) > edge; --i) {
      result.max_beyond_cone = std::max(result.max_beyond_cone, std::abs(up[i]));
    }

    if (cfg.on_step) cfg.on_step(static_cast<int>(k), t_new, up);
    std::swap(um, u);
    std::swap(u, up);
  }
  return result;
}

}  // namespace dwlab
