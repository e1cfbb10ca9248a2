#include "dwlab/heat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dwlab/quadrature.hpp"

namespace dwlab {

CrankNicolson::CrankNicolson(GridPtr grid, const DampingProfile& p, double dt)
    : grid_(std::move(grid)), dt_(dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("heat: dt must be positive");
  }
  const RadialGrid& g = *grid_;
  int m = g.size() - 2;  // interior unknowns
  if (m < 1) {
    throw std::invalid_argument("heat: grid too small");
  }
  double dr = g.dr();
  lower_.resize(m);
  diag_.resize(m);
  upper_.resize(m);
  for (int j = 0; j < m; ++j) {
    double r = g.node(j + 1);
    double b = 0.5 * dt / p.eval(r);
    double c2 = b / (dr * dr);
    double c1 = b * (g.dim() - 1) / (2.0 * dr * r);
    lower_[j] = c2 - c1;
    diag_[j] = -2.0 * c2;
    upper_[j] = c2 + c1;
  }
  // Thomas factorization of (I - L); strict diagonal dominance, no pivoting.
  fac_w_.resize(m);
  fac_d_.resize(m);
  fac_d_[0] = 1.0 - diag_[0];
  for (int j = 1; j < m; ++j) {
    fac_w_[j] = -lower_[j] / fac_d_[j - 1];
    fac_d_[j] = 1.0 - diag_[j] - fac_w_[j] * (-upper_[j - 1]);
  }
  rhs_.resize(m);
}

void CrankNicolson::step(std::vector<double>& v) const {
  int m = static_cast<int>(diag_.size());
  // rhs = (I + L) v on the interior; boundary values are zero.
  for (int j = 0; j < m; ++j) {
    double left = j == 0 ? 0.0 : v[j];          // v[(j+1)-1]
    double right = j == m - 1 ? 0.0 : v[j + 2];
    rhs_[j] = v[j + 1] + lower_[j] * left + diag_[j] * v[j + 1] + upper_[j] * right;
  }
  for (int j = 1; j < m; ++j) {
    rhs_[j] -= fac_w_[j] * rhs_[j - 1];
  }
  v[m + 1] = 0.0;
  v[m] = rhs_[m - 1] / fac_d_[m - 1];
  for (int j = m - 2; j >= 0; --j) {
    v[j + 1] = (rhs_[j] - (-upper_[j]) * v[j + 2]) / fac_d_[j];
  }
  v[0] = 0.0;
}

Field heat_initial_from_wave(const InitialData& data, const DampingProfile& p) {
  const GridPtr& grid = data.u0.grid_ptr();
  Field v0 = Field::zeros(grid);
  for (int i = 0; i < grid->size(); ++i) {
    v0[i] = data.u0[i] + data.u1[i] / p.eval(grid->node(i));
  }
  v0[0] = 0.0;
  v0[grid->size() - 1] = 0.0;
  return v0;
}

HeatResult evolve_heat(const Field& v0, const DampingProfile& p, double T, double dt,
                       const std::vector<double>& sample_times) {
  if (!(T > 0.0)) {
    throw std::invalid_argument("heat: T must be positive");
  }
  const GridPtr& grid = v0.grid_ptr();
  long total_steps = std::lround(T / dt);
  std::vector<long> want;
  for (double ts : sample_times) {
    if (ts < 0.0 || ts > T + 0.5 * dt) {
      throw std::invalid_argument("heat: sample time outside [0, T]: " + std::to_string(ts));
    }
    want.push_back(std::min(std::lround(ts / dt), total_steps));
  }
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());

  CrankNicolson cn(grid, p, dt);
  std::vector<double> v = v0.values();
  v[0] = 0.0;
  v[grid->size() - 1] = 0.0;

  HeatResult result;
  auto emit = [&](long k) {
    Field f(grid, v);
    double norm = weighted_l2_norm(f, p, WeightKind::dmu);
    double tail = norm > 0.0 ? std::abs(v[grid->size() - 2]) / norm : 0.0;
    result.max_tail_ratio = std::max(result.max_tail_ratio, tail);
    if (tail > 1e-10) result.tail_warning = true;
    result.snapshots.push_back(HeatSnapshot{dt * static_cast<double>(k), std::move(f)});
  };

  size_t next = 0;
  if (next < want.size() && want[next] == 0) {
    emit(0);
    ++next;
  }
  for (long k = 1; k <= total_steps; ++k) {
    cn.step(v);
    if (next < want.size() && want[next] == k) {
      emit(k);
      ++next;
    }
  }
  return result;
}

Field apply_generator(const Field& f, const DampingProfile& p) {
  Field lap = radial_laplacian(f);
  Field out = Field::zeros(f.grid_ptr());
  for (int i = 1; i + 1 < f.size(); ++i) {
    out[i] = -lap[i] / p.eval(f.grid().node(i));
  }
  return out;
}

Field semigroup_apply(const Field& g, const DampingProfile& p, double tau, double dt) {
  if (tau < 0.0) {
    throw std::invalid_argument("heat: semigroup time must be nonnegative");
  }
  Field out = g;
  out[0] = 0.0;
  out[g.size() - 1] = 0.0;
  if (tau == 0.0) return out;
  long m = std::max(1L, std::lround(std::ceil(tau / dt - 1e-12)));
  CrankNicolson cn(g.grid_ptr(), p, tau / static_cast<double>(m));
  for (long k = 0; k < m; ++k) {
    cn.step(out.values());
  }
  return out;
}

std::vector<double> duhamel_sample_times(double t, double dt_quad) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("duhamel: t must be nonnegative");
  }
  if (t == 0.0) return {0.0};
  long half_panels = std::lround(0.5 * t / dt_quad);
  if (half_panels < 1 || std::abs(half_panels * dt_quad - 0.5 * t) > 1e-9 * t) {
    throw std::invalid_argument("duhamel: dt_quad must divide t/2");
  }
  std::vector<double> times{0.0, 0.5 * t, t};
  for (long j = 0; j < half_panels; ++j) {
    double mid = (static_cast<double>(j) + 0.5) * dt_quad;
    times.push_back(mid);            // nodes in [0, t/2]
    times.push_back(0.5 * t + mid);  // nodes in [t/2, t]
  }
  std::sort(times.begin(), times.end());
  return times;
}

namespace {

const WaveSnapshot& find_snapshot(const std::vector<WaveSnapshot>& snaps, double t) {
  double tol = 1e-9 * std::max(1.0, std::abs(t)) + 1e-12;
  for (const auto& s : snaps) {
    if (std::abs(s.t - t) <= tol) return s;
  }
  throw std::invalid_argument("duhamel: missing wave snapshot at t = " + std::to_string(t));
}

Field over_a(const Field& f, const DampingProfile& p) {
  Field out = Field::zeros(f.grid_ptr());
  for (int i = 0; i < f.size(); ++i) {
    out[i] = f[i] / p.eval(f.grid().node(i));
  }
  out[0] = 0.0;
  out[f.size() - 1] = 0.0;
  return out;
}

}  // namespace

Field duhamel_reconstruct(const std::vector<WaveSnapshot>& snaps, const DampingProfile& p,
                          double t, double dt_quad, double dt_heat) {
  const WaveSnapshot& s0 = find_snapshot(snaps, 0.0);
  const GridPtr& grid = s0.u.grid_ptr();

  Field v0 = Field::zeros(grid);
  {
    Field u1_over_a = over_a(s0.u_t, p);
    for (int i = 0; i < grid->size(); ++i) v0[i] = s0.u[i] + u1_over_a[i];
    v0[0] = 0.0;
    v0[grid->size() - 1] = 0.0;
  }

  Field rec = semigroup_apply(v0, p, t, dt_heat);
  if (t == 0.0) {
    const Field u1_over_a = over_a(s0.u_t, p);
    for (int i = 0; i < grid->size(); ++i) rec[i] -= u1_over_a[i];
    return rec;
  }

  long half_panels = std::lround(0.5 * t / dt_quad);
  duhamel_sample_times(t, dt_quad);  // validates divisibility

  // Midpoint rule over [t/2, t]: forcing by the second time derivative.
  for (long j = 0; j < half_panels; ++j) {
    double s = 0.5 * t + (static_cast<double>(j) + 0.5) * dt_quad;
    Field g = over_a(find_snapshot(snaps, s).u_tt, p);
    Field flowed = semigroup_apply(g, p, t - s, dt_heat);
    for (int i = 0; i < grid->size(); ++i) rec[i] -= dt_quad * flowed[i];
  }

  // Boundary term at the splitting time.
  {
    Field g = over_a(find_snapshot(snaps, 0.5 * t).u_t, p);
    Field flowed = semigroup_apply(g, p, 0.5 * t, dt_heat);
    for (int i = 0; i < grid->size(); ++i) rec[i] -= flowed[i];
  }

  // Midpoint rule over [0, t/2]: smoothed forcing through the generator.
  for (long j = 0; j < half_panels; ++j) {
    double s = (static_cast<double>(j) + 0.5) * dt_quad;
    Field g = over_a(find_snapshot(snaps, s).u_t, p);
    Field flowed = apply_generator(semigroup_apply(g, p, t - s, dt_heat), p);
    for (int i = 0; i < grid->size(); ++i) rec[i] += dt_quad * flowed[i];
  }
  return rec;
}

}  // namespace dwlab
