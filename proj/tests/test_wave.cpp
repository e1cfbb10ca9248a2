#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dwlab/damping.hpp"
#include "dwlab/grid.hpp"
#include "dwlab/quadrature.hpp"
#include "dwlab/wave.hpp"

using namespace dwlab;

namespace {

WaveResult run(const GridPtr& g, double dt, double T, std::vector<double> samples,
               double amp_u1 = 0.0) {
  auto p = make_damping(1.0, 1.0);
  auto data = bump_initial_data(g, 3.0, 1.0, 1.0, amp_u1);
  WaveRunConfig cfg;
  cfg.dt = dt;
  cfg.T = T;
  cfg.sample_times = std::move(samples);
  cfg.support_radius = data.support_radius;
  return solve_wave(cfg, data, p);
}

}  // namespace

TEST_SUITE("wave") {
  TEST_CASE("discrete laplacian is exact on quadratics") {
    auto g = build_grid(1.0, 5.0, 81, 2);
    Field f = Field::zeros(g);
    for (int i = 0; i < g->size(); ++i) f[i] = g->node(i) * g->node(i);
    Field lap = radial_laplacian(f);
    // f'' + (dim-1)/r f' = 2 + 2 = 4 in the plane.
    for (int i = 1; i + 1 < g->size(); ++i) {
      CHECK(lap[i] == doctest::Approx(4.0).epsilon(1e-11));
    }
    CHECK(lap[0] == 0.0);
    CHECK(lap[g->size() - 1] == 0.0);
  }

  TEST_CASE("cfl guard") {
    auto g = build_grid(1.0, 30.0, 581, 2);
    CHECK_THROWS_AS(run(g, 0.8 * g->dr(), 1.0, {1.0}), std::invalid_argument);
    CHECK_NOTHROW(run(g, 0.5 * g->dr(), 1.0, {1.0}));
  }

  TEST_CASE("initial snapshot is the given data") {
    auto g = build_grid(1.0, 30.0, 581, 2);
    auto res = run(g, 0.5 * g->dr(), 2.0, {0.0}, 2.0);
    REQUIRE(res.snapshots.size() == 1);
    const auto& s = res.snapshots.front();
    CHECK(s.t == 0.0);
    auto data = bump_initial_data(g, 3.0, 1.0, 1.0, 2.0);
    for (int i = 0; i < g->size(); ++i) {
      CHECK(s.u[i] == data.u0[i]);
      CHECK(s.u_t[i] == data.u1[i]);
    }
  }

  TEST_CASE("support never leaks past the cone") {
    auto g = build_grid(1.0, 30.0, 581, 2);
    for (double c : {0.45, 0.5, 0.6}) {
      auto res = run(g, c * g->dr(), 5.0, {5.0});
      CHECK(res.max_beyond_cone == 0.0);
      CHECK(res.max_abs > 0.0);
      CHECK(support_excess(res.snapshots.back().u, 4.0, 5.0, 2.0 * g->dr()) == 0.0);
    }
  }

  TEST_CASE("snapshots satisfy the scheme identity u_tt = lap u - a u_t") {
    auto g = build_grid(1.0, 30.0, 581, 2);
    auto p = make_damping(1.0, 1.0);
    auto res = run(g, 0.5 * g->dr(), 4.0, {2.0, 4.0});
    REQUIRE(res.snapshots.size() == 2);
    for (const auto& s : res.snapshots) {
      Field lap = radial_laplacian(s.u);
      double worst = 0.0;
      for (int i = 1; i + 1 < g->size(); ++i) {
        worst = std::max(worst, std::abs(s.u_tt[i] - (lap[i] - p.eval(g->node(i)) * s.u_t[i])));
      }
      CHECK(worst <= 1e-9 * std::max(1.0, res.max_abs));
    }
  }

  TEST_CASE("sample times snap to the step lattice") {
    auto g = build_grid(1.0, 30.0, 581, 2);
    double dt = 0.5 * g->dr();  // 0.0125
    auto res = run(g, dt, 2.0, {0.5004, 1.9999});
    REQUIRE(res.snapshots.size() == 2);
    CHECK(res.snapshots[0].t == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.snapshots[1].t == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(run(g, dt, 2.0, {2.5}), std::invalid_argument);
    CHECK_THROWS_AS(run(g, dt, 2.0, {-0.1}), std::invalid_argument);
  }

  TEST_CASE("plain energy dissipates") {
    auto g = build_grid(1.0, 30.0, 581, 2);
    auto res = run(g, 0.5 * g->dr(), 8.0, {1.0, 2.0, 4.0, 8.0}, 1.0);
    double prev = -1.0;
    for (const auto& s : res.snapshots) {
      Field ur = Field::zeros(g);
      for (int i = 1; i + 1 < g->size(); ++i) {
        ur[i] = (s.u[i + 1] - s.u[i - 1]) / (2.0 * g->dr());
      }
      Field dens = Field::zeros(g);
      for (int i = 0; i < g->size(); ++i) dens[i] = ur[i] * ur[i] + s.u_t[i] * s.u_t[i];
      double e = integrate_radial(dens);
      if (prev >= 0.0) CHECK(e < prev);
      prev = e;
    }
  }

  TEST_CASE("second order convergence in space-time") {
    // Fixed cfl ratio; Richardson on u(T) across three resolutions.
    auto value = [](int n) {
      auto g = build_grid(1.0, 12.0, n, 2);
      double dt = 0.4 * g->dr();
      long steps = std::lround(1.0 / dt);
      double T = dt * steps;  // land all runs on ~t=1 up to O(dt)
      auto res = run(g, dt, T + dt, {T});
      return res.snapshots;
    };
    // Compare on the shared coarse nodes.
    auto coarse = value(221);
    auto mid = value(441);
    auto fine = value(881);
    REQUIRE(coarse.size() == 1);
    double d1 = 0.0, d2 = 0.0;
    const auto& cu = coarse[0].u;
    const auto& mu = mid[0].u;
    const auto& fu = fine[0].u;
    for (int i = 0; i < cu.size(); ++i) {
      d1 = std::max(d1, std::abs(cu[i] - mu[2 * i]));
      d2 = std::max(d2, std::abs(mu[2 * i] - fu[4 * i]));
    }
    // Snapshot times differ by O(dt) between levels; the dominant error is
    // still the second order truncation, so the ratio should sit near 4.
    CHECK(d1 / d2 > 2.7);
    CHECK(d1 / d2 < 6.0);
  }

  TEST_CASE("step_wave agrees with the windowed solver") {
    auto g = build_grid(1.0, 30.0, 581, 2);
    auto p = make_damping(1.0, 1.0);
    auto data = bump_initial_data(g, 3.0, 1.0, 1.0, 0.5);
    double dt = 0.5 * g->dr();
    WaveState s = make_initial_state(data, p, dt);
    for (int k = 0; k < 40; ++k) s = step_wave(s, p);
    auto res = run(g, dt, 40 * dt + dt, {40 * dt}, 0.5);
    REQUIRE(res.snapshots.size() == 1);
    // The grid admits a numerical precursor faster than the physical cone
    // (dr/dt = 2 here); the windowed solver clamps it to exact zero outside
    // and the two runs differ by that precursor amplitude, a few 1e-6 at
    // this resolution, far below the amplitudes the rate fits read.
    double edge = 4.0 + 40 * dt + 2.0 * g->dr();
    double worst = 0.0;
    for (int i = 0; i < g->size(); ++i) {
      worst = std::max(worst, std::abs(s.u[i] - res.snapshots[0].u[i]));
      if (g->node(i) > edge) CHECK(res.snapshots[0].u[i] == 0.0);
    }
    CHECK(worst <= 1e-5);
    CHECK(worst > 0.0);  // the clamp is real, not a no-op
  }
}
