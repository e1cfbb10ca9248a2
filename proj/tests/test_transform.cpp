#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "dwlab/damping.hpp"
#include "dwlab/grid.hpp"
#include "dwlab/heat.hpp"
#include "dwlab/quadrature.hpp"
#include "dwlab/transform.hpp"

using namespace dwlab;

TEST_SUITE("transform") {
  TEST_CASE("psi map and inverse") {
    for (double alpha : {0.5, 1.0, 2.0}) {
      for (double r : {1.0, 2.0, 7.5}) {
        CHECK(psi_inverse(psi_map(r, alpha), alpha) == doctest::Approx(r).epsilon(1e-13));
      }
      CHECK(psi_map(1.0, alpha) == 1.0);
    }
    CHECK(psi_map(3.0, 2.0) == doctest::Approx(9.0).epsilon(1e-14));
  }

  TEST_CASE("jacobian equals the volume factor of the substitution") {
    // d vol = psi'(r) (psi/r)^{dim-1} d vol_r; psi' by finite differences.
    for (int dim : {2, 3, 4}) {
      for (double alpha : {1.0, 2.0}) {
        for (double r : {1.0, 2.5, 6.0}) {
          double h = 1e-5;
          double dpsi = (psi_map(r + h, alpha) - psi_map(r - h, alpha)) / (2.0 * h);
          double expected = dpsi * std::pow(psi_map(r, alpha) / r, dim - 1);
          CHECK(jacobian_det(r, alpha, dim) == doctest::Approx(expected).epsilon(1e-8));
        }
      }
    }
  }

  TEST_CASE("J is an isometry onto L2(dmu) up to sqrt(a0)") {
    double alpha = 2.0, a0 = 1.5;
    auto tp = make_transform_params(alpha, a0, 3);
    auto p = make_damping(alpha, a0);
    auto v = [](double rho) { return smooth_bump(rho, 6.0, 4.0, 1.0); };

    auto r_grid = build_grid(1.0, std::sqrt(21.0), 4001, 3);
    Field Jv = j_transform(r_grid, tp, v);
    double lhs = weighted_l2_norm(Jv, p, WeightKind::dmu);

    auto rho_grid = build_grid(1.0, 21.0, 4001, 3);
    Field vf = Field::zeros(rho_grid);
    for (int i = 0; i < rho_grid->size(); ++i) vf[i] = v(rho_grid->node(i));
    Field v2 = Field::zeros(rho_grid);
    for (int i = 0; i < rho_grid->size(); ++i) v2[i] = vf[i] * vf[i];
    double rhs = std::sqrt(a0) * std::sqrt(integrate_radial(v2));

    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    CHECK(lhs > 1.0);  // nondegenerate data
  }

  TEST_CASE("conjugation: the generator intertwines with B through J") {
    // v has closed-form derivatives, so Bv is analytic while L(Jv) is pure FD.
    double alpha = 2.0, a0 = 1.5;
    int dim = 3;
    auto tp = make_transform_params(alpha, a0, dim);
    auto p = make_damping(alpha, a0);
    auto v = [](double rho) { return std::exp(-0.25 * (rho - 6.0) * (rho - 6.0)); };
    auto Bv = [&](double rho) {
      double val = v(rho);
      double d1 = -0.5 * (rho - 6.0) * val;
      double d2 = (-0.5 + 0.25 * (rho - 6.0) * (rho - 6.0)) * val;
      double kappa = dim - 2.0;
      double c2 = (1.0 + alpha / 2.0) * (1.0 + alpha / 2.0);
      double c0 = kappa * kappa * alpha * (4.0 + alpha) / 16.0;
      return (-c2 * (d2 + (dim - 1) / rho * d1) - c0 / (rho * rho) * val) / a0;
    };

    auto r_grid = build_grid(1.0, std::sqrt(21.0), 4001, dim);
    Field Jv = j_transform(r_grid, tp, v);
    Field LJv = apply_generator(Jv, p);
    Field JBv = j_transform(r_grid, tp, Bv);

    double scale = 0.0;
    for (int i = 0; i < r_grid->size(); ++i) scale = std::max(scale, std::abs(LJv[i]));
    REQUIRE(scale > 0.1);
    double worst = 0.0;
    for (int i = 1; i + 1 < r_grid->size(); ++i) {
      worst = std::max(worst, std::abs(LJv[i] - JBv[i]));
    }
    CHECK(worst <= 1e-4 * scale);
  }

  TEST_CASE("m_tilde collapses to a0 for pure powers and tracks a bump") {
    auto rho_grid = build_grid(1.0, 21.0, 201, 3);
    auto p = make_damping(2.0, 1.5);
    Field m = make_m_tilde(p, rho_grid);
    for (int i = 0; i < rho_grid->size(); ++i) {
      CHECK(m[i] == doctest::Approx(1.5).epsilon(1e-12));
    }
    auto pb = make_damping(2.0, 1.0, BumpSpec{3.0, 1.0, 0.1});
    Field mb = make_m_tilde(pb, rho_grid);
    int at9 = rho_grid->index_below(9.0);
    REQUIRE(rho_grid->node(at9) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(mb[at9] == doctest::Approx(1.0 + 0.1 / 9.0).epsilon(1e-10));
  }

  TEST_CASE("stationary profile vanishes at the boundary and solves B") {
    auto tp = make_transform_params(2.0, 1.0, 3);
    CHECK(psi0_value(1.0, tp) == doctest::Approx(0.0));
    CHECK(psi0_value(4.0, tp) ==
          doctest::Approx(std::pow(4.0, -0.25) - std::pow(4.0, -0.75)).epsilon(1e-13));
    CHECK(psi0_value(9.0, tp) > 0.0);

    auto p = make_damping(2.0, 1.0);
    auto residual = [&](int n) {
      auto g = build_grid(1.0, 21.0, n, 3);
      Field m = make_m_tilde(p, g);
      Field f = psi0_stationary(g, tp);
      Field Bf = apply_B_radial(f, tp, m);
      double worst = 0.0;
      for (int i = 1; i + 1 < g->size(); ++i) worst = std::max(worst, std::abs(Bf[i]));
      return worst;
    };
    double rc = residual(251), rm = residual(501), rf = residual(1001);
    CHECK(rc / rm > 3.2);
    CHECK(rc / rm < 4.8);
    CHECK(rm / rf > 3.2);
    CHECK(rm / rf < 4.8);
  }

  TEST_CASE("stationary profile needs dim >= 3") {
    auto tp2 = make_transform_params(1.0, 1.0, 2);
    auto g = build_grid(1.0, 9.0, 101, 2);
    CHECK_THROWS_AS(psi0_stationary(g, tp2), std::invalid_argument);
  }

  TEST_CASE("critical exponent") {
    CHECK(p_alpha(2.0, 3) == doctest::Approx(12.0).epsilon(1e-14));
    CHECK(p_alpha(1.0, 4) == doctest::Approx(12.0).epsilon(1e-14));
    CHECK(std::isinf(p_alpha(1.0, 2)));
  }

  TEST_CASE("kernel exponents annihilate B far better than nearby powers") {
    auto tp = make_transform_params(2.0, 1.0, 3);
    auto p = make_damping(2.0, 1.0);
    auto g = build_grid(2.0, 20.0, 2001, 3);
    Field m = make_m_tilde(p, g);
    double mplus = -2.0 / 8.0;  // -(dim-2) alpha / (2 (2+alpha))

    auto residual_for = [&](double expo) {
      Field f = Field::zeros(g);
      for (int i = 0; i < g->size(); ++i) f[i] = std::pow(g->node(i), expo);
      Field Bf = apply_B_radial(f, tp, m);
      double worst = 0.0;
      for (int i = 1; i + 1 < g->size(); ++i) worst = std::max(worst, std::abs(Bf[i]));
      return worst;
    };
    CHECK(residual_for(mplus) < residual_for(mplus + 0.3) / 100.0);
  }
}
