#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dwlab/aux_weight.hpp"
#include "dwlab/damping.hpp"
#include "dwlab/grid.hpp"
#include "dwlab/quadrature.hpp"
#include "dwlab/wave.hpp"

using namespace dwlab;

namespace {

// Five-point central differences, fourth order; oracle for the analytic fields.
double fd_first(double (*fn)(const DampingProfile&, int, double), const DampingProfile& p,
                int dim, double r, double h) {
  return (-fn(p, dim, r + 2 * h) + 8 * fn(p, dim, r + h) - 8 * fn(p, dim, r - h) +
          fn(p, dim, r - 2 * h)) /
         (12 * h);
}

double fd_second(double (*fn)(const DampingProfile&, int, double), const DampingProfile& p,
                 int dim, double r, double h) {
  return (-fn(p, dim, r + 2 * h) + 16 * fn(p, dim, r + h) - 30 * fn(p, dim, r) +
          16 * fn(p, dim, r - h) - fn(p, dim, r - 2 * h)) /
         (12 * h * h);
}

}  // namespace

TEST_SUITE("weight") {
  TEST_CASE("b1 equals the laplacian of the leading term") {
    for (int dim : {2, 3}) {
      for (double alpha : {0.5, 1.0, 2.0}) {
        auto p = make_damping(alpha, 1.3);
        for (double r : {1.0, 2.5, 7.0, 40.0}) {
          // Step large enough that cancellation noise in f'' stays far below
          // the quartic truncation budget of the five-point stencils.
          double h = 0.02 * std::max(1.0, 0.25 * r);
          double lap = fd_second(&leading_term, p, dim, r, h) +
                       (dim - 1) / r * fd_first(&leading_term, p, dim, r, h);
          CHECK(b1_value(p, dim, r) == doctest::Approx(lap).epsilon(1e-6));
        }
      }
    }
  }

  TEST_CASE("leading term derivative matches finite differences") {
    auto p = make_damping(1.0, 1.0);
    for (double r : {1.0, 3.0, 12.0}) {
      double fd = fd_first(&leading_term, p, 2, r, 1e-3);
      CHECK(leading_term_derivative(p, 2, r) == doctest::Approx(fd).epsilon(1e-9));
    }
  }

  TEST_CASE("newton potential inverts the laplacian") {
    for (int dim : {2, 3}) {
      auto g = build_grid(1.0, 20.0, 2001, dim);
      Field src = Field::zeros(g);
      for (int i = 0; i < g->size(); ++i) src[i] = smooth_bump(g->node(i), 3.0, 1.0, 1.0);
      auto pot = newton_potential_radial(src);

      Field lap = radial_laplacian(pot.value);
      double src_max = 0.0, worst = 0.0;
      for (int i = 1; i + 1 < g->size(); ++i) {
        src_max = std::max(src_max, std::abs(src[i]));
        worst = std::max(worst, std::abs(lap[i] + src[i]));
      }
      CHECK(worst <= 2e-3 * src_max);

      // Derivative field is the FD slope of the value field.
      double wd = 0.0;
      for (int i = 1; i + 1 < g->size(); ++i) {
        double fd = (pot.value[i + 1] - pot.value[i - 1]) / (2.0 * g->dr());
        wd = std::max(wd, std::abs(fd - pot.derivative[i]));
      }
      CHECK(wd <= 5e-5);
    }
  }

  TEST_CASE("newton potential far field carries the source mass") {
    // Beyond the support the potential is the free tail of the total mass:
    // M r^{2-dim}/(dim-2) in space, -M log r in the plane. The moment is
    // recomputed with a plain trapezoid so the oracle shares no code path.
    auto g3 = build_grid(1.0, 20.0, 2001, 3);
    Field src3 = Field::zeros(g3);
    for (int i = 0; i < g3->size(); ++i) src3[i] = smooth_bump(g3->node(i), 3.0, 1.0, 1.0);
    double M3 = 0.0;
    for (int i = 0; i + 1 < g3->size(); ++i) {
      double ra = g3->node(i), rb = g3->node(i + 1);
      M3 += 0.5 * (src3[i] * ra * ra + src3[i + 1] * rb * rb) * g3->dr();
    }
    auto pot3 = newton_potential_radial(src3);
    int far3 = g3->index_below(15.0);
    double rf3 = g3->node(far3);
    CHECK(pot3.value[far3] == doctest::Approx(M3 / rf3).epsilon(1e-3));
    CHECK(pot3.derivative[far3] == doctest::Approx(-M3 / (rf3 * rf3)).epsilon(1e-3));

    auto g2 = build_grid(1.0, 20.0, 2001, 2);
    Field src2 = Field::zeros(g2);
    for (int i = 0; i < g2->size(); ++i) src2[i] = smooth_bump(g2->node(i), 3.0, 1.0, 1.0);
    double M2 = 0.0;
    for (int i = 0; i + 1 < g2->size(); ++i) {
      double ra = g2->node(i), rb = g2->node(i + 1);
      M2 += 0.5 * (src2[i] * ra + src2[i + 1] * rb) * g2->dr();
    }
    auto pot2 = newton_potential_radial(src2);
    int far2 = g2->index_below(15.0);
    double rf2 = g2->node(far2);
    CHECK(pot2.value[far2] == doctest::Approx(-M2 * std::log(rf2)).epsilon(1e-3));
    CHECK(pot2.derivative[far2] == doctest::Approx(-M2 / rf2).epsilon(1e-3));
  }

  TEST_CASE("cutoff collar") {
    CHECK(collar_cutoff(1.0, 2.0) == 1.0);
    CHECK(collar_cutoff(2.0, 2.0) == 1.0);
    CHECK(collar_cutoff(3.0, 2.0) == 0.0);
    CHECK(collar_cutoff(5.0, 2.0) == 0.0);
    double prev = 1.0;
    for (double r = 2.0; r <= 3.01; r += 0.05) {
      double v = collar_cutoff(r, 2.0);
      CHECK(v <= prev + 1e-15);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      prev = v;
    }
    CHECK(collar_cutoff(2.5, 2.0) > 0.0);
    CHECK(collar_cutoff(2.5, 2.0) < 1.0);
  }

  TEST_CASE("assembled weight verifies its elliptic bounds") {
    auto p = make_damping(1.0, 1.0);
    auto g = build_grid(1.0, 300.0, 5981, 2);
    auto w = assemble_aux_weight(p, g, 0.1);

    CHECK(w.h == doctest::Approx(1.0));
    CHECK(w.R_eps > 1.0);
    CHECK(w.R_eps < 2.0);
    CHECK(w.lambda_eps == 0.0);
    CHECK(w.report.ellip_pass);
    CHECK(w.report.grad_pass);
    CHECK(w.report.ellip_min >= 1.0 - 0.1 - w.report.tol_h);
    CHECK(w.report.ellip_max <= 1.0 + 0.1 + w.report.tol_h);
    CHECK(w.report.grad_ratio_sup <= 1.1);
    CHECK(w.report.grad_ratio_sup == doctest::Approx(1.0).epsilon(0.02));
    CHECK(w.report.tol_h < 0.01);
    CHECK(w.report.A1eps > 0.0);
    // sup A/<r>^{2+alpha} -> 1/((2+alpha)(dim+alpha)) = 1/9 as the collar fades.
    CHECK(w.report.A2eps == doctest::Approx(1.0 / 9.0).epsilon(0.07));

    auto again = verify_elliptic_bounds(w, p, w.report.tol_h);
    CHECK(again.ellip_pass);
    CHECK(again.grad_pass);
  }

  TEST_CASE("weight is positive and asymptotically the leading term") {
    auto p = make_damping(1.0, 1.0);
    auto g = build_grid(1.0, 120.0, 2381, 2);
    auto w = assemble_aux_weight(p, g, 0.1, false);
    for (int i = 0; i < g->size(); ++i) CHECK(w.A[i] > 0.0);
    int far = g->index_below(100.0);
    double lead = leading_term(p, 2, g->node(far));
    CHECK(w.A[far] == doctest::Approx(lead).epsilon(0.02));
  }

  TEST_CASE("eps domain") {
    auto p = make_damping(1.0, 1.0);
    auto g = build_grid(1.0, 60.0, 1181, 2);
    CHECK_THROWS_AS(assemble_aux_weight(p, g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(assemble_aux_weight(p, g, 1.0 / 3.0), std::invalid_argument);
    CHECK_THROWS_AS(assemble_aux_weight(p, g, 0.5), std::invalid_argument);
    CHECK_NOTHROW(assemble_aux_weight(p, g, 0.2, false));
  }

  TEST_CASE("grid must hold the collar") {
    auto p = make_damping(1.0, 1.0);
    auto g = build_grid(1.0, 2.0, 41, 2);
    CHECK_THROWS_AS(assemble_aux_weight(p, g, 0.1, false), std::invalid_argument);
  }

  TEST_CASE("phi weight derivative fields match finite differences") {
    auto p = make_damping(1.0, 1.0);
    auto g = build_grid(1.0, 6.0, 201, 2);
    auto w = assemble_aux_weight(p, g, 0.1, false);

    double t = 2.0;
    auto snap = phi_weight(w, t);
    CHECK(snap.t == t);

    // d/dt by central difference of whole snapshots.
    double ht = 1e-5;
    auto sp = phi_weight(w, t + ht);
    auto sm = phi_weight(w, t - ht);
    for (int i = 0; i < g->size(); i += 17) {
      double fd = (sp.phi[i] - sm.phi[i]) / (2.0 * ht);
      CHECK(snap.dphi_dt[i] == doctest::Approx(fd).epsilon(1e-6));
    }

    // d/dr against the neighbor difference of phi itself.
    for (int i = 1; i + 1 < g->size(); i += 13) {
      double fd = (snap.phi[i + 1] - snap.phi[i - 1]) / (2.0 * g->dr());
      CHECK(snap.dphi_dr[i] == doctest::Approx(fd).epsilon(5e-3));
    }

    // Positivity and the exp identity at a spot node.
    double c = 1.0 / ((w.h + 2.0 * w.epsilon) * (1.0 + t));
    int mid = g->size() / 2;
    CHECK(snap.phi[mid] == doctest::Approx(std::exp(c * w.A[mid])).epsilon(1e-12));
  }
}
