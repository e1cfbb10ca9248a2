#include "dwlab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dwlab/quadrature.hpp"
#include "dwlab/transform.hpp"

namespace dwlab {

double phi_weighted_integral(const Field& f, const AuxiliaryWeight& w, double t) {
  require_same_grid(f, w.A);
  const RadialGrid& g = f.grid();
  double c = 1.0 / ((w.h + 2.0 * w.epsilon) * (1.0 + t));
  std::vector<double> coeff = simpson_coefficients(g.size(), g.dr());
  double total = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    double fi = f[i];
    if (fi == 0.0) continue;
    double expo = c * w.A[i] + std::log(std::abs(fi)) + (g.dim() - 1) * std::log(g.node(i));
    total += coeff[i] * std::copysign(std::exp(expo), fi);
  }
  return g.sphere_area() * total;
}

Field radial_gradient(const Field& f) {
  const RadialGrid& g = f.grid();
  double dr = g.dr();
  int n = g.size();
  Field out = Field::zeros(f.grid_ptr());
  for (int i = 1; i + 1 < n; ++i) {
    out[i] = (f[i + 1] - f[i - 1]) / (2.0 * dr);
  }
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dr);
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dr);
  return out;
}

namespace {

Field pointwise(const Field& x, const Field& y) {
  Field out = Field::zeros(x.grid_ptr());
  for (int i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
  return out;
}

double hardy_margin_from(const EnergyRecord& rec, const AuxiliaryWeight& w) {
  return rec.E_dx - (1.0 - w.epsilon) / ((w.h + 2.0 * w.epsilon) * (1.0 + rec.t)) * rec.E_a;
}

}  // namespace

EnergyRecord compute_energies(const Field& u, const Field& u_t, const Field* v,
                              const AuxiliaryWeight& w, const DampingProfile& p, double t) {
  require_same_grid(u, u_t);
  require_same_grid(u, w.A);
  const GridPtr& grid = u.grid_ptr();
  int n = grid->size();

  Field du = radial_gradient(u);
  Field a = sample_damping(p, grid);

  Field du2 = pointwise(du, du);
  Field ut2 = pointwise(u_t, u_t);
  Field au2 = Field::zeros(grid);
  Field uut = Field::zeros(grid);
  Field aut2 = Field::zeros(grid);
  Field Aaut2 = Field::zeros(grid);
  for (int i = 0; i < n; ++i) {
    au2[i] = a[i] * u[i] * u[i];
    uut[i] = u[i] * u_t[i];
    aut2[i] = a[i] * ut2[i];
    Aaut2[i] = w.A[i] / a[i] * ut2[i];
  }

  EnergyRecord rec;
  rec.t = t;
  rec.E_dx = phi_weighted_integral(du2, w, t);
  rec.E_dt = phi_weighted_integral(ut2, w, t);
  rec.E_a = phi_weighted_integral(au2, w, t);
  rec.E_star = 2.0 * phi_weighted_integral(uut, w, t);
  rec.E1 = rec.E_dx + rec.E_dt;
  rec.E2 = rec.E_star + rec.E_a;
  rec.ea_ut = phi_weighted_integral(aut2, w, t);
  rec.aa_ut = phi_weighted_integral(Aaut2, w, t);
  rec.l2a_u = weighted_l2_norm(u, p, WeightKind::dmu);
  if (v) {
    require_same_grid(u, *v);
    Field diff = Field::zeros(grid);
    for (int i = 0; i < n; ++i) diff[i] = u[i] - (*v)[i];
    rec.l2a_diff = weighted_l2_norm(diff, p, WeightKind::dmu);
  }
  rec.hardy_margin = hardy_margin_from(rec, w);
  return rec;
}

double hardy_margin(const EnergyRecord& rec, const AuxiliaryWeight& w) {
  return hardy_margin_from(rec, w);
}

namespace {

// Shared pieces of both identities at the center record's time.
struct PhiTerms {
  double cross;  // int f u_r Phi_r with f = 2 u_t (e1) or 2 u (e2)
  double phi_t_quad;
};

double cross_term(const Field& fac, const Field& u, const AuxiliaryWeight& w, double t) {
  // int fac * u_r * Phi_r = c int fac u_r A' Phi, c = 1/((h+2eps)(1+t)).
  Field du = radial_gradient(u);
  Field integrand = Field::zeros(u.grid_ptr());
  for (int i = 0; i < u.size(); ++i) integrand[i] = fac[i] * du[i] * w.dA[i];
  double c = 1.0 / ((w.h + 2.0 * w.epsilon) * (1.0 + t));
  return c * phi_weighted_integral(integrand, w, t);
}

double phi_t_term(const Field& f, const AuxiliaryWeight& w, double t) {
  // int f Phi_t = -c/(1+t) int f A Phi.
  Field integrand = Field::zeros(f.grid_ptr());
  for (int i = 0; i < f.size(); ++i) integrand[i] = f[i] * w.A[i];
  double c = 1.0 / ((w.h + 2.0 * w.epsilon) * (1.0 + t));
  return -c / (1.0 + t) * phi_weighted_integral(integrand, w, t);
}

double centered_ddt(double fm, double fp, double tm, double tp) { return (fp - fm) / (tp - tm); }

}  // namespace

double identity_residual_e1(const EnergyRecord& prev, const EnergyRecord& cur,
                            const EnergyRecord& next, const Field& u, const Field& u_t,
                            const AuxiliaryWeight& w, const DampingProfile& p) {
  (void)p;
  double ddt = centered_ddt(prev.E1, next.E1, prev.t, next.t);
  Field two_ut = Field::zeros(u.grid_ptr());
  for (int i = 0; i < u.size(); ++i) two_ut[i] = 2.0 * u_t[i];
  double cross = cross_term(two_ut, u, w, cur.t);

  Field du = radial_gradient(u);
  Field e1_density = Field::zeros(u.grid_ptr());
  for (int i = 0; i < u.size(); ++i) e1_density[i] = du[i] * du[i] + u_t[i] * u_t[i];
  double phi_t = phi_t_term(e1_density, w, cur.t);

  double rhs = -2.0 * cur.ea_ut - cross + phi_t;
  return std::abs(ddt - rhs);
}

E2Identity identity_residual_e2(const EnergyRecord& prev, const EnergyRecord& cur,
                                const EnergyRecord& next, const Field& u, const Field& u_t,
                                const AuxiliaryWeight& w, const DampingProfile& p) {
  E2Identity out;
  out.ddt = centered_ddt(prev.E2, next.E2, prev.t, next.t);
  out.term_ut2 = 2.0 * cur.E_dt;
  out.term_grad = -2.0 * cur.E_dx;

  Field two_u = Field::zeros(u.grid_ptr());
  for (int i = 0; i < u.size(); ++i) two_u[i] = 2.0 * u[i];
  out.term_cross = -cross_term(two_u, u, w, cur.t);

  Field a = sample_damping(p, u.grid_ptr());
  Field e2_density = Field::zeros(u.grid_ptr());
  for (int i = 0; i < u.size(); ++i) {
    e2_density[i] = 2.0 * u[i] * u_t[i] + a[i] * u[i] * u[i];
  }
  out.term_phi_t = phi_t_term(e2_density, w, cur.t);

  out.rhs = out.term_ut2 + out.term_grad + out.term_cross + out.term_phi_t;
  out.residual = std::abs(out.ddt - out.rhs);
  return out;
}

double monotonicity_check_e1(std::vector<EnergyRecord>& records) {
  double worst = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k + 1 < records.size(); ++k) {
    EnergyRecord& a = records[k];
    EnergyRecord& b = records[k + 1];
    double slope = (b.E1 - a.E1) / (b.t - a.t);
    double dissipation = 0.5 * (a.ea_ut + b.ea_ut);
    double violation = slope + dissipation;
    b.mono_violation = violation;
    worst = std::max(worst, violation);
  }
  return records.size() > 1 ? worst : 0.0;
}

TheoryConstants make_theory_constants(const DampingProfile& p, const GridPtr& grid,
                                      const AuxiliaryWeight& w, double R0) {
  TheoryConstants tc;
  tc.h = w.h;
  tc.eps = w.epsilon;
  DampingEnvelope env = damping_envelope(p, grid);
  tc.a1 = env.a1;
  tc.a2 = env.a2;
  tc.A2eps = w.report.A2eps;
  tc.R0 = R0;
  tc.lambda0 = (1.0 - tc.eps) * (1.0 - 4.0 * tc.eps) / ((1.0 + tc.eps) * (tc.h + 2.0 * tc.eps));
  tc.delta = 1.0 / tc.h - tc.lambda0;
  tc.nu = 4.0 / tc.a1 + 2.0 * tc.A2eps * (R0 + 1.0) * (R0 + 1.0) / (tc.eps * tc.a1 * tc.a1) +
          1.0 / (tc.eps * tc.a1);
  tc.p_alpha_val = p_alpha(p.alpha, grid->dim());
  return tc;
}

double TheoryConstants::t_star2(double lambda) const {
  return std::max({(1.0 - eps) * lambda * nu / eps, lambda, 1.0, t_star(lambda)});
}

AppfpsMargins appfps_checks(const EnergyRecord& rec, const TheoryConstants& tc) {
  AppfpsMargins m;
  m.m1 = rec.ea_ut / tc.a1 - rec.E_dt;
  double box = tc.R0 + 1.0 + rec.t;
  m.m2 = tc.A2eps / tc.a1 * box * box * rec.E_dt - rec.aa_ut;
  m.m3 = 2.0 / std::sqrt(tc.a1) * std::sqrt(rec.E_a * rec.E_dt) - std::abs(rec.E_star);
  return m;
}

}  // namespace dwlab
