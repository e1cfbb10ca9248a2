#include "dwlab/aux_weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dwlab/quadrature.hpp"

namespace dwlab {

namespace {

double blend(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

// Centered FD radial Laplacian of A at interior nodes; ends copy neighbors.
Field fd_laplacian(const Field& f) {
  const RadialGrid& g = f.grid();
  double dr = g.dr();
  Field out = Field::zeros(f.grid_ptr());
  for (int i = 1; i + 1 < g.size(); ++i) {
    double d2 = (f[i - 1] - 2.0 * f[i] + f[i + 1]) / (dr * dr);
    double d1 = (f[i + 1] - f[i - 1]) / (2.0 * dr);
    out[i] = d2 + (g.dim() - 1) / g.node(i) * d1;
  }
  out[0] = out[1];
  out[g.size() - 1] = out[g.size() - 2];
  return out;
}

struct CoreBuild {
  AuxiliaryWeight w;
  Field a;
};

// Full construction with R_eps and lambda optionally pinned (used by the
// Richardson pass so both resolutions verify the same function).
CoreBuild assemble_core(const DampingProfile& p, const GridPtr& grid, double eps,
                        std::optional<double> R_fixed, std::optional<double> lambda_fixed) {
  const RadialGrid& g = *grid;
  int n = g.size();
  int dim = g.dim();
  double h = (2.0 + p.alpha) / (dim + p.alpha);

  Field a = sample_damping(p, grid);
  Field b2 = Field::zeros(grid);
  for (int i = 0; i < n; ++i) {
    b2[i] = a[i] - b1_value(p, dim, g.node(i));
  }

  double R_eps;
  if (R_fixed) {
    R_eps = *R_fixed;
  } else {
    int last_bad = -1;
    for (int i = 0; i < n; ++i) {
      if (std::abs(b2[i]) / a[i] > eps) last_bad = i;
    }
    R_eps = last_bad + 1 < n ? g.node(last_bad + 1) : g.r_max();
  }
  if (R_eps + 1.0 + 2.0 * g.dr() > g.r_max()) {
    throw std::invalid_argument("weight: grid too short for the cutoff collar; need r_max > " +
                                std::to_string(R_eps + 1.0) + " plus margin");
  }

  Field source = Field::zeros(grid);
  for (int i = 0; i < n; ++i) {
    source[i] = collar_cutoff(g.node(i), R_eps) * b2[i];
  }
  NewtonPotential pot = newton_potential_radial(source);

  Field base = Field::zeros(grid);
  Field dA = Field::zeros(grid);
  for (int i = 0; i < n; ++i) {
    double r = g.node(i);
    base[i] = leading_term(p, dim, r) - pot.value[i];
    dA[i] = leading_term_derivative(p, dim, r) - pot.derivative[i];
  }

  auto admissible = [&](double lambda, double* sup_out) {
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
      double Ai = base[i] + lambda;
      if (!(Ai > 0.0)) return false;
      sup = std::max(sup, dA[i] * dA[i] / (a[i] * Ai));
    }
    if (sup_out) *sup_out = sup;
    return sup <= h + eps;
  };

  double lambda;
  double sup = 0.0;
  if (lambda_fixed) {
    lambda = *lambda_fixed;
    admissible(lambda, &sup);
  } else if (admissible(0.0, &sup)) {
    lambda = 0.0;
  } else {
    lambda = 1.0;
    bool found = false;
    for (int k = 0; k < 41; ++k, lambda *= 2.0) {
      if (admissible(lambda, &sup)) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::runtime_error("weight: no admissible lambda up to 2^40");
    }
  }

  AuxiliaryWeight w;
  w.epsilon = eps;
  w.h = h;
  w.R_eps = R_eps;
  w.lambda_eps = lambda;
  w.A = base;
  for (int i = 0; i < n; ++i) w.A[i] = base[i] + lambda;
  w.dA = dA;
  w.lapA = fd_laplacian(w.A);
  w.report.grad_ratio_sup = sup;
  w.report.grad_pass = sup <= h + eps;
  return {std::move(w), std::move(a)};
}

void fill_report(AuxiliaryWeight& w, const Field& a, const DampingProfile& p, double tol_h) {
  const RadialGrid& g = w.A.grid();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 1; i + 1 < g.size(); ++i) {
    double ratio = w.lapA[i] / a[i];
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  double a1 = std::numeric_limits<double>::infinity();
  double a2 = -a1;
  for (int i = 0; i < g.size(); ++i) {
    double envelope = std::pow(angle_bracket(g.node(i)), 2.0 + p.alpha);
    a1 = std::min(a1, w.A[i] / envelope);
    a2 = std::max(a2, w.A[i] / envelope);
  }
  w.report.ellip_min = lo;
  w.report.ellip_max = hi;
  w.report.tol_h = tol_h;
  w.report.ellip_pass = lo >= 1.0 - w.epsilon - tol_h && hi <= 1.0 + w.epsilon + tol_h;
  w.report.A1eps = a1;
  w.report.A2eps = a2;
}

}  // namespace

NewtonPotential newton_potential_radial(const Field& source) {
  const RadialGrid& g = source.grid();
  int n = g.size();
  int dim = g.dim();
  double dr = g.dr();

  std::vector<double> mom(static_cast<size_t>(n));     // source * s^{dim-1}
  std::vector<double> lin(static_cast<size_t>(n));     // source * s
  std::vector<double> linlog(static_cast<size_t>(n));  // source * s * log s
  for (int i = 0; i < n; ++i) {
    double r = g.node(i);
    mom[i] = source[i] * std::pow(r, dim - 1);
    lin[i] = source[i] * r;
    linlog[i] = lin[i] * std::log(r);
  }
  std::vector<double> C = cumulative_simpson(mom, dr);

  NewtonPotential out{Field::zeros(source.grid_ptr()), Field::zeros(source.grid_ptr())};
  if (dim == 2) {
    std::vector<double> Cl = cumulative_simpson(linlog, dr);
    double Cl_total = Cl.back();
    for (int i = 0; i < n; ++i) {
      double r = g.node(i);
      out.value[i] = -(std::log(r) * C[i] + (Cl_total - Cl[i]));
    }
  } else {
    std::vector<double> Cs = cumulative_simpson(lin, dr);
    double Cs_total = Cs.back();
    for (int i = 0; i < n; ++i) {
      double r = g.node(i);
      out.value[i] = (std::pow(r, 2 - dim) * C[i] + (Cs_total - Cs[i])) / (dim - 2);
    }
  }
  for (int i = 0; i < n; ++i) {
    out.derivative[i] = -C[i] / std::pow(g.node(i), dim - 1);
  }
  return out;
}

double b1_value(const DampingProfile& p, int dim, double r) {
  double br = angle_bracket(r);
  return p.a0 * std::pow(br, p.alpha) -
         p.a0 * p.alpha / (dim + p.alpha) * std::pow(br, p.alpha - 2.0);
}

double leading_term(const DampingProfile& p, int dim, double r) {
  return p.a0 * std::pow(angle_bracket(r), 2.0 + p.alpha) / ((2.0 + p.alpha) * (dim + p.alpha));
}

double leading_term_derivative(const DampingProfile& p, int dim, double r) {
  return p.a0 * r * std::pow(angle_bracket(r), p.alpha) / (dim + p.alpha);
}

double collar_cutoff(double r, double R) {
  double up = blend(R + 1.0 - r);
  double down = blend(r - R);
  if (up == 0.0) return 0.0;
  return up / (up + down);
}

AuxiliaryWeight assemble_aux_weight(const DampingProfile& p, const GridPtr& grid, double eps,
                                    bool with_tolerance) {
  if (!(eps > 0.0 && eps < 1.0 / 3.0)) {
    throw std::invalid_argument("weight: eps must lie in (0, 1/3), got " + std::to_string(eps));
  }
  CoreBuild built = assemble_core(p, grid, eps, std::nullopt, std::nullopt);

  double tol_h = 0.0;
  if (with_tolerance) {
    // Same weight on the doubled grid; Richardson on the shared nodes bounds
    // the O(dr^2) error of the coarse ratio.
    GridPtr fine = build_grid(grid->r0(), grid->r_max(), 2 * grid->size() - 1, grid->dim());
    CoreBuild fb = assemble_core(p, fine, eps, built.w.R_eps, built.w.lambda_eps);
    double max_diff = 0.0;
    for (int i = 1; i + 1 < grid->size(); ++i) {
      double coarse = built.w.lapA[i] / built.a[i];
      double refined = fb.w.lapA[2 * i] / fb.a[2 * i];
      max_diff = std::max(max_diff, std::abs(coarse - refined));
    }
    tol_h = 4.0 / 3.0 * max_diff + 1e-12;
  }
  fill_report(built.w, built.a, p, tol_h);
  return std::move(built.w);
}

VerificationReport verify_elliptic_bounds(const AuxiliaryWeight& w, const DampingProfile& p,
                                          double tol_h) {
  AuxiliaryWeight copy = w;
  Field a = sample_damping(p, w.A.grid_ptr());
  fill_report(copy, a, p, tol_h);
  double sup = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    sup = std::max(sup, w.dA[i] * w.dA[i] / (a[i] * w.A[i]));
  }
  copy.report.grad_ratio_sup = sup;
  copy.report.grad_pass = sup <= w.h + w.epsilon;
  return copy.report;
}

WeightSnapshot phi_weight(const AuxiliaryWeight& w, double t) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("phi: t must be nonnegative");
  }
  const GridPtr& grid = w.A.grid_ptr();
  double c = 1.0 / ((w.h + 2.0 * w.epsilon) * (1.0 + t));
  WeightSnapshot s{t, Field::zeros(grid), Field::zeros(grid), Field::zeros(grid),
                   Field::zeros(grid)};
  for (int i = 0; i < w.A.size(); ++i) {
    double phi = std::exp(c * w.A[i]);
    s.phi[i] = phi;
    s.dphi_dt[i] = -c * w.A[i] / (1.0 + t) * phi;
    s.dphi_dr[i] = c * w.dA[i] * phi;
    s.lap_phi[i] = (c * w.lapA[i] + c * c * w.dA[i] * w.dA[i]) * phi;
  }
  return s;
}

}  // namespace dwlab
