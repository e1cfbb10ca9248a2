#include "dwlab/transform.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dwlab {

TransformParams make_transform_params(double alpha, double a0, int dim) {
  if (!(alpha > 0.0) || !(a0 > 0.0) || dim < 2) {
    throw std::invalid_argument("transform: need alpha > 0, a0 > 0, dim >= 2");
  }
  return TransformParams{alpha, a0, dim};
}

double psi_map(double r, double alpha) { return std::pow(r, 1.0 + 0.5 * alpha); }

double psi_inverse(double rho, double alpha) { return std::pow(rho, 2.0 / (2.0 + alpha)); }

double jacobian_det(double r, double alpha, int dim) {
  return (2.0 + alpha) / 2.0 * std::pow(r, 0.5 * dim * alpha);
}

double j_scale(double r, const TransformParams& tp) {
  return std::sqrt((2.0 + tp.alpha) / 2.0) * std::pow(r, (tp.dim - 2) * tp.alpha / 4.0);
}

Field j_transform(const GridPtr& r_grid, const TransformParams& tp,
                  const std::function<double(double)>& v_of_rho) {
  Field out = Field::zeros(r_grid);
  for (int i = 0; i < r_grid->size(); ++i) {
    double r = r_grid->node(i);
    out[i] = j_scale(r, tp) * v_of_rho(psi_map(r, tp.alpha));
  }
  return out;
}

Field make_m_tilde(const DampingProfile& p, const GridPtr& rho_grid) {
  Field out = Field::zeros(rho_grid);
  for (int i = 0; i < rho_grid->size(); ++i) {
    double r = psi_inverse(rho_grid->node(i), p.alpha);
    out[i] = p.eval(r) / std::pow(r, p.alpha);
  }
  return out;
}

Field apply_B_radial(const Field& v, const TransformParams& tp, const Field& m_tilde) {
  require_same_grid(v, m_tilde);
  const RadialGrid& g = v.grid();
  double dr = g.dr();
  double c2 = std::pow(1.0 + 0.5 * tp.alpha, 2.0);
  double kappa = static_cast<double>(tp.dim - 2);
  double zero_order = kappa * kappa * tp.alpha * (4.0 + tp.alpha) / 16.0;
  Field out = Field::zeros(v.grid_ptr());
  for (int i = 1; i + 1 < g.size(); ++i) {
    double rho = g.node(i);
    double d2 = (v[i - 1] - 2.0 * v[i] + v[i + 1]) / (dr * dr);
    double d1 = (v[i + 1] - v[i - 1]) / (2.0 * dr);
    double bracket = -c2 * (d2 + (tp.dim - 1) / rho * d1) - zero_order / (rho * rho) * v[i];
    out[i] = bracket / m_tilde[i];
  }
  return out;
}

double psi0_value(double rho, const TransformParams& tp) {
  if (tp.dim < 3) {
    throw std::invalid_argument("transform: stationary profile needs dim >= 3");
  }
  double kappa = static_cast<double>(tp.dim - 2);
  double m_plus = -kappa * tp.alpha / (2.0 * (2.0 + tp.alpha));
  double m_minus = m_plus - 2.0 * kappa / (2.0 + tp.alpha);
  return std::pow(rho, m_plus) - std::pow(rho, m_minus);
}

Field psi0_stationary(const GridPtr& rho_grid, const TransformParams& tp) {
  Field out = Field::zeros(rho_grid);
  for (int i = 0; i < rho_grid->size(); ++i) {
    out[i] = psi0_value(rho_grid->node(i), tp);
  }
  return out;
}

double p_alpha(double alpha, int dim) {
  if (dim == 2) return std::numeric_limits<double>::infinity();
  return 2.0 * dim * (2.0 + alpha) / (alpha * (dim - 2));
}

}  // namespace dwlab
