#include "dwlab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace dwlab {

namespace {

double simpson_1d(const std::vector<double>& g, double dr) {
  std::vector<double> c = simpson_coefficients(static_cast<int>(g.size()), dr);
  double total = 0.0;
  for (size_t i = 0; i < g.size(); ++i) total += c[i] * g[i];
  return total;
}

}  // namespace

std::vector<double> simpson_coefficients(int n, double dr) {
  if (n < 2) {
    throw std::invalid_argument("quadrature: need at least 2 samples");
  }
  std::vector<double> c(static_cast<size_t>(n), 0.0);
  int i = 0;
  for (; i + 2 < n; i += 2) {
    c[i] += dr / 3.0;
    c[i + 1] += 4.0 * dr / 3.0;
    c[i + 2] += dr / 3.0;
  }
  // Even panel count: close the last panel with the trapezoid rule.
  if (i == n - 2) {
    c[i] += 0.5 * dr;
    c[i + 1] += 0.5 * dr;
  }
  return c;
}

double integrate_radial(const Field& f) {
  const RadialGrid& g = f.grid();
  std::vector<double> vals(static_cast<size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    vals[i] = f[i] * std::pow(g.node(i), g.dim() - 1);
  }
  return g.sphere_area() * simpson_1d(vals, g.dr());
}

double quadrature(const Field& samples, const Field& weight) {
  require_same_grid(samples, weight);
  const RadialGrid& g = samples.grid();
  std::vector<double> vals(static_cast<size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    vals[i] = samples[i] * weight[i] * std::pow(g.node(i), g.dim() - 1);
  }
  return g.sphere_area() * simpson_1d(vals, g.dr());
}

double weighted_l2_norm(const Field& f, const DampingProfile& p, WeightKind kind) {
  const RadialGrid& g = f.grid();
  std::vector<double> vals(static_cast<size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    double r = g.node(i);
    double w = (kind == WeightKind::lebesgue) ? 1.0 : p.eval(r);
    vals[i] = f[i] * f[i] * w * std::pow(r, g.dim() - 1);
  }
  return std::sqrt(g.sphere_area() * simpson_1d(vals, g.dr()));
}

std::vector<double> cumulative_simpson(const std::vector<double>& f, double dr) {
  int n = static_cast<int>(f.size());
  if (n < 3) {
    throw std::invalid_argument("cumulative_simpson: need at least 3 samples");
  }
  std::vector<double> out(static_cast<size_t>(n), 0.0);
  // Quadratic through (0,1,2) integrated over the first panel.
  out[1] = dr / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]);
  for (int i = 2; i < n; ++i) {
    out[i] = out[i - 2] + dr / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
  }
  return out;
}

}  // namespace dwlab
