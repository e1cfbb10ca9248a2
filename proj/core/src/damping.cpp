#include "dwlab/damping.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dwlab {

double smooth_bump(double r, double center, double width, double amp) {
  double s = (r - center) / width;
  double s2 = s * s;
  if (s2 >= 1.0) return 0.0;
  return amp * std::exp(-1.0 / (1.0 - s2));
}

double peak_bump(double r, double center, double width, double amp) {
  return smooth_bump(r, center, width, amp * std::exp(1.0));
}

double DampingProfile::eval(double r) const {
  double a = a0 * std::pow(r, alpha);
  if (bump) {
    a += peak_bump(r, bump->center, bump->width, bump->height);
  }
  return a;
}

DampingProfile make_damping(double alpha, double a0, std::optional<BumpSpec> bump) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("damping: alpha must be positive, got " + std::to_string(alpha));
  }
  if (!(a0 > 0.0)) {
    throw std::invalid_argument("damping: a0 must be positive, got " + std::to_string(a0));
  }
  if (bump && !(bump->width > 0.0)) {
    throw std::invalid_argument("damping: bump width must be positive");
  }
  return DampingProfile{alpha, a0, bump};
}

Field sample_damping(const DampingProfile& p, const GridPtr& grid) {
  Field a = Field::zeros(grid);
  for (int i = 0; i < grid->size(); ++i) {
    double v = p.eval(grid->node(i));
    if (!(v > 0.0)) {
      throw std::invalid_argument("damping: a(r) <= 0 at r = " + std::to_string(grid->node(i)));
    }
    a[i] = v;
  }
  return a;
}

DampingEnvelope damping_envelope(const DampingProfile& p, const GridPtr& grid) {
  DampingEnvelope env{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < grid->size(); ++i) {
    double r = grid->node(i);
    double ratio = p.eval(r) / std::pow(angle_bracket(r), p.alpha);
    env.a1 = std::min(env.a1, ratio);
    env.a2 = std::max(env.a2, ratio);
  }
  return env;
}

InitialData bump_initial_data(const GridPtr& grid, double center, double width, double amp_u0,
                              double amp_u1) {
  if (!(width > 0.0)) {
    throw std::invalid_argument("initial data: width must be positive");
  }
  if (!(center - width > grid->r0())) {
    throw std::invalid_argument("initial data: bump support must avoid the obstacle boundary");
  }
  if (!(center + width < grid->r_max())) {
    throw std::invalid_argument("initial data: bump support must stay inside the grid");
  }
  InitialData data{Field::zeros(grid), Field::zeros(grid), center + width};
  for (int i = 0; i < grid->size(); ++i) {
    double r = grid->node(i);
    data.u0[i] = smooth_bump(r, center, width, amp_u0);
    data.u1[i] = smooth_bump(r, center, width, amp_u1);
  }
  return data;
}

}  // namespace dwlab
