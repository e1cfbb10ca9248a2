#include "dwlab/rates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dwlab {

DecayFit fit_decay_slope(const std::vector<double>& t, const std::vector<double>& value,
                         double t_lo, double t_hi) {
  if (t.size() != value.size()) {
    throw std::invalid_argument("fit: time/value size mismatch");
  }
  if (!(t_lo >= 1.0) || !(t_hi > t_lo)) {
    throw std::invalid_argument("fit: need 1 <= t_lo < t_hi");
  }
  std::vector<double> x, y;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(value[i] > 0.0)) {
      throw std::invalid_argument("fit: nonpositive value at t = " + std::to_string(t[i]));
    }
    x.push_back(std::log(t[i]));
    y.push_back(std::log(value[i]));
  }
  int n = static_cast<int>(x.size());
  if (n < 8) {
    throw std::invalid_argument("fit: need at least 8 samples in the window, got " +
                                std::to_string(n));
  }
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  DecayFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ssr += e * e;
  }
  fit.stderr_ = std::sqrt(ssr / (n - 2) / sxx);
  fit.n_points = n;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  return fit;
}

RateTable rate_table(int dim, double alpha, double eps) {
  if (dim < 2 || !(alpha > 0.0) || !(eps > 0.0 && eps < 1.0 / 3.0)) {
    throw std::invalid_argument("rates: need dim >= 2, alpha > 0, eps in (0, 1/3)");
  }
  RateTable rt;
  double N = static_cast<double>(dim);
  rt.cor2_exp = (N + alpha) / (2.0 * (2.0 + alpha));
  rt.thm1_gap = (1.0 + alpha) / (2.0 + alpha);
  rt.thm1_exp = rt.cor2_exp + rt.thm1_gap;
  rt.propmain_Ea_exp = (N + alpha) / (2.0 + alpha);
  rt.propmain_E1_exp = rt.propmain_Ea_exp + 1.0;
  rt.heat_l1_exp = rt.cor2_exp;
  double h = (2.0 + alpha) / (N + alpha);
  rt.lambda0 = (1.0 - eps) * (1.0 - 4.0 * eps) / ((1.0 + eps) * (h + 2.0 * eps));
  rt.delta = 1.0 / h - rt.lambda0;
  rt.p_alpha_val = dim == 2 ? std::numeric_limits<double>::infinity()
                            : 2.0 * N * (2.0 + alpha) / (alpha * (N - 2.0));
  return rt;
}

Verdict make_verdict(const std::string& quantity, const DecayFit& fit, double target_exp,
                     double tol, VerdictKind kind) {
  if (!(target_exp >= 0.0) || !(tol >= 0.0)) {
    throw std::invalid_argument("verdict: target and tol must be nonnegative");
  }
  Verdict v;
  v.quantity = quantity;
  v.fitted_slope = fit.slope;
  v.stderr_ = fit.stderr_;
  v.target = target_exp;
  v.tol = tol;
  if (kind == VerdictKind::two_sided) {
    v.pass = std::abs(fit.slope + target_exp) <= tol;
  } else {
    v.pass = fit.slope <= -target_exp + tol;
  }
  return v;
}

}  // namespace dwlab
