#pragma once

#include <string>
#include <vector>

namespace dwlab {

// Least-squares slope of log(value) against log(t) over the window
// [t_lo, t_hi]. Requires at least 8 usable samples with positive values and
// t_lo >= 1; throws std::invalid_argument otherwise.
struct DecayFit {
  double slope = 0.0;
  double stderr_ = 0.0;  // sqrt(SSR/(n-2) / Sxx)
  double intercept = 0.0;
  int n_points = 0;
  double t_lo = 0.0;
  double t_hi = 0.0;
};

DecayFit fit_decay_slope(const std::vector<double>& t, const std::vector<double>& value,
                         double t_lo, double t_hi);

// Predicted decay exponents (positive numbers; values decay like t^{-exp}).
struct RateTable {
  double cor2_exp = 0.0;          // (dim+alpha)/(2(2+alpha)): || sqrt(a) u ||
  double thm1_gap = 0.0;          // (1+alpha)/(2+alpha): extra decay of u - v
  double thm1_exp = 0.0;          // cor2_exp + thm1_gap
  double propmain_Ea_exp = 0.0;   // (dim+alpha)/(2+alpha): weighted int a u^2
  double propmain_E1_exp = 0.0;   // propmain_Ea_exp + 1
  double heat_l1_exp = 0.0;       // (dim+alpha)/(2(2+alpha)): L^2(dmu) rate of the heat flow
  double lambda0 = 0.0;
  double delta = 0.0;             // 1/h - lambda0; -> 0 as eps -> 0
  double p_alpha_val = 0.0;
};

RateTable rate_table(int dim, double alpha, double eps);

enum class VerdictKind {
  two_sided,          // |slope + target| <= tol
  at_least_as_fast,   // slope <= -target + tol
};

struct Verdict {
  std::string quantity;
  double fitted_slope = 0.0;
  double stderr_ = 0.0;
  double target = 0.0;  // positive decay exponent
  double tol = 0.0;
  bool pass = false;
};

Verdict make_verdict(const std::string& quantity, const DecayFit& fit, double target_exp,
                     double tol, VerdictKind kind);

}  // namespace dwlab
