#pragma once

namespace lfi {

/// Upper tail P(X > x) of a chi-square variable with `dof` degrees of freedom.
double chi2_sf(double x, int dof);

/// The x with chi2_sf(x, dof) = upper_tail.
double chi2_upper_quantile(double upper_tail, int dof);

/// Standard normal quantile z(p); p must lie in (0, 1).
double normal_quantile(double p);

double normal_cdf(double z);

double log_gamma(double x);

/// log of the Ghurye-Olkin constant c(k, v) = 2^{-kv/2} pi^{-k(k-1)/4} / prod_i Gamma((v-i+1)/2).
double log_ghurye_olkin_constant(int k, double v);

}  // namespace lfi
