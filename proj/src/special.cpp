#include "lfi/special.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "lfi/errors.hpp"

namespace lfi {

double chi2_sf(double x, int dof) {
  if (dof <= 0) throw DomainError("chi2_sf: degrees of freedom must be positive");
  if (std::isnan(x)) throw DomainError("chi2_sf: x is NaN");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

double chi2_upper_quantile(double upper_tail, int dof) {
  if (dof <= 0) throw DomainError("chi2_upper_quantile: degrees of freedom must be positive");
  if (!(upper_tail > 0.0 && upper_tail < 1.0)) {
    throw DomainError("chi2_upper_quantile: tail probability must lie in (0, 1)");
  }
  return 2.0 * boost::math::gamma_q_inv(0.5 * dof, upper_tail);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double log_gamma(double x) { return boost::math::lgamma(x); }

double log_ghurye_olkin_constant(int k, double v) {
  double out = -0.5 * k * v * std::numbers::ln2 -
               0.25 * k * (k - 1) * std::log(std::numbers::pi);
  for (int i = 1; i <= k; ++i) out -= log_gamma(0.5 * (v - i + 1));
  return out;
}

}  // namespace lfi
