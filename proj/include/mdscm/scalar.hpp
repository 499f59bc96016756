#ifndef MDSCM_SCALAR_HPP_
#define MDSCM_SCALAR_HPP_

// Overload set for the two floating-point types used by the library:
// double for storage and linear algebra, binary128 for the forward
// recurrences that need the extra headroom.

#include <cmath>
#include <limits>

#include <quadmath.h>

namespace mdscm {

using quad = __float128;

inline double s_pow(double x, double y) { return std::pow(x, y); }
inline double s_log(double x) { return std::log(x); }
inline double s_exp(double x) { return std::exp(x); }
inline double s_abs(double x) { return std::fabs(x); }
inline double s_sqrt(double x) { return std::sqrt(x); }
inline double s_tgamma(double x) { return std::tgamma(x); }
inline double s_lgamma(double x) { return std::lgamma(x); }
inline double s_floor(double x) { return std::floor(x); }

inline quad s_pow(quad x, quad y) { return powq(x, y); }
inline quad s_log(quad x) { return logq(x); }
inline quad s_exp(quad x) { return expq(x); }
inline quad s_abs(quad x) { return fabsq(x); }
inline quad s_sqrt(quad x) { return sqrtq(x); }
inline quad s_tgamma(quad x) { return tgammaq(x); }
inline quad s_lgamma(quad x) { return lgammaq(x); }
inline quad s_floor(quad x) { return floorq(x); }

/// 1/Gamma(z), continued by zero at the poles z = 0, -1, -2, ...
template <class T>
T rgamma(T z) {
  if (z <= T(0) && z == s_floor(z)) return T(0);
  return T(1) / s_tgamma(z);
}

/// Gamma(z) for any non-pole real z, including negative arguments.
/// Evaluated as sign * exp(lgamma) so large arguments do not overflow early.
double gamma_signed(double z);

/// log|Gamma(z)| together with the sign of Gamma(z).
struct LogGamma {
  double log_abs;
  int sign;
};
LogGamma log_gamma(double z);

}  // namespace mdscm

#endif  // MDSCM_SCALAR_HPP_
