#include "mdscm/scalar.hpp"

#include <stdexcept>

namespace mdscm {

LogGamma log_gamma(double z) {
  if (z <= 0.0 && z == std::floor(z)) {
    throw std::domain_error("log_gamma: pole at non-positive integer");
  }
  LogGamma out{std::lgamma(z), 1};
  if (z < 0.0) {
    // Gamma alternates sign on (-n-1, -n): negative on (-1, 0).
    const auto n = static_cast<long>(std::floor(-z));
    out.sign = (n % 2 == 0) ? -1 : 1;
  }
  return out;
}

double gamma_signed(double z) {
  const auto lg = log_gamma(z);
  return lg.sign * std::exp(lg.log_abs);
}

}  // namespace mdscm
