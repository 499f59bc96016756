#include "mdscm/fracops.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mdscm {

namespace {

constexpr double kNearSingularGap = 1e-3;

bool near_integer(double a) {
  return std::fabs(a - std::round(a)) < OrderField::kIntegerGap;
}

std::string describe_constant(double alpha) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), alpha);
  return std::string(buf, res.ptr);
}

}  // namespace

// ---------------------------------------------------------------------------
// OrderField

OrderField OrderField::constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0) || near_integer(alpha)) {
    throw std::domain_error("fractional order must lie in (0,1) or (1,2) away from integers, got " +
                            describe_constant(alpha));
  }
  OrderField f;
  f.value_ = alpha;
  f.min_ = alpha;
  f.max_ = alpha;
  f.description_ = describe_constant(alpha);
  return f;
}

OrderField OrderField::function(Function fn, double alpha_min, double alpha_max,
                                bool time_dependent, std::string description) {
  if (!fn) throw std::invalid_argument("order field: empty function");
  if (!(alpha_min <= alpha_max)) throw std::domain_error("order field: min exceeds max");
  if (!(alpha_min > 0.0 && alpha_max < 2.0)) {
    throw std::domain_error("order field bounds must lie inside (0, 2)");
  }
  if (near_integer(alpha_min) || near_integer(alpha_max) ||
      std::ceil(alpha_min) != std::ceil(alpha_max)) {
    throw std::domain_error("order field [" + describe_constant(alpha_min) + ", " +
                            describe_constant(alpha_max) +
                            "] must stay inside one branch (k-1, k) away from integers");
  }
  OrderField f;
  f.fn_ = std::move(fn);
  f.min_ = alpha_min;
  f.max_ = alpha_max;
  f.time_dependent_ = time_dependent;
  f.description_ = std::move(description);
  return f;
}

double OrderField::operator()(double x, double t) const {
  if (!fn_) return value_;
  const double a = fn_(x, t);
  constexpr double slack = 1e-12;
  if (!(a >= min_ - slack && a <= max_ + slack) || near_integer(a)) {
    std::ostringstream os;
    os.precision(17);
    os << "order field '" << description_ << "' evaluates to " << a << " at (x=" << x
       << ", t=" << t << "), outside [" << min_ << ", " << max_ << "]";
    throw std::domain_error(os.str());
  }
  return a;
}

int OrderField::branch() const { return static_cast<int>(std::ceil(min_)); }

FracEvalPoint FracEvalPoint::make(double y, double alpha, int m) {
  if (!(alpha > 0.0 && alpha < 2.0) || near_integer(alpha)) {
    throw std::domain_error("fractional order must lie in (0,1) or (1,2), got " +
                            describe_constant(alpha));
  }
  FracEvalPoint p;
  p.y = y;
  p.alpha = alpha;
  p.k = static_cast<int>(std::ceil(alpha));
  p.m = m;
  if (m < 0 || m > p.k) throw std::invalid_argument("derivative level must satisfy 0 <= m <= k");
  return p;
}

// ---------------------------------------------------------------------------
// Recurrences

template <class T>
std::vector<std::vector<T>> frac_recurrence_levels(const JacobiParams& params, int jmax,
                                                   const FracEvalPoint& point, bool beyond) {
  if (jmax < 0) throw std::invalid_argument("jmax must be non-negative");
  if (point.m < 0 || point.m > point.k) {
    throw std::invalid_argument("derivative level must satisfy 0 <= m <= k");
  }
  if (beyond) {
    if (!(point.y > 1.0)) throw std::domain_error("history recurrence needs y > 1");
  } else if (!(point.y > -1.0 && point.y <= 1.0)) {
    throw std::domain_error("inside recurrence needs -1 < y <= 1");
  }

  const T c = T(params.c);
  const T d = T(params.d);
  const T y = T(point.y);
  const T mu = T(point.k) - T(point.alpha);
  const T yp = y + T(1);
  const T ym = y - T(1);

  // Jacobi values at the endpoints, needed by the inhomogeneous terms.
  const auto p_left = eval_jacobi_all<T>(c, d, jmax + 1, T(-1));
  const auto p_right = eval_jacobi_all<T>(c, d, jmax + 1, T(1));

  std::vector<std::vector<T>> levels;
  levels.reserve(point.m + 1);
  for (int lev = 0; lev <= point.m; ++lev) {
    std::vector<T> r(static_cast<std::size_t>(jmax) + 1, T(0));
    const T e = mu - T(lev);
    const T g0 = rgamma<T>(mu + T(1) - T(lev));
    const T g1 = rgamma<T>(mu + T(2) - T(lev));
    const T pp0 = s_pow(yp, e);
    const T pp1 = pp0 * yp;
    const T pm0 = beyond ? s_pow(ym, e) : T(0);
    const T pm1 = pm0 * ym;

    r[0] = (pp0 - pm0) * g0;
    if (jmax >= 1) {
      const T half = (c + d + T(2)) / T(2);
      r[1] = (p_left[1] * pp0 - p_right[1] * pm0) * g0 + half * (pp1 - pm1) * g1;
    }
    for (int j = 1; j < jmax; ++j) {
      const auto rc = recurrence_coeffs<T>(c, d, j);
      const T den = T(1) + mu * rc.a * rc.c_hat;
      const T at = rc.a / den;
      const T bt = (rc.b + mu * rc.a * rc.b_hat) / den;
      const T ct = (rc.c + mu * rc.a * rc.a_hat) / den;
      const T dt = rc.a *
                   (rc.a_hat * p_left[j - 1] + rc.b_hat * p_left[j] + rc.c_hat * p_left[j + 1]) /
                   den;
      T v = (at * y - bt) * r[j] - ct * r[j - 1];
      if (lev > 0) v += T(lev) * at * levels.back()[j];
      T forcing = dt * pp0;
      if (beyond) {
        const T et = rc.a *
                     (rc.a_hat * p_right[j - 1] + rc.b_hat * p_right[j] +
                      rc.c_hat * p_right[j + 1]) /
                     den;
        forcing -= et * pm0;
      }
      v += mu * forcing * g0;
      r[j + 1] = v;
    }
    levels.push_back(std::move(r));
  }
  return levels;
}

template std::vector<std::vector<double>> frac_recurrence_levels<double>(const JacobiParams&,
                                                                         int,
                                                                         const FracEvalPoint&,
                                                                         bool);
template std::vector<std::vector<quad>> frac_recurrence_levels<quad>(const JacobiParams&, int,
                                                                     const FracEvalPoint&, bool);

namespace {

std::vector<double> top_level_as_double(const std::vector<std::vector<quad>>& levels) {
  const auto& top = levels.back();
  std::vector<double> out(top.size());
  std::transform(top.begin(), top.end(), out.begin(), [](quad v) { return static_cast<double>(v); });
  return out;
}

}  // namespace

std::vector<double> rhat(const JacobiParams& params, int jmax, const FracEvalPoint& point) {
  if (!(point.y > -1.0)) throw std::domain_error("rhat: y must exceed -1");
  return top_level_as_double(frac_recurrence_levels<quad>(params, jmax, point, false));
}

std::vector<double> rbreve(const JacobiParams& params, int jmax, const FracEvalPoint& point) {
  if (!(point.y > 1.0)) throw std::domain_error("rbreve: y must exceed 1");
  return top_level_as_double(frac_recurrence_levels<quad>(params, jmax, point, true));
}

double monomial_frac_deriv(int n, double alpha, double y, double a) {
  if (n < 0) throw std::invalid_argument("monomial degree must be non-negative");
  const double shifted = n + 1.0 - alpha;
  if (shifted <= 0.0 && shifted == std::floor(shifted)) {
    throw std::domain_error("monomial_frac_deriv: Gamma pole at n + 1 - alpha");
  }
  const double base = y - a;
  if (base <= 0.0) {
    if (n - alpha > 0.0) return 0.0;
    throw std::domain_error("monomial_frac_deriv: singular at the origin");
  }
  // Gamma(n+1)/Gamma(n+1-alpha) in log form for large n.
  const auto lg = log_gamma(shifted);
  return lg.sign * std::exp(std::lgamma(n + 1.0) - lg.log_abs + (n - alpha) * std::log(base));
}

std::vector<double> frac_deriv_jacobi_inside(const JacobiParams& params, int jmax, double alpha,
                                             double y) {
  const auto point = FracEvalPoint::make(y, alpha, static_cast<int>(std::ceil(alpha)));
  return rhat(params, jmax, point);
}

int FracOptions::tail_order(int jmax) const {
  return tail_points > 0 ? tail_points : std::max(2 * jmax, 32);
}

std::vector<double> dtilde_jacobi(const JacobiParams& params, int jmax, double alpha, double y,
                                  TailMode mode, const FracOptions& opts, Diagnostics* diag) {
  if (!(y > 1.0)) throw std::domain_error("dtilde_jacobi: y must exceed 1");
  if (mode == TailMode::automatic) {
    mode = (y <= 1.0 + opts.hybrid_delta) ? TailMode::recurrence : TailMode::quadrature;
  }
  if (mode == TailMode::recurrence) {
    const auto point = FracEvalPoint::make(y, alpha, static_cast<int>(std::ceil(alpha)));
    return rbreve(params, jmax, point);
  }
  if (y - 1.0 < kNearSingularGap && diag != nullptr) {
    std::ostringstream os;
    os << "tail quadrature evaluated near the element edge (y - 1 = " << (y - 1.0)
       << "); accuracy degraded";
    diag->warn(os.str());
  }
  (void)FracEvalPoint::make(y, alpha, 0);
  const auto rule = gauss_nodes_weights(opts.tail_order(jmax));
  const double scale = rgamma(-alpha);
  std::vector<double> out(jmax + 1, 0.0);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double kernel = std::pow(y - rule.nodes[k], -alpha - 1.0) * rule.weights[k];
    const auto p = eval_jacobi_all(params, jmax, rule.nodes[k]);
    for (int j = 0; j <= jmax; ++j) out[j] += p[j] * kernel;
  }
  for (auto& v : out) v *= scale;
  return out;
}

// ---------------------------------------------------------------------------
// Lagrange basis

TailQuadrature::TailQuadrature(const JacobiBasis& basis, int L) : order_(L), n_(basis.N + 1) {
  auto rule = gauss_nodes_weights(L);
  nodes_ = std::move(rule.nodes);
  weights_ = std::move(rule.weights);
  lagrange_.assign(nodes_.size() * n_, 0.0);
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    // L_j(xi) = sum_i l_i^j P_i(xi)
    const auto p = eval_jacobi_all(basis.params, basis.N, nodes_[k]);
    for (int j = 0; j < n_; ++j) {
      double s = 0.0;
      for (int i = 0; i < n_; ++i) s += basis.lcoef(i, j) * p[i];
      lagrange_[k * n_ + j] = s;
    }
  }
}

std::vector<double> TailQuadrature::apply(double alpha, double y) const {
  std::vector<double> out(n_, 0.0);
  const double expo = -alpha - 1.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const double kernel = std::exp(expo * std::log(y - nodes_[k])) * weights_[k];
    const double* row = &lagrange_[k * n_];
    for (int j = 0; j < n_; ++j) out[j] += row[j] * kernel;
  }
  const double scale = rgamma(-alpha);
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<double> frac_deriv_lagrange_all(const JacobiBasis& basis, double alpha, double y,
                                            Side side, TailMode mode, const FracOptions& opts,
                                            Diagnostics* diag) {
  std::vector<double> modal;
  if (side == Side::inside) {
    if (!(y > -1.0 && y <= 1.0)) throw std::domain_error("inside evaluation needs -1 < y <= 1");
    modal = frac_deriv_jacobi_inside(basis.params, basis.N, alpha, y);
  } else {
    if (!(y > 1.0)) throw std::domain_error("beyond evaluation needs y > 1");
    if (mode == TailMode::automatic) {
      mode = (y <= 1.0 + opts.hybrid_delta) ? TailMode::recurrence : TailMode::quadrature;
    }
    if (mode == TailMode::quadrature) {
      (void)FracEvalPoint::make(y, alpha, 0);
      if (y - 1.0 < kNearSingularGap && diag != nullptr) {
        std::ostringstream os;
        os << "tail quadrature evaluated near the element edge (y - 1 = " << (y - 1.0) << ")";
        diag->warn(os.str());
      }
      return TailQuadrature(basis, opts.tail_order(basis.N)).apply(alpha, y);
    }
    modal = dtilde_jacobi(basis.params, basis.N, alpha, y, TailMode::recurrence, opts, diag);
  }
  std::vector<double> out(basis.N + 1, 0.0);
  for (int j = 0; j <= basis.N; ++j) {
    double s = 0.0;
    for (int i = 0; i <= basis.N; ++i) s += basis.lcoef(i, j) * modal[i];
    out[j] = s;
  }
  return out;
}

double frac_deriv_lagrange(const JacobiBasis& basis, int j, double alpha, double y, Side side,
                           TailMode mode, const FracOptions& opts) {
  if (j < 0 || j > basis.N) throw std::out_of_range("Lagrange index out of range");
  return frac_deriv_lagrange_all(basis, alpha, y, side, mode, opts)[j];
}

double sin_rl_series(double alpha, double x, int terms) {
  const double xp = x + 1.0;
  if (xp <= 0.0) return 0.0;
  const double log_pi = std::log(std::numbers::pi);
  const double log_xp = std::log(xp);
  double sum = 0.0;
  for (int k = 0; k <= terms; ++k) {
    const double n = 2.0 * k + 1.0;
    const auto lg = log_gamma(n + 1.0 - alpha);
    const double mag = std::exp(n * log_pi + (n - alpha) * log_xp - lg.log_abs);
    const double sign = ((k % 2 == 0) ? -1.0 : 1.0) * lg.sign;
    sum += sign * mag;
  }
  return sum;
}

}  // namespace mdscm
