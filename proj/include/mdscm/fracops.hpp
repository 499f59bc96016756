#ifndef MDSCM_FRACOPS_HPP_
#define MDSCM_FRACOPS_HPP_

#include <functional>
#include <string>
#include <vector>

#include "mdscm/diagnostics.hpp"
#include "mdscm/jacobi.hpp"

namespace mdscm {

/**
 * Variable fractional order alpha(x, t).
 *
 * All values lie in a single branch (k-1, k) with k in {1, 2} and stay at
 * least kIntegerGap away from the integers. The bounds are declared at
 * construction and every query is checked against them.
 */
class OrderField {
 public:
  using Function = std::function<double(double x, double t)>;

  static constexpr double kIntegerGap = 1e-8;

  static OrderField constant(double alpha);
  static OrderField function(Function f, double alpha_min, double alpha_max,
                             bool time_dependent, std::string description);

  /// alpha(x, t); throws std::domain_error when the value leaves the bounds.
  double operator()(double x, double t = 0.0) const;

  double min() const { return min_; }
  double max() const { return max_; }
  /// k with k-1 < alpha < k.
  int branch() const;
  bool is_constant() const { return !fn_; }
  bool time_dependent() const { return time_dependent_; }
  const std::string& description() const { return description_; }

 private:
  OrderField() = default;
  Function fn_;
  double value_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
  bool time_dependent_ = false;
  std::string description_;
};

/// Target of a pointwise fractional evaluation in reference coordinates.
struct FracEvalPoint {
  double y = 0.0;
  double alpha = 0.5;
  int k = 1;  // ceil(alpha)
  int m = 0;  // integer derivative level, 0 <= m <= k

  /// Point with k derived from alpha; throws std::domain_error if alpha is
  /// not strictly inside (0,1) or (1,2).
  static FracEvalPoint make(double y, double alpha, int m);
};

/// d^m/dy^m of the order-(k-alpha) left integral of P_0..P_jmax from -1 to
/// y, for -1 < y <= 1. Level m = k is the left Riemann-Liouville derivative.
std::vector<double> rhat(const JacobiParams& params, int jmax, const FracEvalPoint& point);

/// As rhat but the integral runs over [-1, 1] only, for y > 1.
std::vector<double> rbreve(const JacobiParams& params, int jmax, const FracEvalPoint& point);

/// All levels 0..m of the recurrence in precision T (double or quad).
/// `beyond` selects the [-1,1] integral (y > 1) instead of [-1,y].
template <class T>
std::vector<std::vector<T>> frac_recurrence_levels(const JacobiParams& params, int jmax,
                                                   const FracEvalPoint& point, bool beyond);

/// Closed form D^alpha (y-a)^n = Gamma(n+1)/Gamma(n+1-alpha) (y-a)^{n-alpha}.
double monomial_frac_deriv(int n, double alpha, double y, double a);

/// _{-1}D_y^alpha P_j(y) for j = 0..jmax and -1 < y <= 1.
std::vector<double> frac_deriv_jacobi_inside(const JacobiParams& params, int jmax,
                                             double alpha, double y);

enum class TailMode { recurrence, quadrature, automatic };

struct FracOptions {
  /// `automatic` uses the recurrence for y <= 1 + hybrid_delta.
  double hybrid_delta = 1.0;
  /// Legendre-Gauss order L of the tail rule; 0 selects max(2 jmax, 32).
  int tail_points = 0;

  int tail_order(int jmax) const;
};

/// History operator: the derivative at y > 1 of the integral over [-1, 1],
/// applied to P_0..P_jmax.
std::vector<double> dtilde_jacobi(const JacobiParams& params, int jmax, double alpha, double y,
                                  TailMode mode, const FracOptions& opts = {},
                                  Diagnostics* diag = nullptr);

/// Legendre-Gauss rule with the Lagrange basis tabulated at its nodes, reused
/// across all far-field evaluations for one basis.
class TailQuadrature {
 public:
  TailQuadrature(const JacobiBasis& basis, int L);

  int order() const { return order_; }
  /// History operator of L_0..L_N at y > 1 by quadrature.
  std::vector<double> apply(double alpha, double y) const;

 private:
  int order_;
  int n_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> lagrange_;  // lagrange_[k * n_ + j] = L_j(xi_k)
};

enum class Side { inside, beyond };

/// Fractional derivative of every Lagrange basis function L_0..L_N at y:
/// the left derivative from -1 (inside, -1 < y <= 1) or the history
/// operator (beyond, y > 1).
std::vector<double> frac_deriv_lagrange_all(const JacobiBasis& basis, double alpha, double y,
                                            Side side, TailMode mode = TailMode::automatic,
                                            const FracOptions& opts = {},
                                            Diagnostics* diag = nullptr);

double frac_deriv_lagrange(const JacobiBasis& basis, int j, double alpha, double y, Side side,
                           TailMode mode = TailMode::automatic, const FracOptions& opts = {});

/// Left derivative of sin(pi x) from -1 by its truncated power series.
double sin_rl_series(double alpha, double x, int terms = 50);

}  // namespace mdscm

#endif  // MDSCM_FRACOPS_HPP_
