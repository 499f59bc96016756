#include "mdscm/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mdscm {

namespace {

constexpr double kNewtonTol = 1e-14;
constexpr int kNewtonMaxIter = 100;

// P_n^{a,b}(y) and its derivative.
std::pair<double, double> jacobi_with_derivative(double a, double b, int n, double y) {
  if (n == 0) return {1.0, 0.0};
  const auto p = eval_jacobi_all<double>(a, b, n, y);
  const auto dp = eval_jacobi_all<double>(a + 1.0, b + 1.0, n - 1, y);
  return {p[n], 0.5 * (n + a + b + 1.0) * dp[n - 1]};
}

}  // namespace

void JacobiParams::validate() const {
  if (!(c > -1.0) || !(d > -1.0)) {
    throw std::invalid_argument("Jacobi parameters must satisfy c > -1 and d > -1, got c=" +
                                std::to_string(c) + ", d=" + std::to_string(d));
  }
}

double eval_jacobi(const JacobiParams& params, int j, double y) {
  return eval_jacobi_all<double>(params.c, params.d, j, y)[j];
}

std::vector<double> eval_jacobi_all(const JacobiParams& params, int jmax, double y) {
  return eval_jacobi_all<double>(params.c, params.d, jmax, y);
}

double eval_jacobi_derivative(const JacobiParams& params, int j, double y) {
  return jacobi_with_derivative(params.c, params.d, j, y).second;
}

double jacobi_norm(const JacobiParams& params, int j) {
  const double c = params.c;
  const double d = params.d;
  const double log2 = std::log(2.0);
  if (j == 0) {
    // (c+d+1) Gamma(c+d+1) folded into Gamma(c+d+2) so c+d = -1 is regular.
    return std::exp((c + d + 1.0) * log2 + std::lgamma(c + 1.0) + std::lgamma(d + 1.0) -
                    std::lgamma(c + d + 2.0));
  }
  return std::exp((c + d + 1.0) * log2 + std::lgamma(j + c + 1.0) + std::lgamma(j + d + 1.0) -
                  std::lgamma(j + 1.0) - std::lgamma(j + c + d + 1.0)) /
         (2.0 * j + c + d + 1.0);
}

QuadratureRule jacobi_gauss(double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("jacobi_gauss: need at least one point");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double log_const = (a + b + 1.0) * std::log(2.0) + std::lgamma(n + a + 1.0) +
                           std::lgamma(n + b + 1.0) - std::lgamma(n + 1.0) -
                           std::lgamma(n + a + b + 1.0);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-Gauss guess
    double y = -std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * n));
    bool converged = false;
    for (int it = 0; it < kNewtonMaxIter; ++it) {
      auto [p, dp] = jacobi_with_derivative(a, b, n, y);
      // deflate the roots already found
      double s = 0.0;
      for (int k = 0; k < i; ++k) s += 1.0 / (y - rule.nodes[k]);
      const double delta = p / (dp - s * p);
      y -= delta;
      if (std::fabs(delta) <= kNewtonTol * std::max(1.0, std::fabs(y))) {
        converged = true;
        break;
      }
    }
    if (!converged || !(y > -1.0 && y < 1.0)) {
      throw std::runtime_error("jacobi_gauss: Newton iteration failed for root " +
                               std::to_string(i) + " of P_" + std::to_string(n));
    }
    rule.nodes[i] = y;
  }
  // deflation keeps the roots distinct but not necessarily ordered
  std::sort(rule.nodes.begin(), rule.nodes.end());
  for (int i = 0; i < n; ++i) {
    const double y = rule.nodes[i];
    if (i > 0 && !(y > rule.nodes[i - 1])) {
      throw std::runtime_error("jacobi_gauss: Newton iteration produced a repeated root");
    }
    const double dp = jacobi_with_derivative(a, b, n, y).second;
    rule.weights[i] = std::exp(log_const) / ((1.0 - y * y) * dp * dp);
  }
  return rule;
}

QuadratureRule jgl_nodes_weights(const JacobiParams& params, int N) {
  params.validate();
  if (N < 1) throw std::invalid_argument("jgl_nodes_weights: N must be at least 1");
  const double c = params.c;
  const double d = params.d;
  QuadratureRule rule;
  rule.nodes.assign(N + 1, 0.0);
  rule.weights.assign(N + 1, 0.0);
  rule.nodes.front() = -1.0;
  rule.nodes.back() = 1.0;
  if (N >= 2) {
    // Interior nodes are the zeros of P'_N, i.e. Gauss points of weight
    // (1-y)^{c+1}(1+y)^{d+1}; the Lobatto weight is the Gauss weight / (1-y^2).
    auto inner = jacobi_gauss(c + 1.0, d + 1.0, N - 1);
    for (int i = 0; i < N - 1; ++i) {
      const double y = inner.nodes[i];
      rule.nodes[i + 1] = y;
      rule.weights[i + 1] = inner.weights[i] / (1.0 - y * y);
    }
  }
  const double common = (c + d + 1.0) * std::log(2.0) + std::lgamma(N) - std::lgamma(N + c + d + 2.0);
  rule.weights.front() = std::exp(common + std::lgamma(d + 1.0) + std::lgamma(d + 2.0) +
                                  std::lgamma(N + c + 1.0) - std::lgamma(N + d + 1.0));
  rule.weights.back() = std::exp(common + std::lgamma(c + 1.0) + std::lgamma(c + 2.0) +
                                 std::lgamma(N + d + 1.0) - std::lgamma(N + c + 1.0));
  return rule;
}

QuadratureRule gauss_nodes_weights(int L) {
  if (L < 0) throw std::invalid_argument("gauss_nodes_weights: L must be non-negative");
  return jacobi_gauss(0.0, 0.0, L + 1);
}

std::vector<double> JacobiBasis::lagrange_values(double y) const {
  std::vector<double> out(N + 1, 0.0);
  for (int j = 0; j <= N; ++j) {
    if (y == nodes[j]) {
      out[j] = 1.0;
      return out;
    }
  }
  double denom = 0.0;
  for (int j = 0; j <= N; ++j) {
    out[j] = bary[j] / (y - nodes[j]);
    denom += out[j];
  }
  for (auto& v : out) v /= denom;
  return out;
}

JacobiBasis build_basis(const JacobiParams& params, int N) {
  auto rule = jgl_nodes_weights(params, N);
  JacobiBasis basis;
  basis.params = params;
  basis.N = N;
  basis.nodes = std::move(rule.nodes);
  basis.weights = std::move(rule.weights);
  basis.gammas.resize(N + 1);
  for (int i = 0; i <= N; ++i) basis.gammas[i] = jacobi_norm(params, i);

  // The last mode is under-integrated by the Lobatto rule; its discrete norm
  // is (2 + (c+d+1)/N) gamma_N.
  basis.lcoef.resize(N + 1, N + 1);
  for (int j = 0; j <= N; ++j) {
    const auto p = eval_jacobi_all(params, N, basis.nodes[j]);
    for (int i = 0; i < N; ++i) basis.lcoef(i, j) = p[i] * basis.weights[j] / basis.gammas[i];
    basis.lcoef(N, j) = p[N] * basis.weights[j] /
                        ((2.0 + (params.c + params.d + 1.0) / N) * basis.gammas[N]);
  }

  basis.bary.assign(N + 1, 1.0);
  for (int j = 0; j <= N; ++j) {
    for (int k = 0; k <= N; ++k) {
      if (k != j) basis.bary[j] /= (basis.nodes[j] - basis.nodes[k]);
    }
  }
  return basis;
}

Eigen::MatrixXd first_deriv_matrix(const JacobiBasis& basis) {
  const int n = basis.N + 1;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == m) continue;
      D(m, j) = (basis.bary[j] / basis.bary[m]) / (basis.nodes[m] - basis.nodes[j]);
      diag -= D(m, j);
    }
    D(m, m) = diag;
  }
  return D;
}

}  // namespace mdscm
