#ifndef MDSCM_JACOBI_HPP_
#define MDSCM_JACOBI_HPP_

#include <vector>

#include <Eigen/Dense>

#include "mdscm/scalar.hpp"

namespace mdscm {

/// Exponents of the Jacobi weight (1-y)^c (1+y)^d.
struct JacobiParams {
  double c = 0.0;
  double d = 0.0;

  /// Throws std::invalid_argument unless c > -1 and d > -1.
  void validate() const;
  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;
};

/**
 * Coefficients of the two standard Jacobi relations
 *
 *   P_{j+1}(y) = (a y - b) P_j(y) - c P_{j-1}(y)
 *   P_j(y)     = a_hat P'_{j-1}(y) + b_hat P'_j(y) + c_hat P'_{j+1}(y)
 *
 * in the classical normalization P_j(1) = binom(j + c, j).
 */
template <class T>
struct RecurrenceCoeffs {
  T a, b, c;
  T a_hat, b_hat, c_hat;
};

template <class T>
RecurrenceCoeffs<T> recurrence_coeffs(T c, T d, int j) {
  const T s = T(2 * j) + c + d;
  const T jj = T(j);
  RecurrenceCoeffs<T> r{};
  if (j == 0) {
    // P_1 = ((c+d+2)/2) y + (c-d)/2
    r.a = (c + d + T(2)) / T(2);
    r.b = (d - c) / T(2);
    r.c = T(0);
  } else {
    r.a = (s + T(1)) * (s + T(2)) / (T(2) * (jj + T(1)) * (jj + c + d + T(1)));
    r.b = (d * d - c * c) * (s + T(1)) /
          (T(2) * (jj + T(1)) * (jj + c + d + T(1)) * s);
    r.c = (jj + c) * (jj + d) * (s + T(2)) /
          ((jj + T(1)) * (jj + c + d + T(1)) * s);
  }
  if (j == 0) {
    // P_0 = c_hat P_1'; the other two terms multiply vanishing derivatives.
    r.a_hat = T(0);
    r.b_hat = T(0);
    r.c_hat = T(2) / (c + d + T(2));
    return r;
  }
  // a_hat multiplies P'_{j-1}; for j = 1 that derivative vanishes and the
  // closed form is singular when c + d = -1, so any value is admissible.
  r.a_hat = (jj + c + d == T(0))
                ? T(0)
                : -T(2) * (jj + c) * (jj + d) / ((jj + c + d) * s * (s + T(1)));
  r.b_hat = T(2) * (c - d) / (s * (s + T(2)));
  r.c_hat = T(2) * (jj + c + d + T(1)) / ((s + T(1)) * (s + T(2)));
  return r;
}

/// P_0..P_jmax at y by forward recurrence.
template <class T>
std::vector<T> eval_jacobi_all(T c, T d, int jmax, T y) {
  std::vector<T> p(static_cast<std::size_t>(jmax) + 1);
  p[0] = T(1);
  if (jmax >= 1) p[1] = (c + d + T(2)) / T(2) * y + (c - d) / T(2);
  for (int j = 1; j < jmax; ++j) {
    const auto r = recurrence_coeffs<T>(c, d, j);
    p[j + 1] = (r.a * y - r.b) * p[j] - r.c * p[j - 1];
  }
  return p;
}

double eval_jacobi(const JacobiParams& params, int j, double y);
std::vector<double> eval_jacobi_all(const JacobiParams& params, int jmax, double y);

/// d/dy P_j^{c,d}(y) via (j+c+d+1)/2 * P_{j-1}^{c+1,d+1}(y).
double eval_jacobi_derivative(const JacobiParams& params, int j, double y);

/// gamma_j = integral of P_j^2 (1-y)^c (1+y)^d over [-1,1].
double jacobi_norm(const JacobiParams& params, int j);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Jacobi rule for weight (1-y)^a (1+y)^b; exact to degree 2n-1.
QuadratureRule jacobi_gauss(double a, double b, int n);

/// N+1 Jacobi-Gauss-Lobatto nodes (including -1 and 1) and weights.
QuadratureRule jgl_nodes_weights(const JacobiParams& params, int N);

/// L+1 Legendre-Gauss nodes and weights, exact to degree 2L+1.
QuadratureRule gauss_nodes_weights(int L);

/**
 * Nodal basis on the reference element [-1, 1]: Lagrange polynomials
 * L_0..L_N through the JGL nodes, with their expansion
 *
 *   L_j(y) = sum_i lcoef(i, j) P_i^{c,d}(y).
 */
struct JacobiBasis {
  JacobiParams params;
  int N = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> gammas;
  Eigen::MatrixXd lcoef;  // (N+1) x (N+1), row i = Jacobi degree, column j = node
  std::vector<double> bary;  // barycentric weights of the nodes

  /// Values L_0(y)..L_N(y) at an arbitrary y.
  std::vector<double> lagrange_values(double y) const;
};

JacobiBasis build_basis(const JacobiParams& params, int N);

/// Entry (m, j) = L_j'(y_m) on the reference element.
Eigen::MatrixXd first_deriv_matrix(const JacobiBasis& basis);

}  // namespace mdscm

#endif  // MDSCM_JACOBI_HPP_
