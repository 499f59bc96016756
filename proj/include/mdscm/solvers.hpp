#ifndef MDSCM_SOLVERS_HPP_
#define MDSCM_SOLVERS_HPP_

#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mdscm/assembly.hpp"
#include "mdscm/diagnostics.hpp"
#include "mdscm/fracops.hpp"
#include "mdscm/mesh.hpp"

namespace mdscm {

/// lambda^2 u - D^alpha u = f on (x_L, x_R) with u(x_L) = u_L, u(x_R) = u_R.
struct HelmholtzProblem {
  double lambda = 0.0;
  OrderField order = OrderField::constant(1.5);
  double u_left = 0.0;
  double u_right = 0.0;
  std::function<double(double)> rhs;
  /// Overrides `rhs` when set: values at the unknowns in global order.
  std::optional<std::vector<double>> rhs_values;
  double tau = 0.0;
};

/// u_t + u u_x = epsilon D^alpha u with homogeneous Dirichlet boundaries.
struct BurgersProblem {
  double epsilon = 1.0;
  OrderField order = OrderField::constant(1.5);
  std::function<double(double)> u0;
  double dt = 1e-3;
  double t_final = 1.0;
  double tau = 0.0;
  /// Add the penalty matrix to the explicit first step.
  bool penalty_in_first_step = false;
  /// Check max Re eig(D^alpha + R) before stepping and warn if positive.
  bool stability_gate = true;
};

struct Snapshot {
  double time = 0.0;
  int step = 0;
  std::vector<double> u;  // unknowns in global order
};

struct SolveReport {
  std::vector<double> x;  // all nodes including the boundaries, sorted
  std::vector<double> u;  // values matching x
  std::vector<double> unknowns;
  double u_left = 0.0;
  double u_right = 0.0;
  std::vector<Snapshot> snapshots;
  double residual_norm = 0.0;
  double assembly_seconds = 0.0;
  double solve_seconds = 0.0;
  std::optional<double> condition_estimate;  // reciprocal-condition based, 1-norm
  std::optional<double> max_real_eigenvalue;
  int steps = 0;
  Diagnostics diagnostics;
};

/// Thrown when a time march produces a non-finite state.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(const std::string& what, int step, std::vector<double> max_abs_history)
      : std::runtime_error(what), step_(step), history_(std::move(max_abs_history)) {}
  int step() const { return step_; }
  /// max |u| after every completed step.
  const std::vector<double>& history() const { return history_; }

 private:
  int step_;
  std::vector<double> history_;
};

struct HelmholtzSystem {
  Eigen::MatrixXd matrix;  // lambda^2 I - D^alpha - R
  Eigen::VectorXd rhs;     // f + f_adjust - r
  FracDiffMatrix dalpha;
  Eigen::MatrixXd penalty;
};

HelmholtzSystem build_helmholtz_system(const HelmholtzProblem& problem, const ElementMesh& mesh,
                                       const AssemblyOptions& opts = {},
                                       Diagnostics* diag = nullptr);

SolveReport solve_helmholtz(const HelmholtzProblem& problem, const ElementMesh& mesh,
                            const AssemblyOptions& opts = {});

/// Crank-Nicolson/leapfrog march with an explicit first step. Snapshot times
/// are snapped to the step grid.
SolveReport solve_burgers(const BurgersProblem& problem, const ElementMesh& mesh,
                          const std::vector<double>& snapshot_times,
                          const AssemblyOptions& opts = {});

/// "x,u" rows over all nodes including the boundaries, 17 significant digits.
void write_solution_csv(std::ostream& os, const ElementMesh& mesh, const std::vector<double>& u,
                        double u_left, double u_right);

}  // namespace mdscm

#endif  // MDSCM_SOLVERS_HPP_
