#include "mdscm/solvers.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/LU>

#include "mdscm/analysis.hpp"

namespace mdscm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Exact zero pivots are fatal. A tiny reciprocal condition estimate alone is
// only reported: geometric meshes give rows scaled by (2/h)^alpha that differ
// by many orders of magnitude while the system remains solvable.
Eigen::PartialPivLU<Eigen::MatrixXd> factorize(const Eigen::MatrixXd& a, const char* what,
                                               Diagnostics* diag) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rcond = lu.rcond();
  const auto pivots = lu.matrixLU().diagonal();
  const bool zero_pivot = (pivots.array() == 0.0).any() || !pivots.allFinite();
  if (zero_pivot) {
    std::ostringstream os;
    os << what << " matrix is singular (reciprocal condition estimate " << rcond << ")";
    throw std::runtime_error(os.str());
  }
  if (!(rcond > std::numeric_limits<double>::epsilon()) && diag != nullptr) {
    std::ostringstream os;
    os << what << " matrix is ill-conditioned (reciprocal condition estimate " << rcond << ")";
    diag->warn(os.str());
  }
  return lu;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

HelmholtzSystem build_helmholtz_system(const HelmholtzProblem& problem, const ElementMesh& mesh,
                                       const AssemblyOptions& opts, Diagnostics* diag) {
  const int n = mesh.num_dofs();
  if (problem.order.branch() != 2) {
    throw std::domain_error("Helmholtz problem needs 1 < alpha(x) < 2");
  }
  if (!problem.rhs_values && !problem.rhs) throw std::invalid_argument("Helmholtz problem has no right-hand side");
  HelmholtzSystem sys;
  sys.dalpha = assemble_mdfdm(mesh, problem.order, 0.0, opts, diag);
  sys.penalty = assemble_penalty(mesh, problem.tau);
  sys.matrix = problem.lambda * problem.lambda * Eigen::MatrixXd::Identity(n, n) -
               sys.dalpha.matrix - sys.penalty;

  const auto xs = mesh.dof_coordinates();
  Eigen::VectorXd f(n);
  if (problem.rhs_values) {
    if (static_cast<int>(problem.rhs_values->size()) != n) {
      throw std::invalid_argument("sampled right-hand side does not match the unknown count");
    }
    for (int g = 0; g < n; ++g) f[g] = (*problem.rhs_values)[g];
  } else {
    for (int g = 0; g < n; ++g) f[g] = problem.rhs(xs[g]);
  }
  for (int g = 0; g < n; ++g) {
    if (!std::isfinite(f[g])) {
      std::ostringstream os;
      os << "right-hand side is not finite at unknown " << g << " (x = " << std::setprecision(17)
         << xs[g] << ")";
      throw std::runtime_error(os.str());
    }
  }
  const auto lift = boundary_lift(mesh, sys.dalpha, problem.tau, problem.u_left, problem.u_right);
  sys.rhs = f + lift.f_adjust - lift.r;
  return sys;
}

SolveReport solve_helmholtz(const HelmholtzProblem& problem, const ElementMesh& mesh,
                            const AssemblyOptions& opts) {
  SolveReport report;
  auto start = Clock::now();
  const auto sys = build_helmholtz_system(problem, mesh, opts, &report.diagnostics);
  report.assembly_seconds = seconds_since(start);

  start = Clock::now();
  const auto lu = factorize(sys.matrix, "Helmholtz", &report.diagnostics);
  const Eigen::VectorXd u = lu.solve(sys.rhs);
  report.solve_seconds = seconds_since(start);
  report.condition_estimate = 1.0 / lu.rcond();
  report.residual_norm = (sys.matrix * u - sys.rhs).lpNorm<Eigen::Infinity>();
  if (!u.allFinite()) throw std::runtime_error("Helmholtz solution is not finite");

  report.unknowns = to_std(u);
  report.u_left = problem.u_left;
  report.u_right = problem.u_right;
  report.x = mesh.all_nodes();
  report.u = mesh.all_values(report.unknowns, problem.u_left, problem.u_right);
  return report;
}

SolveReport solve_burgers(const BurgersProblem& problem, const ElementMesh& mesh,
                          const std::vector<double>& snapshot_times, const AssemblyOptions& opts) {
  if (!(problem.epsilon > 0.0)) throw std::invalid_argument("Burgers viscosity epsilon must be positive");
  if (!(problem.dt > 0.0)) throw std::invalid_argument("time step dt must be positive");
  if (!(problem.t_final > 0.0)) throw std::invalid_argument("final time must be positive");
  if (problem.order.branch() != 2) throw std::domain_error("Burgers problem needs 1 < alpha < 2");
  if (!problem.u0) throw std::invalid_argument("Burgers problem has no initial condition");

  const double ratio = problem.t_final / problem.dt;
  const int steps = static_cast<int>(std::llround(ratio));
  if (steps < 1 || std::fabs(steps * problem.dt - problem.t_final) > 1e-12 * std::max(1.0, problem.t_final)) {
    std::ostringstream os;
    os << "dt = " << problem.dt << " does not divide t_final = " << problem.t_final;
    throw std::invalid_argument(os.str());
  }
  std::map<int, double> wanted;  // step -> requested time
  for (double t : snapshot_times) {
    const int s = static_cast<int>(std::llround(t / problem.dt));
    if (s < 0 || s > steps || std::fabs(s * problem.dt - t) > 0.5 * problem.dt) {
      std::ostringstream os;
      os << "snapshot time " << t << " is not on the step grid of [0, " << problem.t_final << "]";
      throw std::invalid_argument(os.str());
    }
    wanted.emplace(s, t);
  }

  SolveReport report;
  report.steps = steps;
  const int n = mesh.num_dofs();
  const double dt = problem.dt;
  const double eps = problem.epsilon;
  const bool moving = problem.order.time_dependent();

  auto start = Clock::now();
  const Eigen::MatrixXd R = assemble_penalty(mesh, problem.tau);
  const Eigen::MatrixXd D1 = assemble_first_order(mesh);
  // Fractional matrices by step index; at most three are alive at a time.
  std::map<int, Eigen::MatrixXd> frac;
  auto frac_at = [&](int step) -> const Eigen::MatrixXd& {
    const int key = moving ? step : 0;
    auto it = frac.find(key);
    if (it == frac.end()) {
      auto m = assemble_mdfdm(mesh, problem.order, key * dt, opts, &report.diagnostics);
      it = frac.emplace(key, std::move(m.matrix)).first;
    }
    return it->second;
  };
  const Eigen::MatrixXd& d0 = frac_at(0);
  report.assembly_seconds += seconds_since(start);

  if (problem.stability_gate) {
    const auto spec = eigenvalues(d0 + R);
    report.max_real_eigenvalue = spec.max_real;
    if (spec.max_real > 0.0) {
      std::ostringstream os;
      os << "linearized operator D^alpha + R has an eigenvalue with positive real part ("
         << spec.max_real << "); the march may be unstable, consider a larger tau";
      report.diagnostics.warn(os.str());
    }
  }

  const auto xs = mesh.dof_coordinates();
  Eigen::VectorXd u_prev(n);
  for (int g = 0; g < n; ++g) u_prev[g] = problem.u0(xs[g]);
  std::vector<double> history;
  auto record = [&](int step, const Eigen::VectorXd& u) {
    if (!u.allFinite()) {
      std::ostringstream os;
      os << "non-finite state at step " << step << " (t = " << step * dt << ")";
      if (!history.empty()) {
        os << "; max|u| over the last steps:";
        const std::size_t from = history.size() > 5 ? history.size() - 5 : 0;
        for (std::size_t i = from; i < history.size(); ++i) os << ' ' << history[i];
      }
      throw InstabilityError(os.str(), step, history);
    }
    history.push_back(u.lpNorm<Eigen::Infinity>());
    if (auto it = wanted.find(step); it != wanted.end()) {
      report.snapshots.push_back({it->second, step, to_std(u)});
    }
  };
  record(0, u_prev);

  Eigen::VectorXd conv = u_prev.cwiseProduct(D1 * u_prev);
  Eigen::VectorXd u_cur = u_prev + dt * eps * (d0 * u_prev) - dt * conv;
  if (problem.penalty_in_first_step) u_cur += dt * eps * (R * u_prev);
  record(1, u_cur);

  std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> lu;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  double solve_time = 0.0;
  for (int step = 1; step < steps; ++step) {
    // u^{step+1} from u^{step} and u^{step-1}
    start = Clock::now();
    const Eigen::MatrixXd& d_old = frac_at(step - 1);
    const Eigen::MatrixXd& d_new = frac_at(step + 1);
    report.assembly_seconds += seconds_since(start);

    start = Clock::now();
    if (!lu || moving) lu = factorize(I - dt * eps * (d_new + R), "Burgers step", &report.diagnostics);
    conv = u_cur.cwiseProduct(D1 * u_cur);
    const Eigen::VectorXd g = u_prev + dt * eps * (d_old * u_prev) - 2.0 * dt * conv;
    Eigen::VectorXd u_next = lu->solve(g);
    solve_time += seconds_since(start);

    u_prev = std::move(u_cur);
    u_cur = std::move(u_next);
    record(step + 1, u_cur);
    if (moving) frac.erase(step - 1);
  }
  report.solve_seconds = solve_time;

  report.unknowns = to_std(u_cur);
  report.x = mesh.all_nodes();
  report.u = mesh.all_values(report.unknowns, 0.0, 0.0);
  return report;
}

void write_solution_csv(std::ostream& os, const ElementMesh& mesh, const std::vector<double>& u,
                        double u_left, double u_right) {
  const auto xs = mesh.all_nodes();
  const auto vs = mesh.all_values(u, u_left, u_right);
  os << "x,u\n" << std::setprecision(17);
  for (std::size_t i = 0; i < xs.size(); ++i) os << xs[i] << ',' << vs[i] << '\n';
}

}  // namespace mdscm
