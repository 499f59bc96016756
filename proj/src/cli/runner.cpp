#include "mdscm/cli/runner.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>

#include "mdscm/cli/order_expr.hpp"

namespace mdscm::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

class Output {
 public:
  Output(const ExperimentConfig& c, RunResult& result) : dir_(c.output_dir), name_(c.name), result_(result) {
    fs::create_directories(dir_);
  }

  std::ofstream open(const std::string& suffix) {
    const auto path = (dir_ / (name_ + suffix)).string();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write '" + path + "'");
    result_.files.push_back(path);
    return os;
  }

 private:
  fs::path dir_;
  std::string name_;
  RunResult& result_;
};

OrderField order_of(const ExperimentConfig& c) {
  const double t_max = c.command == Command::burgers ? c.t_final : 0.0;
  return make_order_field(c.alpha, c.mesh.x_left, c.mesh.x_right, t_max);
}

void collect(RunResult& result, const Diagnostics& diag) {
  for (auto& w : diag.warnings()) result.warnings.push_back(std::move(w));
}

std::string mesh_label(const MeshSpec& m) {
  return std::string(to_string(m.kind)) + " M=" + std::to_string(m.M) + " N=" + std::to_string(m.N);
}

RunResult run_helmholtz(const ExperimentConfig& c) {
  RunResult result;
  const auto hc = helmholtz_case(c);
  const auto mesh = c.mesh.build();
  const auto report = solve_helmholtz(hc.problem(c.tau), mesh, c.assembly);
  collect(result, report.diagnostics);
  Output out(c, result);
  auto os = out.open("_solution.csv");
  write_solution_csv(os, mesh, report.unknowns, report.u_left, report.u_right);
  const double err = linf_error(report, hc.exact);
  result.summary = "helmholtz " + c.name + ": " + mesh_label(c.mesh) + " alpha=" + c.alpha +
                   " tau=" + shortest(c.tau) + " linf_error=" + fmt("%.6e", err) +
                   " residual=" + fmt("%.3e", report.residual_norm) +
                   " cond_estimate=" + fmt("%.3e", report.condition_estimate.value_or(std::nan("")));
  return result;
}

RunResult run_burgers(const ExperimentConfig& c) {
  RunResult result;
  BurgersProblem p;
  p.epsilon = c.epsilon;
  p.order = order_of(c);
  const auto u0 = OrderExpr::parse(c.u0);
  p.u0 = [u0](double x) { return u0(x, 0.0); };
  p.dt = c.dt;
  p.t_final = c.t_final;
  p.tau = c.tau;
  p.penalty_in_first_step = c.penalty_first_step;
  p.stability_gate = c.stability_gate;
  const auto mesh = c.mesh.build();
  const auto report = solve_burgers(p, mesh, c.snapshots, c.assembly);
  collect(result, report.diagnostics);
  Output out(c, result);
  {
    auto os = out.open("_solution.csv");
    write_solution_csv(os, mesh, report.unknowns, 0.0, 0.0);
  }
  for (const auto& s : report.snapshots) {
    auto os = out.open("_t" + shortest(s.time) + ".csv");
    write_solution_csv(os, mesh, s.u, 0.0, 0.0);
  }
  double umax = 0.0;
  for (double v : report.u) umax = std::max(umax, std::fabs(v));
  result.summary = "burgers " + c.name + ": " + mesh_label(c.mesh) + " alpha=" + c.alpha +
                   " tau=" + shortest(c.tau) + " steps=" + std::to_string(report.steps) +
                   " max_abs_u=" + fmt("%.6e", umax);
  if (report.max_real_eigenvalue) result.summary += " max_re_eig=" + fmt("%.6e", *report.max_real_eigenvalue);
  return result;
}

RunResult run_eigen(const ExperimentConfig& c) {
  RunResult result;
  Diagnostics diag;
  const auto mesh = c.mesh.build();
  const auto d = assemble_mdfdm(mesh, order_of(c), 0.0, c.assembly, &diag);
  collect(result, diag);
  const auto spec = eigenvalues(d.matrix + assemble_penalty(mesh, c.tau), c.name);
  Output out(c, result);
  auto os = out.open("_spectrum.csv");
  write_spectrum_csv(os, spec);
  result.summary = "eigen " + c.name + ": " + mesh_label(c.mesh) + " alpha=" + c.alpha +
                   " tau=" + shortest(c.tau) + " max_re_eig=" + fmt("%.6e", spec.max_real);
  return result;
}

RunResult run_cond(const ExperimentConfig& c) {
  RunResult result;
  const auto order = order_of(c);
  const std::vector<int> ms = c.values.empty() ? std::vector<int>{c.mesh.M} : c.values;
  const std::vector<double> taus = c.taus.empty() ? std::vector<double>{c.tau} : c.taus;
  Output out(c, result);
  auto os = out.open("_cond.csv");
  os << "M,N,tau,lambda,cond\n" << std::setprecision(17);
  result.summary = "cond " + c.name + ": alpha=" + c.alpha + " N=" + std::to_string(c.mesh.N);
  for (int m : ms) {
    MeshSpec spec = c.mesh;
    spec.M = m;
    const auto mesh = spec.build();
    Diagnostics diag;
    const auto d = assemble_mdfdm(mesh, order, 0.0, c.assembly, &diag);
    collect(result, diag);
    const int n = mesh.num_dofs();
    for (double tau : taus) {
      const Eigen::MatrixXd a =
          c.lambda * c.lambda * Eigen::MatrixXd::Identity(n, n) - d.matrix - assemble_penalty(mesh, tau);
      const double k = condition_number_l2(a);
      os << m << ',' << spec.N << ',' << tau << ',' << c.lambda << ',' << k << '\n';
      result.summary += " [M=" + std::to_string(m) + " tau=" + shortest(tau) + " cond=" + fmt("%.4e", k) + "]";
    }
  }
  return result;
}

RunResult run_converge(const ExperimentConfig& c) {
  RunResult result;
  ConvergenceSweep sweep;
  sweep.variable = c.sweep == "h" ? ConvergenceSweep::Variable::h : ConvergenceSweep::Variable::p;
  sweep.values = c.values;
  sweep.taus = c.taus;
  sweep.mesh = c.mesh;
  const auto rows = convergence_study(helmholtz_case(c), sweep, c.assembly);
  Output out(c, result);
  auto os = out.open("_convergence.csv");
  write_convergence_csv(os, rows);
  int failures = 0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    if (!r.failure.empty()) {
      ++failures;
      result.warnings.push_back(r.variable + "=" + std::to_string(r.value) + " tau=" + shortest(r.tau) +
                                ": " + r.failure);
    } else {
      best = std::min(best, r.error);
    }
  }
  result.summary = "converge " + c.name + ": sweep=" + c.sweep + " rows=" + std::to_string(rows.size()) +
                   " failures=" + std::to_string(failures) + " min_linf_error=" + fmt("%.6e", best);
  return result;
}

}  // namespace

HelmholtzCase helmholtz_case(const ExperimentConfig& config) {
  const auto order = order_of(config);
  const double lambda = config.lambda;
  HelmholtzCase hc;
  if (config.problem == "lowreg") {
    const double alpha = order(0.0, 0.0);
    hc.exact = [alpha](double x) { return (1 - x) * std::pow(1 + x, alpha - 1); };
    hc.problem = [=, exact = hc.exact](double tau) {
      HelmholtzProblem p;
      p.lambda = lambda;
      p.order = order;
      p.tau = tau;
      const double g = std::tgamma(1 + alpha);
      p.rhs = [=](double x) { return lambda * lambda * exact(x) + g; };
      return p;
    };
    return hc;
  }
  if (config.problem != "sine") throw std::invalid_argument("unknown Helmholtz problem '" + config.problem + "'");
  hc.exact = [](double x) { return std::sin(std::numbers::pi * x); };
  hc.problem = [=](double tau) {
    HelmholtzProblem p;
    p.lambda = lambda;
    p.order = order;
    p.tau = tau;
    p.rhs = [=](double x) {
      return lambda * lambda * std::sin(std::numbers::pi * x) - sin_rl_series(order(x, 0.0), x);
    };
    return p;
  };
  return hc;
}

RunResult run(const ExperimentConfig& config) {
  switch (config.command) {
    case Command::helmholtz: return run_helmholtz(config);
    case Command::burgers: return run_burgers(config);
    case Command::eigen: return run_eigen(config);
    case Command::cond: return run_cond(config);
    case Command::converge: return run_converge(config);
  }
  throw std::logic_error("unhandled command");
}

}  // namespace mdscm::cli
