#include "mdscm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace mdscm {

SpectrumReport eigenvalues(const Eigen::MatrixXd& a, std::string tag) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigenvalues need a square matrix");
  SpectrumReport out;
  out.tag = std::move(tag);
  const Eigen::Index n = a.rows();
  if (n == 0) {
    out.max_real = -std::numeric_limits<double>::infinity();
    return out;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver;
  solver.setMaxIterations(30 * n);
  solver.compute(a, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue iteration did not converge within 30n iterations (n = " +
                             std::to_string(n) + ")");
  }
  const auto& ev = solver.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + n);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](const auto& x, const auto& y) {
              if (x.real() != y.real()) return x.real() < y.real();
              return x.imag() < y.imag();
            });
  out.max_real = out.eigenvalues.back().real();
  return out;
}

double condition_number_l2(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("condition number needs a square matrix");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s[s.size() - 1];
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s[0] / smin;
}

double linf_error(const SolveReport& report, const std::function<double(double)>& exact) {
  double err = 0.0;
  for (std::size_t i = 0; i < report.x.size(); ++i) {
    err = std::max(err, std::fabs(report.u[i] - exact(report.x[i])));
  }
  return err;
}

std::vector<ConvergenceRow> convergence_study(const HelmholtzCase& c, const ConvergenceSweep& sweep,
                                              const AssemblyOptions& opts) {
  if (sweep.values.empty()) throw std::invalid_argument("convergence sweep needs at least one value");
  if (sweep.taus.empty()) throw std::invalid_argument("convergence sweep needs at least one tau");
  const int nv = static_cast<int>(sweep.values.size());
  const int nt = static_cast<int>(sweep.taus.size());
  std::vector<ConvergenceRow> rows(nv * nt);

#pragma omp parallel for schedule(dynamic)
  for (int idx = 0; idx < nv * nt; ++idx) {
    const int value = sweep.values[idx / nt];
    const double tau = sweep.taus[idx % nt];
    ConvergenceRow& row = rows[idx];
    row.variable = sweep.variable == ConvergenceSweep::Variable::p ? "N" : "M";
    row.value = value;
    row.tau = tau;
    row.mesh_kind = sweep.mesh.kind;
    row.q = sweep.mesh.q;
    try {
      MeshSpec spec = sweep.mesh;
      if (sweep.variable == ConvergenceSweep::Variable::p) {
        spec.N = value;
      } else {
        spec.M = value;
      }
      const auto mesh = spec.build();
      const auto report = solve_helmholtz(c.problem(tau), mesh, opts);
      row.error = linf_error(report, c.exact);
    } catch (const std::exception& e) {
      row.error = std::numeric_limits<double>::quiet_NaN();
      row.failure = e.what();
    }
  }
  return rows;
}

void write_spectrum_csv(std::ostream& os, const SpectrumReport& s) {
  os << "re,im\n" << std::setprecision(17);
  for (const auto& z : s.eigenvalues) os << z.real() << ',' << z.imag() << '\n';
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << "sweep_var,value,tau,error,mesh,q,failure\n" << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.variable << ',' << r.value << ',' << r.tau << ',' << r.error << ','
       << to_string(r.mesh_kind) << ',' << r.q << ',';
    std::string msg = r.failure;
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    os << msg << '\n';
  }
}

}  // namespace mdscm
