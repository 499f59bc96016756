#ifndef MDSCM_ANALYSIS_HPP_
#define MDSCM_ANALYSIS_HPP_

#include <complex>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mdscm/mesh.hpp"
#include "mdscm/solvers.hpp"

namespace mdscm {

struct SpectrumReport {
  std::vector<std::complex<double>> eigenvalues;  // sorted by (real, imag)
  double max_real = 0.0;
  std::string tag;
};

/// Full spectrum of a square real matrix; throws std::runtime_error when the
/// QR iteration does not converge within 30 n iterations.
SpectrumReport eigenvalues(const Eigen::MatrixXd& a, std::string tag = {});

/// sigma_max / sigma_min; infinity when sigma_min is zero.
double condition_number_l2(const Eigen::MatrixXd& a);

/// Max |numeric - exact| over every node, boundaries included.
double linf_error(const SolveReport& report, const std::function<double(double)>& exact);

/// A Helmholtz problem together with its exact solution, reusable across meshes.
struct HelmholtzCase {
  std::function<HelmholtzProblem(double tau)> problem;
  std::function<double(double)> exact;
};

struct ConvergenceRow {
  std::string variable;  // "N" or "M"
  int value = 0;
  double tau = 0.0;
  double error = 0.0;
  MeshSpec::Kind mesh_kind = MeshSpec::Kind::uniform;
  double q = 0.0;
  std::string failure;  // non-empty when the solve failed
};

struct ConvergenceSweep {
  enum class Variable { p, h };
  Variable variable = Variable::p;
  std::vector<int> values;
  std::vector<double> taus;
  MeshSpec mesh;  // M (p-sweep) or N (h-sweep) is overwritten per row
};

/// One row per (value, tau), ordered by value then tau. Failed solves become
/// rows with `failure` set.
std::vector<ConvergenceRow> convergence_study(const HelmholtzCase& c, const ConvergenceSweep& sweep,
                                              const AssemblyOptions& opts = {});

void write_spectrum_csv(std::ostream& os, const SpectrumReport& s);
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

}  // namespace mdscm

#endif  // MDSCM_ANALYSIS_HPP_
