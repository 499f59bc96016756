#include "mdscm/assembly.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mdscm {

namespace {

struct RowFailure {
  int row = -1;
  std::string message;
};

}  // namespace

FracDiffMatrix assemble_mdfdm(const ElementMesh& mesh, const OrderField& order, double t,
                              const AssemblyOptions& opts, Diagnostics* diag) {
  const int n = mesh.num_dofs();
  const int M = mesh.num_elements();
  FracDiffMatrix out;
  out.matrix = Eigen::MatrixXd::Zero(n, n);
  out.left_column = Eigen::VectorXd::Zero(n);
  out.right_column = Eigen::VectorXd::Zero(n);
  out.row_order.assign(n, 0.0);
  out.interface_offset = mesh.interface_offset();
  out.time = t;
  for (int k = 0; k < M; ++k) out.element_offsets.push_back(mesh.interior_offset(k));

  std::map<int, TailQuadrature> tails;
  if (opts.tail_mode != TailMode::recurrence) {
    for (const JacobiBasis* b : mesh.distinct_bases()) {
      tails.emplace(b->N, TailQuadrature(*b, opts.frac.tail_order(b->N)));
    }
  }
  const auto xs = mesh.dof_coordinates();
  RowFailure failure;

#pragma omp parallel for schedule(dynamic)
  for (int g = 0; g < n; ++g) {
    try {
      const double x = xs[g];
      const double alpha = order(x, t);
      out.row_order[g] = alpha;
      const DofRef target = mesh.dof(g);

      auto scatter = [&](int k, const std::vector<double>& vals, double y) {
        const double scale = std::pow(2.0 / mesh.width(k), alpha);
        for (int j = 0; j <= mesh.degree(k); ++j) {
          const double v = scale * vals[j];
          if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "non-finite fractional matrix entry at row " << g << ", element " << k
               << ", local column " << j << " (y = " << y << ", alpha = " << alpha << ")";
            throw std::runtime_error(os.str());
          }
          const int col = mesh.global_index(k, j);
          if (col >= 0) {
            out.matrix(g, col) += v;
          } else if (j == 0) {
            out.left_column[g] += v;
          } else {
            out.right_column[g] += v;
          }
        }
      };

      for (int k = 0; k < target.element; ++k) {
        const double y = mesh.to_reference(k, x);
        TailMode mode = opts.tail_mode;
        if (mode == TailMode::automatic) {
          mode = (y <= 1.0 + opts.frac.hybrid_delta) ? TailMode::recurrence : TailMode::quadrature;
        }
        if (mode == TailMode::quadrature) {
          if (y - 1.0 < 1e-3 && diag != nullptr) {
            std::ostringstream os;
            os << "tail quadrature evaluated near the element edge (row " << g << ", y - 1 = "
               << (y - 1.0) << ")";
            diag->warn(os.str());
          }
          scatter(k, tails.at(mesh.degree(k)).apply(alpha, y), y);
        } else {
          scatter(k,
                  frac_deriv_lagrange_all(mesh.basis(k), alpha, y, Side::beyond,
                                          TailMode::recurrence, opts.frac, diag),
                  y);
        }
      }
      const int k = target.element;
      const double y = mesh.basis(k).nodes[target.local];
      scatter(k, frac_deriv_lagrange_all(mesh.basis(k), alpha, y, Side::inside), y);
    } catch (const std::exception& e) {
#pragma omp critical(mdscm_assembly_failure)
      {
        if (failure.row < 0 || g < failure.row) failure = {g, e.what()};
      }
    }
  }
  if (failure.row >= 0) throw std::runtime_error(failure.message);
  return out;
}

Eigen::MatrixXd assemble_penalty(const ElementMesh& mesh, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("penalty parameter tau must be non-negative");
  const int n = mesh.num_dofs();
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, n);
  if (tau == 0.0) return R;
  for (int m = 1; m < mesh.num_elements(); ++m) {
    const int row = mesh.interface_index(m);
    const int kl = m - 1;
    const int kr = m;
    const auto dl = first_deriv_matrix(mesh.basis(kl));
    const auto dr = first_deriv_matrix(mesh.basis(kr));
    const int nl = mesh.degree(kl);
    for (int j = 0; j <= mesh.degree(kr); ++j) {
      const int col = mesh.global_index(kr, j);
      if (col >= 0) R(row, col) += tau * (2.0 / mesh.width(kr)) * dr(0, j);
    }
    for (int j = 0; j <= nl; ++j) {
      const int col = mesh.global_index(kl, j);
      if (col >= 0) R(row, col) -= tau * (2.0 / mesh.width(kl)) * dl(nl, j);
    }
  }
  return R;
}

Eigen::MatrixXd assemble_first_order(const ElementMesh& mesh) {
  const int n = mesh.num_dofs();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (int g = 0; g < n; ++g) {
    const DofRef r = mesh.dof(g);
    const int k = r.element;
    const auto dk = first_deriv_matrix(mesh.basis(k));
    const double s = 2.0 / mesh.width(k);
    for (int j = 0; j <= mesh.degree(k); ++j) {
      const int col = mesh.global_index(k, j);
      if (col >= 0) D(g, col) += s * dk(r.local, j);
    }
  }
  return D;
}

BoundaryLift boundary_lift(const ElementMesh& mesh, const FracDiffMatrix& dalpha, double tau,
                           double u_left, double u_right) {
  const int n = mesh.num_dofs();
  if (dalpha.matrix.rows() != n) throw std::invalid_argument("matrix does not match the mesh");
  BoundaryLift lift;
  lift.f_adjust = u_left * dalpha.left_column + u_right * dalpha.right_column;
  lift.r = Eigen::VectorXd::Zero(n);
  const int M = mesh.num_elements();
  if (M < 2 || tau == 0.0) return lift;
  // phi_0 lives on the first element only: its derivative jumps at x_1 from
  // its left value to zero. phi_M mirrors this at x_{M-1}.
  const auto d0 = first_deriv_matrix(mesh.basis(0));
  const int n0 = mesh.degree(0);
  lift.r[mesh.interface_index(1)] += tau * u_left * (2.0 / mesh.width(0)) * d0(n0, 0);
  const auto dm = first_deriv_matrix(mesh.basis(M - 1));
  const int nm = mesh.degree(M - 1);
  lift.r[mesh.interface_index(M - 1)] -= tau * u_right * (2.0 / mesh.width(M - 1)) * dm(0, nm);
  return lift;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& a) {
  os << "row,col,value\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0.0) os << i << ',' << j << ',' << a(i, j) << '\n';
    }
  }
}

}  // namespace mdscm
