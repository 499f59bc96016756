#ifndef MDSCM_ASSEMBLY_HPP_
#define MDSCM_ASSEMBLY_HPP_

#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "mdscm/diagnostics.hpp"
#include "mdscm/fracops.hpp"
#include "mdscm/mesh.hpp"

namespace mdscm {

struct AssemblyOptions {
  /// How the history of earlier elements is evaluated.
  TailMode tail_mode = TailMode::automatic;
  FracOptions frac;
};

/**
 * Global fractional differentiation matrix on the unknowns of a mesh.
 *
 * Row g holds the left Riemann-Liouville derivative, of order alpha(x_g, t),
 * of every global basis function at target x_g. The two boundary basis
 * functions are kept as separate columns for lifting.
 */
struct FracDiffMatrix {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd left_column;   // derivative of the basis function at x_L
  Eigen::VectorXd right_column;  // derivative of the basis function at x_R
  std::vector<double> row_order;
  std::vector<int> element_offsets;  // start of each element's interior block
  int interface_offset = 0;
  double time = 0.0;
};

/// Interfaces take the local contribution from the element on their left.
FracDiffMatrix assemble_mdfdm(const ElementMesh& mesh, const OrderField& order, double t = 0.0,
                              const AssemblyOptions& opts = {}, Diagnostics* diag = nullptr);

/// tau * [u'(x_m+) - u'(x_m-)] at every interface; zero rows elsewhere.
Eigen::MatrixXd assemble_penalty(const ElementMesh& mesh, double tau);

/// First derivative at every unknown; interfaces use the element on their left.
/// Columns of the boundary nodes are dropped.
Eigen::MatrixXd assemble_first_order(const ElementMesh& mesh);

struct BoundaryLift {
  Eigen::VectorXd f_adjust;  // added to the sampled right-hand side
  Eigen::VectorXd r;         // subtracted from it
};

/// Contributions of nonzero boundary values u_L, u_R to the Helmholtz system.
/// lambda only multiplies the boundary basis functions, which vanish at every
/// unknown, so it does not enter.
BoundaryLift boundary_lift(const ElementMesh& mesh, const FracDiffMatrix& dalpha, double tau,
                           double u_left, double u_right);

/// Nonzero entries as "row,col,value" lines.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& a);

}  // namespace mdscm

#endif  // MDSCM_ASSEMBLY_HPP_
