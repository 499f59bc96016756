#ifndef MDSCM_MESH_HPP_
#define MDSCM_MESH_HPP_

#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "mdscm/jacobi.hpp"

namespace mdscm {

/// What a (element, local node) pair or a global index refers to.
struct DofRef {
  enum class Kind { interior, interface, left_boundary, right_boundary };
  Kind kind = Kind::interior;
  int element = 0;  // owning element; for interfaces the element on the left
  int local = 0;    // local node index within `element`
};

/**
 * Partition of [x_L, x_R] into M elements with JGL collocation nodes.
 *
 * Elements are numbered 0..M-1 and interfaces 1..M-1 (interface m sits at
 * boundaries()[m]). The unknown vector lists the interior nodes of every
 * element in order, followed by the interface nodes; the two boundary nodes
 * are not unknowns.
 */
class ElementMesh {
 public:
  ElementMesh(std::vector<double> boundaries, std::vector<int> degrees, JacobiParams params);

  int num_elements() const { return static_cast<int>(degrees_.size()); }
  double x_left() const { return boundaries_.front(); }
  double x_right() const { return boundaries_.back(); }
  const std::vector<double>& boundaries() const { return boundaries_; }
  double left(int k) const { return boundaries_[k]; }
  double width(int k) const { return boundaries_[k + 1] - boundaries_[k]; }
  int degree(int k) const { return degrees_[k]; }
  const JacobiParams& params() const { return params_; }
  const JacobiBasis& basis(int k) const { return *bases_[k]; }
  /// Distinct bases in use, one per distinct degree.
  std::vector<const JacobiBasis*> distinct_bases() const;

  double to_physical(int k, double y) const;
  double to_reference(int k, double x) const;
  /// Physical coordinate of local node i of element k.
  double node(int k, int i) const { return to_physical(k, bases_[k]->nodes[i]); }

  int num_dofs() const { return num_dofs_; }
  int min_degree() const;
  /// Global index of local node i of element k, or -1 for the two boundary nodes.
  int global_index(int k, int i) const;
  /// Global index of interface m (1 <= m <= M-1).
  int interface_index(int m) const { return interface_offset_ + m - 1; }
  /// Element k's interior nodes occupy [interior_offset(k), interior_offset(k) + N_k - 1).
  int interior_offset(int k) const { return offsets_[k]; }
  int interface_offset() const { return interface_offset_; }
  DofRef dof(int g) const;
  /// Coordinates of the unknowns in global order.
  std::vector<double> dof_coordinates() const;
  /// f sampled at the unknowns.
  template <class F>
  std::vector<double> sample(F&& f) const {
    auto xs = dof_coordinates();
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
    return out;
  }

  /// Element containing x, with interfaces assigned to the element on their left.
  int locate(double x) const;
  /// Nodal values of element k from the global vector and the boundary values.
  std::vector<double> local_values(int k, const std::vector<double>& u, double u_left,
                                   double u_right) const;
  /// Piecewise polynomial interpolant of (u, u_left, u_right) at x.
  double interpolate(const std::vector<double>& u, double u_left, double u_right, double x) const;

  /// All node coordinates including the boundaries, sorted.
  std::vector<double> all_nodes() const;
  /// Values matching all_nodes().
  std::vector<double> all_values(const std::vector<double>& u, double u_left, double u_right) const;

  void write_csv(std::ostream& os) const;

 private:
  std::vector<double> boundaries_;
  std::vector<int> degrees_;
  JacobiParams params_;
  std::map<int, std::shared_ptr<const JacobiBasis>> basis_cache_;
  std::vector<std::shared_ptr<const JacobiBasis>> bases_;
  std::vector<int> offsets_;
  int interface_offset_ = 0;
  int num_dofs_ = 0;
};

ElementMesh make_uniform(double x_left, double x_right, int M, int N, JacobiParams params = {});

/// x_j = x_L + (x_R - x_L)(j/M)^q with q > 1.
ElementMesh make_graded(double x_left, double x_right, int M, int N, double q,
                        JacobiParams params = {});

/// x_j = x_L + (x_R - x_L) q^{M-j} for j >= 1, with 0 < q < 1.
ElementMesh make_geometric(double x_left, double x_right, int M, int N, double q,
                           JacobiParams params = {});

/// Geometric mesh with m_geo elements on [x_left, split] followed by a uniform
/// mesh on [split, x_right]; m_total elements in all.
ElementMesh make_composite_left(double x_left, double split, double x_right, int m_total,
                                int m_geo, int N, double q, JacobiParams params = {});

/// Declarative description of one of the mesh families above.
struct MeshSpec {
  enum class Kind { uniform, graded, geometric, composite };
  Kind kind = Kind::uniform;
  double x_left = -1.0;
  double x_right = 1.0;
  int M = 4;
  int N = 4;
  double q = 0.5;
  /// composite only: end of the geometric part and its element count
  double split = -0.95;
  int m_geo = 10;
  JacobiParams params;

  ElementMesh build() const;
};

const char* to_string(MeshSpec::Kind kind);
/// Throws std::invalid_argument for unknown names.
MeshSpec::Kind mesh_kind_from_string(const std::string& name);

}  // namespace mdscm

#endif  // MDSCM_MESH_HPP_
