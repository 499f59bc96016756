#include "mdscm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace mdscm {

ElementMesh::ElementMesh(std::vector<double> boundaries, std::vector<int> degrees,
                         JacobiParams params)
    : boundaries_(std::move(boundaries)), degrees_(std::move(degrees)), params_(params) {
  params_.validate();
  if (degrees_.empty()) throw std::invalid_argument("mesh needs at least one element");
  if (boundaries_.size() != degrees_.size() + 1) {
    throw std::invalid_argument("mesh needs one more boundary than elements");
  }
  for (std::size_t k = 0; k + 1 < boundaries_.size(); ++k) {
    if (!std::isfinite(boundaries_[k]) || !std::isfinite(boundaries_[k + 1]) ||
        !(boundaries_[k + 1] > boundaries_[k])) {
      std::ostringstream os;
      os << "mesh boundaries must be finite and strictly increasing (element " << k << ": ["
         << boundaries_[k] << ", " << boundaries_[k + 1] << "])";
      throw std::invalid_argument(os.str());
    }
  }
  const int M = num_elements();
  bases_.resize(M);
  offsets_.resize(M);
  int offset = 0;
  for (int k = 0; k < M; ++k) {
    const int N = degrees_[k];
    if (N < 2) throw std::invalid_argument("element degree N must be at least 2");
    auto& slot = basis_cache_[N];
    if (!slot) slot = std::make_shared<const JacobiBasis>(build_basis(params_, N));
    bases_[k] = slot;
    offsets_[k] = offset;
    offset += N - 1;
  }
  interface_offset_ = offset;
  num_dofs_ = offset + M - 1;
}

std::vector<const JacobiBasis*> ElementMesh::distinct_bases() const {
  std::vector<const JacobiBasis*> out;
  for (const auto& [n, b] : basis_cache_) out.push_back(b.get());
  return out;
}

double ElementMesh::to_physical(int k, double y) const {
  if (y == -1.0) return boundaries_[k];
  if (y == 1.0) return boundaries_[k + 1];
  return 0.5 * width(k) * (y + 1.0) + boundaries_[k];
}

double ElementMesh::to_reference(int k, double x) const {
  return 2.0 * (x - boundaries_[k]) / width(k) - 1.0;
}

int ElementMesh::min_degree() const { return *std::min_element(degrees_.begin(), degrees_.end()); }

int ElementMesh::global_index(int k, int i) const {
  const int M = num_elements();
  if (k < 0 || k >= M || i < 0 || i > degrees_[k]) throw std::out_of_range("local node out of range");
  if (i == 0) return k == 0 ? -1 : interface_index(k);
  if (i == degrees_[k]) return k == M - 1 ? -1 : interface_index(k + 1);
  return offsets_[k] + i - 1;
}

DofRef ElementMesh::dof(int g) const {
  if (g < 0 || g >= num_dofs_) throw std::out_of_range("global index out of range");
  if (g >= interface_offset_) {
    const int m = g - interface_offset_ + 1;
    return {DofRef::Kind::interface, m - 1, degrees_[m - 1]};
  }
  const int k = static_cast<int>(std::upper_bound(offsets_.begin(), offsets_.end(), g) - offsets_.begin()) - 1;
  return {DofRef::Kind::interior, k, g - offsets_[k] + 1};
}

std::vector<double> ElementMesh::dof_coordinates() const {
  std::vector<double> xs(num_dofs_);
  for (int g = 0; g < num_dofs_; ++g) {
    const auto r = dof(g);
    xs[g] = node(r.element, r.local);
  }
  return xs;
}

int ElementMesh::locate(double x) const {
  if (x < x_left() || x > x_right()) throw std::out_of_range("point outside the mesh");
  const auto it = std::lower_bound(boundaries_.begin() + 1, boundaries_.end(), x);
  return static_cast<int>(it - boundaries_.begin()) - 1;
}

std::vector<double> ElementMesh::local_values(int k, const std::vector<double>& u, double u_left,
                                              double u_right) const {
  if (static_cast<int>(u.size()) != num_dofs_) throw std::invalid_argument("vector length does not match the mesh");
  std::vector<double> out(degrees_[k] + 1);
  for (int i = 0; i <= degrees_[k]; ++i) {
    const int g = global_index(k, i);
    if (g >= 0) {
      out[i] = u[g];
    } else {
      out[i] = (i == 0) ? u_left : u_right;
    }
  }
  return out;
}

double ElementMesh::interpolate(const std::vector<double>& u, double u_left, double u_right,
                                double x) const {
  const int k = locate(x);
  const auto vals = local_values(k, u, u_left, u_right);
  const auto l = bases_[k]->lagrange_values(to_reference(k, x));
  double s = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) s += vals[i] * l[i];
  return s;
}

std::vector<double> ElementMesh::all_nodes() const {
  std::vector<double> xs{x_left()};
  for (int k = 0; k < num_elements(); ++k) {
    for (int i = 1; i <= degrees_[k]; ++i) xs.push_back(node(k, i));
  }
  return xs;
}

std::vector<double> ElementMesh::all_values(const std::vector<double>& u, double u_left,
                                            double u_right) const {
  std::vector<double> out{u_left};
  for (int k = 0; k < num_elements(); ++k) {
    const auto vals = local_values(k, u, u_left, u_right);
    out.insert(out.end(), vals.begin() + 1, vals.end());
  }
  return out;
}

void ElementMesh::write_csv(std::ostream& os) const {
  os << "element,left,width\n" << std::setprecision(17);
  for (int k = 0; k < num_elements(); ++k) os << k + 1 << ',' << left(k) << ',' << width(k) << '\n';
}

namespace {

void check_interval(double x_left, double x_right, int M) {
  if (!(std::isfinite(x_left) && std::isfinite(x_right) && x_right > x_left)) {
    throw std::invalid_argument("degenerate interval");
  }
  if (M < 1) throw std::invalid_argument("mesh needs M >= 1 elements");
}

}  // namespace

ElementMesh make_uniform(double x_left, double x_right, int M, int N, JacobiParams params) {
  check_interval(x_left, x_right, M);
  std::vector<double> b(M + 1);
  for (int j = 0; j <= M; ++j) b[j] = x_left + (x_right - x_left) * j / M;
  b[M] = x_right;
  return ElementMesh(std::move(b), std::vector<int>(M, N), params);
}

ElementMesh make_graded(double x_left, double x_right, int M, int N, double q, JacobiParams params) {
  check_interval(x_left, x_right, M);
  if (!(q > 1.0)) throw std::invalid_argument("graded mesh needs q > 1");
  std::vector<double> b(M + 1);
  for (int j = 0; j <= M; ++j) b[j] = x_left + (x_right - x_left) * std::pow(double(j) / M, q);
  b[M] = x_right;
  return ElementMesh(std::move(b), std::vector<int>(M, N), params);
}

ElementMesh make_geometric(double x_left, double x_right, int M, int N, double q,
                           JacobiParams params) {
  check_interval(x_left, x_right, M);
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("geometric mesh needs 0 < q < 1");
  std::vector<double> b(M + 1);
  b[0] = x_left;
  for (int j = 1; j <= M; ++j) b[j] = x_left + (x_right - x_left) * std::pow(q, M - j);
  return ElementMesh(std::move(b), std::vector<int>(M, N), params);
}

ElementMesh make_composite_left(double x_left, double split, double x_right, int m_total,
                                int m_geo, int N, double q, JacobiParams params) {
  check_interval(x_left, x_right, m_total);
  if (!(split > x_left && split < x_right)) {
    throw std::invalid_argument("composite mesh needs x_left < split < x_right");
  }
  if (m_geo < 0 || m_geo >= m_total) {
    throw std::invalid_argument("composite mesh needs 0 <= m_geo < m_total");
  }
  if (m_geo == 0) return make_uniform(x_left, x_right, m_total, N, params);
  const auto geo = make_geometric(x_left, split, m_geo, N, q, params);
  const auto uni = make_uniform(split, x_right, m_total - m_geo, N, params);
  std::vector<double> b = geo.boundaries();
  b.insert(b.end(), uni.boundaries().begin() + 1, uni.boundaries().end());
  return ElementMesh(std::move(b), std::vector<int>(m_total, N), params);
}

ElementMesh MeshSpec::build() const {
  switch (kind) {
    case Kind::uniform:
      return make_uniform(x_left, x_right, M, N, params);
    case Kind::graded:
      return make_graded(x_left, x_right, M, N, q, params);
    case Kind::geometric:
      return make_geometric(x_left, x_right, M, N, q, params);
    case Kind::composite:
      return make_composite_left(x_left, split, x_right, M, m_geo, N, q, params);
  }
  throw std::logic_error("unhandled mesh kind");
}

const char* to_string(MeshSpec::Kind kind) {
  switch (kind) {
    case MeshSpec::Kind::uniform:
      return "uniform";
    case MeshSpec::Kind::graded:
      return "graded";
    case MeshSpec::Kind::geometric:
      return "geometric";
    case MeshSpec::Kind::composite:
      return "composite";
  }
  return "?";
}

MeshSpec::Kind mesh_kind_from_string(const std::string& name) {
  for (auto k : {MeshSpec::Kind::uniform, MeshSpec::Kind::graded, MeshSpec::Kind::geometric,
                 MeshSpec::Kind::composite}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown mesh kind '" + name +
                              "' (expected uniform, graded, geometric or composite)");
}

}  // namespace mdscm
