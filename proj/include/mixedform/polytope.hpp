#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mixedform/forms.hpp"
#include "mixedform/polygon.hpp"
#include "mixedform/surface.hpp"

namespace mixedform {

/// Face i of a polytope fan: neighbours in counterclockwise order seen from
/// outside, the vertices between consecutive neighbours, and the induced 2D
/// normal fan in the face plane frame (e1, e2) with e1 x e2 = u_i.
struct FaceCycle {
  std::vector<int> neighbors;  // neighbors[j] shares edge j of the face
  std::vector<int> vertices;   // vertices[j] joins edge j and edge j+1
  std::vector<double> angles;  // angle between u_i and u_neighbors[j]
  Eigen::Vector3d e1, e2;
  NormalFan2D fan;
};

/// Polytope edge between faces `a` < `b`, i.e. a Gauss-image arc.
struct FanEdge {
  int a = 0, b = 0;
  int vertex_from = 0, vertex_to = 0;
  int slot_in_a = 0;  // index of this edge in face a's cycle
  double angle = 0;   // arccos(u_a . u_b)
};

/// Faces meeting at a vertex, ordered counterclockwise around the outward
/// direction: the vertices of its spherical Gauss cell.
struct VertexCell {
  std::vector<int> faces;
  double spherical_area = 0;  // angle excess
};

/// Combinatorics of a 3-polytope together with its Gauss image.
class PolytopeFan {
 public:
  int face_count() const { return static_cast<int>(normals_.size()); }
  int vertex_count() const { return static_cast<int>(cells_.size()); }
  const std::vector<Eigen::Vector3d>& normals() const { return normals_; }
  const Eigen::Vector3d& normal(int i) const { return normals_[static_cast<std::size_t>(i)]; }
  const FaceCycle& face(int i) const { return faces_[static_cast<std::size_t>(i)]; }
  const std::vector<FaceCycle>& faces() const { return faces_; }
  const std::vector<FanEdge>& edges() const { return edges_; }
  const std::vector<VertexCell>& cells() const { return cells_; }
  /// Every vertex lies on exactly three faces; only then is the cone of
  /// support vectors full-dimensional.
  bool simple() const { return simple_; }
  /// m - 3 for simple fans (else the translation-and-homothety lower bound 1).
  int cone_dimension() const { return simple_ ? face_count() - 3 : 1; }
  /// Vertex positions of the polytope the fan was built from.
  const std::vector<Eigen::Vector3d>& reference_vertices() const { return reference_vertices_; }
  const Vector& reference_support() const { return reference_support_; }

 private:
  friend PolytopeFan build_fan(const std::vector<Eigen::Vector3d>&, const Vector&);
  std::vector<Eigen::Vector3d> normals_;
  std::vector<FaceCycle> faces_;
  std::vector<FanEdge> edges_;
  std::vector<VertexCell> cells_;
  std::vector<Eigen::Vector3d> reference_vertices_;
  Vector reference_support_;
  bool simple_ = true;
};

/// Intersects the halfspaces {x : <x, u_i> <= h_i} and extracts the face
/// lattice. Errors: UnboundedInput, RedundancyError (faces without a 2-face),
/// InvalidInput (non-unit normals, empty interior).
PolytopeFan build_fan(const std::vector<Eigen::Vector3d>& normals, const Vector& h);

/// Deterministic face-plane basis: Gram-Schmidt of the least-aligned axis.
std::pair<Eigen::Vector3d, Eigen::Vector3d> face_frame(const Eigen::Vector3d& normal);

/// h_ij = (h_j - h_i cos phi_ij) / sin phi_ij for j along face i's cycle.
Vector face_support_numbers(const PolytopeFan& fan, const Vector& h, int face);

/// Linear map h -> h_{i.} (deg_i x m).
Matrix face_support_matrix(const PolytopeFan& fan, int face);

/// Edge lengths l_ij of face i, in cycle order.
Vector face_edge_lengths(const PolytopeFan& fan, const Vector& h, int face);

/// All edge lengths as one linear map of h: rows follow faces, then cycle order.
Matrix edge_length_operator(const PolytopeFan& fan);

/// Closed-cone test: all l_ij >= -1e-12 ||h||; `strict` when all > tol.
struct PolytopeCone {
  bool closed = false;
  bool strict = false;
};
PolytopeCone polytope_cone_membership(const PolytopeFan& fan, const Vector& h);

/// v(h, k, p) = (1/3) sum_i h_i a_{F_i}(k_{i.}, p_{i.}), checked for symmetry
/// (ConsistencyError, which non-simple fans usually trigger).
TrilinearForm volume_form(const PolytopeFan& fan);
double volume(const PolytopeFan& fan, const Vector& h);

/// area_P(h, k) = sum_i a_{F_i}(h_{i.}, k_{i.}). For simple fans it is
/// cross-checked against 3 v(1, h, k).
SymmetricForm boundary_area_form(const PolytopeFan& fan);

/// h^x_i = <x, u_i>.
Vector point_support_vector(const PolytopeFan& fan, const Eigen::Vector3d& x);

struct HomothetyWitness3D {
  Eigen::Vector3d translation;
  double scale = 0;
  double fit_residual = 0;
};

struct AlexandrovFenchelReport {
  double residual = 0;  // v(h,k,p)^2 - v(h,h,p) v(k,k,p)
  double scale = 0;
  bool inequality_holds = true;
  EqualityStatus status = EqualityStatus::strict;
  std::optional<HomothetyWitness3D> witness;
};

/// Requires p in the closed cone. h, k are arbitrary.
AlexandrovFenchelReport alexandrov_fenchel_check(const PolytopeFan& fan, const TrilinearForm& v,
                                                 const Vector& h, const Vector& k, const Vector& p,
                                                 const MinkowskiOptions& options = {});
AlexandrovFenchelReport alexandrov_fenchel_check(const PolytopeFan& fan, const Vector& h,
                                                 const Vector& k, const Vector& p,
                                                 const MinkowskiOptions& options = {});

/// Gauss-image arcs weighted by edge lengths.
struct AreaMeasureAtom {
  int face_a = 0, face_b = 0;
  double arc_length = 0;
  double weight = 0;
};
std::vector<AreaMeasureAtom> first_area_measure(const PolytopeFan& fan, const Vector& h);

/// Vertex positions for support vector h: least-squares solve of the face
/// planes through each vertex.
std::vector<Eigen::Vector3d> polytope_vertices(const PolytopeFan& fan, const Vector& h);

/// integral over the sphere of h^2 - |grad h|^2 / 2, where on the Gauss cell
/// of vertex p the support function is <p, v>. Each cell is fanned into
/// spherical triangles, subdivided `depth` times at geodesic midpoints and
/// integrated with the edge-midpoint rule.
double area_via_sphere_integral(const PolytopeFan& fan, const Vector& h, int depth);

/// Boundary of the polytope as a glued triangle mesh, vertex ids equal to the
/// fan's vertex indices.
TriangleMesh boundary_metric(const PolytopeFan& fan, const Vector& h);

}  // namespace mixedform
