#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace mixedform {

/// Oriented edge `edge` of triangle `triangle`; edge e runs from corner e to
/// corner e+1 and lengths[e] is its length.
struct HalfEdge {
  int triangle = 0;
  int edge = 0;
  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

/// One identification of two triangle edges. The default pairs corner e of
/// the first with corner e'+1 of the second (the orientable convention when
/// both triangles are counterclockwise); `same_direction` pairs corner e with
/// corner e', which flips the relative orientation of the two triangles.
struct Gluing {
  HalfEdge first;
  HalfEdge second;
  bool same_direction = false;
};

/// Euclidean triangles glued isometrically along edges. After construction
/// every triangle is counterclockwise and every gluing is orientation
/// reversing; vertex ids partition the corners.
class TriangleMesh {
 public:
  /// Validates triangle inequalities, length matching of glued edges,
  /// connectivity, orientability and manifoldness at vertices.
  /// `corner_labels[t][c]`, when given, fixes the vertex id of each corner.
  static TriangleMesh build(const std::vector<std::array<double, 3>>& lengths,
                            const std::vector<Gluing>& gluing,
                            const std::vector<std::array<int, 3>>& corner_labels = {});

  /// Lengths from vertex positions; edge a->b is glued to the unique b->a.
  /// Vertex ids equal the position indices.
  static TriangleMesh from_indexed(const std::vector<Eigen::Vector3d>& positions,
                                   const std::vector<std::array<int, 3>>& triangles);

  int triangle_count() const { return static_cast<int>(lengths_.size()); }
  int vertex_count() const { return vertex_count_; }
  /// Glued pairs plus unglued (boundary) half-edges.
  int edge_count() const;
  bool closed() const;

  double length(int t, int e) const { return lengths_[sz(t)][sz(e % 3)]; }
  const std::array<double, 3>& lengths(int t) const { return lengths_[sz(t)]; }
  std::optional<HalfEdge> partner(const HalfEdge& h) const;
  int vertex(int t, int corner) const { return corners_[sz(t)][sz(corner % 3)]; }

  /// Interior angle at `corner` of triangle t.
  double corner_angle(int t, int corner) const;
  std::vector<Gluing> gluings() const;

 private:
  static std::size_t sz(int i) { return static_cast<std::size_t>(i); }
  friend TriangleMesh flip(const TriangleMesh&, const HalfEdge&);

  std::vector<std::array<double, 3>> lengths_;
  std::vector<std::array<std::optional<HalfEdge>, 3>> partner_;
  std::vector<std::array<int, 3>> corners_;
  int vertex_count_ = 0;
};

inline constexpr double kSingularityThreshold = 1e-8;

struct ConeData {
  std::vector<double> cone_angles;  // per vertex id
  std::vector<double> curvatures;   // 2 pi - angle
  int genus = 0;
  int euler_characteristic = 0;
  int singular_count = 0;           // |angle - 2 pi| > kSingularityThreshold
  double gauss_bonnet_defect = 0;   // sum k - 2 pi (2 - 2g)
};

/// Cone angles, curvatures and genus of a closed mesh. StructuralError for a
/// mesh with boundary; ConsistencyError if the Gauss-Bonnet defect exceeds 1e-6.
ConeData cone_data(const TriangleMesh& mesh);

/// Sum of Heron areas.
double total_area(const TriangleMesh& mesh);

/// Exchanges the diagonal of the quadrilateral formed by the two triangles
/// adjacent to `edge`. FlipNotAdmissible unless that quadrilateral, developed
/// in the plane, is strictly convex.
TriangleMesh flip(const TriangleMesh& mesh, const HalfEdge& edge);

/// Planar development of the quadrilateral around `edge`: positions of the
/// edge's start A, end B, the apex C of its triangle and the apex D across it.
struct QuadDevelopment {
  Eigen::Vector2d a, b, c, d;
};
QuadDevelopment develop_quad(const TriangleMesh& mesh, const HalfEdge& edge);

/// Two copies of the polygon glued along the boundary (the top copy is fanned
/// from vertex 0, the bottom copy from vertex 1).
TriangleMesh double_of_polygon(const std::vector<Eigen::Vector2d>& vertices);

}  // namespace mixedform
