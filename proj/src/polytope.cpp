#include "mixedform/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>

#include "mixedform/errors.hpp"

namespace mixedform {
namespace {

constexpr double kUnitTolerance = 1e-9;
constexpr double kCoincidence = 1e-9;
constexpr double kTilingTolerance = 1e-9;
constexpr double kFormTolerance = 1e-10;

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

// Van Oosterom-Strackee solid angle of the spherical triangle (a, b, c).
double spherical_triangle_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                               const Eigen::Vector3d& c) {
  const double num = std::abs(a.dot(b.cross(c)));
  const double den = 1 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2 * std::atan2(num, den);
}

double angle_between(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

// Sorts `items` counterclockwise around `axis` by the angle of key(item).
template <typename T, typename Key>
void sort_around(std::vector<T>& items, const Eigen::Vector3d& axis, Key key) {
  const auto [e1, e2] = face_frame(axis);
  std::vector<std::pair<double, T>> tagged;
  for (const T& item : items) {
    const Eigen::Vector3d d = key(item);
    tagged.emplace_back(std::atan2(d.dot(e2), d.dot(e1)), item);
  }
  std::sort(tagged.begin(), tagged.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < items.size(); ++i) items[i] = tagged[i].second;
}

void require_support(const PolytopeFan& fan, const Vector& h, const char* who) {
  if (h.size() != fan.face_count())
    throw InvalidInput(std::string(who) + ": support vector has wrong length");
  if (!h.allFinite()) throw InvalidInput(std::string(who) + ": non-finite support vector");
}

bool is_unbounded(const std::vector<Eigen::Vector3d>& normals) {
  Matrix u(static_cast<Eigen::Index>(normals.size()), 3);
  for (std::size_t i = 0; i < normals.size(); ++i) u.row(static_cast<Eigen::Index>(i)) = normals[i];
  Eigen::JacobiSVD<Matrix> svd(u);
  if (svd.singularValues().minCoeff() < 1e-9) return true;  // normals span a plane
  // A pointed recession cone, if nontrivial, has an extreme ray on two facet planes.
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i + 1; j < normals.size(); ++j) {
      const Eigen::Vector3d c = normals[i].cross(normals[j]);
      if (c.norm() < 1e-12) continue;
      for (double s : {1.0, -1.0}) {
        const Eigen::Vector3d d = s * c.normalized();
        if (std::all_of(normals.begin(), normals.end(),
                        [&](const Eigen::Vector3d& u_l) { return u_l.dot(d) <= 1e-12; }))
          return true;
      }
    }
  return false;
}

}  // namespace

std::pair<Eigen::Vector3d, Eigen::Vector3d> face_frame(const Eigen::Vector3d& normal) {
  Eigen::Index axis = 0;
  normal.cwiseAbs().minCoeff(&axis);
  const Eigen::Vector3d a = Eigen::Vector3d::Unit(axis);
  const Eigen::Vector3d e1 = (a - a.dot(normal) * normal).normalized();
  return {e1, normal.cross(e1)};
}

PolytopeFan build_fan(const std::vector<Eigen::Vector3d>& normals, const Vector& h) {
  const int m = static_cast<int>(normals.size());
  if (m < 4) throw InvalidInput("build_fan: need at least 4 normals");
  if (h.size() != m) throw InvalidInput("build_fan: support vector has wrong length");
  if (!h.allFinite()) throw InvalidInput("build_fan: non-finite support vector");
  for (int i = 0; i < m; ++i) {
    if (!normals[sz(i)].allFinite() || std::abs(normals[sz(i)].norm() - 1) > kUnitTolerance)
      throw InvalidInput("build_fan: normal " + std::to_string(i) + " is not a unit vector");
    for (int j = 0; j < i; ++j)
      if (angle_between(normals[sz(i)], normals[sz(j)]) < 1e-9)
        throw InvalidInput("build_fan: normals " + std::to_string(j) + " and " +
                           std::to_string(i) + " coincide");
  }
  if (is_unbounded(normals)) throw UnboundedInput("build_fan: halfspace intersection is unbounded");

  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1e-300);
  const double tol = kCoincidence * scale;

  // Feasible triple-plane intersections, clustered.
  std::vector<Eigen::Vector3d> points;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        Eigen::Matrix3d a;
        a.row(0) = normals[sz(i)];
        a.row(1) = normals[sz(j)];
        a.row(2) = normals[sz(k)];
        if (std::abs(a.determinant()) < 1e-10) continue;
        const Eigen::Vector3d x = a.partialPivLu().solve(Eigen::Vector3d(h(i), h(j), h(k)));
        bool feasible = true;
        for (int l = 0; l < m && feasible; ++l) feasible = normals[sz(l)].dot(x) - h(l) <= tol;
        if (!feasible) continue;
        const bool known = std::any_of(points.begin(), points.end(), [&](const Eigen::Vector3d& p) {
          return (p - x).norm() <= tol;
        });
        if (!known) points.push_back(x);
      }
  if (points.size() < 4) throw InvalidInput("build_fan: intersection has empty interior");

  std::vector<std::vector<int>> vertex_faces(points.size());
  for (std::size_t v = 0; v < points.size(); ++v)
    for (int l = 0; l < m; ++l)
      if (std::abs(normals[sz(l)].dot(points[v]) - h(l)) <= tol) vertex_faces[v].push_back(l);

  PolytopeFan fan;
  fan.normals_ = normals;
  fan.reference_vertices_ = points;
  fan.reference_support_ = h;

  std::vector<int> redundant;
  std::vector<std::vector<int>> face_vertices(sz(m));
  for (std::size_t v = 0; v < points.size(); ++v)
    for (int l : vertex_faces[v]) face_vertices[sz(l)].push_back(static_cast<int>(v));
  for (int i = 0; i < m; ++i) {
    auto& verts = face_vertices[sz(i)];
    bool flat = verts.size() < 3;
    if (!flat) {
      double area2 = 0;
      const Eigen::Vector3d& p0 = points[sz(verts[0])];
      for (std::size_t a = 1; a < verts.size(); ++a)
        for (std::size_t b = a + 1; b < verts.size(); ++b)
          area2 = std::max(area2,
                           (points[sz(verts[a])] - p0).cross(points[sz(verts[b])] - p0).norm());
      flat = area2 <= tol * scale;
    }
    if (flat) redundant.push_back(i);
  }
  if (!redundant.empty()) {
    std::string list;
    for (int r : redundant) list += (list.empty() ? "" : ", ") + std::to_string(r);
    throw RedundancyError("build_fan: halfspaces do not support a 2-face: " + list, redundant);
  }

  for (int i = 0; i < m; ++i) {
    const Eigen::Vector3d& u = normals[sz(i)];
    auto verts = face_vertices[sz(i)];
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (int v : verts) centroid += points[sz(v)];
    centroid /= static_cast<double>(verts.size());
    sort_around(verts, u, [&](int v) { return Eigen::Vector3d(points[sz(v)] - centroid); });

    const auto [e1, e2] = face_frame(u);
    const std::size_t d = verts.size();
    std::vector<int> neighbors(d);
    std::vector<double> angles(d), fan_angles(d);
    for (std::size_t j = 0; j < d; ++j) {
      const int from = verts[(j + d - 1) % d];
      const int to = verts[j];
      std::vector<int> common;
      std::set_intersection(vertex_faces[sz(from)].begin(), vertex_faces[sz(from)].end(),
                            vertex_faces[sz(to)].begin(), vertex_faces[sz(to)].end(),
                            std::back_inserter(common));
      common.erase(std::remove(common.begin(), common.end(), i), common.end());
      if (common.size() != 1)
        throw StructuralError("build_fan: edge of face " + std::to_string(i) +
                              " is not shared with exactly one other face");
      const int nb = common[0];
      neighbors[j] = nb;
      angles[j] = angle_between(u, normals[sz(nb)]);
      const Eigen::Vector3d in_face = normals[sz(nb)] - u.dot(normals[sz(nb)]) * u;
      fan_angles[j] = std::atan2(in_face.dot(e2), in_face.dot(e1));
    }
    fan.faces_.push_back(
        FaceCycle{neighbors, verts, angles, e1, e2, NormalFan2D::from_angles(fan_angles)});
    for (std::size_t j = 0; j < d; ++j)
      if (i < neighbors[j])
        fan.edges_.push_back(FanEdge{i, neighbors[j], verts[(j + d - 1) % d], verts[j],
                                     static_cast<int>(j), angles[j]});
  }

  double tiled = 0;
  for (std::size_t v = 0; v < points.size(); ++v) {
    VertexCell cell;
    cell.faces = vertex_faces[v];
    Eigen::Vector3d axis = Eigen::Vector3d::Zero();
    for (int l : cell.faces) axis += normals[sz(l)];
    axis.normalize();
    sort_around(cell.faces, axis, [&](int l) { return normals[sz(l)]; });
    for (std::size_t j = 1; j + 1 < cell.faces.size(); ++j)
      cell.spherical_area +=
          spherical_triangle_area(normals[sz(cell.faces[0])], normals[sz(cell.faces[j])],
                                  normals[sz(cell.faces[j + 1])]);
    tiled += cell.spherical_area;
    if (cell.faces.size() != 3) fan.simple_ = false;
    fan.cells_.push_back(std::move(cell));
  }
  if (std::abs(tiled - 4 * std::numbers::pi) > kTilingTolerance)
    throw ConsistencyError("build_fan: Gauss image does not tile the sphere");
  const int euler = fan.vertex_count() - static_cast<int>(fan.edges_.size()) + m;
  if (euler != 2) throw ConsistencyError("build_fan: face lattice violates V - E + F = 2");
  return fan;
}

Matrix face_support_matrix(const PolytopeFan& fan, int face) {
  const FaceCycle& f = fan.face(face);
  const Eigen::Vector3d& u = fan.normal(face);
  Matrix s = Matrix::Zero(static_cast<Eigen::Index>(f.neighbors.size()), fan.face_count());
  for (std::size_t j = 0; j < f.neighbors.size(); ++j) {
    const Eigen::Vector3d& w = fan.normal(f.neighbors[j]);
    const double c = u.dot(w);
    const double sn = u.cross(w).norm();
    s(static_cast<Eigen::Index>(j), f.neighbors[j]) += 1 / sn;
    s(static_cast<Eigen::Index>(j), face) -= c / sn;
  }
  return s;
}

Vector face_support_numbers(const PolytopeFan& fan, const Vector& h, int face) {
  require_support(fan, h, "face_support_numbers");
  return face_support_matrix(fan, face) * h;
}

Vector face_edge_lengths(const PolytopeFan& fan, const Vector& h, int face) {
  return edge_lengths(fan.face(face).fan, face_support_numbers(fan, h, face));
}

Matrix edge_length_operator(const PolytopeFan& fan) {
  std::vector<Matrix> blocks;
  Eigen::Index rows = 0;
  for (int i = 0; i < fan.face_count(); ++i) {
    blocks.push_back(edge_length_matrix(fan.face(i).fan) * face_support_matrix(fan, i));
    rows += blocks.back().rows();
  }
  Matrix out(rows, fan.face_count());
  Eigen::Index r = 0;
  for (const Matrix& b : blocks) {
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

PolytopeCone polytope_cone_membership(const PolytopeFan& fan, const Vector& h) {
  require_support(fan, h, "polytope_cone_membership");
  const double tol = 1e-12 * h.norm();
  PolytopeCone c{true, true};
  for (int i = 0; i < fan.face_count(); ++i) {
    const Vector l = face_edge_lengths(fan, h, i);
    if (l.minCoeff() < -tol) c.closed = false;
    if (l.minCoeff() <= tol) c.strict = false;
  }
  return c;
}

namespace {

// A_i = S_i^T M_i S_i: the mixed area of face i pulled back to R^m.
std::vector<Matrix> face_area_pullbacks(const PolytopeFan& fan) {
  std::vector<Matrix> out;
  for (int i = 0; i < fan.face_count(); ++i) {
    const Matrix s = face_support_matrix(fan, i);
    out.push_back(s.transpose() * area_form(fan.face(i).fan).entries() * s);
  }
  return out;
}

}  // namespace

TrilinearForm volume_form(const PolytopeFan& fan) {
  const int m = fan.face_count();
  const auto pullbacks = face_area_pullbacks(fan);
  std::vector<double> t(sz(m) * sz(m) * sz(m));
  for (int i = 0; i < m; ++i)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        t[sz((i * m + b) * m + c)] = pullbacks[sz(i)](b, c) / 3;
  return TrilinearForm(m, std::move(t), kFormTolerance);
}

double volume(const PolytopeFan& fan, const Vector& h) {
  require_support(fan, h, "volume");
  double v = 0;
  for (int i = 0; i < fan.face_count(); ++i) {
    const Vector hi = face_support_numbers(fan, h, i);
    v += h(i) * area_form(fan.face(i).fan)(hi);
  }
  return v / 3;
}

SymmetricForm boundary_area_form(const PolytopeFan& fan) {
  const int m = fan.face_count();
  Matrix area = Matrix::Zero(m, m);
  for (const Matrix& a : face_area_pullbacks(fan)) area += a;
  SymmetricForm form(area, kFormTolerance);
  if (fan.simple()) {
    const Matrix via_volume = 3 * volume_form(fan).contract(Vector::Ones(m));
    const double defect = (via_volume - form.entries()).cwiseAbs().maxCoeff();
    if (defect > kFormTolerance * form.entries().cwiseAbs().maxCoeff())
      throw ConsistencyError("boundary_area_form: area_P != 3 v_P(1, ., .)");
  }
  return form;
}

Vector point_support_vector(const PolytopeFan& fan, const Eigen::Vector3d& x) {
  Vector h(fan.face_count());
  for (int i = 0; i < fan.face_count(); ++i) h(i) = fan.normal(i).dot(x);
  return h;
}

AlexandrovFenchelReport alexandrov_fenchel_check(const PolytopeFan& fan, const TrilinearForm& v,
                                                 const Vector& h, const Vector& k, const Vector& p,
                                                 const MinkowskiOptions& options) {
  require_support(fan, h, "alexandrov_fenchel_check");
  require_support(fan, k, "alexandrov_fenchel_check");
  require_support(fan, p, "alexandrov_fenchel_check");
  if (v.dim() != fan.face_count())
    throw InvalidInput("alexandrov_fenchel_check: form dimension mismatch");
  if (!polytope_cone_membership(fan, p).closed)
    throw DomainError("alexandrov_fenchel_check: p must lie in the closed cone");

  const Matrix bp = v.contract(p);
  const double vhk = h.dot(bp * k);
  const double vhh = h.dot(bp * h);
  const double vkk = k.dot(bp * k);
  AlexandrovFenchelReport r;
  r.residual = vhk * vhk - vhh * vkk;
  r.scale = std::max(vhk * vhk, std::abs(vhh * vkk));
  r.inequality_holds = r.residual >= -options.inequality_tolerance * r.scale;
  if (r.residual > options.equality_tolerance * r.scale) return r;

  const int m = fan.face_count();
  Matrix a(m, 4);
  for (int i = 0; i < m; ++i) {
    a.block<1, 3>(i, 0) = fan.normal(i).transpose();
    a(i, 3) = k(i);
  }
  const Eigen::Vector4d sol = a.colPivHouseholderQr().solve(h);
  const double fit = (a * sol - h).norm();
  if (fit < options.witness_tolerance * h.norm()) {
    r.status = EqualityStatus::equality_with_witness;
    r.witness = HomothetyWitness3D{sol.head<3>(), sol(3), fit};
  } else {
    r.status = EqualityStatus::equality_without_witness;
  }
  return r;
}

AlexandrovFenchelReport alexandrov_fenchel_check(const PolytopeFan& fan, const Vector& h,
                                                 const Vector& k, const Vector& p,
                                                 const MinkowskiOptions& options) {
  return alexandrov_fenchel_check(fan, volume_form(fan), h, k, p, options);
}

std::vector<AreaMeasureAtom> first_area_measure(const PolytopeFan& fan, const Vector& h) {
  require_support(fan, h, "first_area_measure");
  if (!polytope_cone_membership(fan, h).closed)
    throw DomainError("first_area_measure: h must lie in the closed cone");
  std::vector<Vector> lengths;
  for (int i = 0; i < fan.face_count(); ++i) lengths.push_back(face_edge_lengths(fan, h, i));
  std::vector<AreaMeasureAtom> out;
  for (const FanEdge& e : fan.edges())
    out.push_back({e.a, e.b, e.angle, lengths[sz(e.a)](e.slot_in_a)});
  return out;
}

std::vector<Eigen::Vector3d> polytope_vertices(const PolytopeFan& fan, const Vector& h) {
  require_support(fan, h, "polytope_vertices");
  std::vector<Eigen::Vector3d> out;
  for (const VertexCell& cell : fan.cells()) {
    Matrix a(static_cast<Eigen::Index>(cell.faces.size()), 3);
    Vector b(static_cast<Eigen::Index>(cell.faces.size()));
    for (std::size_t j = 0; j < cell.faces.size(); ++j) {
      a.row(static_cast<Eigen::Index>(j)) = fan.normal(cell.faces[j]).transpose();
      b(static_cast<Eigen::Index>(j)) = h(cell.faces[j]);
    }
    out.emplace_back(a.colPivHouseholderQr().solve(b));
  }
  return out;
}

double area_via_sphere_integral(const PolytopeFan& fan, const Vector& h, int depth) {
  require_support(fan, h, "area_via_sphere_integral");
  if (depth < 0 || depth > 12) throw InvalidInput("area_via_sphere_integral: depth out of range");
  if (!polytope_cone_membership(fan, h).closed)
    throw DomainError("area_via_sphere_integral: h must lie in the closed cone");
  double tiled = 0;
  for (const VertexCell& cell : fan.cells()) tiled += cell.spherical_area;
  if (std::abs(tiled - 4 * std::numbers::pi) > kTilingTolerance)
    throw StructuralError("area_via_sphere_integral: Gauss image does not tile the sphere");

  const auto vertices = polytope_vertices(fan, h);
  double total = 0;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const Eigen::Vector3d p = vertices[v];
    const double p2 = p.squaredNorm();
    auto integrand = [&](const Eigen::Vector3d& x) {
      const double s = p.dot(x);
      return 1.5 * s * s - 0.5 * p2;
    };
    std::function<double(const Eigen::Vector3d&, const Eigen::Vector3d&, const Eigen::Vector3d&,
                         int)>
        integrate = [&](const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                        const Eigen::Vector3d& c, int level) -> double {
      const Eigen::Vector3d ab = (a + b).normalized();
      const Eigen::Vector3d bc = (b + c).normalized();
      const Eigen::Vector3d ca = (c + a).normalized();
      if (level == 0)
        return spherical_triangle_area(a, b, c) * (integrand(ab) + integrand(bc) + integrand(ca)) /
               3;
      return integrate(a, ab, ca, level - 1) + integrate(ab, b, bc, level - 1) +
             integrate(ca, bc, c, level - 1) + integrate(ab, bc, ca, level - 1);
    };
    const auto& faces = fan.cells()[v].faces;
    for (std::size_t j = 1; j + 1 < faces.size(); ++j)
      total += integrate(fan.normal(faces[0]), fan.normal(faces[j]), fan.normal(faces[j + 1]),
                         depth);
  }
  return total;
}

TriangleMesh boundary_metric(const PolytopeFan& fan, const Vector& h) {
  require_support(fan, h, "boundary_metric");
  if (!polytope_cone_membership(fan, h).strict)
    throw DomainError("boundary_metric: h must lie in the open cone");
  const auto vertices = polytope_vertices(fan, h);
  std::vector<std::array<int, 3>> triangles;
  for (const FaceCycle& f : fan.faces())
    for (std::size_t j = 1; j + 1 < f.vertices.size(); ++j)
      triangles.push_back({f.vertices[0], f.vertices[j], f.vertices[j + 1]});
  return TriangleMesh::from_indexed(vertices, triangles);
}

}  // namespace mixedform
