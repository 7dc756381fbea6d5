#include "mixedform/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include "mixedform/errors.hpp"

namespace mixedform {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kGluingLengthTolerance = 1e-12;
constexpr double kGaussBonnetTolerance = 1e-6;
constexpr double kConvexityMargin = 1e-9;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Kahan's stable Heron formula.
double heron(double a, double b, double c) {
  std::array<double, 3> s{a, b, c};
  std::sort(s.begin(), s.end(), std::greater<>());
  const auto [x, y, z] = s;
  const double p = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  return 0.25 * std::sqrt(std::max(p, 0.0));
}

// Angle opposite side `opposite` in a triangle with the other sides b, c.
double angle_opposite(double opposite, double b, double c) {
  const double cosine = std::clamp((b * b + c * c - opposite * opposite) / (2 * b * c), -1.0, 1.0);
  const double sine = 2 * heron(opposite, b, c) / (b * c);
  return std::atan2(sine, cosine);
}

void check_triangle(const std::array<double, 3>& l, std::size_t t) {
  for (double x : l)
    if (!(std::isfinite(x) && x > 0))
      throw InvalidInput("triangle " + std::to_string(t) + ": lengths must be positive");
  if (!(l[0] < l[1] + l[2] && l[1] < l[0] + l[2] && l[2] < l[0] + l[1]))
    throw InvalidInput("triangle " + std::to_string(t) + ": violates strict triangle inequality");
}

// Apex of a triangle over the segment (0,0)-(base,0) with the given distances
// to both ends; `side` selects the upper (+1) or lower (-1) half-plane.
Eigen::Vector2d apex(double base, double from_start, double from_end, double side) {
  const double x = (from_start * from_start - from_end * from_end + base * base) / (2 * base);
  const double area = heron(base, from_start, from_end);
  return {x, side * 2 * area / base};
}

}  // namespace

TriangleMesh TriangleMesh::build(const std::vector<std::array<double, 3>>& lengths,
                                 const std::vector<Gluing>& gluing,
                                 const std::vector<std::array<int, 3>>& corner_labels) {
  const std::size_t nt = lengths.size();
  if (nt == 0) throw InvalidInput("TriangleMesh: no triangles");
  for (std::size_t t = 0; t < nt; ++t) check_triangle(lengths[t], t);
  if (!corner_labels.empty() && corner_labels.size() != nt)
    throw InvalidInput("TriangleMesh: corner labels do not match triangles");

  // Raw partner table in the input orientation.
  struct Link {
    HalfEdge other;
    bool same_direction;
  };
  std::vector<std::array<std::optional<Link>, 3>> raw(nt);
  auto valid = [nt](const HalfEdge& h) {
    return h.triangle >= 0 && static_cast<std::size_t>(h.triangle) < nt && h.edge >= 0 &&
           h.edge < 3;
  };
  for (const Gluing& g : gluing) {
    if (!valid(g.first) || !valid(g.second))
      throw StructuralError("TriangleMesh: gluing references a missing edge");
    if (g.first == g.second) throw StructuralError("TriangleMesh: edge glued to itself");
    auto& a = raw[sz(g.first.triangle)][sz(g.first.edge)];
    auto& b = raw[sz(g.second.triangle)][sz(g.second.edge)];
    if (a || b) throw StructuralError("TriangleMesh: edge glued more than once");
    const double la = lengths[sz(g.first.triangle)][sz(g.first.edge)];
    const double lb = lengths[sz(g.second.triangle)][sz(g.second.edge)];
    if (std::abs(la - lb) > kGluingLengthTolerance * std::max(la, lb))
      throw StructuralError("TriangleMesh: glued edges have different lengths");
    a = Link{g.second, g.same_direction};
    b = Link{g.first, g.same_direction};
  }

  // Orientation propagation; also establishes connectivity.
  std::vector<int> sign(nt, 0);
  sign[0] = 1;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t t = stack.back();
    stack.pop_back();
    for (const auto& link : raw[t]) {
      if (!link) continue;
      const std::size_t u = sz(link->other.triangle);
      const int want = link->same_direction ? -sign[t] : sign[t];
      if (sign[u] == 0) {
        sign[u] = want;
        stack.push_back(u);
      } else if (sign[u] != want) {
        throw StructuralError("TriangleMesh: surface is not orientable");
      }
    }
  }
  if (std::find(sign.begin(), sign.end(), 0) != sign.end())
    throw StructuralError("TriangleMesh: surface is not connected");

  // Corner identification in the input orientation.
  UnionFind uf(3 * nt);
  auto corner_id = [](std::size_t t, int c) { return 3 * t + static_cast<std::size_t>(c % 3); };
  for (std::size_t t = 0; t < nt; ++t)
    for (int e = 0; e < 3; ++e) {
      const auto& link = raw[t][sz(e)];
      if (!link) continue;
      const std::size_t u = sz(link->other.triangle);
      const int f = link->other.edge;
      if (link->same_direction) {
        uf.unite(corner_id(t, e), corner_id(u, f));
        uf.unite(corner_id(t, e + 1), corner_id(u, f + 1));
      } else {
        uf.unite(corner_id(t, e), corner_id(u, f + 1));
        uf.unite(corner_id(t, e + 1), corner_id(u, f));
      }
    }

  // Reversing a triangle maps corners (0,1,2) -> (0,2,1) and edges (0,1,2) -> (2,1,0).
  auto new_corner = [&](std::size_t t, int c) { return sign[t] > 0 ? c : (3 - c) % 3; };
  auto new_edge = [&](std::size_t t, int e) { return sign[t] > 0 ? e : 2 - e; };

  TriangleMesh mesh;
  mesh.lengths_.resize(nt);
  mesh.partner_.resize(nt);
  mesh.corners_.resize(nt);
  std::map<std::size_t, int> class_to_vertex;
  std::vector<std::array<std::size_t, 3>> classes(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    for (int e = 0; e < 3; ++e) {
      mesh.lengths_[t][sz(new_edge(t, e))] = lengths[t][sz(e)];
      if (const auto& link = raw[t][sz(e)]) {
        const std::size_t u = sz(link->other.triangle);
        mesh.partner_[t][sz(new_edge(t, e))] =
            HalfEdge{static_cast<int>(u), new_edge(u, link->other.edge)};
      }
    }
    for (int c = 0; c < 3; ++c) classes[t][sz(new_corner(t, c))] = uf.find(corner_id(t, c));
  }

  if (corner_labels.empty()) {
    for (std::size_t t = 0; t < nt; ++t)
      for (int c = 0; c < 3; ++c) {
        const auto [it, inserted] =
            class_to_vertex.emplace(classes[t][sz(c)], static_cast<int>(class_to_vertex.size()));
        mesh.corners_[t][sz(c)] = it->second;
      }
    mesh.vertex_count_ = static_cast<int>(class_to_vertex.size());
  } else {
    std::map<int, std::size_t> label_to_class;
    int max_label = -1;
    for (std::size_t t = 0; t < nt; ++t)
      for (int c = 0; c < 3; ++c) {
        const int label = corner_labels[t][sz(c)];
        const std::size_t cls = uf.find(corner_id(t, c));
        const auto [it, inserted] = class_to_vertex.emplace(cls, label);
        const auto [jt, jinserted] = label_to_class.emplace(label, cls);
        if (it->second != label || jt->second != cls)
          throw StructuralError("TriangleMesh: corner labels disagree with the gluing");
        mesh.corners_[t][sz(new_corner(t, c))] = label;
        max_label = std::max(max_label, label);
      }
    if (label_to_class.size() != static_cast<std::size_t>(max_label + 1) ||
        label_to_class.begin()->first != 0)
      throw InvalidInput("TriangleMesh: corner labels must be 0..V-1");
    mesh.vertex_count_ = max_label + 1;
  }

  // Manifold check: the corners of each vertex form a single fan.
  std::vector<int> corners_per_vertex(sz(mesh.vertex_count_), 0);
  for (std::size_t t = 0; t < nt; ++t)
    for (int c = 0; c < 3; ++c) ++corners_per_vertex[sz(mesh.corners_[t][sz(c)])];
  std::vector<bool> seen_vertex(sz(mesh.vertex_count_), false);
  for (std::size_t t = 0; t < nt; ++t)
    for (int c = 0; c < 3; ++c) {
      const int v = mesh.corners_[t][sz(c)];
      if (seen_vertex[sz(v)]) continue;
      seen_vertex[sz(v)] = true;
      std::set<std::pair<int, int>> fan{{static_cast<int>(t), c}};
      // forward across the outgoing edge
      std::pair<int, int> cur{static_cast<int>(t), c};
      bool cycle = false;
      while (true) {
        const auto p = mesh.partner_[sz(cur.first)][sz(cur.second)];
        if (!p) break;
        cur = {p->triangle, (p->edge + 1) % 3};
        if (cur == std::pair<int, int>{static_cast<int>(t), c}) {
          cycle = true;
          break;
        }
        if (!fan.insert(cur).second) break;
      }
      if (!cycle) {
        cur = {static_cast<int>(t), c};
        while (true) {
          const auto p = mesh.partner_[sz(cur.first)][sz((cur.second + 2) % 3)];
          if (!p) break;
          cur = {p->triangle, p->edge};
          if (!fan.insert(cur).second) break;
        }
      }
      if (static_cast<int>(fan.size()) != corners_per_vertex[sz(v)])
        throw StructuralError("TriangleMesh: non-manifold vertex " + std::to_string(v));
    }
  return mesh;
}

TriangleMesh TriangleMesh::from_indexed(const std::vector<Eigen::Vector3d>& positions,
                                        const std::vector<std::array<int, 3>>& triangles) {
  std::map<std::pair<int, int>, HalfEdge> directed;
  std::vector<std::array<double, 3>> lengths(triangles.size());
  for (std::size_t t = 0; t < triangles.size(); ++t)
    for (int e = 0; e < 3; ++e) {
      const int a = triangles[t][sz(e)];
      const int b = triangles[t][sz((e + 1) % 3)];
      if (a < 0 || b < 0 || sz(a) >= positions.size() || sz(b) >= positions.size())
        throw InvalidInput("TriangleMesh: vertex index out of range");
      lengths[t][sz(e)] = (positions[sz(a)] - positions[sz(b)]).norm();
      if (!directed.emplace(std::pair{a, b}, HalfEdge{static_cast<int>(t), e}).second)
        throw StructuralError("TriangleMesh: directed edge used twice");
    }
  std::vector<Gluing> gluing;
  for (const auto& [key, h] : directed) {
    const auto it = directed.find({key.second, key.first});
    if (it != directed.end() && key.first < key.second) gluing.push_back({h, it->second, false});
  }
  return build(lengths, gluing, triangles);
}

int TriangleMesh::edge_count() const {
  int half = 0, boundary = 0;
  for (const auto& p : partner_)
    for (const auto& h : p) (h ? half : boundary) += 1;
  return half / 2 + boundary;
}

bool TriangleMesh::closed() const {
  for (const auto& p : partner_)
    for (const auto& h : p)
      if (!h) return false;
  return true;
}

std::optional<HalfEdge> TriangleMesh::partner(const HalfEdge& h) const {
  return partner_[sz(h.triangle)][sz(h.edge % 3)];
}

double TriangleMesh::corner_angle(int t, int corner) const {
  const auto& l = lengths_[sz(t)];
  const int c = corner % 3;
  return angle_opposite(l[sz((c + 1) % 3)], l[sz(c)], l[sz((c + 2) % 3)]);
}

std::vector<Gluing> TriangleMesh::gluings() const {
  std::vector<Gluing> out;
  for (int t = 0; t < triangle_count(); ++t)
    for (int e = 0; e < 3; ++e) {
      const auto p = partner_[sz(t)][sz(e)];
      if (p && std::pair{t, e} < std::pair{p->triangle, p->edge})
        out.push_back({HalfEdge{t, e}, *p, false});
    }
  return out;
}

ConeData cone_data(const TriangleMesh& mesh) {
  if (!mesh.closed()) throw StructuralError("cone_data: mesh has boundary edges");
  ConeData d;
  d.cone_angles.assign(static_cast<std::size_t>(mesh.vertex_count()), 0.0);
  for (int t = 0; t < mesh.triangle_count(); ++t)
    for (int c = 0; c < 3; ++c)
      d.cone_angles[static_cast<std::size_t>(mesh.vertex(t, c))] += mesh.corner_angle(t, c);
  double total = 0;
  for (double a : d.cone_angles) {
    const double k = kTwoPi - a;
    d.curvatures.push_back(k);
    total += k;
    if (std::abs(a - kTwoPi) > kSingularityThreshold) ++d.singular_count;
  }
  d.euler_characteristic = mesh.vertex_count() - mesh.edge_count() + mesh.triangle_count();
  if (d.euler_characteristic > 2 || d.euler_characteristic % 2 != 0)
    throw StructuralError("cone_data: Euler characteristic of a closed orientable surface expected");
  d.genus = (2 - d.euler_characteristic) / 2;
  d.gauss_bonnet_defect = total - kTwoPi * d.euler_characteristic;
  if (std::abs(d.gauss_bonnet_defect) > kGaussBonnetTolerance)
    throw ConsistencyError("cone_data: Gauss-Bonnet defect " +
                           std::to_string(d.gauss_bonnet_defect));
  return d;
}

double total_area(const TriangleMesh& mesh) {
  double area = 0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& l = mesh.lengths(t);
    area += heron(l[0], l[1], l[2]);
  }
  return area;
}

QuadDevelopment develop_quad(const TriangleMesh& mesh, const HalfEdge& edge) {
  const auto other = mesh.partner(edge);
  if (!other) throw FlipNotAdmissible("flip: edge is on the boundary");
  if (other->triangle == edge.triangle)
    throw FlipNotAdmissible("flip: edge is glued within a single triangle");
  const int e = edge.edge % 3;
  const int f = other->edge;
  const double base = mesh.length(edge.triangle, e);
  QuadDevelopment q;
  q.a = {0, 0};
  q.b = {base, 0};
  // In triangle t: |AC| is edge e+2, |BC| is edge e+1.
  q.c = apex(base, mesh.length(edge.triangle, e + 2), mesh.length(edge.triangle, e + 1), +1);
  // In the partner: edge f runs B -> A; |AD| is edge f+1, |BD| is edge f+2.
  q.d = apex(base, mesh.length(other->triangle, f + 1), mesh.length(other->triangle, f + 2), -1);
  return q;
}

TriangleMesh flip(const TriangleMesh& mesh, const HalfEdge& edge) {
  const QuadDevelopment q = develop_quad(mesh, edge);
  const double base = q.b.x();
  const double cross_at = q.c.x() + (q.d.x() - q.c.x()) * q.c.y() / (q.c.y() - q.d.y());
  if (!(cross_at > kConvexityMargin * base && cross_at < (1 - kConvexityMargin) * base))
    throw FlipNotAdmissible("flip: quadrilateral is not strictly convex");

  const int t = edge.triangle;
  const int e = edge.edge % 3;
  const HalfEdge other = *mesh.partner(edge);
  const int u = other.triangle;
  const int f = other.edge;

  const int va = mesh.vertex(t, e), vb = mesh.vertex(t, e + 1), vc = mesh.vertex(t, e + 2);
  const int vd = mesh.vertex(u, f + 2);

  // New triangles: t = (A, D, C), u = (D, B, C).
  const std::array<std::pair<HalfEdge, HalfEdge>, 4> outer{{
      {HalfEdge{u, (f + 1) % 3}, HalfEdge{t, 0}},  // A -> D
      {HalfEdge{t, (e + 2) % 3}, HalfEdge{t, 2}},  // C -> A
      {HalfEdge{u, (f + 2) % 3}, HalfEdge{u, 0}},  // D -> B
      {HalfEdge{t, (e + 1) % 3}, HalfEdge{u, 1}},  // B -> C
  }};
  auto remap = [&](const HalfEdge& h) {
    for (const auto& [from, to] : outer)
      if (from == h) return to;
    return h;
  };

  TriangleMesh out = mesh;
  const double diagonal = (q.c - q.d).norm();
  std::array<std::optional<HalfEdge>, 4> outer_partner;
  std::array<double, 4> outer_length;
  for (std::size_t i = 0; i < 4; ++i) {
    outer_partner[i] = mesh.partner(outer[i].first);
    outer_length[i] = mesh.length(outer[i].first.triangle, outer[i].first.edge);
  }
  out.lengths_[TriangleMesh::sz(t)] = {outer_length[0], diagonal, outer_length[1]};
  out.lengths_[TriangleMesh::sz(u)] = {outer_length[2], outer_length[3], diagonal};
  out.corners_[TriangleMesh::sz(t)] = {va, vd, vc};
  out.corners_[TriangleMesh::sz(u)] = {vd, vb, vc};
  out.partner_[TriangleMesh::sz(t)][1] = HalfEdge{u, 2};
  out.partner_[TriangleMesh::sz(u)][2] = HalfEdge{t, 1};
  for (std::size_t i = 0; i < 4; ++i) {
    const HalfEdge mine = outer[i].second;
    if (!outer_partner[i]) {
      out.partner_[TriangleMesh::sz(mine.triangle)][TriangleMesh::sz(mine.edge)].reset();
      continue;
    }
    const HalfEdge theirs = remap(*outer_partner[i]);
    out.partner_[TriangleMesh::sz(mine.triangle)][TriangleMesh::sz(mine.edge)] = theirs;
    out.partner_[TriangleMesh::sz(theirs.triangle)][TriangleMesh::sz(theirs.edge)] = mine;
  }
  for (int tri : {t, u}) check_triangle(out.lengths_[TriangleMesh::sz(tri)], TriangleMesh::sz(tri));
  return out;
}

TriangleMesh double_of_polygon(const std::vector<Eigen::Vector2d>& vertices) {
  const int n = static_cast<int>(vertices.size());
  if (n < 3) throw InvalidInput("double_of_polygon: need at least 3 vertices");
  std::vector<Eigen::Vector3d> positions;
  for (const auto& v : vertices) positions.emplace_back(v.x(), v.y(), 0.0);
  std::vector<std::array<int, 3>> triangles;
  for (int i = 1; i + 1 < n; ++i) triangles.push_back({0, i, i + 1});
  // Bottom copy: reversed orientation, fanned from vertex 1 so its diagonals
  // differ from the top ones.
  for (int i = 2; i + 1 < n + 1; ++i) {
    const int a = i % n, b = (i + 1) % n;
    if (b == 1) break;
    triangles.push_back({1, b, a});
  }
  return TriangleMesh::from_indexed(positions, triangles);
}

}  // namespace mixedform
