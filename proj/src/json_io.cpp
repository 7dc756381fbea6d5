#include "mixedform/json_io.hpp"

#include <fstream>
#include <sstream>

#include "mixedform/errors.hpp"

namespace mixedform {
namespace {

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& doc, const char* key, const char* what) {
  if (!doc.is_object() || !doc.contains(key))
    throw InvalidInput(std::string(what) + ": missing field \"" + key + "\"");
  return doc.at(key);
}

Vector read_vector(const Json& a, const char* what) {
  if (!a.is_array()) throw InvalidInput(std::string(what) + ": expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw InvalidInput(std::string(what) + ": expected a number");
    v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  }
  return v;
}

std::optional<Vector> optional_vector(const Json& doc, const char* key, const char* what) {
  if (!doc.contains(key)) return std::nullopt;
  return read_vector(doc.at(key), what);
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

static void require_length(const std::optional<Vector>& v, Eigen::Index n, const char* what) {
  if (v && v->size() != n)
    throw InvalidInput(std::string(what) + " has " + std::to_string(v->size()) +
                       " entries, expected " + std::to_string(n));
}

PolygonInput parse_polygon(const Json& doc) {
  return guarded("polygon input", [&] {
    const Vector deg = read_vector(field(doc, "normals_deg", "polygon input"), "normals_deg");
    PolygonInput in{NormalFan2D::from_degrees(to_std(deg)), optional_vector(doc, "h", "h"),
                    optional_vector(doc, "k", "k")};
    require_length(in.h, in.fan.size(), "h");
    require_length(in.k, in.fan.size(), "k");
    return in;
  });
}

TriangleMesh parse_mesh(const Json& doc) {
  return guarded("mesh input", [&] {
    std::vector<std::array<double, 3>> lengths;
    for (const Json& t : field(doc, "triangles", "mesh input")) {
      const Vector l = read_vector(field(t, "lengths", "triangle"), "lengths");
      if (l.size() != 3) throw InvalidInput("mesh input: a triangle needs three lengths");
      lengths.push_back({l(0), l(1), l(2)});
    }
    std::vector<Gluing> gluing;
    for (const Json& g : field(doc, "gluing", "mesh input")) {
      if (!g.is_array() || (g.size() != 4 && g.size() != 5))
        throw InvalidInput("mesh input: gluing entries are [t, e, t', e'(, same_direction)]");
      Gluing gl{{g[0].get<int>(), g[1].get<int>()}, {g[2].get<int>(), g[3].get<int>()}, false};
      if (g.size() == 5) gl.same_direction = g[4].get<bool>();
      gluing.push_back(gl);
    }
    return TriangleMesh::build(lengths, gluing);
  });
}

Json mesh_to_json(const TriangleMesh& mesh) {
  Json tris = Json::array();
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& l = mesh.lengths(t);
    tris.push_back({{"lengths", {l[0], l[1], l[2]}}});
  }
  Json glue = Json::array();
  for (const Gluing& g : mesh.gluings())
    glue.push_back({g.first.triangle, g.first.edge, g.second.triangle, g.second.edge});
  return {{"triangles", tris}, {"gluing", glue}};
}

PolytopeInput parse_polytope(const Json& doc) {
  return guarded("polytope input", [&] {
    PolytopeInput in;
    for (const Json& n : field(doc, "normals", "polytope input")) {
      const Vector v = read_vector(n, "normal");
      if (v.size() != 3) throw InvalidInput("polytope input: normals are 3-vectors");
      in.normals.emplace_back(v(0), v(1), v(2));
    }
    in.h = read_vector(field(doc, "h", "polytope input"), "h");
    in.k = optional_vector(doc, "k", "k");
    in.p = optional_vector(doc, "p", "p");
    const auto m = static_cast<Eigen::Index>(in.normals.size());
    require_length(in.h, m, "h");
    require_length(in.k, m, "k");
    require_length(in.p, m, "p");
    return in;
  });
}

FuchsianInput parse_fuchsian(const Json& doc) {
  return guarded("fuchsian input", [&] {
    const int genus = field(doc, "genus", "fuchsian input").get<int>();
    std::vector<std::vector<Adjacency>> faces;
    for (const Json& f : field(doc, "faces", "fuchsian input")) {
      std::vector<Adjacency> adj;
      for (const Json& a : field(f, "adjacencies", "face"))
        adj.push_back({field(a, "to", "adjacency").get<int>(),
                       field(a, "phi", "adjacency").get<double>(),
                       field(a, "omega", "adjacency").get<double>()});
      faces.push_back(std::move(adj));
    }
    std::optional<int> vertices;
    if (doc.contains("vertices")) vertices = doc.at("vertices").get<int>();
    FuchsianInput in{QuotientFan::build(genus, std::move(faces), vertices),
                     optional_vector(doc, "h", "h"), optional_vector(doc, "k", "k")};
    require_length(in.h, in.fan.face_count(), "h");
    require_length(in.k, in.fan.face_count(), "k");
    return in;
  });
}

SymmetricForm parse_symmetric_form(const Json& doc) {
  return guarded("form input", [&] {
    const int dim = field(doc, "dim", "form input").get<int>();
    const Json& rows = field(doc, "entries", "form input");
    if (dim < 1 || !rows.is_array() || static_cast<int>(rows.size()) != dim)
      throw InvalidInput("form input: entries must be dim x dim");
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const Vector r = read_vector(rows[static_cast<std::size_t>(i)], "entries");
      if (r.size() != dim) throw InvalidInput("form input: entries must be dim x dim");
      m.row(i) = r.transpose();
    }
    if (!m.allFinite()) throw InvalidInput("form input: non-finite entries");
    return SymmetricForm(m);
  });
}

Json to_json(const Vector& v) { return to_std(v); }

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vector(m.row(i).transpose())));
  return rows;
}

Json to_json(const SymmetricForm& form) {
  return {{"dim", form.dim()}, {"entries", to_json(form.entries())}};
}

Json to_json(const TrilinearForm& form) {
  const int d = form.dim();
  Json slabs = Json::array();
  for (int i = 0; i < d; ++i) {
    Json rows = Json::array();
    for (int j = 0; j < d; ++j) {
      Json row = Json::array();
      for (int k = 0; k < d; ++k) row.push_back(form.entry(i, j, k));
      rows.push_back(row);
    }
    slabs.push_back(rows);
  }
  return {{"dim", d}, {"entries", slabs}};
}

Json to_json(const Signature& s) {
  return {{"positive", s.positive},
          {"zero", s.zero},
          {"negative", s.negative},
          {"zero_threshold", s.zero_threshold}};
}

}  // namespace mixedform
