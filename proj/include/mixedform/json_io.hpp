#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "mixedform/forms.hpp"
#include "mixedform/fuchsian.hpp"
#include "mixedform/polygon.hpp"
#include "mixedform/polytope.hpp"
#include "mixedform/surface.hpp"

namespace mixedform {

using Json = nlohmann::json;

// Readers throw InvalidInput on malformed documents; the domain constructors
// add their own validation on top.

Json load_json_file(const std::string& path);

/// {"normals_deg": [...], "h": [...]}; optional "k".
struct PolygonInput {
  NormalFan2D fan;
  std::optional<Vector> h, k;
};
PolygonInput parse_polygon(const Json& doc);

/// {"triangles": [{"lengths": [a,b,c]}...], "gluing": [[t,e,t',e'(,same_direction)]...]}
TriangleMesh parse_mesh(const Json& doc);
Json mesh_to_json(const TriangleMesh& mesh);

/// {"normals": [[x,y,z]...], "h": [...]}; optional "k", "p".
struct PolytopeInput {
  std::vector<Eigen::Vector3d> normals;
  Vector h;
  std::optional<Vector> k, p;
};
PolytopeInput parse_polytope(const Json& doc);

/// {"genus": g, "faces": [{"adjacencies": [{"to","phi","omega"}...]}...], "h": [...]};
/// optional "vertices", "k".
struct FuchsianInput {
  QuotientFan fan;
  std::optional<Vector> h, k;
};
FuchsianInput parse_fuchsian(const Json& doc);

/// {"dim": n, "entries": [[...]]}
SymmetricForm parse_symmetric_form(const Json& doc);
Json to_json(const SymmetricForm& form);
Json to_json(const TrilinearForm& form);
Json to_json(const Signature& s);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);

}  // namespace mixedform
