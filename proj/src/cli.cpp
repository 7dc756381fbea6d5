#include "mixedform/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mixedform/errors.hpp"
#include "mixedform/json_io.hpp"
#include "mixedform/sampling.hpp"

namespace mixedform::cli {
namespace {

struct Options {
  std::optional<double> tol;
  std::uint64_t seed = 1;
  int samples = 100;
  int depth = 6;
  bool json = false;
};

struct Outcome {
  Json results = Json::object();
  Json tolerances = Json::object();
  bool falsified = false;
  std::string summary;
};

using Handler = std::function<Outcome(const Json&, const Options&)>;

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << hash;
  return os.str();
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string fmt(const Signature& s) {
  return "(" + std::to_string(s.positive) + ", " + std::to_string(s.zero) + ", " +
         std::to_string(s.negative) + ")";
}

Vector require(const std::optional<Vector>& v, const char* name) {
  if (!v) throw InvalidInput(std::string("input needs field \"") + name + "\"");
  return *v;
}

const char* status_name(EqualityStatus s) {
  switch (s) {
    case EqualityStatus::strict: return "strict";
    case EqualityStatus::equality_with_witness: return "equality_with_witness";
    case EqualityStatus::equality_without_witness: return "equality_without_witness";
  }
  return "unknown";
}

const char* region_name(ConeRegion r) {
  switch (r) {
    case ConeRegion::interior: return "interior";
    case ConeRegion::boundary: return "boundary";
    case ConeRegion::outside: return "outside";
  }
  return "unknown";
}

// ---------------------------------------------------------------- surface

Outcome surface_check(const Json& doc, const Options&) {
  const TriangleMesh mesh = parse_mesh(doc);
  const ConeData cd = cone_data(mesh);
  double total = 0;
  for (double k : cd.curvatures) total += k;
  Outcome o;
  o.results = {{"triangles", mesh.triangle_count()},
               {"vertices", mesh.vertex_count()},
               {"edges", mesh.edge_count()},
               {"genus", cd.genus},
               {"euler_characteristic", cd.euler_characteristic},
               {"cone_angles", cd.cone_angles},
               {"curvatures", cd.curvatures},
               {"singular_count", cd.singular_count},
               {"total_curvature", total},
               {"gauss_bonnet_defect", cd.gauss_bonnet_defect},
               {"total_area", total_area(mesh)}};
  o.tolerances = {{"gauss_bonnet", 1e-6}, {"singularity", kSingularityThreshold}};
  o.summary = "genus " + std::to_string(cd.genus) + ", " + std::to_string(mesh.vertex_count()) +
              " vertices (" + std::to_string(cd.singular_count) + " singular), total curvature " +
              fmt(total) + " = " + fmt(total / std::numbers::pi) + " pi, area " +
              fmt(total_area(mesh));
  return o;
}

// ---------------------------------------------------------------- polygon

Outcome polygon_area_form(const Json& doc, const Options&) {
  const PolygonInput in = parse_polygon(doc);
  const SymmetricForm form = area_form(in.fan);
  Outcome o;
  o.results["form"] = to_json(form);
  o.summary = std::to_string(form.dim()) + "x" + std::to_string(form.dim()) + " area form";
  if (in.h) {
    o.results["edge_lengths"] = to_json(edge_lengths(in.fan, *in.h));
    o.results["area"] = form(*in.h);
    o.results["cone"] = region_name(cone_membership(in.fan, *in.h).region);
    o.summary += ", a(h) = " + fmt(form(*in.h));
  }
  o.tolerances = {{"symmetry", 1e-12}, {"cone", 1e-12}};
  return o;
}

Outcome polygon_signature(const Json& doc, const Options& opt) {
  const PolygonInput in = parse_polygon(doc);
  const double thr = opt.tol.value_or(kDefaultZeroThreshold);
  const SymmetricForm form = area_form(in.fan);
  const Signature sig = signature(form, thr);
  const int n = in.fan.size();
  Outcome o;
  o.results = {{"signature", to_json(sig)},
               {"expected", {1, 2, n - 3}},
               {"eigenvalues", to_json(eigenvalues(form))}};
  o.tolerances = {{"zero_threshold", thr}};
  o.falsified = !sig.same_counts(1, 2, n - 3);
  o.summary = "signature " + fmt(sig) + " (expected (1, 2, " + std::to_string(n - 3) + "))";
  return o;
}

Json minkowski_json(const MinkowskiReport& r) {
  Json j = {{"residual", r.residual},
            {"scale", r.scale},
            {"inequality_holds", r.inequality_holds},
            {"status", status_name(r.status)}};
  if (r.witness)
    j["witness"] = {{"translation", {r.witness->translation.x(), r.witness->translation.y()}},
                    {"scale", r.witness->scale},
                    {"fit_residual", r.witness->fit_residual}};
  return j;
}

Outcome polygon_minkowski(const Json& doc, const Options& opt) {
  const PolygonInput in = parse_polygon(doc);
  MinkowskiOptions mo;
  if (opt.tol) mo.inequality_tolerance = *opt.tol;
  Outcome o;
  o.tolerances = {{"inequality", mo.inequality_tolerance},
                  {"equality", mo.equality_tolerance},
                  {"witness", mo.witness_tolerance}};
  if (in.h && in.k) {
    const MinkowskiReport r = minkowski_check(in.fan, *in.h, *in.k, mo);
    o.results = minkowski_json(r);
    o.falsified =
        !r.inequality_holds || r.status == EqualityStatus::equality_without_witness;
    o.summary = "residual " + fmt(r.residual) + " (" + status_name(r.status) + ")";
    return o;
  }
  const Vector base = in.h.value_or(Vector::Ones(in.fan.size()));
  const Matrix lengths = edge_length_matrix(in.fan);
  std::mt19937_64 rng(opt.seed);
  int violations = 0, equalities = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int s = 0; s < opt.samples; ++s) {
    const Vector h = sample_in_cone(lengths, base, rng);
    const Vector k = sample_in_cone(lengths, base, rng);
    const MinkowskiReport r = minkowski_check(in.fan, h, k, mo);
    if (!r.inequality_holds || r.status == EqualityStatus::equality_without_witness) ++violations;
    if (r.status != EqualityStatus::strict) ++equalities;
    worst = std::min(worst, r.residual / r.scale);
  }
  o.results = {{"samples", opt.samples},
               {"violations", violations},
               {"equality_cases", equalities},
               {"min_normalized_residual", worst}};
  o.falsified = violations > 0;
  o.summary = std::to_string(opt.samples) + " sampled pairs, " + std::to_string(violations) +
              " violations, min residual/scale " + fmt(worst);
  return o;
}

Outcome polygon_embed(const Json& doc, const Options&) {
  const PolygonInput in = parse_polygon(doc);
  const Vector h = require(in.h, "h");
  const ChartEmbedding ce = double_chart_embedding(in.fan, h);
  const double q = area_form(in.fan)(h);
  Json z = Json::array();
  for (Eigen::Index i = 0; i < ce.z.size(); ++i) z.push_back({ce.z(i).real(), ce.z(i).imag()});
  const int n = in.fan.size();
  const Signature closure = signature(ce.area.restricted(closure_basis(n)));
  Outcome o;
  o.results = {{"z", z},
               {"chart_area", ce.chart_area},
               {"area", q},
               {"relative_area_difference", std::abs(ce.chart_area - q) / std::abs(q)},
               {"double_area", 2 * ce.chart_area},
               {"closure_defect", ce.closure_defect},
               {"closure_plane_signature", to_json(closure)}};
  o.tolerances = {{"closure", 1e-10}, {"zero_threshold", kDefaultZeroThreshold}};
  o.summary = "A(z) = " + fmt(ce.chart_area) + ", a(h) = " + fmt(q) + ", closure defect " +
              fmt(ce.closure_defect);
  return o;
}

// ---------------------------------------------------------------- polytope

PolytopeFan load_fan(const PolytopeInput& in) { return build_fan(in.normals, in.h); }

Outcome polytope_build(const Json& doc, const Options&) {
  const PolytopeInput in = parse_polytope(doc);
  const PolytopeFan fan = load_fan(in);
  Json faces = Json::array();
  for (const FaceCycle& f : fan.faces())
    faces.push_back({{"neighbors", f.neighbors}, {"vertices", f.vertices}});
  Json cells = Json::array();
  double gauss = 0;
  for (const VertexCell& c : fan.cells()) {
    cells.push_back({{"faces", c.faces}, {"spherical_area", c.spherical_area}});
    gauss += c.spherical_area;
  }
  Json vertices = Json::array();
  for (const Eigen::Vector3d& v : fan.reference_vertices()) vertices.push_back({v.x(), v.y(), v.z()});
  Outcome o;
  o.results = {{"faces", fan.face_count()},
               {"vertices", fan.vertex_count()},
               {"edges", static_cast<int>(fan.edges().size())},
               {"simple", fan.simple()},
               {"cone_dimension", fan.cone_dimension()},
               {"gauss_image_area", gauss},
               {"positions", vertices},
               {"face_cycles", faces},
               {"vertex_cells", cells}};
  if (fan.simple()) o.results["euler_face_count"] = fan.vertex_count() / 2 + 2;
  o.tolerances = {{"coincidence", 1e-9}, {"gauss_tiling", 1e-9}};
  o.summary = std::to_string(fan.face_count()) + " faces, " + std::to_string(fan.vertex_count()) +
              " vertices, " + std::to_string(fan.edges().size()) + " edges, " +
              (fan.simple() ? "simple" : "not simple");
  return o;
}

Outcome polytope_volume(const Json& doc, const Options&) {
  const PolytopeInput in = parse_polytope(doc);
  const PolytopeFan fan = load_fan(in);
  const double v = volume(fan, in.h);
  Outcome o;
  o.results = {{"volume", v}};
  o.tolerances = {{"symmetry", 1e-10}};
  if (fan.simple()) {
    const double via_tensor = volume_form(fan)(in.h);
    o.results["tensor_volume"] = via_tensor;
    o.falsified = std::abs(via_tensor - v) > 1e-10 * std::max(1.0, std::abs(v));
  }
  o.summary = "volume " + fmt(v);
  return o;
}

Outcome polytope_area_form(const Json& doc, const Options&) {
  const PolytopeInput in = parse_polytope(doc);
  const PolytopeFan fan = load_fan(in);
  const SymmetricForm form = boundary_area_form(fan);
  Outcome o;
  o.results = {{"form", to_json(form)}, {"area", form(in.h)}};
  o.tolerances = {{"symmetry", 1e-10}, {"volume_identity", 1e-10}};
  o.summary = "boundary area " + fmt(form(in.h));
  return o;
}

Outcome polytope_signature(const Json& doc, const Options& opt) {
  const PolytopeInput in = parse_polytope(doc);
  const PolytopeFan fan = load_fan(in);
  const double thr = opt.tol.value_or(kDefaultZeroThreshold);
  const SymmetricForm form = boundary_area_form(fan);
  const Signature sig = signature(form, thr);
  const int m = fan.face_count();
  Outcome o;
  o.results = {{"signature", to_json(sig)},
               {"simple", fan.simple()},
               {"eigenvalues", to_json(eigenvalues(form))}};
  if (fan.simple()) {
    o.results["expected"] = {1, 3, m - 4};
    o.falsified = !sig.same_counts(1, 3, m - 4);
  }
  o.tolerances = {{"zero_threshold", thr}};
  o.summary = "signature " + fmt(sig);
  if (fan.simple()) o.summary += " (expected (1, 3, " + std::to_string(m - 4) + "))";
  return o;
}

Json af_json(const AlexandrovFenchelReport& r) {
  Json j = {{"residual", r.residual},
            {"scale", r.scale},
            {"inequality_holds", r.inequality_holds},
            {"status", status_name(r.status)}};
  if (r.witness) {
    const auto& t = r.witness->translation;
    j["witness"] = {{"translation", {t.x(), t.y(), t.z()}},
                    {"scale", r.witness->scale},
                    {"fit_residual", r.witness->fit_residual}};
  }
  return j;
}

Outcome polytope_af_check(const Json& doc, const Options& opt) {
  const PolytopeInput in = parse_polytope(doc);
  const PolytopeFan fan = load_fan(in);
  if (!fan.simple())
    throw DomainError("af-check: the mixed volume tensor needs a simple fan");
  MinkowskiOptions mo;
  if (opt.tol) mo.inequality_tolerance = *opt.tol;
  const TrilinearForm v = volume_form(fan);
  Outcome o;
  o.tolerances = {{"inequality", mo.inequality_tolerance},
                  {"equality", mo.equality_tolerance},
                  {"witness", mo.witness_tolerance}};
  if (in.k) {
    const AlexandrovFenchelReport r =
        alexandrov_fenchel_check(fan, v, in.h, *in.k, in.p.value_or(in.h), mo);
    o.results = af_json(r);
    o.falsified = !r.inequality_holds;
    o.summary = "residual " + fmt(r.residual) + " (" + status_name(r.status) + ")";
    return o;
  }
  const Matrix lengths = edge_length_operator(fan);
  std::mt19937_64 rng(opt.seed);
  int violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int s = 0; s < opt.samples; ++s) {
    const Vector h = sample_in_cone(lengths, in.h, rng);
    const Vector k = sample_in_cone(lengths, in.h, rng);
    const Vector p = sample_in_cone(lengths, in.h, rng);
    const AlexandrovFenchelReport r = alexandrov_fenchel_check(fan, v, h, k, p, mo);
    if (!r.inequality_holds) ++violations;
    if (r.scale > 0) worst = std::min(worst, r.residual / r.scale);
  }
  o.results = {{"samples", opt.samples},
               {"violations", violations},
               {"min_normalized_residual", worst}};
  o.falsified = violations > 0;
  o.summary = std::to_string(opt.samples) + " sampled triples, " + std::to_string(violations) +
              " violations, min residual/scale " + fmt(worst);
  return o;
}

Outcome polytope_measure(const Json& doc, const Options&) {
  const PolytopeInput in = parse_polytope(doc);
  const PolytopeFan fan = load_fan(in);
  Json atoms = Json::array();
  double total_mass = 0, mean_curvature = 0;
  for (const AreaMeasureAtom& a : first_area_measure(fan, in.h)) {
    atoms.push_back({{"faces", {a.face_a, a.face_b}}, {"arc_length", a.arc_length}, {"weight", a.weight}});
    total_mass += a.weight;
    mean_curvature += a.weight * a.arc_length;
  }
  Outcome o;
  o.results = {{"atoms", atoms},
               {"total_edge_length", total_mass},
               {"weighted_arc_length", mean_curvature}};
  o.tolerances = {{"cone", 1e-12}};
  o.summary = std::to_string(atoms.size()) + " arcs, total edge length " + fmt(total_mass);
  return o;
}

Outcome polytope_sphere_area(const Json& doc, const Options& opt) {
  const PolytopeInput in = parse_polytope(doc);
  const PolytopeFan fan = load_fan(in);
  const double integral = area_via_sphere_integral(fan, in.h, opt.depth);
  const double q = boundary_area_form(fan)(in.h);
  Outcome o;
  o.results = {{"depth", opt.depth},
               {"sphere_integral", integral},
               {"area", q},
               {"absolute_difference", std::abs(integral - q)}};
  o.summary = "depth " + std::to_string(opt.depth) + ": integral " + fmt(integral) + ", area " +
              fmt(q);
  return o;
}

Outcome polytope_boundary_metric(const Json& doc, const Options&) {
  const PolytopeInput in = parse_polytope(doc);
  const PolytopeFan fan = load_fan(in);
  const TriangleMesh mesh = boundary_metric(fan, in.h);
  const ConeData cd = cone_data(mesh);
  double worst = 0;
  for (int v = 0; v < fan.vertex_count(); ++v)
    worst = std::max(worst, std::abs(cd.curvatures[static_cast<std::size_t>(v)] -
                                     fan.cells()[static_cast<std::size_t>(v)].spherical_area));
  Outcome o;
  o.results = {{"mesh", mesh_to_json(mesh)},
               {"genus", cd.genus},
               {"curvatures", cd.curvatures},
               {"max_curvature_minus_gauss_cell", worst}};
  o.tolerances = {{"gauss_cell", 1e-9}};
  o.falsified = worst > 1e-9;
  o.summary = std::to_string(mesh.vertex_count()) + " cone points, genus " +
              std::to_string(cd.genus) + ", max |k - gauss cell| " + fmt(worst);
  return o;
}

// ---------------------------------------------------------------- fuchsian

Vector fuchsian_base(const FuchsianInput& in) {
  return in.h.value_or(Vector::Ones(in.fan.face_count()));
}

Outcome fuchsian_hessian(const Json& doc, const Options&) {
  const FuchsianInput in = parse_fuchsian(doc);
  const HessianReport r = covolume_hessian(in.fan, fuchsian_base(in));
  Outcome o;
  o.results = {{"hessian", to_json(r.hessian)},
               {"dominance_margin", r.dominance_margin},
               {"min_diagonal", r.min_diagonal},
               {"min_eigenvalue", r.min_eigenvalue},
               {"symmetry_defect", r.symmetry_defect},
               {"cross_check_defect", r.cross_check_defect}};
  o.tolerances = {{"symmetry", 1e-10}, {"cross_check", 1e-10}};
  o.falsified = !(r.dominance_margin > 0 && r.min_diagonal > 0 && r.min_eigenvalue > 0);
  o.summary = "dominance margin " + fmt(r.dominance_margin) + ", min eigenvalue " +
              fmt(r.min_eigenvalue);
  return o;
}

Outcome fuchsian_area(const Json& doc, const Options&) {
  const FuchsianInput in = parse_fuchsian(doc);
  const SymmetricForm form = fuchsian_area_form(in.fan);
  Outcome o;
  o.results = {{"form", to_json(form)}, {"eigenvalues", to_json(eigenvalues(form))}};
  if (in.h) o.results["area"] = form(*in.h);
  o.tolerances = {{"covolume_identity", 1e-10}};
  o.summary = std::to_string(form.dim()) + "x" + std::to_string(form.dim()) + " area form";
  return o;
}

Outcome fuchsian_check_pd(const Json& doc, const Options&) {
  const FuchsianInput in = parse_fuchsian(doc);
  const DefinitenessReport r = check_positive_definite(in.fan);
  Outcome o;
  o.results = {{"min_eigenvalue", r.min_eigenvalue},
               {"eigenvalues", to_json(r.eigenvalues)},
               {"positive_definite", r.positive_definite}};
  if (!r.positive_definite) o.results["counterexample"] = to_json(r.counterexample);
  o.tolerances = {{"relative_eigenvalue_floor", 1e-12}};
  o.falsified = !r.positive_definite;
  o.summary = "min eigenvalue " + fmt(r.min_eigenvalue) +
              (r.positive_definite ? " (positive definite)" : " (NOT positive definite)");
  return o;
}

Outcome fuchsian_distance(const Json& doc, const Options& opt) {
  const FuchsianInput in = parse_fuchsian(doc);
  const SymmetricForm area = fuchsian_area_form(in.fan);
  const double tol = opt.tol.value_or(1e-12);
  Outcome o;
  o.tolerances = {{"inequality", tol}, {"homothety", 1e-7}, {"cosine_overshoot", 1e-12}};
  if (in.h && in.k) {
    const double d = spherical_distance(in.fan, *in.h, *in.k);
    const ReversedCauchySchwarzReport r = reversed_cauchy_schwarz_check(area, *in.h, *in.k, tol);
    o.results = {{"distance", d},
                 {"residual", r.residual},
                 {"scale", r.scale},
                 {"inequality_holds", r.inequality_holds},
                 {"lambda", r.lambda},
                 {"homothetic", r.homothetic}};
    o.falsified = !r.inequality_holds;
    o.summary = "spherical distance " + fmt(d);
    return o;
  }
  const Vector base = fuchsian_base(in);
  const Matrix lengths = edge_length_operator(in.fan);
  std::mt19937_64 rng(opt.seed);
  int violations = 0;
  double max_distance = 0;
  for (int s = 0; s < opt.samples; ++s) {
    const Vector h = sample_in_cone(lengths, base, rng);
    const Vector k = sample_in_cone(lengths, base, rng);
    const ReversedCauchySchwarzReport r = reversed_cauchy_schwarz_check(area, h, k, tol);
    if (!r.inequality_holds) ++violations;
    max_distance = std::max(max_distance, spherical_distance(in.fan, h, k));
  }
  o.results = {{"samples", opt.samples},
               {"violations", violations},
               {"max_distance", max_distance}};
  o.falsified = violations > 0;
  o.summary = std::to_string(opt.samples) + " sampled pairs, " + std::to_string(violations) +
              " violations, max distance " + fmt(max_distance);
  return o;
}

struct Command {
  const char* module;
  const char* name;
  const char* help;
  Handler handler;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> table = {
      {"surface", "check", "cone angles, curvatures, genus and area of a glued mesh", surface_check},
      {"polygon", "area-form", "area form matrix (and a(h), edge lengths)", polygon_area_form},
      {"polygon", "signature", "inertia of the area form", polygon_signature},
      {"polygon", "minkowski", "Minkowski inequality for h, k or sampled pairs", polygon_minkowski},
      {"polygon", "embed", "complex edge vectors of the double", polygon_embed},
      {"polytope", "build", "face lattice and Gauss image", polytope_build},
      {"polytope", "volume", "volume of the polytope with support numbers h", polytope_volume},
      {"polytope", "area-form", "boundary area form", polytope_area_form},
      {"polytope", "signature", "inertia of the boundary area form", polytope_signature},
      {"polytope", "af-check", "Alexandrov-Fenchel inequality for given or sampled triples",
       polytope_af_check},
      {"polytope", "measure", "first area measure", polytope_measure},
      {"polytope", "sphere-area", "boundary area as an integral over the sphere",
       polytope_sphere_area},
      {"polytope", "boundary-metric", "boundary as a glued triangle mesh",
       polytope_boundary_metric},
      {"fuchsian", "hessian", "covolume Hessian at h", fuchsian_hessian},
      {"fuchsian", "area-form", "area form of the quotient", fuchsian_area},
      {"fuchsian", "check-pd", "positive definiteness of the area form", fuchsian_check_pd},
      {"fuchsian", "distance", "spherical distance for h, k or sampled pairs", fuchsian_distance},
  };
  return table;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixed-area and mixed-volume forms on polygons, polytopes and Fuchsian polyhedra",
               "mixedform"};
  app.fallthrough();
  app.require_subcommand(1);
  Options opt;
  double tol = 0;
  auto* tol_opt = app.add_option("--tol", tol, "override the primary tolerance of the command");
  app.add_option("--seed", opt.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--samples", opt.samples, "number of sampled pairs or triples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--depth", opt.depth, "sphere quadrature refinement depth")
      ->check(CLI::Range(0, 12))
      ->capture_default_str();
  app.add_flag("--json", opt.json, "emit a JSON report");

  std::string path;
  std::map<std::string, CLI::App*> modules;
  std::vector<std::pair<CLI::App*, const Command*>> leaves;
  for (const Command& c : commands()) {
    auto it = modules.find(c.module);
    if (it == modules.end()) {
      CLI::App* sub = app.add_subcommand(c.module, std::string(c.module) + " commands");
      sub->require_subcommand(1);
      it = modules.emplace(c.module, sub).first;
    }
    CLI::App* leaf = it->second->add_subcommand(c.name, c.help);
    leaf->add_option("file", path, "JSON input")->required();
    leaves.emplace_back(leaf, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  if (*tol_opt) {
    if (!(tol > 0 && tol < 1)) {
      err << "--tol must lie in (0, 1)\n";
      return kExitUsage;
    }
    opt.tol = tol;
  }

  const Command* cmd = nullptr;
  for (const auto& [leaf, c] : leaves)
    if (leaf->parsed()) cmd = c;
  if (cmd == nullptr) return kExitUsage;

  const std::string name = std::string(cmd->module) + " " + cmd->name;
  Json report = {{"schema", 1}, {"command", name}, {"seed", opt.seed}};
  report["options"] = {{"samples", opt.samples}, {"depth", opt.depth}};
  if (opt.tol) report["options"]["tol"] = *opt.tol;

  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  std::string summary;
  try {
    const std::string bytes = read_bytes(path);
    report["input"] = {{"path", path}, {"fnv1a64", fnv1a64(bytes)}};
    Json doc;
    try {
      doc = Json::parse(bytes);
    } catch (const Json::exception& e) {
      throw InvalidInput(path + ": " + e.what());
    }
    Outcome o = cmd->handler(doc, opt);
    report["results"] = std::move(o.results);
    report["tolerances"] = std::move(o.tolerances);
    report["status"] = o.falsified ? "invariant_violated" : "ok";
    summary = o.summary;
    code = o.falsified ? kExitInvariant : kExitOk;
  } catch (const InputError& e) {
    report["status"] = "input_error";
    report["error"] = e.what();
    summary = std::string("input error: ") + e.what();
    code = kExitInput;
  } catch (const InvariantViolation& e) {
    report["status"] = "invariant_violated";
    report["error"] = e.what();
    summary = std::string("invariant violated: ") + e.what();
    code = kExitInvariant;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (opt.json) {
    out << report.dump(2) << '\n';
  } else {
    out << name << ": " << summary << '\n';
    out << "status: " << report["status"].get<std::string>() << " (" << fmt(seconds) << " s)\n";
  }
  if (code == kExitInput) err << summary << '\n';
  return code;
}

}  // namespace mixedform::cli
