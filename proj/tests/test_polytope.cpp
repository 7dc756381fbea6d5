#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "mixedform/errors.hpp"
#include "mixedform/polytope.hpp"

using namespace mixedform;
using std::numbers::pi;
using testsupport::cube_normals;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

const PolytopeFan& cube() {
  static const PolytopeFan fan = build_fan(cube_normals(), Vector::Constant(6, 0.5));
  return fan;
}

// Volume from vertex positions alone: cones from the centroid over fanned faces.
double tetra_volume(const PolytopeFan& fan, const Vector& h) {
  const auto v = polytope_vertices(fan, h);
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& p : v) c += p;
  c /= static_cast<double>(v.size());
  double vol = 0;
  for (const FaceCycle& f : fan.faces()) {
    const auto& a = v[static_cast<std::size_t>(f.vertices[0])];
    for (std::size_t j = 1; j + 1 < f.vertices.size(); ++j) {
      const auto& b = v[static_cast<std::size_t>(f.vertices[j])];
      const auto& d = v[static_cast<std::size_t>(f.vertices[j + 1])];
      vol += std::abs((a - c).dot((b - c).cross(d - c))) / 6;
    }
  }
  return vol;
}

struct SimpleCase {
  PolytopeFan fan;
  Vector h;
};

SimpleCase random_case(int m, std::mt19937_64& rng) {
  testsupport::RandomPolytope p = testsupport::random_simple_polytope(m, rng);
  PolytopeFan fan = build_fan(p.normals, p.h);
  return {std::move(fan), p.h};
}

}  // namespace

TEST(BuildFan, Cube) {
  EXPECT_TRUE(cube().simple());
  EXPECT_EQ(cube().vertex_count(), 8);
  EXPECT_EQ(cube().edges().size(), 12u);
  for (const VertexCell& c : cube().cells()) {
    EXPECT_EQ(c.faces.size(), 3u);
    EXPECT_NEAR(c.spherical_area, pi / 2, 1e-12);
  }
}

TEST(BuildFan, OctahedronIsNotSimple) {
  const PolytopeFan fan = build_fan(testsupport::octahedron_normals(), Vector::Ones(8));
  EXPECT_FALSE(fan.simple());
  EXPECT_EQ(fan.vertex_count(), 6);
  for (const VertexCell& c : fan.cells()) EXPECT_EQ(c.faces.size(), 4u);
}

TEST(BuildFan, FarPlaneOnCubeIsRedundant) {
  auto normals = cube_normals();
  normals.push_back(Eigen::Vector3d(1, 1, 1).normalized());
  Vector h = Vector::Constant(7, 0.5);
  h(6) = 10;
  try {
    build_fan(normals, h);
    FAIL() << "expected RedundancyError";
  } catch (const RedundancyError& e) {
    EXPECT_NE(std::string(e.what()).find('6'), std::string::npos);
  }
}

TEST(BuildFan, LargeOppositeSupportIsAnElongatedBox) {
  // Only the -z face moves out; the result is a 1 x 1 x 10.5 box.
  const PolytopeFan fan = build_fan(cube_normals(), vec({0.5, 0.5, 0.5, 0.5, 0.5, 10}));
  EXPECT_NEAR(volume(fan, vec({0.5, 0.5, 0.5, 0.5, 0.5, 10})), 10.5, 1e-12);
}

TEST(BuildFan, RejectsUnboundedAndInvalid) {
  auto normals = cube_normals();
  normals.pop_back();
  EXPECT_THROW(build_fan(normals, Vector::Ones(5)), UnboundedInput);
  auto bad = cube_normals();
  bad[0] = {2, 0, 0};
  EXPECT_THROW(build_fan(bad, Vector::Ones(6)), InvalidInput);
}

TEST(FaceSupport, CubeAndBox) {
  for (int i = 0; i < 6; ++i)
    EXPECT_LT((face_support_numbers(cube(), Vector::Constant(6, 0.5), i) -
               Vector::Constant(4, 0.5)).norm(),
              1e-15);
  const Vector box = vec({0.5, 0.5, 1, 1, 2, 2});
  const Vector h0 = face_support_numbers(cube(), box, 0);
  ASSERT_EQ(h0.size(), 4);
  // Cyclic order alternates the y and z neighbours.
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(h0(j) + h0((j + 1) % 4), 3, 1e-15);
  EXPECT_NEAR(h0.minCoeff(), 1, 1e-15);
  EXPECT_NEAR(h0.maxCoeff(), 2, 1e-15);
}

TEST(FaceEdges, MatchVertexDistances) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const SimpleCase c = random_case(8 + trial, rng);
    const auto v = polytope_vertices(c.fan, c.h);
    for (int i = 0; i < c.fan.face_count(); ++i) {
      const FaceCycle& f = c.fan.face(i);
      const Vector l = face_edge_lengths(c.fan, c.h, i);
      const int n = static_cast<int>(f.vertices.size());
      for (int j = 0; j < n; ++j) {
        const auto& a = v[static_cast<std::size_t>(f.vertices[static_cast<std::size_t>((j + n - 1) % n)])];
        const auto& b = v[static_cast<std::size_t>(f.vertices[static_cast<std::size_t>(j)])];
        EXPECT_NEAR(l(j), (a - b).norm(), 1e-10);
      }
    }
  }
}

TEST(Volume, CubeAndBox) {
  EXPECT_NEAR(volume(cube(), Vector::Constant(6, 0.5)), 1, 1e-14);
  EXPECT_NEAR(volume(cube(), vec({0.5, 0.5, 1, 1, 2, 2})), 8, 1e-13);
}

TEST(Volume, AgreesWithTetrahedralDecomposition) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const SimpleCase c = random_case(6 + trial, rng);
    const double v = volume(c.fan, c.h);
    EXPECT_NEAR(v, tetra_volume(c.fan, c.h), 1e-11 * v);
  }
}

TEST(VolumeForm, InclusionExclusion) {
  std::mt19937_64 rng(43);
  const SimpleCase c = random_case(9, rng);
  const TrilinearForm v = volume_form(c.fan);
  testsupport::ConeWalk walk(edge_length_operator(c.fan), c.h);
  for (int s = 0; s < 20; ++s) {
    const Vector a = walk.next(rng), b = walk.next(rng), d = walk.next(rng);
    auto vol = [&](const Vector& x) { return tetra_volume(c.fan, x); };
    const double ie = (vol(a + b + d) - vol(a + b) - vol(b + d) - vol(a + d) + vol(a) + vol(b) +
                       vol(d)) / 6;
    EXPECT_NEAR(v(a, b, d), ie, 1e-10 * std::abs(ie));
  }
}

TEST(VolumeForm, CubeMixedValues) {
  const TrilinearForm v = volume_form(cube());
  const Vector half = Vector::Constant(6, 0.5);
  const Vector box = vec({0.5, 0.5, 1, 1, 2, 2});
  // Boxes: v(A, B, C) = (1/6) sum over permutations of a_s1 b_s2 c_s3 (side lengths).
  EXPECT_NEAR(v(half, half, box), (1 + 2 + 4) / 3.0, 1e-13);
  EXPECT_NEAR(v(half, box, box), (2 + 4 + 8) / 3.0, 1e-13);
}

TEST(BoundaryArea, Cube) {
  const SymmetricForm a = boundary_area_form(cube());
  EXPECT_NEAR(a(Vector::Constant(6, 0.5)), 6, 1e-14);
  EXPECT_TRUE(signature(a).same_counts(1, 3, 2));
  const Vector hx = point_support_vector(cube(), {1, 2, 3});
  EXPECT_LT((a.entries() * hx).norm(), 1e-13);
}

TEST(BoundaryArea, RandomSignaturesAndVolumeIdentity) {
  std::mt19937_64 rng(44);
  for (int m = 8; m <= 14; ++m) {
    const SimpleCase c = random_case(m, rng);
    const SymmetricForm a = boundary_area_form(c.fan);
    EXPECT_TRUE(signature(a).same_counts(1, 3, m - 4)) << m;
    const Matrix three_v = 3 * volume_form(c.fan).contract(Vector::Ones(m));
    EXPECT_LT((a.entries() - three_v).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(AlexandrovFenchel, EqualityExamples) {
  const Vector h = Vector::Constant(6, 0.5);
  const AlexandrovFenchelReport same = alexandrov_fenchel_check(cube(), h, h, h);
  ASSERT_TRUE(same.witness.has_value());
  EXPECT_NEAR(same.witness->scale, 1, 1e-12);
  EXPECT_LT(same.witness->translation.norm(), 1e-12);
  const Vector k = h + point_support_vector(cube(), {1, 2, 3});
  const AlexandrovFenchelReport tr = alexandrov_fenchel_check(cube(), h, k, h);
  EXPECT_LE(std::abs(tr.residual), 1e-10 * tr.scale);
  ASSERT_TRUE(tr.witness.has_value());
  // Witness solves h = h^x + lambda k.
  EXPECT_LT((tr.witness->translation + Eigen::Vector3d(1, 2, 3)).norm(), 1e-12);
}

TEST(AlexandrovFenchel, NonHomotheticBoxIsStrict) {
  const Vector h = Vector::Constant(6, 0.5);
  const AlexandrovFenchelReport r =
      alexandrov_fenchel_check(cube(), h, vec({0.5, 0.5, 1, 1, 2, 2}), h);
  EXPECT_GT(r.residual, 1e-3);
  EXPECT_EQ(r.status, EqualityStatus::strict);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(AlexandrovFenchel, RandomTriplesAndAbcResiduals) {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> u(-1, 1), lam(0.3, 3);
  for (int trial = 0; trial < 3; ++trial) {
    const SimpleCase c = random_case(8 + 2 * trial, rng);
    const TrilinearForm v = volume_form(c.fan);
    testsupport::ConeWalk walk(edge_length_operator(c.fan), c.h);
    for (int s = 0; s < 100; ++s) {
      const Vector h = walk.next(rng), k = walk.next(rng), p = walk.next(rng);
      const AlexandrovFenchelReport r = alexandrov_fenchel_check(c.fan, v, h, k, p);
      EXPECT_TRUE(r.inequality_holds);
      const SymmetricForm mixed(v.contract(p), 1e-10);
      const AbcResiduals abc = abc_lemma_residuals(mixed, h, k, p);
      const double m = std::max(pairing_scale(mixed, h, k), pairing_scale(mixed, h, p));
      EXPECT_LE(abc.b * abc.b, abc.a * abc.c + 1e-9 * m * m);
    }
    for (int s = 0; s < 10; ++s) {
      const Vector k = walk.next(rng), p = walk.next(rng);
      const Eigen::Vector3d x(u(rng), u(rng), u(rng));
      const double l = lam(rng);
      const AlexandrovFenchelReport r =
          alexandrov_fenchel_check(c.fan, v, point_support_vector(c.fan, x) + l * k, k, p);
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_NEAR(r.witness->scale, l, 1e-7 * l);
      EXPECT_LT((r.witness->translation - x).norm(), 1e-7);
    }
  }
}

TEST(AreaMeasure, CubeArcs) {
  const auto atoms = first_area_measure(cube(), Vector::Constant(6, 0.5));
  ASSERT_EQ(atoms.size(), 12u);
  for (const AreaMeasureAtom& a : atoms) {
    EXPECT_NEAR(a.arc_length, pi / 2, 1e-15);
    EXPECT_NEAR(a.weight, 1, 1e-15);
  }
}

TEST(AreaMeasure, TranslationInvariant) {
  std::mt19937_64 rng(46);
  const SimpleCase c = random_case(10, rng);
  const auto a = first_area_measure(c.fan, c.h);
  const auto b = first_area_measure(c.fan, c.h + point_support_vector(c.fan, {0.4, -0.2, 0.7}));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i].weight, b[i].weight, 1e-12);
}

TEST(SphereIntegral, CubeAndHomogeneity) {
  const Vector h = Vector::Constant(6, 0.5);
  EXPECT_NEAR(area_via_sphere_integral(cube(), h, 6), 6, 1e-5);
  EXPECT_NEAR(area_via_sphere_integral(cube(), 3 * h, 4),
              9 * area_via_sphere_integral(cube(), h, 4), 1e-11);
}

TEST(SphereIntegral, RandomPolytopeConverges) {
  std::mt19937_64 rng(47);
  const SimpleCase c = random_case(8, rng);
  const double exact = boundary_area_form(c.fan)(c.h);
  EXPECT_NEAR(area_via_sphere_integral(c.fan, c.h, 6), exact, 1e-4);
  EXPECT_NEAR(area_via_sphere_integral(c.fan, c.h, 9), exact, 1e-6);
}

TEST(SphereIntegral, RejectsBadDepth) {
  EXPECT_THROW(area_via_sphere_integral(cube(), Vector::Constant(6, 0.5), -1), InvalidInput);
}

TEST(BoundaryMetric, CubeAndOctahedronCurvatures) {
  const ConeData cc = cone_data(boundary_metric(cube(), Vector::Constant(6, 0.5)));
  ASSERT_EQ(cc.curvatures.size(), 8u);
  for (double k : cc.curvatures) EXPECT_NEAR(k, pi / 2, 1e-12);
  const PolytopeFan oct = build_fan(testsupport::octahedron_normals(), Vector::Ones(8));
  const ConeData co = cone_data(boundary_metric(oct, Vector::Ones(8)));
  ASSERT_EQ(co.curvatures.size(), 6u);
  for (double k : co.curvatures) EXPECT_NEAR(k, 2 * pi / 3, 1e-9);
}

TEST(BoundaryMetric, CurvatureIsGaussCellArea) {
  std::mt19937_64 rng(48);
  for (int trial = 0; trial < 5; ++trial) {
    const SimpleCase c = random_case(7 + trial, rng);
    const TriangleMesh m = boundary_metric(c.fan, c.h);
    const ConeData d = cone_data(m);
    EXPECT_NEAR(total_area(m), boundary_area_form(c.fan)(c.h), 1e-11);
    for (int v = 0; v < c.fan.vertex_count(); ++v)
      EXPECT_NEAR(d.curvatures[static_cast<std::size_t>(v)],
                  c.fan.cells()[static_cast<std::size_t>(v)].spherical_area, 1e-9);
  }
}
