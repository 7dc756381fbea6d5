#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "mixedform/errors.hpp"
#include "mixedform/polygon.hpp"

using namespace mixedform;
using testsupport::regular_fan;

namespace {

const NormalFan2D& square() {
  static const NormalFan2D fan = NormalFan2D::from_degrees({0, 90, 180, 270});
  return fan;
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// Edge lengths measured from the reconstructed vertices.
Vector measured_lengths(const NormalFan2D& fan, const Vector& h) {
  const auto v = support_polygon_vertices(fan, h);
  const int n = fan.size();
  Vector l(n);
  for (int i = 0; i < n; ++i) {
    const auto& end = v[static_cast<std::size_t>(i)];
    const auto& start = v[static_cast<std::size_t>((i + n - 1) % n)];
    l(i) = (end - start).dot(fan.edge_direction(i));
  }
  return l;
}

}  // namespace

TEST(NormalFan, RejectsInvalidInput) {
  EXPECT_THROW(NormalFan2D::from_degrees({0, 10, 200}), InvalidInput);
  EXPECT_THROW(NormalFan2D::from_degrees({0, 90}), InvalidInput);
  EXPECT_THROW(NormalFan2D::from_degrees({0, 90, 90, 180}), InvalidInput);
}

TEST(EdgeLengths, SquareAndRectangle) {
  EXPECT_LT((edge_lengths(square(), Vector::Constant(4, 0.5)) - Vector::Ones(4)).norm(), 1e-15);
  EXPECT_LT((edge_lengths(square(), vec({1, 0.5, 1, 0.5})) - vec({1, 2, 1, 2})).norm(), 1e-15);
}

TEST(EdgeLengths, RegularHexagonWithUnitApothem) {
  const Vector l = edge_lengths(regular_fan(6), Vector::Ones(6));
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(l(i), 2 / std::sqrt(3.0), 1e-14);
}

TEST(EdgeLengths, AgreeWithVertexReconstruction) {
  std::mt19937_64 rng(21);
  for (int n = 3; n <= 12; ++n) {
    const NormalFan2D fan = testsupport::random_fan(n, rng);
    testsupport::ConeWalk walk(edge_length_matrix(fan), Vector::Ones(n));
    for (int s = 0; s < 20; ++s) {
      const Vector h = walk.next(rng);
      const Vector l = edge_lengths(fan, h);
      EXPECT_LT((l - measured_lengths(fan, h)).cwiseAbs().maxCoeff(), 1e-11 * l.maxCoeff());
      EXPECT_LT((l - edge_length_matrix(fan) * h).cwiseAbs().maxCoeff(), 1e-13 * l.maxCoeff());
    }
  }
}

TEST(EdgeLengths, ClosedPolygon) {
  std::mt19937_64 rng(22);
  for (int n = 3; n <= 12; ++n) {
    const NormalFan2D fan = testsupport::random_fan(n, rng);
    const Vector h = Vector::Random(n);
    const Vector l = edge_lengths(fan, h);
    Eigen::Vector2d sum = Eigen::Vector2d::Zero();
    for (int i = 0; i < n; ++i) sum += l(i) * fan.edge_direction(i);
    EXPECT_LT(sum.norm(), 1e-12 * (1 + l.cwiseAbs().maxCoeff()));
  }
}

TEST(ConeMembership, SquareRegions) {
  EXPECT_EQ(cone_membership(square(), Vector::Constant(4, 0.5)).region, ConeRegion::interior);
  // l_0 = h_3 + h_1 and l_2 = h_1 + h_3 vanish together on the square.
  const ConeMembership b = cone_membership(square(), vec({1, 1, 1, -1}));
  EXPECT_EQ(b.region, ConeRegion::boundary);
  EXPECT_EQ(b.degenerate_edges, (std::vector<int>{0, 2}));
  const ConeMembership o = cone_membership(square(), -Vector::Ones(4));
  EXPECT_EQ(o.region, ConeRegion::outside);
  EXPECT_EQ(o.negative_edges.size(), 4u);
}

TEST(ConeMembership, PentagonSingleDegenerateEdge) {
  const NormalFan2D fan = regular_fan(5);
  // Solve l_2(h) = 0 for h_2 with the other entries fixed at 1.
  const Matrix l = edge_length_matrix(fan);
  Vector h = Vector::Ones(5);
  h(2) = 0;
  h(2) = -(l.row(2) * h)(0) / l(2, 2);
  const ConeMembership m = cone_membership(fan, h);
  EXPECT_EQ(m.region, ConeRegion::boundary);
  EXPECT_EQ(m.degenerate_edges, std::vector<int>{2});
}

TEST(AreaForm, SquareValues) {
  const SymmetricForm a = area_form(square());
  EXPECT_NEAR(a(Vector::Constant(4, 0.5)), 1, 1e-15);
  EXPECT_NEAR(a(Vector::Constant(4, 0.5), vec({1, 0.5, 1, 0.5})), 1.5, 1e-15);
}

TEST(AreaForm, RegularFanSignatures) {
  for (int n = 3; n <= 12; ++n)
    EXPECT_TRUE(signature(area_form(regular_fan(n)), 1e-9).same_counts(1, 2, n - 3)) << n;
}

TEST(AreaForm, MatchesShoelaceArea) {
  std::mt19937_64 rng(23);
  for (int n = 3; n <= 12; ++n) {
    const NormalFan2D fan = testsupport::random_fan(n, rng);
    const SymmetricForm a = area_form(fan);
    testsupport::ConeWalk walk(edge_length_matrix(fan), Vector::Ones(n));
    for (int s = 0; s < 20; ++s) {
      const Vector h = walk.next(rng);
      const double shoelace = testsupport::shoelace(support_polygon_vertices(fan, h));
      EXPECT_NEAR(a(h), shoelace, 1e-12 * shoelace);
    }
  }
}

TEST(AreaForm, GradientIsEdgeLength) {
  std::mt19937_64 rng(24);
  const NormalFan2D fan = testsupport::random_fan(7, rng);
  const SymmetricForm a = area_form(fan);
  const Vector h = testsupport::ConeWalk(edge_length_matrix(fan), Vector::Ones(7)).next(rng);
  const Vector l = edge_lengths(fan, h);
  const double step = 1e-5;
  for (int i = 0; i < 7; ++i) {
    Vector e = Vector::Zero(7);
    e(i) = step;
    EXPECT_NEAR((a(h + e) - a(h - e)) / (2 * step), l(i), 1e-8);
  }
}

TEST(AreaForm, TranslationsSpanTheKernelDirections) {
  std::mt19937_64 rng(25);
  const NormalFan2D fan = testsupport::random_fan(8, rng);
  const SymmetricForm a = area_form(fan);
  const Vector hx = point_support_vector(fan, {0.3, -1.7});
  EXPECT_LT((a.entries() * hx).norm(), 1e-13);
  EXPECT_LT(edge_lengths(fan, hx).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(PointSupportVector, Examples) {
  EXPECT_EQ(point_support_vector(square(), {0, 0}), Vector::Zero(4));
  EXPECT_LT((point_support_vector(square(), {1, 0}) - vec({1, 0, -1, 0})).norm(), 1e-15);
}

TEST(Minkowski, HomothetyWitness) {
  const NormalFan2D fan = regular_fan(5);
  Vector h(5);
  h << 1, 1.1, 0.9, 1.2, 1;
  const MinkowskiReport r = minkowski_check(fan, h, 3 * h);
  EXPECT_LE(std::abs(r.residual), 1e-10 * r.scale);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.status, EqualityStatus::equality_with_witness);
  EXPECT_NEAR(r.witness->scale, 1.0 / 3, 1e-12);
  EXPECT_LT(r.witness->translation.norm(), 1e-12);
}

TEST(Minkowski, TranslateWitness) {
  const Vector h = Vector::Constant(4, 0.5);
  const Vector k = h + point_support_vector(square(), {2, -1});
  const MinkowskiReport r = minkowski_check(square(), h, k);
  ASSERT_TRUE(r.witness.has_value());
  // Witness solves h = h^x + lambda k.
  EXPECT_NEAR(r.witness->scale, 1, 1e-12);
  EXPECT_LT((r.witness->translation - Eigen::Vector2d(-2, 1)).norm(), 1e-12);
}

TEST(Minkowski, SquareVersusRectangle) {
  const MinkowskiReport r =
      minkowski_check(square(), Vector::Constant(4, 0.5), vec({1, 0.5, 1, 0.5}));
  EXPECT_NEAR(r.residual, 0.25, 1e-14);
  EXPECT_TRUE(r.inequality_holds);
  EXPECT_EQ(r.status, EqualityStatus::strict);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(Minkowski, RejectsOutsideCone) {
  EXPECT_THROW(minkowski_check(square(), -Vector::Ones(4), Vector::Ones(4)), DomainError);
}

TEST(Minkowski, RandomPairsAndConstructedEqualities) {
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> u(-2, 2), lam(0.2, 5);
  for (int n = 3; n <= 10; ++n) {
    const NormalFan2D fan = testsupport::random_fan(n, rng);
    testsupport::ConeWalk walk(edge_length_matrix(fan), Vector::Ones(n));
    for (int s = 0; s < 50; ++s) {
      const MinkowskiReport r = minkowski_check(fan, walk.next(rng), walk.next(rng));
      EXPECT_TRUE(r.inequality_holds);
    }
    for (int s = 0; s < 10; ++s) {
      const Vector k = walk.next(rng);
      const Eigen::Vector2d x(u(rng), u(rng));
      const double l = lam(rng);
      const Vector h = point_support_vector(fan, x) + l * k;
      const MinkowskiReport r = minkowski_check(fan, h, k);
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_NEAR(r.witness->scale, l, 1e-7 * l);
      EXPECT_LT((r.witness->translation - x).norm(), 1e-7);
    }
  }
}

TEST(HyperbolicDistance, Examples) {
  const Vector h = Vector::Constant(4, 0.5);
  EXPECT_NEAR(hyperbolic_distance(square(), h, 2.5 * h), 0, 1e-7);
  EXPECT_NEAR(hyperbolic_distance(square(), h, vec({1, 0.5, 1, 0.5})),
              std::acosh(1.5 / std::sqrt(2.0)), 1e-12);
}

TEST(HyperbolicDistance, SymmetricOnTriangles) {
  std::mt19937_64 rng(27);
  const NormalFan2D fan = testsupport::random_fan(3, rng);
  testsupport::ConeWalk walk(edge_length_matrix(fan), Vector::Ones(3));
  for (int s = 0; s < 20; ++s) {
    const Vector h = walk.next(rng), k = walk.next(rng);
    EXPECT_NEAR(hyperbolic_distance(fan, h, k), hyperbolic_distance(fan, k, h), 1e-12);
  }
}

TEST(ChartEmbedding, UnitSquare) {
  const ChartEmbedding e = double_chart_embedding(square(), Vector::Constant(4, 0.5));
  const std::complex<double> i(0, 1);
  const ComplexVector expected = (ComplexVector(4) << i, -1.0, -i, 1.0).finished();
  EXPECT_LT((e.z - expected).norm(), 1e-15);
  EXPECT_NEAR(e.chart_area, 1, 1e-15);
  EXPECT_LT(e.closure_defect, 1e-15);
}

TEST(ChartEmbedding, Homogeneity) {
  const NormalFan2D fan = regular_fan(7);
  Vector h(7);
  h << 1, 1.1, 0.95, 1, 1.05, 0.9, 1;
  const ChartEmbedding a = double_chart_embedding(fan, h);
  const ChartEmbedding b = double_chart_embedding(fan, 2 * h);
  EXPECT_LT((b.z - 2 * a.z).norm(), 1e-13);
  EXPECT_NEAR(b.chart_area, 4 * a.chart_area, 1e-12);
}

TEST(ChartEmbedding, AreaMatchesAreaForm) {
  std::mt19937_64 rng(28);
  for (int n = 3; n <= 10; ++n) {
    const NormalFan2D fan = testsupport::random_fan(n, rng);
    const SymmetricForm a = area_form(fan);
    testsupport::ConeWalk walk(edge_length_matrix(fan), Vector::Ones(n));
    for (int s = 0; s < 20; ++s) {
      const Vector h = walk.next(rng);
      const ChartEmbedding e = double_chart_embedding(fan, h);
      EXPECT_NEAR(e.chart_area, a(h), 1e-12 * a(h));
      EXPECT_NEAR(e.area(e.z), a(h), 1e-12 * a(h));
      EXPECT_LT(e.closure_defect, 1e-10);
    }
  }
}

TEST(ChartEmbedding, ClosurePlaneSignature) {
  // On {z1 + z2 + z3 = 0} the 2x2 pullback has eigenvalues +1/4 and -1/4.
  const HermitianForm r = shoelace_hermitian_form(3).restricted(closure_basis(3));
  EXPECT_TRUE(signature(r).same_counts(1, 0, 1));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(r.entries());
  EXPECT_NEAR(ref.eigenvalues()(0), -0.25, 1e-14);
  EXPECT_NEAR(ref.eigenvalues()(1), 0.25, 1e-14);
}
