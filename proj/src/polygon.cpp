#include "mixedform/polygon.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mixedform/errors.hpp"

namespace mixedform {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kWindingTolerance = 1e-9;
constexpr double kAngleEpsilon = 1e-12;

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w;
}

void require_interior(const NormalFan2D& fan, const Vector& h, const char* who) {
  if (cone_membership(fan, h).region != ConeRegion::interior)
    throw DomainError(std::string(who) + ": support vector is not in the open cone");
}

void require_size(const NormalFan2D& fan, const Vector& h, const char* who) {
  if (h.size() != fan.size())
    throw InvalidInput(std::string(who) + ": support vector has wrong length");
  if (!h.allFinite()) throw InvalidInput(std::string(who) + ": non-finite support vector");
}

}  // namespace

NormalFan2D::NormalFan2D(std::vector<double> angles, std::vector<double> turning)
    : angles_(std::move(angles)), turning_(std::move(turning)) {}

NormalFan2D NormalFan2D::from_angles(const std::vector<double>& angles) {
  const std::size_t n = angles.size();
  if (n < 3) throw InvalidInput("NormalFan2D: need at least 3 normals");
  std::vector<double> wrapped(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(angles[i])) throw InvalidInput("NormalFan2D: non-finite angle");
    wrapped[i] = wrap_angle(angles[i]);
  }
  std::vector<double> turning(n);
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = wrap_angle(wrapped[(i + 1) % n] - wrapped[i]);
    if (!(t > kAngleEpsilon && t < std::numbers::pi - kAngleEpsilon))
      throw InvalidInput("NormalFan2D: turning angle " + std::to_string(i) +
                         " is not in (0, pi)");
    turning[i] = t;
    total += t;
  }
  if (std::abs(total - kTwoPi) > kWindingTolerance)
    throw InvalidInput("NormalFan2D: normals do not wind once around the circle");
  return NormalFan2D(std::move(wrapped), std::move(turning));
}

NormalFan2D NormalFan2D::from_degrees(const std::vector<double>& degrees) {
  std::vector<double> radians(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i)
    radians[i] = degrees[i] * std::numbers::pi / 180;
  return from_angles(radians);
}

NormalFan2D NormalFan2D::from_turning_angles(const std::vector<double>& turning, double start) {
  const std::size_t n = turning.size();
  if (n < 3) throw InvalidInput("NormalFan2D: need at least 3 normals");
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(turning[i] > kAngleEpsilon && turning[i] < std::numbers::pi - kAngleEpsilon))
      throw InvalidInput("NormalFan2D: turning angle " + std::to_string(i) +
                         " is not in (0, pi)");
    total += turning[i];
  }
  if (std::abs(total - kTwoPi) > kWindingTolerance)
    throw InvalidInput("NormalFan2D: turning angles do not sum to 2 pi");
  std::vector<double> angles(n);
  double a = start;
  for (std::size_t i = 0; i < n; ++i) {
    angles[i] = wrap_angle(a);
    a += turning[i];
  }
  return NormalFan2D(std::move(angles), turning);
}

Eigen::Vector2d NormalFan2D::normal(int i) const {
  const double a = normal_angle(i);
  return {std::cos(a), std::sin(a)};
}

Eigen::Vector2d NormalFan2D::edge_direction(int i) const {
  const double a = normal_angle(i);
  return {-std::sin(a), std::cos(a)};
}

Matrix edge_length_matrix(const NormalFan2D& fan) {
  const int n = fan.size();
  Matrix l = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double before = fan.turning_angle(i - 1);
    const double after = fan.turning_angle(i);
    const int prev = (i + n - 1) % n;
    const int next = (i + 1) % n;
    l(i, prev) += 1 / std::sin(before);
    l(i, next) += 1 / std::sin(after);
    l(i, i) -= 1 / std::tan(before) + 1 / std::tan(after);
  }
  return l;
}

Vector edge_lengths(const NormalFan2D& fan, const Vector& h) {
  require_size(fan, h, "edge_lengths");
  const int n = fan.size();
  Vector l(n);
  for (int i = 0; i < n; ++i) {
    const double before = fan.turning_angle(i - 1);
    const double after = fan.turning_angle(i);
    const double prev = h((i + n - 1) % n);
    const double next = h((i + 1) % n);
    l(i) = (prev - h(i) * std::cos(before)) / std::sin(before) +
           (next - h(i) * std::cos(after)) / std::sin(after);
  }
  return l;
}

ConeMembership cone_membership(const NormalFan2D& fan, const Vector& h) {
  const Vector l = edge_lengths(fan, h);
  const double tol = 1e-12 * h.norm();
  ConeMembership m;
  for (int i = 0; i < l.size(); ++i) {
    if (l(i) < -tol)
      m.negative_edges.push_back(i);
    else if (l(i) <= tol)
      m.degenerate_edges.push_back(i);
  }
  if (!m.negative_edges.empty())
    m.region = ConeRegion::outside;
  else if (!m.degenerate_edges.empty())
    m.region = ConeRegion::boundary;
  else
    m.region = ConeRegion::interior;
  return m;
}

SymmetricForm area_form(const NormalFan2D& fan) {
  return SymmetricForm(0.5 * edge_length_matrix(fan), 1e-12);
}

Vector point_support_vector(const NormalFan2D& fan, const Eigen::Vector2d& x) {
  Vector h(fan.size());
  for (int i = 0; i < fan.size(); ++i) h(i) = x.dot(fan.normal(i));
  return h;
}

std::vector<Eigen::Vector2d> support_polygon_vertices(const NormalFan2D& fan, const Vector& h) {
  require_size(fan, h, "support_polygon_vertices");
  std::vector<Eigen::Vector2d> out;
  out.reserve(static_cast<std::size_t>(fan.size()));
  for (int i = 0; i < fan.size(); ++i) {
    Eigen::Matrix2d a;
    a.row(0) = fan.normal(i).transpose();
    a.row(1) = fan.normal(i + 1).transpose();
    out.emplace_back(a.partialPivLu().solve(Eigen::Vector2d(h(i), h((i + 1) % fan.size()))));
  }
  return out;
}

MinkowskiReport minkowski_check(const NormalFan2D& fan, const Vector& h, const Vector& k,
                                const MinkowskiOptions& options) {
  require_size(fan, h, "minkowski_check");
  require_size(fan, k, "minkowski_check");
  if (cone_membership(fan, h).region == ConeRegion::outside ||
      cone_membership(fan, k).region == ConeRegion::outside)
    throw DomainError("minkowski_check: support vectors must lie in the closed cone");
  const SymmetricForm form = area_form(fan);
  const double qh = form(h);
  const double qk = form(k);
  if (!(qh > 0 && qk > 0)) throw DomainError("minkowski_check: areas must be positive");

  MinkowskiReport r;
  r.inequality_tolerance = options.inequality_tolerance;
  r.equality_tolerance = options.equality_tolerance;
  const double b = form(h, k);
  r.residual = b * b - qh * qk;
  r.scale = std::max(b * b, qh * qk);
  r.inequality_holds = r.residual >= -options.inequality_tolerance * r.scale;
  if (r.residual > options.equality_tolerance * r.scale) return r;

  const int n = fan.size();
  Matrix a(n, 3);
  for (int i = 0; i < n; ++i) {
    a(i, 0) = fan.normal(i).x();
    a(i, 1) = fan.normal(i).y();
    a(i, 2) = k(i);
  }
  const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(h);
  const double fit = (a * sol - h).norm();
  if (fit < options.witness_tolerance * h.norm()) {
    r.status = EqualityStatus::equality_with_witness;
    r.witness = HomothetyWitness2D{sol.head<2>(), sol(2), fit};
  } else {
    r.status = EqualityStatus::equality_without_witness;
  }
  return r;
}

double hyperbolic_distance(const NormalFan2D& fan, const Vector& h, const Vector& k) {
  require_size(fan, h, "hyperbolic_distance");
  require_size(fan, k, "hyperbolic_distance");
  require_interior(fan, h, "hyperbolic_distance");
  require_interior(fan, k, "hyperbolic_distance");
  const SymmetricForm form = area_form(fan);
  const double qh = form(h);
  const double qk = form(k);
  if (!(qh > 0 && qk > 0)) throw DomainError("hyperbolic_distance: areas must be positive");
  const double arg = form(h, k) / std::sqrt(qh * qk);
  if (arg < 1 - 1e-12)
    throw Inconsistency("hyperbolic_distance: normalized pairing below 1 (Minkowski violated)");
  // q(u - w) = 2 - 2 cosh d for unit u, w; symmetric and stable near d = 0.
  const Vector diff = h / std::sqrt(qh) - k / std::sqrt(qk);
  return 2 * std::asinh(std::sqrt(std::max(-form(diff), 0.0)) / 2);
}

HermitianForm shoelace_hermitian_form(int n) {
  if (n < 1) throw InvalidInput("shoelace_hermitian_form: n must be positive");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  const std::complex<double> upper(0, -0.25);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      m(j, k) = upper;
      m(k, j) = std::conj(upper);
    }
  return HermitianForm(m);
}

ChartEmbedding double_chart_embedding(const NormalFan2D& fan, const Vector& h) {
  require_size(fan, h, "double_chart_embedding");
  require_interior(fan, h, "double_chart_embedding");
  const Vector l = edge_lengths(fan, h);
  const int n = fan.size();
  ChartEmbedding out;
  out.z.resize(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d d = fan.edge_direction(i);
    out.z(i) = l(i) * std::complex<double>(d.x(), d.y());
  }
  out.closure_defect = std::abs(out.z.sum());
  if (out.closure_defect > 1e-10 * out.z.norm())
    throw Inconsistency("double_chart_embedding: edge vectors do not close up");
  out.area = shoelace_hermitian_form(n);
  out.chart_area = out.area(out.z);
  return out;
}

ComplexMatrix closure_basis(int n) {
  if (n < 2) throw InvalidInput("closure_basis: n must be at least 2");
  ComplexMatrix p = ComplexMatrix::Zero(n, n - 1);
  for (int i = 0; i < n - 1; ++i) {
    p(i, i) = 1;
    p(n - 1, i) = -1;
  }
  return p;
}

}  // namespace mixedform
