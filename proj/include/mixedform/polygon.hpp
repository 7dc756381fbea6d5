#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mixedform/forms.hpp"

namespace mixedform {

/// Outward normal directions of a convex polygon, in counterclockwise order.
/// turning_angle(i) is the angle from normal i to normal i+1 (mod n); each
/// lies in (0, pi) and they sum to 2 pi.
class NormalFan2D {
 public:
  /// Angles in radians, taken cyclically in the given order.
  static NormalFan2D from_angles(const std::vector<double>& angles);
  static NormalFan2D from_degrees(const std::vector<double>& degrees);
  /// Normal 0 at `start`, normal i+1 = normal i + turning[i].
  static NormalFan2D from_turning_angles(const std::vector<double>& turning, double start = 0);

  int size() const { return static_cast<int>(angles_.size()); }
  double normal_angle(int i) const { return angles_[idx(i)]; }
  Eigen::Vector2d normal(int i) const;
  /// Direction of edge i traversed counterclockwise: the normal rotated by +pi/2.
  Eigen::Vector2d edge_direction(int i) const;
  double turning_angle(int i) const { return turning_[idx(i)]; }
  const std::vector<double>& angles() const { return angles_; }
  const std::vector<double>& turning_angles() const { return turning_; }

 private:
  NormalFan2D(std::vector<double> angles, std::vector<double> turning);
  std::size_t idx(int i) const {
    const int n = size();
    return static_cast<std::size_t>(((i % n) + n) % n);
  }

  std::vector<double> angles_;
  std::vector<double> turning_;
};

/// Matrix L with edge_lengths(fan, h) = L h. Row i has entries only at
/// i-1, i, i+1.
Matrix edge_length_matrix(const NormalFan2D& fan);

/// l_i(h) = (h_{i-1} - h_i cos a) / sin a + (h_{i+1} - h_i cos b) / sin b, with
/// a, b the turning angles before and after edge i. Negative values are kept.
Vector edge_lengths(const NormalFan2D& fan, const Vector& h);

enum class ConeRegion { interior, boundary, outside };

struct ConeMembership {
  ConeRegion region = ConeRegion::outside;
  std::vector<int> degenerate_edges;  // edges with l_i == 0 (boundary only)
  std::vector<int> negative_edges;    // edges with l_i < 0 (outside only)
};

/// Classifies h by the signs of l_i(h) with tolerance 1e-12 * ||h||.
ConeMembership cone_membership(const NormalFan2D& fan, const Vector& h);

/// Area form: h^T M k = (1/2) sum_i h_i l_i(k). The unsymmetrized matrix must
/// already be symmetric (ConsistencyError otherwise).
SymmetricForm area_form(const NormalFan2D& fan);

/// h^x_i = <x, u_i>.
Vector point_support_vector(const NormalFan2D& fan, const Eigen::Vector2d& x);

/// Vertices of the polygon with support numbers h; vertex i joins edge i and
/// edge i+1.
std::vector<Eigen::Vector2d> support_polygon_vertices(const NormalFan2D& fan, const Vector& h);

/// h = h^x + lambda * k.
struct HomothetyWitness2D {
  Eigen::Vector2d translation;
  double scale = 0;
  double fit_residual = 0;
};

enum class EqualityStatus { strict, equality_with_witness, equality_without_witness };

struct MinkowskiReport {
  double residual = 0;  // b(h,k)^2 - q(h) q(k)
  double scale = 0;
  double inequality_tolerance = 1e-12;
  double equality_tolerance = 1e-10;
  bool inequality_holds = true;
  EqualityStatus status = EqualityStatus::strict;
  std::optional<HomothetyWitness2D> witness;
};

struct MinkowskiOptions {
  double inequality_tolerance = 1e-12;  // residual >= -tol * scale
  double equality_tolerance = 1e-10;    // residual < tol * scale counts as equality
  double witness_tolerance = 1e-7;      // fit residual < tol * ||h||
};

/// Minkowski inequality check with equality-case witness search. Requires
/// h, k in the closed cone with q(h), q(k) > 0 (DomainError otherwise).
MinkowskiReport minkowski_check(const NormalFan2D& fan, const Vector& h, const Vector& k,
                                const MinkowskiOptions& options = {});

/// arccosh(b(h,k) / sqrt(q(h) q(k))) for interior h, k.
double hyperbolic_distance(const NormalFan2D& fan, const Vector& h, const Vector& k);

struct ChartEmbedding {
  ComplexVector z;           // z_i = l_i(h) e^{i psi_i}
  HermitianForm area;        // A(z) = (1/2) Im sum_{j<k} conj(z_j) z_k
  double closure_defect = 0; // |sum z_i|
  double chart_area = 0;     // A(z)
};

/// Shoelace Hermitian form on C^n.
HermitianForm shoelace_hermitian_form(int n);

/// Complex edge vectors of the polygon with support numbers h (interior h).
ChartEmbedding double_chart_embedding(const NormalFan2D& fan, const Vector& h);

/// Basis of the closure hyperplane {sum z = 0}: z_n = -(z_1 + ... + z_{n-1}).
ComplexMatrix closure_basis(int n);

}  // namespace mixedform
