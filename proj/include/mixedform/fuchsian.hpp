#pragma once

#include <optional>
#include <vector>

#include "mixedform/forms.hpp"
#include "mixedform/polygon.hpp"

namespace mixedform {

/// Directed adjacency of a face class across an edge of the Gamma-polyhedron.
/// `phi` is the hyperbolic distance between the two face normals; `omega` is
/// the in-face turning angle from this edge's normal to the next one's.
struct Adjacency {
  int to = 0;
  double phi = 0;
  double omega = 0;
};

/// Face classes of a Gamma-polyhedron modulo Gamma with their adjacency
/// multigraph. Parallel entries and self-adjacencies (to == own class) are
/// allowed. Only local consistency is validated.
class QuotientFan {
 public:
  /// Validates phi > 0, the pairing of directed entries, the per-face fans and
  /// Euler bookkeeping; `vertices` (when known) must satisfy
  /// n - E + m = 2 - 2g. Throws InvalidInput / StructuralError.
  static QuotientFan build(int genus, std::vector<std::vector<Adjacency>> faces,
                           std::optional<int> vertices = std::nullopt);

  int face_count() const { return static_cast<int>(faces_.size()); }
  int genus() const { return genus_; }
  int edge_count() const { return edge_count_; }
  int vertex_count() const { return vertex_count_; }
  /// Every vertex trivalent (2E = 3n); then m = n/2 + 2 - 2g.
  bool simple() const { return 2 * edge_count_ == 3 * vertex_count_; }
  const std::vector<Adjacency>& adjacencies(int i) const { return faces_[idx(i)]; }
  const NormalFan2D& face_fan(int i) const { return fans_[idx(i)]; }

 private:
  QuotientFan() = default;
  static std::size_t idx(int i) { return static_cast<std::size_t>(i); }

  int genus_ = 0;
  int edge_count_ = 0;
  int vertex_count_ = 0;
  std::vector<std::vector<Adjacency>> faces_;
  std::vector<NormalFan2D> fans_;
};

/// h_ik = -(h_j - h_i cosh phi) / sinh phi along face i's cycle (j = to).
Vector face_support_numbers_lorentz(const QuotientFan& fan, const Vector& h, int face);

/// Linear map h -> h_{i.} (deg_i x m).
Matrix lorentz_support_matrix(const QuotientFan& fan, int face);

/// Edge lengths of face i in cycle order.
Vector face_edge_lengths(const QuotientFan& fan, const Vector& h, int face);

/// All edge lengths as one linear map of h: rows follow faces, then cycle order.
Matrix edge_length_operator(const QuotientFan& fan);

/// Distances along edge j from the foot of the origin's projection to its two
/// endpoints: column 0 toward edge j-1, column 1 toward edge j+1.
Matrix face_edge_half_lengths(const QuotientFan& fan, const Vector& h, int face);

/// All l_ik > tol (interior) / >= -tol (closed), tol = 1e-12 ||h||.
bool in_open_cone(const QuotientFan& fan, const Vector& h);
bool in_closed_cone(const QuotientFan& fan, const Vector& h);

/// covol(h, k, p) = (1/3) sum_i h_i a_{F_i}(k_{i.}, p_{i.}); ConsistencyError on
/// a symmetry defect above 1e-10.
TrilinearForm covolume_form(const QuotientFan& fan);
double covolume(const QuotientFan& fan, const Vector& h);

struct HessianReport {
  SymmetricForm hessian;
  double dominance_margin = 0;    // min_i (H_ii - sum_{j != i} |H_ij|)
  double min_diagonal = 0;
  double min_eigenvalue = 0;
  double symmetry_defect = 0;     // max |H - H^T| / max |H|
  double cross_check_defect = 0;  // max |H - 6 covol(., ., h)| / max |H|
};

/// Jacobian of the face areas for h in the open cone (DomainError otherwise),
/// assembled edge by edge. ConsistencyError when it is not symmetric or
/// differs from 6 covol(., ., h) by more than 1e-10 relative.
HessianReport covolume_hessian(const QuotientFan& fan, const Vector& h);

/// area(h) = sum_i a_{F_i}(h_{i.}), cross-checked against 3 covol(1, ., .).
SymmetricForm fuchsian_area_form(const QuotientFan& fan);

struct DefinitenessReport {
  SymmetricForm form;
  Vector eigenvalues;
  double min_eigenvalue = 0;
  bool positive_definite = false;
  Vector counterexample;  // eigenvector of the smallest eigenvalue when not PD
};

/// PD test for fuchsian_area_form (min eigenvalue > 1e-12 * spectral radius).
DefinitenessReport check_positive_definite(const QuotientFan& fan);

/// arccos of the normalized area pairing for h, k in the open cone.
/// Inconsistency when the cosine exceeds 1 + 1e-12.
double spherical_distance(const QuotientFan& fan, const Vector& h, const Vector& k);

struct ReversedCauchySchwarzReport {
  double residual = 0;  // q(h) q(k) - b(h,k)^2, >= 0 for a PD form
  double scale = 0;
  bool inequality_holds = true;
  double lambda = 0;  // b(h,k) / q(h)
  double homothety_defect = 0;  // ||k - lambda h|| / ||k||
  bool homothetic = false;  // defect <= 1e-7
};

ReversedCauchySchwarzReport reversed_cauchy_schwarz_check(const SymmetricForm& area,
                                                          const Vector& h, const Vector& k,
                                                          double inequality_tolerance = 1e-12);

}  // namespace mixedform
