#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace mixedform {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultZeroThreshold = 1e-9;

/// Inertia counts of a form. `zero_threshold` is the relative tolerance the
/// counts were computed with.
struct Signature {
  int positive = 0;
  int zero = 0;
  int negative = 0;
  double zero_threshold = kDefaultZeroThreshold;

  int dim() const { return positive + zero + negative; }
  bool same_counts(int p, int z, int n) const {
    return positive == p && zero == z && negative == n;
  }
  friend bool operator==(const Signature& a, const Signature& b) {
    return a.positive == b.positive && a.zero == b.zero && a.negative == b.negative;
  }
};

/// Dense symmetric bilinear form. Entries are stored exactly symmetric.
class SymmetricForm {
 public:
  SymmetricForm() = default;

  /// Throws ConsistencyError if `entries` deviates from symmetry by more than
  /// `symmetry_tolerance` times its largest entry; stores (M + M^T) / 2.
  explicit SymmetricForm(const Matrix& entries, double symmetry_tolerance = 1e-12);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

  double operator()(const Vector& h, const Vector& k) const;
  double operator()(const Vector& h) const { return (*this)(h, h); }

 private:
  Matrix entries_;
};

/// Fully symmetric 3-tensor, stored densely as dim^3 values.
class TrilinearForm {
 public:
  TrilinearForm() = default;

  /// `entries(i, j, k)` at index (i * dim + j) * dim + k. Throws
  /// ConsistencyError when the tensor is not symmetric under index
  /// permutations within `symmetry_tolerance` relative to its largest entry;
  /// stores the average over the six permutations.
  TrilinearForm(int dim, std::vector<double> entries, double symmetry_tolerance = 1e-10);

  int dim() const { return dim_; }
  double entry(int i, int j, int k) const {
    return entries_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)];
  }
  const std::vector<double>& entries() const { return entries_; }

  double operator()(const Vector& h, const Vector& k, const Vector& p) const;
  double operator()(const Vector& h) const { return (*this)(h, h, h); }

  /// The bilinear form (k, p) -> T(h, k, p).
  Matrix contract(const Vector& h) const;

 private:
  int dim_ = 0;
  std::vector<double> entries_;
};

/// Hermitian form z -> z^* H z on C^n.
class HermitianForm {
 public:
  HermitianForm() = default;
  explicit HermitianForm(const ComplexMatrix& entries, double tolerance = 1e-12);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }

  std::complex<double> operator()(const ComplexVector& z, const ComplexVector& w) const;
  double operator()(const ComplexVector& z) const;

  /// Pullback along the linear map `basis` (columns span a subspace).
  HermitianForm restricted(const ComplexMatrix& basis) const;

 private:
  ComplexMatrix entries_;
};

/// Counts eigenvalues above, within and below +/- tau where
/// tau = zero_threshold * spectral radius (or zero_threshold for the zero form).
Signature signature(const SymmetricForm& form, double zero_threshold = kDefaultZeroThreshold);
Signature signature(const HermitianForm& form, double zero_threshold = kDefaultZeroThreshold);

/// Eigenvalues (ascending) from the Jacobi solver.
Vector eigenvalues(const SymmetricForm& form);

using QuadraticEvaluator = std::function<double(const Vector&)>;
using CubicEvaluator = std::function<double(const Vector&)>;

/// b(h, k) = (q(h + k) - q(h) - q(k)) / 2, assembled on the standard basis.
/// Throws ContractViolation if q fails a stochastic degree-2 homogeneity
/// check or the result does not reproduce q.
SymmetricForm polarize(const QuadraticEvaluator& q, int dim);

/// 6 v(a, b, c) = v(a+b+c) + v(a) + v(b) + v(c) - v(a+b) - v(b+c) - v(a+c).
TrilinearForm polarize_cubic(const CubicEvaluator& v, int dim);

/// b(h, k)^2 - q(h) q(k). Requires q(h) > 0 (DomainError otherwise).
double lorentz_cauchy_schwarz_residual(const SymmetricForm& form, const Vector& h,
                                       const Vector& k);

struct AbcResiduals {
  double a = 0;
  double b = 0;
  double c = 0;
};

/// A = b(1,3)^2 - q(1)q(3), B = b(2,3)q(1) - b(1,2)b(1,3), C = b(1,2)^2 - q(1)q(2).
AbcResiduals abc_lemma_residuals(const SymmetricForm& area, const Vector& h1,
                                 const Vector& h2, const Vector& h3);

/// max(|b(h,k)|^2, |q(h) q(k)|): the magnitude residuals are compared against.
double pairing_scale(const SymmetricForm& form, const Vector& h, const Vector& k);

}  // namespace mixedform
