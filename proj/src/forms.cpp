#include "mixedform/forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "mixedform/eigen.hpp"
#include "mixedform/errors.hpp"

namespace mixedform {
namespace {

// Homogeneity probes: 16 random samples, scale factors 1/2 and 2.
constexpr int kHomogeneitySamples = 16;
constexpr std::array<double, 2> kHomogeneityScales{0.5, 2.0};
constexpr double kHomogeneityTolerance = 1e-10;
constexpr double kReproductionTolerance = 1e-10;
constexpr std::uint64_t kProbeSeed = 0x5eed'f0'12'34ULL;

Vector random_vector(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = u(rng);
  return v;
}

void check_homogeneous(const std::function<double(const Vector&)>& f, int dim, int degree,
                       const char* who) {
  std::mt19937_64 rng(kProbeSeed);
  for (int s = 0; s < kHomogeneitySamples; ++s) {
    const Vector h = random_vector(rng, dim);
    const double base = f(h);
    for (double t : kHomogeneityScales) {
      const double scaled = f(t * h);
      const double expected = std::pow(t, degree) * base;
      if (!std::isfinite(scaled) || !std::isfinite(base))
        throw InvalidInput(std::string(who) + ": evaluator returned a non-finite value");
      const double tol =
          kHomogeneityTolerance * std::max({std::abs(scaled), std::abs(expected), 1e-300});
      if (std::abs(scaled - expected) > tol)
        throw ContractViolation(std::string(who) + ": evaluator is not homogeneous of degree " +
                                std::to_string(degree));
    }
  }
}

std::size_t flat(int dim, int i, int j, int k) {
  return static_cast<std::size_t>((i * dim + j) * dim + k);
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

SymmetricForm::SymmetricForm(const Matrix& entries, double symmetry_tolerance) {
  if (entries.rows() != entries.cols())
    throw InvalidInput("SymmetricForm: matrix is not square");
  if (!entries.allFinite()) throw InvalidInput("SymmetricForm: non-finite entries");
  const double defect = max_abs(entries - entries.transpose());
  if (defect > symmetry_tolerance * max_abs(entries))
    throw ConsistencyError("SymmetricForm: asymmetry " + std::to_string(defect) +
                           " exceeds tolerance");
  entries_ = 0.5 * (entries + entries.transpose());
}

double SymmetricForm::operator()(const Vector& h, const Vector& k) const {
  return h.dot(entries_ * k);
}

TrilinearForm::TrilinearForm(int dim, std::vector<double> entries, double symmetry_tolerance)
    : dim_(dim) {
  if (dim < 0 || entries.size() != static_cast<std::size_t>(dim) * dim * dim)
    throw InvalidInput("TrilinearForm: entry count does not match dim^3");
  double largest = 0;
  for (double e : entries) {
    if (!std::isfinite(e)) throw InvalidInput("TrilinearForm: non-finite entries");
    largest = std::max(largest, std::abs(e));
  }
  entries_.assign(entries.size(), 0.0);
  double defect = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        const std::array<double, 6> perm{
            entries[flat(dim, i, j, k)], entries[flat(dim, i, k, j)],
            entries[flat(dim, j, i, k)], entries[flat(dim, j, k, i)],
            entries[flat(dim, k, i, j)], entries[flat(dim, k, j, i)]};
        const auto [lo, hi] = std::minmax_element(perm.begin(), perm.end());
        defect = std::max(defect, *hi - *lo);
        double sum = 0;
        for (double p : perm) sum += p;
        entries_[flat(dim, i, j, k)] = sum / 6;
      }
  if (defect > symmetry_tolerance * largest)
    throw ConsistencyError("TrilinearForm: symmetry defect " + std::to_string(defect) +
                           " exceeds tolerance");
}

double TrilinearForm::operator()(const Vector& h, const Vector& k, const Vector& p) const {
  return h.dot(contract(k) * p);
}

Matrix TrilinearForm::contract(const Vector& h) const {
  Matrix out = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (h(i) == 0) continue;
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) out(j, k) += h(i) * entry(i, j, k);
  }
  return out;
}

HermitianForm::HermitianForm(const ComplexMatrix& entries, double tolerance) {
  if (entries.rows() != entries.cols())
    throw InvalidInput("HermitianForm: matrix is not square");
  if (!entries.allFinite()) throw InvalidInput("HermitianForm: non-finite entries");
  const ComplexMatrix adjoint = entries.adjoint();
  const double largest = entries.size() == 0 ? 0.0 : entries.cwiseAbs().maxCoeff();
  const double defect = entries.size() == 0 ? 0.0 : (entries - adjoint).cwiseAbs().maxCoeff();
  if (defect > tolerance * largest)
    throw ConsistencyError("HermitianForm: matrix is not conjugate-symmetric");
  entries_ = 0.5 * (entries + adjoint);
}

std::complex<double> HermitianForm::operator()(const ComplexVector& z,
                                               const ComplexVector& w) const {
  return z.dot(entries_ * w);  // Eigen's dot conjugates the left operand
}

double HermitianForm::operator()(const ComplexVector& z) const { return (*this)(z, z).real(); }

HermitianForm HermitianForm::restricted(const ComplexMatrix& basis) const {
  return HermitianForm(basis.adjoint() * entries_ * basis);
}

namespace {

Signature count_signs(const Vector& values, double zero_threshold, int multiplicity) {
  const double radius = values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
  const double tau = radius > 0 ? zero_threshold * radius : zero_threshold;
  Signature s;
  s.zero_threshold = zero_threshold;
  for (double v : values) {
    if (v > tau)
      ++s.positive;
    else if (v < -tau)
      ++s.negative;
    else
      ++s.zero;
  }
  s.positive /= multiplicity;
  s.zero /= multiplicity;
  s.negative /= multiplicity;
  return s;
}

void check_threshold(double zero_threshold) {
  if (!(zero_threshold > 0 && zero_threshold < 1))
    throw InvalidInput("signature: zero_threshold must lie in (0, 1)");
}

}  // namespace

Vector eigenvalues(const SymmetricForm& form) { return jacobi_eigen(form.entries()).values; }

Signature signature(const SymmetricForm& form, double zero_threshold) {
  check_threshold(zero_threshold);
  return count_signs(eigenvalues(form), zero_threshold, 1);
}

Signature signature(const HermitianForm& form, double zero_threshold) {
  check_threshold(zero_threshold);
  // H = A + iB acts on R^2n as [[A, -B], [B, A]]; each eigenvalue appears twice.
  const int n = form.dim();
  const Matrix a = form.entries().real();
  const Matrix b = form.entries().imag();
  Matrix real(2 * n, 2 * n);
  real << a, -b, b, a;
  return count_signs(jacobi_eigen(real).values, zero_threshold, 2);
}

SymmetricForm polarize(const QuadraticEvaluator& q, int dim) {
  if (dim <= 0) throw InvalidInput("polarize: dim must be positive");
  check_homogeneous(q, dim, 2, "polarize");

  Matrix m(dim, dim);
  Vector diag(dim);
  for (int i = 0; i < dim; ++i) diag(i) = q(Vector::Unit(dim, i));
  for (int i = 0; i < dim; ++i) {
    m(i, i) = diag(i);
    for (int j = i + 1; j < dim; ++j) {
      const double mixed =
          0.5 * (q(Vector::Unit(dim, i) + Vector::Unit(dim, j)) - diag(i) - diag(j));
      m(i, j) = m(j, i) = mixed;
    }
  }
  SymmetricForm form(m, 0.0);

  std::mt19937_64 rng(kProbeSeed + 1);
  for (int s = 0; s < kHomogeneitySamples; ++s) {
    const Vector h = random_vector(rng, dim);
    const double scale = h.cwiseAbs().dot(form.entries().cwiseAbs() * h.cwiseAbs());
    if (std::abs(form(h) - q(h)) > kReproductionTolerance * std::max(scale, 1e-300))
      throw ContractViolation("polarize: polarization does not reproduce the evaluator");
  }
  return form;
}

TrilinearForm polarize_cubic(const CubicEvaluator& v, int dim) {
  if (dim <= 0) throw InvalidInput("polarize_cubic: dim must be positive");
  check_homogeneous(v, dim, 3, "polarize_cubic");

  auto e = [dim](int i) { return Vector::Unit(dim, i); };
  std::vector<double> single(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) single[static_cast<std::size_t>(i)] = v(e(i));
  Matrix pair(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) pair(i, j) = pair(j, i) = v(e(i) + e(j));

  std::vector<double> t(static_cast<std::size_t>(dim) * dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      for (int k = j; k < dim; ++k) {
        const auto si = single[static_cast<std::size_t>(i)];
        const auto sj = single[static_cast<std::size_t>(j)];
        const auto sk = single[static_cast<std::size_t>(k)];
        const double value =
            (v(e(i) + e(j) + e(k)) + si + sj + sk - pair(i, j) - pair(j, k) - pair(i, k)) / 6;
        for (auto [a, b, c] : {std::array{i, j, k}, std::array{i, k, j}, std::array{j, i, k},
                               std::array{j, k, i}, std::array{k, i, j}, std::array{k, j, i}})
          t[flat(dim, a, b, c)] = value;
      }
  TrilinearForm form(dim, std::move(t), 0.0);

  std::mt19937_64 rng(kProbeSeed + 2);
  for (int s = 0; s < kHomogeneitySamples; ++s) {
    const Vector h = random_vector(rng, dim);
    const Vector a = h.cwiseAbs();
    double scale = 0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) scale += a(i) * a(j) * a(k) * std::abs(form.entry(i, j, k));
    if (std::abs(form(h) - v(h)) > kReproductionTolerance * std::max(scale, 1e-300))
      throw ContractViolation("polarize_cubic: polarization does not reproduce the evaluator");
  }
  return form;
}

double lorentz_cauchy_schwarz_residual(const SymmetricForm& form, const Vector& h,
                                       const Vector& k) {
  const double qh = form(h);
  if (!(qh > 0)) throw DomainError("lorentz_cauchy_schwarz_residual: q(h) must be positive");
  const double b = form(h, k);
  return b * b - qh * form(k);
}

AbcResiduals abc_lemma_residuals(const SymmetricForm& area, const Vector& h1, const Vector& h2,
                                 const Vector& h3) {
  if (!h1.allFinite() || !h2.allFinite() || !h3.allFinite())
    throw InvalidInput("abc_lemma_residuals: non-finite input");
  const double q1 = area(h1);
  const double q2 = area(h2);
  const double q3 = area(h3);
  const double b12 = area(h1, h2);
  const double b13 = area(h1, h3);
  const double b23 = area(h2, h3);
  return {b13 * b13 - q1 * q3, b23 * q1 - b12 * b13, b12 * b12 - q1 * q2};
}

double pairing_scale(const SymmetricForm& form, const Vector& h, const Vector& k) {
  const double b = form(h, k);
  return std::max(b * b, std::abs(form(h) * form(k)));
}

}  // namespace mixedform
