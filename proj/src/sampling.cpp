#include "mixedform/sampling.hpp"

#include <cmath>

#include "mixedform/errors.hpp"

namespace mixedform {

Vector sample_in_cone(const Matrix& lengths, const Vector& base, std::mt19937_64& rng,
                      double spread) {
  const Vector l0 = lengths * base;
  if (l0.minCoeff() <= 0) throw DomainError("sample_in_cone: base point is not in the open cone");
  std::normal_distribution<double> normal;
  Vector u(base.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = normal(rng);
  u *= base.norm() / std::sqrt(static_cast<double>(u.size()));
  const double worst = (lengths * u).cwiseAbs().maxCoeff();
  std::uniform_real_distribution<double> fraction(0, spread);
  const double t = worst > 0 ? fraction(rng) * l0.minCoeff() / worst : 0;
  return base + t * u;
}

Vector uniform_vector(int n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(lo, hi);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

}  // namespace mixedform
