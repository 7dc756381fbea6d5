#pragma once

#include <random>

#include "mixedform/forms.hpp"

namespace mixedform {

/// Random point of the open cone {h : L h > 0} near `base` (which must lie in
/// it): base + t u with u Gaussian of norm ~ ||base|| and t chosen so that
/// every length keeps at least (1 - spread) of its value at `base`.
Vector sample_in_cone(const Matrix& lengths, const Vector& base, std::mt19937_64& rng,
                      double spread = 0.9);

/// Uniform point in [lo, hi]^n.
Vector uniform_vector(int n, double lo, double hi, std::mt19937_64& rng);

}  // namespace mixedform
