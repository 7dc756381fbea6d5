#pragma once

#include <Eigen/Dense>

namespace mixedform {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns; empty unless requested
  int sweeps = 0;
  double off_diagonal = 0;  // Frobenius norm of the off-diagonal at exit
};

/// Cyclic Jacobi diagonalization of a symmetric matrix. Sweeps until the
/// off-diagonal Frobenius norm drops below `relative_residual * ||A||_F`.
/// Only the upper triangle of `a` is read.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, bool want_vectors = false,
                            double relative_residual = 1e-14);

}  // namespace mixedform
