#pragma once

#include <Eigen/Dense>

#include "anchorex/errors.hpp"

namespace anchorex {

struct SymmetricEigen {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // orthonormal columns, vectors.col(i) <-> values(i)
};

// Cyclic Jacobi with threshold pivoting; deterministic sweep order. Throws
// NumericalError if 100 sweeps do not converge, ValidationError if the input
// is not symmetric within 1e-10 relative.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& m);

// Lower Cholesky factor of an SPD matrix; retries once with diagonal jitter
// 1e-12 * trace/d, then throws SingularGram.
Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& a);

}  // namespace anchorex
