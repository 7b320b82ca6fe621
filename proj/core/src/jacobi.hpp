#pragma once

#include <Eigen/Dense>

namespace ejaopt::detail {

struct SymmetricEigen {
  Eigen::VectorXd values;   // in the order the sweeps leave them (unsorted)
  Eigen::MatrixXd vectors;  // columns
  int sweeps = 0;
};

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiRelTol = 1e-13;

/// Cyclic Jacobi rotations. Stops when the off-diagonal Frobenius mass is
/// at most kJacobiRelTol * ||A||_F; throws ConvergenceError after
/// kJacobiMaxSweeps sweeps.
SymmetricEigen jacobi_eigen(Eigen::MatrixXd a);

}  // namespace ejaopt::detail
