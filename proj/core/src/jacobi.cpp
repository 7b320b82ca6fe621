#include "jacobi.hpp"

#include <cmath>
#include <string>

#include "ejaopt/errors.hpp"

namespace ejaopt::detail {
namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

SymmetricEigen jacobi_eigen(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  SymmetricEigen out;
  out.vectors = Eigen::MatrixXd::Identity(n, n);

  const double threshold = kJacobiRelTol * a.norm();
  for (int sweep = 0;; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      out.sweeps = sweep;
      break;
    }
    if (sweep == kJacobiMaxSweeps) {
      throw ConvergenceError("jacobi_eigen: no convergence after " +
                             std::to_string(kJacobiMaxSweeps) + " sweeps");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle chosen to annihilate a(p,q), smaller root for t.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = out.vectors(k, p);
          const double vkq = out.vectors(k, q);
          out.vectors(k, p) = c * vkp - s * vkq;
          out.vectors(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  out.values = a.diagonal();
  return out;
}

}  // namespace ejaopt::detail
