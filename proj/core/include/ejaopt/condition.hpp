#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ejaopt/algebra.hpp"
#include "ejaopt/orbit_opt.hpp"

namespace ejaopt {

/// Condition number, condition vector and their comparison bounds for an
/// element of the interior of the symmetric cone.
struct ConditionReport {
  double cond = 0.0;
  Eigen::VectorXd kappa;  // length floor(n/2), non-increasing
  double kappa_norm = 0.0;
  bool bounds_ok = false;
};

/// (u↓_i / u↓_{n-i+1}) for i = 1..floor(n/2). Throws DomainError unless
/// every entry is positive.
Eigen::VectorXd phi(const Eigen::VectorXd& u);

ConditionReport condition_report_from_spectrum(const Eigen::VectorXd& spectrum,
                                               double tol = kDefaultTol);

/// Throws DomainError unless λ_n(x) > tol.
ConditionReport condition_report(const Element& x, double tol = kDefaultTol);

/// Sufficient test for [b] + a lying in the open cone: λ_n(b) + λ_n(a) > tol.
bool orbit_shift_in_cone(const Eigen::VectorXd& lam_b, const Eigen::VectorXd& lam_a,
                         double tol = kDefaultTol);

/// min over x in [b] of ||κ(x + a)||: pairs the largest eigenvalues of b with
/// the smallest of a on a's frame. Solution::value is ||φ(λ(b) − λ(−a))||
/// and x_star is the optimizer x̄ (not x̄ + a).
Solution minimize_condition_norm_orbit(const Element& b, const Element& a,
                                       double tol = kDefaultTol);

struct PairingValue {
  std::vector<int> perm;  // perm[i] = index of λ(b) paired with λ_i(a)
  double value = 0.0;
};

/// Every pairing of λ(b) with λ(a) and its ||φ(λ_perm(b) + λ(a))||, in
/// lexicographic order. n <= 9.
std::vector<PairingValue> condition_pairings(const Eigen::VectorXd& lam_b,
                                             const Eigen::VectorXd& lam_a);

}  // namespace ejaopt
