#include "ejaopt/condition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ejaopt/majorization.hpp"
#include "ejaopt/schur_functions.hpp"

namespace ejaopt {

Eigen::VectorXd phi(const Eigen::VectorXd& u) {
  if (u.size() == 0 || !u.allFinite() || u.minCoeff() <= 0.0) {
    throw DomainError("phi: every entry must be positive and finite");
  }
  const Eigen::VectorXd s = sort_desc(u);
  const Eigen::Index n = s.size();
  Eigen::VectorXd k(n / 2);
  for (Eigen::Index i = 0; i < n / 2; ++i) k(i) = s(i) / s(n - 1 - i);
  return k;
}

ConditionReport condition_report_from_spectrum(const Eigen::VectorXd& spectrum, double tol) {
  if (spectrum.size() == 0 || !(spectrum.minCoeff() > tol)) {
    throw DomainError("condition_report: element is not in the interior of the cone (smallest eigenvalue " +
                      std::to_string(spectrum.size() ? spectrum.minCoeff() : 0.0) + ")");
  }
  ConditionReport r;
  r.cond = spectrum.maxCoeff() / spectrum.minCoeff();
  r.kappa = phi(spectrum);
  r.kappa_norm = r.kappa.norm();
  const Eigen::Index half = spectrum.size() / 2;
  if (half == 0) {
    r.bounds_ok = true;  // rank 1: no ratios, nothing to compare
  } else {
    const double slack = 1e-12 * r.kappa_norm;
    r.bounds_ok = r.kappa_norm / std::sqrt(static_cast<double>(half)) <= r.cond + slack &&
                  r.cond <= r.kappa_norm + slack;
  }
  return r;
}

ConditionReport condition_report(const Element& x, double tol) {
  return condition_report_from_spectrum(eigenvalues(x), tol);
}

bool orbit_shift_in_cone(const Eigen::VectorXd& lam_b, const Eigen::VectorXd& lam_a, double tol) {
  if (lam_b.size() != lam_a.size() || lam_b.size() == 0) {
    throw AlgebraMismatch("orbit_shift_in_cone: spectra of different length");
  }
  return lam_b.minCoeff() + lam_a.minCoeff() > tol;
}

Solution minimize_condition_norm_orbit(const Element& b, const Element& a, double tol) {
  const Algebra& alg = a.algebra();
  if (b.algebra() != alg) throw AlgebraMismatch("minimize_condition_norm_orbit: a and b in different algebras");
  const Eigen::VectorXd lam_b = eigenvalues(b);
  if (!orbit_shift_in_cone(lam_b, eigenvalues(a), tol)) {
    throw InfeasibleError("minimize_condition_norm_orbit: lambda_n(b) + lambda_n(a) <= tol, so [b] + a is not "
                          "known to stay in the interior of the cone");
  }

  // ||κ(x + a)|| = ||φ(λ(x − (−a)))||: minimizing over [b] against the shift −a.
  const OrbitProblem shifted{alg, condition_vector_norm(), -a, EigenvalueOrbit{b}, Sense::kMin};
  Solution sol = solve_orbit_global(shifted, tol);
  sol.certificate = certify(a, sol.x_star, CertificateKind::kStrongCommuteWithNegA, tol);
  if (!alg.is_simple()) {
    sol.certificate = certify(a, sol.x_star, CertificateKind::kOperatorCommute, tol);
    sol.warnings.push_back("non-simple algebra: certificate downgraded to operator commutation");
  }
  return sol;
}

std::vector<PairingValue> condition_pairings(const Eigen::VectorXd& lam_b, const Eigen::VectorXd& lam_a) {
  const Eigen::Index n = lam_b.size();
  if (lam_a.size() != n) throw AlgebraMismatch("condition_pairings: spectra of different length");
  if (n > 9) throw DomainError("condition_pairings: n > 9 is too large for enumeration");
  std::vector<PairingValue> out;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Eigen::VectorXd sum(n);
  do {
    for (Eigen::Index i = 0; i < n; ++i) sum(i) = lam_b(perm[static_cast<std::size_t>(i)]) + lam_a(i);
    const double value = sum.minCoeff() > 0.0 ? phi(sum).norm() : std::numeric_limits<double>::infinity();
    out.push_back({perm, value});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace ejaopt
