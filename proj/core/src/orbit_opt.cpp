#include "ejaopt/orbit_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ejaopt/majorization.hpp"
#include "orbit_detail.hpp"

namespace ejaopt {

const char* to_string(Sense sense) { return sense == Sense::kMin ? "min" : "max"; }

const char* to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::kOperatorCommute:
      return "operator_commute";
    case CertificateKind::kStrongCommuteWithA:
      return "strong_commute_with_a";
    case CertificateKind::kStrongCommuteWithNegA:
      return "strong_commute_with_neg_a";
  }
  return "operator_commute";
}

double Certificate::deciding_residual() const {
  const char* key = "commutator_norm";
  if (kind == CertificateKind::kStrongCommuteWithA) key = "gap_a";
  if (kind == CertificateKind::kStrongCommuteWithNegA) key = "gap_neg_a";
  const auto it = residuals.find(key);
  return it == residuals.end() ? 0.0 : it->second;
}

Certificate certify(const Element& a, const Element& x, CertificateKind kind, double tol) {
  Certificate cert;
  cert.kind = kind;
  cert.tol = tol;
  const double na = norm(a);
  const double nx = norm(x);
  cert.residuals["commutator_norm"] = commutator_norm(a, x);
  cert.residuals["gap_a"] = strong_commute_gap(a, x);
  cert.residuals["gap_neg_a"] = strong_commute_gap(-a, x);

  const double scale = kind == CertificateKind::kOperatorCommute ? (1.0 + na) * (1.0 + nx) : 1.0 + na * nx;
  cert.passed = cert.deciding_residual() <= tol * scale;
  return cert;
}

CertificateKind predicted_certificate(Sense sense, bool simple_algebra) {
  if (!simple_algebra) return CertificateKind::kOperatorCommute;
  return sense == Sense::kMin ? CertificateKind::kStrongCommuteWithA : CertificateKind::kStrongCommuteWithNegA;
}

PermutationOptimum permutation_oracle(const SymmetricFunction& fn, const Eigen::VectorXd& lam_b,
                                      const Eigen::VectorXd& lam_a, Sense sense) {
  const Eigen::Index n = lam_b.size();
  if (lam_a.size() != n) throw AlgebraMismatch("permutation_oracle: spectra of different length");
  if (n > 9) throw DomainError("permutation_oracle: n > 9 is too large for enumeration");

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  PermutationOptimum best;
  bool found = false;
  Eigen::VectorXd shifted(n);
  do {
    for (Eigen::Index i = 0; i < n; ++i) shifted(i) = lam_b(perm[static_cast<std::size_t>(i)]) - lam_a(i);
    if (!fn.in_domain(shifted)) continue;
    const double value = fn(shifted);
    const bool better = !found || (sense == Sense::kMin ? value < best.value : value > best.value);
    if (better) {
      best.value = value;
      best.perm = perm;
      found = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!found) throw InfeasibleError("permutation_oracle: every pairing leaves the function's domain");
  return best;
}

bool orbit_in_domain(const SymmetricFunction& fn, const Eigen::VectorXd& lam_b,
                     const Eigen::VectorXd& lam_a) {
  if (fn.domain() == FunctionDomain::kAll || lam_b.size() == 0) return true;
  // Weyl: λ_n(x - a) >= λ_n(x) - λ_1(a), attained on the orbit.
  return lam_b.minCoeff() - lam_a.maxCoeff() > 0.0;
}

namespace detail {

void require_objective(const OrbitProblem& problem, bool strict, const char* who) {
  const SymmetricFunction& fn = problem.fn;
  if (fn.arity() && *fn.arity() != problem.algebra.rank()) {
    throw AlgebraMismatch(std::string(who) + ": function arity differs from the algebra rank");
  }
  if (problem.a.algebra() != problem.algebra) {
    throw AlgebraMismatch(std::string(who) + ": a does not belong to " + problem.algebra.to_string());
  }
  if (strict && !fn.is_strict()) {
    throw HypothesisError(std::string(who) + ": " + fn.describe() +
                          " is not declared strictly Schur-convex; use local search instead");
  }
  if (!strict && fn.declared_class() == SchurClass::kNone) {
    throw HypothesisError(std::string(who) + ": " + fn.describe() + " is not Schur-convex");
  }
}

Solution aligned_solution(const OrbitProblem& problem, const Eigen::VectorXd& spectrum, double tol) {
  const Element& a = problem.a;
  Solution sol{Element::zero(problem.algebra), 0.0, {}, 0, {}, true, {}};
  if (problem.sense == Sense::kMin) {
    const SpectralDecomposition sd = spectral_decompose(a);
    sol.x_star = synthesize_from_frame(sd.frame, spectrum, std::max(tol, 1e-9));
    sol.value = problem.fn(spectrum - sd.eigenvalues);
    sol.certificate = certify(a, sol.x_star, CertificateKind::kStrongCommuteWithA, tol);
  } else {
    const SpectralDecomposition sd = spectral_decompose(-a);
    sol.x_star = synthesize_from_frame(sd.frame, spectrum, std::max(tol, 1e-9));
    sol.value = problem.fn(spectrum + sd.eigenvalues);
    sol.certificate = certify(a, sol.x_star, CertificateKind::kStrongCommuteWithNegA, tol);
  }
  sol.trace.emplace_back(0, sol.value);
  return sol;
}

bool better(Sense sense, double candidate, double incumbent) {
  return sense == Sense::kMin ? candidate < incumbent : candidate > incumbent;
}

}  // namespace detail

Solution solve_orbit_global(const OrbitProblem& problem, double tol) {
  const auto* orbit = std::get_if<EigenvalueOrbit>(&problem.feasible);
  if (!orbit) throw HypothesisError("solve_orbit_global: feasible set is not an eigenvalue orbit");
  detail::require_objective(problem, true, "solve_orbit_global");
  if (orbit->b.algebra() != problem.algebra) {
    throw AlgebraMismatch("solve_orbit_global: b does not belong to " + problem.algebra.to_string());
  }
  const Eigen::VectorXd lam_b = eigenvalues(orbit->b);
  if (!orbit_in_domain(problem.fn, lam_b, eigenvalues(problem.a))) {
    throw InfeasibleError("solve_orbit_global: the orbit shifted by -a leaves the domain of " +
                          problem.fn.describe());
  }
  return detail::aligned_solution(problem, lam_b, tol);
}

Solution solve_spectral_set_global(const OrbitProblem& problem, double tol) {
  const auto* set = std::get_if<FiniteSpectralSet>(&problem.feasible);
  if (!set) throw HypothesisError("solve_spectral_set_global: feasible set is not a finite spectral set");
  if (set->spectra.empty()) throw InfeasibleError("solve_spectral_set_global: empty spectral set");
  detail::require_objective(problem, true, "solve_spectral_set_global");

  const Eigen::VectorXd lam_a = eigenvalues(problem.a);
  const Eigen::VectorXd lam_neg_a = eigenvalues(-problem.a);
  int best = -1;
  double best_value = 0.0;
  for (std::size_t m = 0; m < set->spectra.size(); ++m) {
    const Eigen::VectorXd u = sort_desc(set->spectra[m]);
    if (u.size() != problem.algebra.rank()) {
      throw AlgebraMismatch("solve_spectral_set_global: member " + std::to_string(m) +
                            " has the wrong length");
    }
    if (!orbit_in_domain(problem.fn, u, lam_a)) {
      throw InfeasibleError("solve_spectral_set_global: member " + std::to_string(m) +
                            " shifted by -a leaves the domain of " + problem.fn.describe());
    }
    const double value =
        problem.sense == Sense::kMin ? problem.fn(u - lam_a) : problem.fn(u + lam_neg_a);
    if (best < 0 || detail::better(problem.sense, value, best_value)) {
      best = static_cast<int>(m);
      best_value = value;
    }
  }
  return detail::aligned_solution(problem, sort_desc(set->spectra[static_cast<std::size_t>(best)]), tol);
}

Solution solve_global(const OrbitProblem& problem, double tol) {
  if (std::holds_alternative<EigenvalueOrbit>(problem.feasible)) return solve_orbit_global(problem, tol);
  if (std::holds_alternative<FiniteSpectralSet>(problem.feasible)) {
    return solve_spectral_set_global(problem, tol);
  }
  return solve_weak_orbit_global(problem, tol);
}

namespace detail {

Eigen::VectorXd rotated_pair(const Eigen::VectorXd& e_j, const Eigen::VectorXd& e_k,
                             const Eigen::VectorXd& w, double beta_j, double beta_k, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double cc = c * c;
  const double ss = s * s;
  const double cs = c * s;
  return (beta_j * cc + beta_k * ss) * e_j + (beta_j * ss + beta_k * cc) * e_k + ((beta_j - beta_k) * cs) * w;
}

void rotate_frame_pair(Element& e_j, Element& e_k, const Element& w, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Element new_j = (c * c) * e_j + (c * s) * w + (s * s) * e_k;
  Element new_k = (s * s) * e_j - (c * s) * w + (c * c) * e_k;
  e_j = std::move(new_j);
  e_k = std::move(new_k);
}

}  // namespace detail

Element rotation_curve(const std::vector<Element>& frame, int j, int k, double beta_j, double beta_k,
                       const Element& w, double theta, double tol) {
  const int n = static_cast<int>(frame.size());
  if (j == k || j < 0 || k < 0 || j >= n || k >= n) {
    throw DomainError("rotation_curve: need two distinct frame indices");
  }
  const Element& e_j = frame[static_cast<std::size_t>(j)];
  const Element& e_k = frame[static_cast<std::size_t>(k)];
  const double scale = 1.0 + norm(w);
  const double rj = norm(jordan_product(e_j, w) - 0.5 * w);
  const double rk = norm(jordan_product(e_k, w) - 0.5 * w);
  const double rn = std::abs(inner(w, w) - 2.0);
  if (rj > tol * scale || rk > tol * scale || rn > 2.0 * tol) {
    throw DomainError("rotation_curve: w is not a unit of V(e_j,1/2) ∩ V(e_k,1/2) (residuals " +
                      std::to_string(rj) + ", " + std::to_string(rk) + ", " + std::to_string(rn) + ")");
  }
  return Element(e_j.algebra(),
                 detail::rotated_pair(e_j.coords(), e_k.coords(), w.coords(), beta_j, beta_k, theta));
}

}  // namespace ejaopt
