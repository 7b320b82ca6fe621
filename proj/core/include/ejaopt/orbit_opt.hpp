#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ejaopt/algebra.hpp"
#include "ejaopt/rng.hpp"
#include "ejaopt/schur_functions.hpp"

namespace ejaopt {

enum class Sense { kMin, kMax };

const char* to_string(Sense sense);

/// [b] = {x : λ(x) = λ(b)}.
struct EigenvalueOrbit {
  Element b;
};

/// [b]_w = {X b : X ∈ Aut(V)}.
struct WeakOrbit {
  Element b;
};

/// Finite union of eigenvalue orbits, one sorted spectrum per member.
struct FiniteSpectralSet {
  std::vector<Eigen::VectorXd> spectra;
};

using FeasibleSet = std::variant<EigenvalueOrbit, WeakOrbit, FiniteSpectralSet>;

/// Optimize F(x - a) over a feasible set.
struct OrbitProblem {
  Algebra algebra;
  SymmetricFunction fn;
  Element a;
  FeasibleSet feasible;
  Sense sense = Sense::kMin;
};

enum class CertificateKind { kOperatorCommute, kStrongCommuteWithA, kStrongCommuteWithNegA };

const char* to_string(CertificateKind kind);

/// Commutation evidence for a candidate optimizer x against the shift a.
/// Residuals: "commutator_norm" = ||[L_a, L_x]||_F, "gap_a" and "gap_neg_a"
/// are the strong-commutation inner-product gaps against a and -a.
struct Certificate {
  CertificateKind kind = CertificateKind::kStrongCommuteWithA;
  bool passed = false;
  std::map<std::string, double> residuals;
  double tol = kDefaultTol;

  /// The residual that decides `passed` for this kind.
  double deciding_residual() const;
};

struct Solution {
  Element x_star;
  double value = 0.0;
  Certificate certificate;
  int iterations = 0;
  std::vector<std::pair<int, double>> trace;  // (sweep, value)
  bool converged = true;
  std::vector<std::string> warnings;
};

/// Evaluates all three commutation tests and packages them under `kind`.
/// `passed` compares the deciding residual with tol scaled like the
/// corresponding predicate.
Certificate certify(const Element& a, const Element& x, CertificateKind kind,
                    double tol = kDefaultTol);

/// Commutation an optimizer of `sense` is guaranteed to satisfy: strong on
/// simple algebras, operator commutation otherwise.
CertificateKind predicted_certificate(Sense sense, bool simple_algebra);

struct PermutationOptimum {
  double value = 0.0;
  /// perm[i] = index into lam_b paired with lam_a[i].
  std::vector<int> perm;
};

/// Brute force over all pairings of lam_b against lam_a:
/// opt_P f(P lam_b - lam_a). n <= 9. Pairings leaving the domain are
/// skipped; throws InfeasibleError if all are. Ties keep the
/// lexicographically smallest permutation.
PermutationOptimum permutation_oracle(const SymmetricFunction& fn, const Eigen::VectorXd& lam_b,
                                      const Eigen::VectorXd& lam_a, Sense sense);

/// True when every x with λ(x) = lam_b keeps λ(x - a) inside fn's domain.
bool orbit_in_domain(const SymmetricFunction& fn, const Eigen::VectorXd& lam_b,
                     const Eigen::VectorXd& lam_a);

/// Closed-form global optimizer over an eigenvalue orbit: aligned synthesis
/// on a's frame (min) or on -a's frame (max). Requires a strictly
/// Schur-convex function (HypothesisError otherwise).
Solution solve_orbit_global(const OrbitProblem& problem, double tol = kDefaultTol);

/// Closed form over a finite spectral set: best member after alignment.
Solution solve_spectral_set_global(const OrbitProblem& problem, double tol = kDefaultTol);

/// Dispatches on the feasible set; weak orbits go through
/// solve_weak_orbit_global.
Solution solve_global(const OrbitProblem& problem, double tol = kDefaultTol);

/// beta_j e_j(θ) + beta_k e_k(θ) with
///   e_j(θ) = cos²θ e_j + cosθ sinθ w + sin²θ e_k
///   e_k(θ) = sin²θ e_j − cosθ sinθ w + cos²θ e_k.
/// Throws DomainError if w is not in V(e_j,1/2) ∩ V(e_k,1/2) with ||w||² = 2.
Element rotation_curve(const std::vector<Element>& frame, int j, int k, double beta_j,
                       double beta_k, const Element& w, double theta, double tol = 1e-8);

struct LocalSearchParams {
  int max_sweeps = 500;
  /// A sweep whose total improvement is below eps_sweep * (1 + |value|)
  /// ends the search.
  double eps_sweep = 1e-13;
  int golden_iterations = 60;
  /// Coarse grid over one period of θ used to bracket the golden search.
  int scan_points = 16;
  double accept_rel = 1e-14;
  double certificate_tol = 1e-6;
  bool record_trace = true;
};

/// Pairwise rotation-curve descent (ascent for max) over the eigenvalue
/// orbit of x0. On product algebras rotations stay inside each simple
/// factor, so the search explores the connected component of x0.
/// Throws InfeasibleError if λ(x0) != λ(b).
Solution local_search_orbit(const OrbitProblem& problem, const Element& x0,
                            const LocalSearchParams& params = {});

/// One representative per connected component of [b]_w: every distinct
/// assignment of the factor spectra of b to isomorphic factors, each
/// factor block diagonal in the standard frame. Returns {b} for a simple
/// algebra.
std::vector<Element> weak_orbit_reps(const Element& b);

/// Global optimum over the component of [b]_w containing `rep`:
/// per-factor alignment with a (min) or with -a (max).
Solution solve_component_global(const OrbitProblem& problem, const Element& rep,
                                double tol = kDefaultTol);

/// Best component over all of [b]_w.
Solution solve_weak_orbit_global(const OrbitProblem& problem, double tol = kDefaultTol);

struct ComponentResult {
  std::vector<Eigen::VectorXd> factor_spectra;
  Solution solution;
  bool strongly_commutes = false;
  bool operator_commutes = false;
  bool contains_a = false;
};

struct CounterexampleReport {
  bool simple_algebra = false;
  std::vector<ComponentResult> components;
  bool any_strong = false;
  double weak_orbit_min = 0.0;
  Solution spectral_set_opt;  // over [b]
  double gap = 0.0;           // weak_orbit_min - spectral_set_opt.value
  /// No component optimizer strongly commutes with a and [b] does strictly
  /// better than the weak orbit.
  bool is_counterexample = false;
  std::vector<std::string> warnings;
};

/// Minimizes F(x - a) over each component of [b]_w and over [b].
CounterexampleReport counterexample_no_strong(const Element& a, const Element& b,
                                              const SymmetricFunction& fn,
                                              double tol = kDefaultTol);

/// The instance a = ((4,3),(2,1)), b = ((4,1),(3,2)) in S^2 x S^2, all
/// factors diagonal.
std::pair<Element, Element> builtin_counterexample_instance();

}  // namespace ejaopt
