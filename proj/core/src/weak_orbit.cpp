#include <algorithm>
#include <cmath>
#include <numeric>

#include "ejaopt/majorization.hpp"
#include "ejaopt/orbit_opt.hpp"
#include "orbit_detail.hpp"

namespace ejaopt {
namespace {

using Assignment = std::vector<Eigen::VectorXd>;  // spectrum per factor

bool same_spectrum(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double tol) {
  if (u.size() != v.size()) return false;
  const double scale = 1.0 + std::max(u.cwiseAbs().maxCoeff(), v.cwiseAbs().maxCoeff());
  return (u - v).cwiseAbs().maxCoeff() <= tol * scale;
}

// Element of a simple factor with the given spectrum, diagonal in the
// standard frame.
Element diagonal_element(const Algebra& f, const Eigen::VectorXd& s) {
  switch (f.kind()) {
    case AlgebraKind::kRealDiagonal:
      return Element(f, s);
    case AlgebraKind::kSymMatrix:
      return from_matrix(f, s.asDiagonal().toDenseMatrix());
    case AlgebraKind::kSpinFactor: {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(f.dim());
      c(0) = 0.5 * (s(0) + s(1));
      c(1) = 0.5 * (s(0) - s(1));
      return Element(f, std::move(c));
    }
    case AlgebraKind::kProduct:
      break;
  }
  throw AlgebraMismatch("diagonal_element: expected a simple factor");
}

std::vector<Eigen::VectorXd> factor_spectra(const Element& x) {
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < x.algebra().factor_count(); ++i) out.push_back(eigenvalues(x.factor(i)));
  return out;
}

// Distinct rearrangements of spectra over each class of identical factors,
// combined across classes. The identity assignment comes first.
std::vector<Assignment> assignments(const Algebra& alg, const Assignment& spectra) {
  const int count = alg.factor_count();
  std::vector<std::vector<int>> classes;
  std::vector<bool> done(static_cast<std::size_t>(count), false);
  for (int i = 0; i < count; ++i) {
    if (done[static_cast<std::size_t>(i)]) continue;
    std::vector<int> cls;
    for (int j = i; j < count; ++j) {
      if (!done[static_cast<std::size_t>(j)] && alg.factor(j) == alg.factor(i)) {
        cls.push_back(j);
        done[static_cast<std::size_t>(j)] = true;
      }
    }
    classes.push_back(std::move(cls));
  }

  std::vector<Assignment> out{spectra};
  for (const auto& cls : classes) {
    std::vector<Assignment> next;
    for (const Assignment& partial : out) {
      std::vector<int> perm(cls.size());
      std::iota(perm.begin(), perm.end(), 0);
      do {
        Assignment candidate = partial;
        for (std::size_t i = 0; i < cls.size(); ++i) {
          candidate[static_cast<std::size_t>(cls[i])] = spectra[static_cast<std::size_t>(cls[static_cast<std::size_t>(perm[i])])];
        }
        const bool duplicate = std::any_of(next.begin(), next.end(), [&](const Assignment& seen) {
          for (std::size_t f = 0; f < seen.size(); ++f) {
            if (!same_spectrum(seen[f], candidate[f], 1e-12)) return false;
          }
          return true;
        });
        if (!duplicate) next.push_back(std::move(candidate));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<Element> weak_orbit_reps(const Element& b) {
  const Algebra& alg = b.algebra();
  if (alg.factor_count() == 1) return {b};
  std::vector<Element> reps;
  for (const Assignment& assignment : assignments(alg, factor_spectra(b))) {
    std::vector<Element> parts;
    for (int i = 0; i < alg.factor_count(); ++i) {
      parts.push_back(diagonal_element(alg.factor(i), assignment[static_cast<std::size_t>(i)]));
    }
    reps.push_back(Element::from_factors(alg, parts));
  }
  return reps;
}

Solution solve_component_global(const OrbitProblem& problem, const Element& rep, double tol) {
  const Algebra& alg = problem.algebra;
  if (rep.algebra() != alg) throw AlgebraMismatch("solve_component_global: rep does not belong to " + alg.to_string());
  if (alg.factor_count() == 1) {
    OrbitProblem simple = problem;
    simple.feasible = EigenvalueOrbit{rep};
    return solve_orbit_global(simple, tol);
  }
  detail::require_objective(problem, false, "solve_component_global");

  const Element shift = problem.sense == Sense::kMin ? problem.a : -problem.a;
  std::vector<Element> parts;
  Eigen::VectorXd paired(alg.rank());
  for (int i = 0; i < alg.factor_count(); ++i) {
    const Eigen::VectorXd lam_rep = eigenvalues(rep.factor(i));
    const SpectralDecomposition sd = spectral_decompose(shift.factor(i));
    if (problem.fn.domain() == FunctionDomain::kPositiveOrthant &&
        !orbit_in_domain(problem.fn, lam_rep, eigenvalues(problem.a.factor(i)))) {
      throw InfeasibleError("solve_component_global: the component shifted by -a leaves the domain of " +
                            problem.fn.describe());
    }
    parts.push_back(synthesize_from_frame(sd.frame, lam_rep, std::max(tol, 1e-9)));
    paired.segment(alg.rank_offset(i), lam_rep.size()) =
        problem.sense == Sense::kMin ? Eigen::VectorXd(lam_rep - sd.eigenvalues)
                                     : Eigen::VectorXd(lam_rep + sd.eigenvalues);
  }

  Solution sol{Element::from_factors(alg, parts), problem.fn(paired), {}, 0, {}, true, {}};
  sol.certificate = certify(problem.a, sol.x_star, CertificateKind::kOperatorCommute, tol);
  sol.trace.emplace_back(0, sol.value);
  return sol;
}

Solution solve_weak_orbit_global(const OrbitProblem& problem, double tol) {
  const auto* orbit = std::get_if<WeakOrbit>(&problem.feasible);
  if (!orbit) throw HypothesisError("solve_weak_orbit_global: feasible set is not a weak orbit");
  std::optional<Solution> best;
  for (const Element& rep : weak_orbit_reps(orbit->b)) {
    Solution candidate = solve_component_global(problem, rep, tol);
    if (!best || detail::better(problem.sense, candidate.value, best->value)) best = std::move(candidate);
  }
  return *best;
}

CounterexampleReport counterexample_no_strong(const Element& a, const Element& b, const SymmetricFunction& fn,
                                              double tol) {
  const Algebra& alg = a.algebra();
  if (b.algebra() != alg) throw AlgebraMismatch("counterexample_no_strong: a and b in different algebras");

  CounterexampleReport report{false, {}, false, 0.0, {Element::zero(alg), 0.0, {}, 0, {}, true, {}}, 0.0, false, {}};
  report.simple_algebra = alg.is_simple();
  if (alg.factor_count() == 1) {
    report.warnings.push_back("simple algebra: the weak orbit equals the eigenvalue orbit");
  }

  OrbitProblem problem{alg, fn, a, WeakOrbit{b}, Sense::kMin};
  const std::vector<Eigen::VectorXd> a_spectra = factor_spectra(a);
  for (const Element& rep : weak_orbit_reps(b)) {
    ComponentResult component{factor_spectra(rep), solve_component_global(problem, rep, tol), false, false, false};
    component.strongly_commutes = strongly_operator_commute(a, component.solution.x_star, tol);
    component.operator_commutes = operator_commute(a, component.solution.x_star, tol);
    component.contains_a = true;
    for (std::size_t f = 0; f < a_spectra.size(); ++f) {
      if (!same_spectrum(a_spectra[f], component.factor_spectra[f], tol)) component.contains_a = false;
    }
    report.any_strong = report.any_strong || component.strongly_commutes;
    report.components.push_back(std::move(component));
  }

  report.weak_orbit_min = report.components.front().solution.value;
  for (const ComponentResult& c : report.components) {
    report.weak_orbit_min = std::min(report.weak_orbit_min, c.solution.value);
  }

  OrbitProblem over_orbit{alg, fn, a, EigenvalueOrbit{b}, Sense::kMin};
  report.spectral_set_opt = solve_orbit_global(over_orbit, tol);
  report.gap = report.weak_orbit_min - report.spectral_set_opt.value;
  report.is_counterexample = !report.any_strong && report.gap > tol * (1.0 + std::abs(report.weak_orbit_min));
  return report;
}

std::pair<Element, Element> builtin_counterexample_instance() {
  const Algebra s2 = Algebra::sym_matrix(2);
  const Algebra alg = Algebra::product({s2, s2});
  auto diag = [&](double p, double q) { return diagonal_element(s2, Eigen::Vector2d(p, q)); };
  return {Element::from_factors(alg, {diag(4, 3), diag(2, 1)}), Element::from_factors(alg, {diag(4, 1), diag(3, 2)})};
}

}  // namespace ejaopt
