#include <cmath>
#include <string>

#include "ejaopt/orbit_opt.hpp"
#include "orbit_detail.hpp"

namespace ejaopt {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvPhi = 0.61803398874989484820;

struct LineResult {
  double theta = 0.0;
  double value = 0.0;
};

// Minimizes a π-periodic g: grid scan over one period, then golden section on
// the cell around the best grid point.
template <class G>
LineResult periodic_line_min(const G& g, double g0, int scan_points, int golden_iterations) {
  LineResult best{0.0, g0};
  const double h = kPi / scan_points;
  for (int i = 1; i < scan_points; ++i) {
    const double theta = i * h;
    const double v = g(theta);
    if (v < best.value) best = {theta, v};
  }

  double lo = best.theta - h;
  double hi = best.theta + h;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = g(x1);
  double f2 = g(x2);
  for (int it = 0; it < golden_iterations; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = g(x2);
    }
  }
  if (f1 < best.value) best = {x1, f1};
  if (f2 < best.value) best = {x2, f2};
  return best;
}

}  // namespace

Solution local_search_orbit(const OrbitProblem& problem, const Element& x0, const LocalSearchParams& params) {
  const auto* orbit = std::get_if<EigenvalueOrbit>(&problem.feasible);
  if (!orbit) throw HypothesisError("local_search_orbit: feasible set is not an eigenvalue orbit");
  const SymmetricFunction& fn = problem.fn;
  const Algebra& alg = problem.algebra;
  if (fn.arity() && *fn.arity() != alg.rank()) {
    throw AlgebraMismatch("local_search_orbit: function arity differs from the algebra rank");
  }
  if (problem.a.algebra() != alg || x0.algebra() != alg || orbit->b.algebra() != alg) {
    throw AlgebraMismatch("local_search_orbit: operands must belong to " + alg.to_string());
  }
  if (params.max_sweeps < 1 || params.scan_points < 2 || params.golden_iterations < 0) {
    throw DomainError("local_search_orbit: invalid parameters");
  }

  const Eigen::VectorXd lam_b = eigenvalues(orbit->b);
  const double spectrum_scale = 1.0 + lam_b.cwiseAbs().maxCoeff();
  if ((eigenvalues(x0) - lam_b).cwiseAbs().maxCoeff() > 1e-8 * spectrum_scale) {
    throw InfeasibleError("local_search_orbit: x0 is not on the eigenvalue orbit of b");
  }
  if (!orbit_in_domain(fn, lam_b, eigenvalues(problem.a))) {
    throw InfeasibleError("local_search_orbit: the orbit shifted by -a leaves the domain of " + fn.describe());
  }

  const double sign = problem.sense == Sense::kMin ? 1.0 : -1.0;
  const Eigen::VectorXd& a = problem.a.coords();
  auto objective = [&](const Eigen::VectorXd& x) { return sign * fn(eigenvalues(Element(alg, x - a))); };

  Solution sol{x0, 0.0, {}, 0, {}, false, {}};
  Eigen::VectorXd x = x0.coords();
  double value = objective(x);
  if (params.record_trace) sol.trace.emplace_back(0, sign * value);

  for (int sweep = 1; sweep <= params.max_sweeps; ++sweep) {
    // Re-synthesize on the current frame with the exact target spectrum so
    // rounding never drifts off the orbit.
    std::vector<Element> frame = spectral_decompose(Element(alg, x)).frame;
    x = synthesize_from_frame(frame, lam_b, 1e-8).coords();
    value = objective(x);
    const double sweep_start = value;

    const int n = static_cast<int>(frame.size());
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const double bj = lam_b(j);
        const double bk = lam_b(k);
        if (bj - bk <= 1e-14 * spectrum_scale) continue;
        Element& e_j = frame[static_cast<std::size_t>(j)];
        Element& e_k = frame[static_cast<std::size_t>(k)];
        const std::size_t directions = peirce_half_units(e_j, e_k).size();
        for (std::size_t m = 0; m < directions; ++m) {
          const Element w = peirce_half_units(e_j, e_k)[m];
          const Eigen::VectorXd base = x - bj * e_j.coords() - bk * e_k.coords();
          auto g = [&](double theta) {
            return objective(base + detail::rotated_pair(e_j.coords(), e_k.coords(), w.coords(), bj, bk, theta));
          };
          const LineResult best = periodic_line_min(g, value, params.scan_points, params.golden_iterations);
          if (best.value < value - params.accept_rel * (1.0 + std::abs(value))) {
            detail::rotate_frame_pair(e_j, e_k, w, best.theta);
            x = base + bj * e_j.coords() + bk * e_k.coords();
            value = best.value;
          }
        }
      }
    }

    sol.iterations = sweep;
    if (params.record_trace) sol.trace.emplace_back(sweep, sign * value);
    if (sweep_start - value < params.eps_sweep * (1.0 + std::abs(value))) {
      sol.converged = true;
      break;
    }
  }

  if (!sol.converged) {
    sol.warnings.push_back("local search hit the sweep cap (" + std::to_string(params.max_sweeps) + ")");
  }
  sol.x_star = Element(alg, x);
  sol.value = fn(eigenvalues(sol.x_star - problem.a));
  sol.certificate = certify(problem.a, sol.x_star, predicted_certificate(problem.sense, alg.is_simple()),
                            params.certificate_tol);
  return sol;
}

}  // namespace ejaopt
