#pragma once

#include <Eigen/Dense>

#include "ejaopt/orbit_opt.hpp"

namespace ejaopt::detail {

/// Throws unless the function fits the algebra and (strictly) Schur-convex.
void require_objective(const OrbitProblem& problem, bool strict, const char* who);

/// x̄ synthesized from `spectrum` on the frame of a (min) or -a (max).
Solution aligned_solution(const OrbitProblem& problem, const Eigen::VectorXd& spectrum, double tol);

bool better(Sense sense, double candidate, double incumbent);

/// Coordinates of beta_j e_j(θ) + beta_k e_k(θ).
Eigen::VectorXd rotated_pair(const Eigen::VectorXd& e_j, const Eigen::VectorXd& e_k,
                             const Eigen::VectorXd& w, double beta_j, double beta_k, double theta);

/// (e_j, e_k) <- (e_j(θ), e_k(θ)).
void rotate_frame_pair(Element& e_j, Element& e_k, const Element& w, double theta);

}  // namespace ejaopt::detail
