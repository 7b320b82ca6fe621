#pragma once

#include <Eigen/Dense>

#include "ejaopt/algebra.hpp"
#include "ejaopt/rng.hpp"

namespace ejaopt {

/// Outcome of a (sub)majorization test u ≺ v.
struct MajorizationVerdict {
  bool holds = false;
  bool strict = false;
  /// min_k (prefix_k(v↓) - prefix_k(u↓)); negative means a violated prefix.
  double worst_prefix_gap = 0.0;
  /// |sum(u) - sum(v)|.
  double sum_gap = 0.0;
};

/// Non-increasing rearrangement; stable on ties.
Eigen::VectorXd sort_desc(const Eigen::VectorXd& u);

/// Tests u ≺ v. Throws AlgebraMismatch on a length mismatch.
MajorizationVerdict majorizes(const Eigen::VectorXd& v, const Eigen::VectorXd& u,
                              double tol = kDefaultTol);

/// Tests u ≺_w v (prefix conditions only).
MajorizationVerdict submajorizes(const Eigen::VectorXd& v, const Eigen::VectorXd& u,
                                 double tol = kDefaultTol);

/// Replaces (v_i, v_j) with (t v_i + (1-t) v_j, (1-t) v_i + t v_j).
Eigen::VectorXd t_transform(const Eigen::VectorXd& v, int i, int j, double t);

/// t_transform with random i != j and t uniform in (0, 1).
Eigen::VectorXd t_transform_sample(const Eigen::VectorXd& v, Rng& rng);

/// Verdict of λ(a) - λ(b) ≺ λ(a - b); tol is scaled by 1 + ||a|| + ||b||.
MajorizationVerdict lidskii_holds(const Element& a, const Element& b, double tol = kDefaultTol);

/// Verdict of λ(a + b) ≺ λ(a) + λ(b); tol is scaled by 1 + ||a|| + ||b||.
MajorizationVerdict kyfan_holds(const Element& a, const Element& b, double tol = kDefaultTol);

/// Three conditions on a pair that hold or fail together:
///   strong:   a and b strongly operator commute,
///   additive: λ(a + b) = λ(a) + λ(b),
///   lidskii:  (λ(a) − λ(b))↓ = λ(a − b).
/// Gaps are sup-norms; the equalities use tol * (1 + ||a|| + ||b||).
struct StrongCommuteConditions {
  bool strong = false;
  bool additive = false;
  bool lidskii = false;
  double additive_gap = 0.0;
  double lidskii_gap = 0.0;

  bool agree() const { return strong == additive && additive == lidskii; }
};

StrongCommuteConditions strong_commute_conditions(const Element& a, const Element& b,
                                                  double tol = kDefaultTol);

}  // namespace ejaopt
