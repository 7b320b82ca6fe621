#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ejaopt/algebra.hpp"
#include "ejaopt/rng.hpp"

namespace ejaopt {

/// A Jordan-algebra automorphism in concrete form.
///
/// Per factor i the action is an orthogonal matrix maps[i]:
///   SymMatrix:    X -> Q X Q^T
///   SpinFactor:   (x0, xbar) -> (x0, Q xbar)
///   RealDiagonal: x -> P x, P a permutation matrix
/// and across factors (X x)_i = maps[i] applied to x_{source[i]}; `source`
/// only ever permutes factors with identical descriptors.
class Automorphism {
 public:
  static Automorphism identity(const Algebra& algebra);

  /// Throws AlgebraMismatch if the pieces do not fit the algebra.
  Automorphism(Algebra algebra, std::vector<Eigen::MatrixXd> maps, std::vector<int> source);

  const Algebra& algebra() const { return algebra_; }
  const std::vector<Eigen::MatrixXd>& maps() const { return maps_; }
  const std::vector<int>& source() const { return source_; }

  Element apply(const Element& x) const;
  Automorphism inverse() const;

 private:
  Algebra algebra_;
  std::vector<Eigen::MatrixXd> maps_;
  std::vector<int> source_;
};

/// Coordinates i.i.d. standard normal.
Element random_element(const Algebra& algebra, Rng& rng);

/// Haar-distributed orthogonal factors (QR of a Gaussian matrix with the
/// signs of R's diagonal folded into Q), uniform permutations for R^n
/// factors, and a uniform permutation inside each class of identical factors.
Automorphism random_automorphism(const Algebra& algebra, Rng& rng);

inline Element apply_automorphism(const Automorphism& map, const Element& x) { return map.apply(x); }

/// Haar orthogonal n x n matrix.
Eigen::MatrixXd random_orthogonal(int n, Rng& rng);

}  // namespace ejaopt
