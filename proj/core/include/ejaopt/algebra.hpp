#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ejaopt/errors.hpp"

namespace ejaopt {

/// Absolute tolerance used by every predicate unless the caller passes one.
/// Predicates scale it by (1 + operand norms).
inline constexpr double kDefaultTol = 1e-9;

enum class AlgebraKind { kRealDiagonal, kSymMatrix, kSpinFactor, kProduct };

/// Descriptor of a Euclidean Jordan algebra: R^n with the componentwise
/// product, the symmetric matrices S^n, a spin factor of dimension d, or a
/// finite direct product of those.
///
/// Cheap to copy; the descriptor tree is shared and immutable. Nested
/// products are flattened and a product of one factor collapses to the
/// factor itself.
class Algebra {
 public:
  static Algebra real_diagonal(int n);
  static Algebra sym_matrix(int n);
  /// Requires d >= 3.
  static Algebra spin_factor(int d);
  static Algebra product(const std::vector<Algebra>& factors);

  AlgebraKind kind() const;
  /// n for RealDiagonal/SymMatrix, d for SpinFactor, 0 for Product.
  int param() const;
  int rank() const;
  int dim() const;

  /// True for S^n, spin factors and R^1.
  bool is_simple() const;

  /// Factors of a product; a non-product algebra is its own single factor.
  int factor_count() const;
  const Algebra& factor(int i) const;
  int dim_offset(int i) const;
  int rank_offset(int i) const;

  /// "diag(4)", "sym(3)", "spin(5)", "sym(2)*sym(2)".
  std::string to_string() const;

  friend bool operator==(const Algebra& lhs, const Algebra& rhs);
  friend bool operator!=(const Algebra& lhs, const Algebra& rhs) { return !(lhs == rhs); }

 private:
  struct Node;
  explicit Algebra(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// A point of the algebra in its canonical coordinates.
///
/// RealDiagonal: the n entries. SymMatrix: upper triangle in row-major order,
/// diagonal entries as-is and off-diagonal entries scaled by sqrt(2), so the
/// coordinate 2-norm is the Frobenius norm. SpinFactor: (x0, xbar).
/// Product: concatenation of factor coordinates.
class Element {
 public:
  /// Throws AlgebraMismatch on a length mismatch and DomainError on
  /// non-finite coordinates.
  Element(Algebra algebra, Eigen::VectorXd coords);

  static Element zero(const Algebra& algebra);
  static Element unit(const Algebra& algebra);

  const Algebra& algebra() const { return algebra_; }
  const Eigen::VectorXd& coords() const { return coords_; }

  /// Copy of the i-th factor component, as an element of factor(i).
  Element factor(int i) const;
  /// Assemble a product element from its factor components.
  static Element from_factors(const Algebra& algebra, const std::vector<Element>& parts);

  Element operator-() const;
  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(double s);

  friend Element operator+(Element lhs, const Element& rhs) { return lhs += rhs; }
  friend Element operator-(Element lhs, const Element& rhs) { return lhs -= rhs; }
  friend Element operator*(Element lhs, double s) { return lhs *= s; }
  friend Element operator*(double s, Element rhs) { return rhs *= s; }

 private:
  Algebra algebra_;
  Eigen::VectorXd coords_;
};

/// Sorted eigenvalues together with a Jordan frame realizing them.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;  // non-increasing
  std::vector<Element> frame;   // frame[i] pairs with eigenvalues[i]
};

struct PeirceParts {
  Element one;   // p o x1 = x1
  Element zero;  // p o x0 = 0
  Element half;  // p o xh = xh / 2
};

// Symmetric-matrix coordinate helpers.
Eigen::MatrixXd to_matrix(const Element& x);
Element from_matrix(const Algebra& algebra, const Eigen::MatrixXd& m);

Element jordan_product(const Element& x, const Element& y);
double inner(const Element& x, const Element& y);
double norm(const Element& x);
double trace(const Element& x);

/// Eigenvalues in non-increasing order. Throws ConvergenceError if the
/// Jacobi sweep cap is exceeded.
Eigen::VectorXd eigenvalues(const Element& x);
SpectralDecomposition spectral_decompose(const Element& x);

/// Matrix of y -> x o y in canonical coordinates (symmetric).
Eigen::MatrixXd l_operator(const Element& x);

/// Throws DomainError if ||p o p - p|| > tol * (1 + ||p||).
PeirceParts peirce_project(const Element& p, const Element& x, double tol = kDefaultTol);

/// ||L_a L_b - L_b L_a||_F.
double commutator_norm(const Element& a, const Element& b);
bool operator_commute(const Element& a, const Element& b, double tol = kDefaultTol);

/// |<a,b> - <lambda(a), lambda(b)>|, which vanishes exactly when a and b
/// strongly operator commute.
double strong_commute_gap(const Element& a, const Element& b);
bool strongly_operator_commute(const Element& a, const Element& b, double tol = kDefaultTol);

/// For S^n only: max over the basis derivations D_K(X) = KX - XK
/// (K = E_ij - E_ji) of |<D_K a, b>|. Zero exactly when a and b commute.
double derivation_commute_residual(const Element& a, const Element& b);

/// Throws DomainError unless `frame` is a Jordan frame within tol.
void validate_frame(const std::vector<Element>& frame, double tol = kDefaultTol);

/// sum_i coeffs[i] * frame[i]; validates the frame first.
Element synthesize_from_frame(const std::vector<Element>& frame, const Eigen::VectorXd& coeffs,
                              double tol = kDefaultTol);

/// Orthonormal-up-to-scale basis of V(e_j,1/2) ∩ V(e_k,1/2), each member
/// with ||w||^2 = 2 (hence w o w = e_j + e_k). Empty when e_j and e_k live
/// in different simple factors. Assumes e_j, e_k are orthogonal primitive
/// idempotents of a frame.
std::vector<Element> peirce_half_units(const Element& e_j, const Element& e_k);

/// Index of the simple factor that carries a primitive idempotent.
int owning_factor(const Element& idempotent);

}  // namespace ejaopt
