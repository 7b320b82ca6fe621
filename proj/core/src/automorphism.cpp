#include "ejaopt/automorphism.hpp"

#include <numeric>
#include <string>

namespace ejaopt {
namespace {

int action_size(const Algebra& f) {
  switch (f.kind()) {
    case AlgebraKind::kRealDiagonal:
    case AlgebraKind::kSymMatrix:
      return f.param();
    case AlgebraKind::kSpinFactor:
      return f.dim() - 1;
    case AlgebraKind::kProduct:
      break;
  }
  return 0;
}

Eigen::MatrixXd random_permutation_matrix(int n, Rng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = rng.index(static_cast<std::size_t>(i) + 1);
    std::swap(perm[static_cast<std::size_t>(i)], perm[j]);
  }
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) p(i, perm[static_cast<std::size_t>(i)]) = 1.0;
  return p;
}

Eigen::VectorXd apply_factor(const Algebra& f, const Eigen::MatrixXd& q, const Eigen::VectorXd& x) {
  switch (f.kind()) {
    case AlgebraKind::kRealDiagonal:
      return q * x;
    case AlgebraKind::kSymMatrix: {
      const Element local(f, x);
      return from_matrix(f, q * to_matrix(local) * q.transpose()).coords();
    }
    case AlgebraKind::kSpinFactor: {
      Eigen::VectorXd y(x.size());
      y(0) = x(0);
      y.tail(x.size() - 1) = q * x.tail(x.size() - 1);
      return y;
    }
    case AlgebraKind::kProduct:
      break;
  }
  return x;
}

}  // namespace

Automorphism Automorphism::identity(const Algebra& algebra) {
  std::vector<Eigen::MatrixXd> maps;
  std::vector<int> source;
  for (int i = 0; i < algebra.factor_count(); ++i) {
    const int m = action_size(algebra.factor(i));
    maps.push_back(Eigen::MatrixXd::Identity(m, m));
    source.push_back(i);
  }
  return Automorphism(algebra, std::move(maps), std::move(source));
}

Automorphism::Automorphism(Algebra algebra, std::vector<Eigen::MatrixXd> maps, std::vector<int> source)
    : algebra_(std::move(algebra)), maps_(std::move(maps)), source_(std::move(source)) {
  const int count = algebra_.factor_count();
  if (static_cast<int>(maps_.size()) != count || static_cast<int>(source_.size()) != count) {
    throw AlgebraMismatch("Automorphism: expected one map and one source per factor");
  }
  std::vector<bool> seen(static_cast<std::size_t>(count), false);
  for (int i = 0; i < count; ++i) {
    const int s = source_[static_cast<std::size_t>(i)];
    if (s < 0 || s >= count || seen[static_cast<std::size_t>(s)]) {
      throw AlgebraMismatch("Automorphism: source is not a permutation of the factors");
    }
    seen[static_cast<std::size_t>(s)] = true;
    if (algebra_.factor(s) != algebra_.factor(i)) {
      throw AlgebraMismatch("Automorphism: factor " + std::to_string(s) + " cannot map onto factor " +
                            std::to_string(i));
    }
    const int m = action_size(algebra_.factor(i));
    const Eigen::MatrixXd& q = maps_[static_cast<std::size_t>(i)];
    if (q.rows() != m || q.cols() != m) throw AlgebraMismatch("Automorphism: map has the wrong size");
    if ((q.transpose() * q - Eigen::MatrixXd::Identity(m, m)).norm() > 1e-8) {
      throw AlgebraMismatch("Automorphism: map is not orthogonal");
    }
  }
}

Element Automorphism::apply(const Element& x) const {
  if (x.algebra() != algebra_) throw AlgebraMismatch("Automorphism::apply: algebra mismatch");
  Eigen::VectorXd out(algebra_.dim());
  for (int i = 0; i < algebra_.factor_count(); ++i) {
    const Algebra& f = algebra_.factor(i);
    const int s = source_[static_cast<std::size_t>(i)];
    const Eigen::VectorXd part = x.coords().segment(algebra_.dim_offset(s), f.dim());
    out.segment(algebra_.dim_offset(i), f.dim()) = apply_factor(f, maps_[static_cast<std::size_t>(i)], part);
  }
  return Element(algebra_, std::move(out));
}

Automorphism Automorphism::inverse() const {
  const int count = algebra_.factor_count();
  std::vector<Eigen::MatrixXd> maps(static_cast<std::size_t>(count));
  std::vector<int> source(static_cast<std::size_t>(count));
  // (X x)_i = Q_i x_{s(i)}  =>  (X^-1 y)_{s(i)} = Q_i^T y_i.
  for (int i = 0; i < count; ++i) {
    const auto s = static_cast<std::size_t>(source_[static_cast<std::size_t>(i)]);
    maps[s] = maps_[static_cast<std::size_t>(i)].transpose();
    source[s] = i;
  }
  return Automorphism(algebra_, std::move(maps), std::move(source));
}

Element random_element(const Algebra& algebra, Rng& rng) {
  Eigen::VectorXd c(algebra.dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = rng.normal();
  return Element(algebra, std::move(c));
}

Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

Automorphism random_automorphism(const Algebra& algebra, Rng& rng) {
  const int count = algebra.factor_count();
  std::vector<Eigen::MatrixXd> maps;
  for (int i = 0; i < count; ++i) {
    const Algebra& f = algebra.factor(i);
    const int m = action_size(f);
    maps.push_back(f.kind() == AlgebraKind::kRealDiagonal ? random_permutation_matrix(m, rng)
                                                          : random_orthogonal(m, rng));
  }

  // Shuffle factor indices within each class of identical descriptors.
  std::vector<int> source(static_cast<std::size_t>(count));
  std::iota(source.begin(), source.end(), 0);
  std::vector<bool> done(static_cast<std::size_t>(count), false);
  for (int i = 0; i < count; ++i) {
    if (done[static_cast<std::size_t>(i)]) continue;
    std::vector<int> cls;
    for (int j = i; j < count; ++j) {
      if (!done[static_cast<std::size_t>(j)] && algebra.factor(j) == algebra.factor(i)) {
        cls.push_back(j);
        done[static_cast<std::size_t>(j)] = true;
      }
    }
    std::vector<int> shuffled = cls;
    for (std::size_t k = shuffled.size(); k > 1; --k) {
      std::swap(shuffled[k - 1], shuffled[rng.index(k)]);
    }
    for (std::size_t k = 0; k < cls.size(); ++k) {
      source[static_cast<std::size_t>(cls[k])] = shuffled[k];
    }
  }
  return Automorphism(algebra, std::move(maps), std::move(source));
}

}  // namespace ejaopt
