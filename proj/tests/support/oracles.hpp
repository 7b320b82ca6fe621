#pragma once

// Reference computations written independently of the library kernels:
// dense matrices, closed-form roots, Eigen's symmetric eigensolver and
// exhaustive enumeration.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "ejaopt/algebra.hpp"

namespace ejaopt::oracle {

inline Eigen::MatrixXd sym_from_coords(int n, const Eigen::VectorXd& c) {
  Eigen::MatrixXd m(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j, ++k) {
      if (i == j) {
        m(i, i) = c(k);
      } else {
        m(i, j) = m(j, i) = c(k) / std::sqrt(2.0);
      }
    }
  }
  return m;
}

inline Eigen::VectorXd sym_coords(const Eigen::MatrixXd& m) {
  const auto n = static_cast<int>(m.rows());
  Eigen::VectorXd c(n * (n + 1) / 2);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j, ++k) c(k) = i == j ? m(i, i) : std::sqrt(2.0) * m(i, j);
  }
  return c;
}

inline Eigen::VectorXd sorted_desc(Eigen::VectorXd v) {
  std::sort(v.data(), v.data() + v.size(), [](double l, double r) { return l > r; });
  return v;
}

inline Eigen::VectorXd product(const Algebra& alg, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  Eigen::VectorXd out(alg.dim());
  for (int f = 0; f < alg.factor_count(); ++f) {
    const Algebra& a = alg.factor(f);
    const int off = alg.dim_offset(f);
    const Eigen::VectorXd xs = x.segment(off, a.dim());
    const Eigen::VectorXd ys = y.segment(off, a.dim());
    switch (a.kind()) {
      case AlgebraKind::kRealDiagonal:
        out.segment(off, a.dim()) = xs.cwiseProduct(ys);
        break;
      case AlgebraKind::kSymMatrix: {
        const Eigen::MatrixXd X = sym_from_coords(a.param(), xs);
        const Eigen::MatrixXd Y = sym_from_coords(a.param(), ys);
        out.segment(off, a.dim()) = sym_coords(0.5 * (X * Y + Y * X));
        break;
      }
      case AlgebraKind::kSpinFactor: {
        const int m = a.dim() - 1;
        out(off) = xs(0) * ys(0) + xs.tail(m).dot(ys.tail(m));
        out.segment(off + 1, m) = xs(0) * ys.tail(m) + ys(0) * xs.tail(m);
        break;
      }
      case AlgebraKind::kProduct:
        break;
    }
  }
  return out;
}

inline double trace(const Algebra& alg, const Eigen::VectorXd& x) {
  double t = 0.0;
  for (int f = 0; f < alg.factor_count(); ++f) {
    const Algebra& a = alg.factor(f);
    const Eigen::VectorXd xs = x.segment(alg.dim_offset(f), a.dim());
    if (a.kind() == AlgebraKind::kSymMatrix) t += sym_from_coords(a.param(), xs).trace();
    if (a.kind() == AlgebraKind::kSpinFactor) t += 2.0 * xs(0);
    if (a.kind() == AlgebraKind::kRealDiagonal) t += xs.sum();
  }
  return t;
}

inline double inner(const Algebra& alg, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return trace(alg, product(alg, x, y));
}

/// Eigen's solver for matrices; roots of t^2 - 2 x0 t + (x0^2 - |xbar|^2)
/// for spin factors.
inline Eigen::VectorXd eigenvalues(const Algebra& alg, const Eigen::VectorXd& x) {
  std::vector<double> all;
  for (int f = 0; f < alg.factor_count(); ++f) {
    const Algebra& a = alg.factor(f);
    const Eigen::VectorXd xs = x.segment(alg.dim_offset(f), a.dim());
    if (a.kind() == AlgebraKind::kSymMatrix) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym_from_coords(a.param(), xs));
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) all.push_back(es.eigenvalues()(i));
    } else if (a.kind() == AlgebraKind::kSpinFactor) {
      const double b = -2.0 * xs(0);
      const double c = xs(0) * xs(0) - xs.tail(a.dim() - 1).squaredNorm();
      const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * c));
      all.push_back((-b + disc) / 2.0);
      all.push_back((-b - disc) / 2.0);
    } else {
      for (Eigen::Index i = 0; i < xs.size(); ++i) all.push_back(xs(i));
    }
  }
  return sorted_desc(Eigen::Map<Eigen::VectorXd>(all.data(), static_cast<Eigen::Index>(all.size())));
}

/// Column i is x o (i-th canonical basis vector).
inline Eigen::MatrixXd l_operator(const Algebra& alg, const Eigen::VectorXd& x) {
  const int d = alg.dim();
  Eigen::MatrixXd L(d, d);
  for (int i = 0; i < d; ++i) L.col(i) = product(alg, x, Eigen::VectorXd::Unit(d, i));
  return L;
}

struct PeirceParts {
  Eigen::VectorXd one, zero, half;
};

/// Orthogonal projections onto the 1, 0 and 1/2 eigenspaces of L_p.
inline PeirceParts peirce(const Algebra& alg, const Eigen::VectorXd& p, const Eigen::VectorXd& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l_operator(alg, p));
  const Eigen::Index d = x.size();
  PeirceParts out{Eigen::VectorXd::Zero(d), Eigen::VectorXd::Zero(d), Eigen::VectorXd::Zero(d)};
  for (Eigen::Index i = 0; i < d; ++i) {
    const Eigen::VectorXd v = es.eigenvectors().col(i);
    const double ev = es.eigenvalues()(i);
    const Eigen::VectorXd comp = v.dot(x) * v;
    if (std::abs(ev - 1.0) < 1e-6) out.one += comp;
    else if (std::abs(ev) < 1e-6) out.zero += comp;
    else if (std::abs(ev - 0.5) < 1e-6) out.half += comp;
  }
  return out;
}

/// opt over all permutations P of f(P lam_b - lam_a), skipping pairings
/// where f throws.
inline double best_pairing(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& lam_b,
                           const Eigen::VectorXd& lam_a, bool minimize) {
  const auto n = static_cast<int>(lam_b.size());
  double best = minimize ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  Eigen::VectorXd cur(n);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      try {
        const double v = f(cur);
        best = minimize ? std::min(best, v) : std::max(best, v);
      } catch (const std::exception&) {
      }
      return;
    }
    for (int k = 0; k < n; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      used[static_cast<std::size_t>(k)] = true;
      cur(i) = lam_b(k) - lam_a(i);
      rec(i + 1);
      used[static_cast<std::size_t>(k)] = false;
    }
  };
  rec(0);
  return best;
}

/// Prefix-sum majorization test in long double: u ≺ v.
inline bool majorized(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double tol) {
  const Eigen::VectorXd us = sorted_desc(u);
  const Eigen::VectorXd vs = sorted_desc(v);
  long double su = 0.0L;
  long double sv = 0.0L;
  for (Eigen::Index k = 0; k < us.size(); ++k) {
    su += us(k);
    sv += vs(k);
    if (su > sv + tol) return false;
  }
  return std::abs(static_cast<double>(su - sv)) <= tol;
}

}  // namespace ejaopt::oracle
