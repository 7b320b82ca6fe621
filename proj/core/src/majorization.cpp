#include "ejaopt/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace ejaopt {
namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

MajorizationVerdict prefix_test(const Eigen::VectorXd& v, const Eigen::VectorXd& u, double tol,
                                bool require_equal_sum) {
  if (u.size() != v.size()) {
    throw AlgebraMismatch("majorization: vectors of length " + std::to_string(u.size()) + " and " +
                          std::to_string(v.size()));
  }
  const Eigen::VectorXd us = sort_desc(u);
  const Eigen::VectorXd vs = sort_desc(v);

  MajorizationVerdict out;
  out.worst_prefix_gap = std::numeric_limits<double>::infinity();
  CompensatedSum su;
  CompensatedSum sv;
  for (Eigen::Index k = 0; k < us.size(); ++k) {
    su.add(us(k));
    sv.add(vs(k));
    if (k + 1 < us.size() || !require_equal_sum) {
      out.worst_prefix_gap = std::min(out.worst_prefix_gap, sv.value() - su.value());
    }
  }
  if (us.size() == 0 || (require_equal_sum && us.size() == 1)) out.worst_prefix_gap = 0.0;
  out.sum_gap = std::abs(su.value() - sv.value());

  out.holds = out.worst_prefix_gap >= -tol && (!require_equal_sum || out.sum_gap <= tol);
  const double sup = us.size() ? (us - vs).cwiseAbs().maxCoeff() : 0.0;
  out.strict = out.holds && sup > tol;
  return out;
}

MajorizationVerdict with_scaled_tol(const Eigen::VectorXd& v, const Eigen::VectorXd& u, double tol,
                                    const Element& a, const Element& b) {
  return majorizes(v, u, tol * (1.0 + norm(a) + norm(b)));
}

}  // namespace

Eigen::VectorXd sort_desc(const Eigen::VectorXd& u) {
  std::vector<double> values(u.data(), u.data() + u.size());
  std::stable_sort(values.begin(), values.end(), std::greater<>());
  return Eigen::Map<const Eigen::VectorXd>(values.data(), u.size());
}

MajorizationVerdict majorizes(const Eigen::VectorXd& v, const Eigen::VectorXd& u, double tol) {
  return prefix_test(v, u, tol, true);
}

MajorizationVerdict submajorizes(const Eigen::VectorXd& v, const Eigen::VectorXd& u, double tol) {
  return prefix_test(v, u, tol, false);
}

Eigen::VectorXd t_transform(const Eigen::VectorXd& v, int i, int j, double t) {
  if (i == j || i < 0 || j < 0 || i >= v.size() || j >= v.size()) {
    throw DomainError("t_transform: need two distinct valid indices");
  }
  Eigen::VectorXd u = v;
  u(i) = t * v(i) + (1.0 - t) * v(j);
  u(j) = (1.0 - t) * v(i) + t * v(j);
  return u;
}

Eigen::VectorXd t_transform_sample(const Eigen::VectorXd& v, Rng& rng) {
  if (v.size() < 2) throw DomainError("t_transform_sample: need at least two entries");
  const auto n = static_cast<std::size_t>(v.size());
  const int i = static_cast<int>(rng.index(n));
  int j = static_cast<int>(rng.index(n - 1));
  if (j >= i) ++j;
  double t = rng.uniform();
  while (t == 0.0) t = rng.uniform();
  return t_transform(v, i, j, t);
}

MajorizationVerdict lidskii_holds(const Element& a, const Element& b, double tol) {
  const Eigen::VectorXd diff = eigenvalues(a) - eigenvalues(b);
  return with_scaled_tol(eigenvalues(a - b), diff, tol, a, b);
}

MajorizationVerdict kyfan_holds(const Element& a, const Element& b, double tol) {
  const Eigen::VectorXd sum = eigenvalues(a) + eigenvalues(b);
  return with_scaled_tol(sum, eigenvalues(a + b), tol, a, b);
}

StrongCommuteConditions strong_commute_conditions(const Element& a, const Element& b, double tol) {
  const Eigen::VectorXd la = eigenvalues(a);
  const Eigen::VectorXd lb = eigenvalues(b);
  const double scaled = tol * (1.0 + norm(a) + norm(b));
  StrongCommuteConditions out;
  out.strong = strongly_operator_commute(a, b, tol);
  out.additive_gap = (eigenvalues(a + b) - (la + lb)).cwiseAbs().maxCoeff();
  out.lidskii_gap = (sort_desc(la - lb) - eigenvalues(a - b)).cwiseAbs().maxCoeff();
  out.additive = out.additive_gap <= scaled;
  out.lidskii = out.lidskii_gap <= scaled;
  return out;
}

}  // namespace ejaopt
