#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ejaopt/algebra.hpp"
#include "ejaopt/rng.hpp"

namespace ejaopt {

enum class FunctionDomain { kAll, kPositiveOrthant };
enum class SchurClass { kNone, kSchurConvex, kStrictlySchurConvex };

const char* to_string(FunctionDomain domain);
const char* to_string(SchurClass cls);

using FunctionParams = std::map<std::string, double>;

/// A permutation-invariant f: R^n -> R with its domain and the Schur class
/// it is known to belong to. Evaluating outside the domain throws
/// DomainError.
class SymmetricFunction {
 public:
  using Kernel = std::function<double(const Eigen::VectorXd&)>;

  SymmetricFunction(std::string id, FunctionParams params, FunctionDomain domain,
                    SchurClass declared_class, Kernel kernel, std::optional<int> arity = {});

  const std::string& id() const { return id_; }
  const FunctionParams& params() const { return params_; }
  FunctionDomain domain() const { return domain_; }
  SchurClass declared_class() const { return declared_class_; }
  /// Empty when the function accepts vectors of any length.
  std::optional<int> arity() const { return arity_; }

  bool is_strict() const { return declared_class_ == SchurClass::kStrictlySchurConvex; }
  bool in_domain(const Eigen::VectorXd& u) const;
  double operator()(const Eigen::VectorXd& u) const;

  /// "schatten(p=2)", "cond_vector_norm".
  std::string describe() const;

 private:
  std::string id_;
  FunctionParams params_;
  FunctionDomain domain_;
  SchurClass declared_class_;
  Kernel kernel_;
  std::optional<int> arity_;
};

SymmetricFunction schatten(double p);
SymmetricFunction squared_norm();
SymmetricFunction condition_vector_norm();
SymmetricFunction spread_vector_norm();
SymmetricFunction condition_number();
SymmetricFunction spread();
/// max_i u_i + eps * ||u||^2, a strictly quasi-convex representative.
SymmetricFunction max_plus_quadratic(double eps);
/// scale * fn + offset; scale > 0 keeps the Schur class.
SymmetricFunction affine(const SymmetricFunction& fn, double scale, double offset);

/// Catalog lookup: "schatten" {p}, "squared_norm", "cond_vector_norm",
/// "spread_vector_norm", "cond_number", "spread", "max_plus_quadratic" {eps}.
/// Throws DomainError on an unknown name or invalid parameters.
SymmetricFunction builtin(std::string_view name, const FunctionParams& params = {});
std::vector<std::string> builtin_names();

/// F(x) = f(λ(x)).
double eval_spectral(const SymmetricFunction& fn, const Element& x);

struct SchurViolation {
  Eigen::VectorXd u;  // u ≺ v strictly
  Eigen::VectorXd v;
  double fu = 0.0;
  double fv = 0.0;
};

struct SchurCheckOptions {
  int trials = 1000;
  int n = 4;
  bool strict = true;
  bool stop_at_first = false;
  std::size_t max_recorded = 16;
};

struct SchurCheckReport {
  bool passed = true;
  int trials_run = 0;
  int violation_count = 0;
  std::vector<SchurViolation> violations;  // first max_recorded
  /// min over samples of f(v) - f(u).
  double min_margin = 0.0;
};

/// Draws v in the function's domain (exp of normals for the positive
/// orthant) and a strictly majorized u from one to three composed
/// t-transforms. Strict mode flags f(u) >= f(v); non-strict mode flags
/// f(u) > f(v) + 1e-12 (1 + |f(v)|).
SchurCheckReport check_schur_convexity(const SymmetricFunction& fn, Rng& rng,
                                       const SchurCheckOptions& options);

inline SchurCheckReport check_strict_schur_convex(const SymmetricFunction& fn, Rng& rng,
                                                  int trials, int n = 4) {
  SchurCheckOptions options;
  options.trials = trials;
  options.n = n;
  return check_schur_convexity(fn, rng, options);
}

/// A pair with u strictly majorized by v, sampled inside `domain`.
struct StrictPair {
  Eigen::VectorXd u;
  Eigen::VectorXd v;
};
StrictPair sample_strict_pair(FunctionDomain domain, int n, Rng& rng);

}  // namespace ejaopt
