#include "ejaopt/schur_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ejaopt/condition.hpp"
#include "ejaopt/majorization.hpp"

namespace ejaopt {
namespace {

constexpr int kMaxResample = 1000;

double schatten_kernel(const Eigen::VectorXd& u, double p) {
  const double scale = u.size() ? u.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) sum += std::pow(std::abs(u(i)) / scale, p);
  return scale * std::pow(sum, 1.0 / p);
}

Eigen::VectorXd sample_in_domain(FunctionDomain domain, int n, Rng& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    v(i) = domain == FunctionDomain::kPositiveOrthant ? std::exp(z) : 2.0 * z;
  }
  return v;
}

}  // namespace

const char* to_string(FunctionDomain domain) {
  return domain == FunctionDomain::kAll ? "all" : "positive_orthant";
}

const char* to_string(SchurClass cls) {
  switch (cls) {
    case SchurClass::kNone:
      return "none";
    case SchurClass::kSchurConvex:
      return "schur_convex";
    case SchurClass::kStrictlySchurConvex:
      return "strictly_schur_convex";
  }
  return "none";
}

SymmetricFunction::SymmetricFunction(std::string id, FunctionParams params, FunctionDomain domain,
                                     SchurClass declared_class, Kernel kernel, std::optional<int> arity)
    : id_(std::move(id)),
      params_(std::move(params)),
      domain_(domain),
      declared_class_(declared_class),
      kernel_(std::move(kernel)),
      arity_(arity) {}

bool SymmetricFunction::in_domain(const Eigen::VectorXd& u) const {
  if (!u.allFinite()) return false;
  if (domain_ == FunctionDomain::kPositiveOrthant) return u.size() == 0 || u.minCoeff() > 0.0;
  return true;
}

double SymmetricFunction::operator()(const Eigen::VectorXd& u) const {
  if (arity_ && u.size() != *arity_) {
    throw AlgebraMismatch(describe() + ": expected " + std::to_string(*arity_) + " arguments, got " +
                          std::to_string(u.size()));
  }
  if (!in_domain(u)) {
    throw DomainError(describe() + ": argument outside the " + std::string(to_string(domain_)) +
                      " domain");
  }
  return kernel_(u);
}

std::string SymmetricFunction::describe() const {
  std::ostringstream os;
  os << id_;
  if (!params_.empty()) {
    os << '(';
    bool first = true;
    for (const auto& [key, value] : params_) {
      os << (first ? "" : ",") << key << '=' << value;
      first = false;
    }
    os << ')';
  }
  return os.str();
}

SymmetricFunction schatten(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("schatten: p must be a finite value >= 1");
  const SchurClass cls = p > 1.0 ? SchurClass::kStrictlySchurConvex : SchurClass::kSchurConvex;
  return SymmetricFunction("schatten", {{"p", p}}, FunctionDomain::kAll, cls,
                           [p](const Eigen::VectorXd& u) { return schatten_kernel(u, p); });
}

SymmetricFunction squared_norm() {
  return SymmetricFunction("squared_norm", {}, FunctionDomain::kAll, SchurClass::kStrictlySchurConvex,
                           [](const Eigen::VectorXd& u) { return u.squaredNorm(); });
}

SymmetricFunction condition_vector_norm() {
  return SymmetricFunction("cond_vector_norm", {}, FunctionDomain::kPositiveOrthant,
                           SchurClass::kStrictlySchurConvex,
                           [](const Eigen::VectorXd& u) { return phi(u).norm(); });
}

SymmetricFunction spread_vector_norm() {
  return SymmetricFunction("spread_vector_norm", {}, FunctionDomain::kAll,
                           SchurClass::kStrictlySchurConvex, [](const Eigen::VectorXd& u) {
                             const Eigen::VectorXd s = sort_desc(u);
                             const Eigen::Index n = s.size();
                             double sum = 0.0;
                             for (Eigen::Index i = 0; i < n / 2; ++i) {
                               const double d = s(i) - s(n - 1 - i);
                               sum += d * d;
                             }
                             return std::sqrt(sum);
                           });
}

SymmetricFunction condition_number() {
  return SymmetricFunction("cond_number", {}, FunctionDomain::kPositiveOrthant,
                           SchurClass::kSchurConvex,
                           [](const Eigen::VectorXd& u) { return u.maxCoeff() / u.minCoeff(); });
}

SymmetricFunction spread() {
  return SymmetricFunction("spread", {}, FunctionDomain::kAll, SchurClass::kSchurConvex,
                           [](const Eigen::VectorXd& u) { return u.maxCoeff() - u.minCoeff(); });
}

SymmetricFunction max_plus_quadratic(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("max_plus_quadratic: eps must be > 0");
  return SymmetricFunction("max_plus_quadratic", {{"eps", eps}}, FunctionDomain::kAll,
                           SchurClass::kStrictlySchurConvex, [eps](const Eigen::VectorXd& u) {
                             return u.maxCoeff() + eps * u.squaredNorm();
                           });
}

SymmetricFunction affine(const SymmetricFunction& fn, double scale, double offset) {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(offset)) {
    throw DomainError("affine: scale must be positive and both coefficients finite");
  }
  FunctionParams params = fn.params();
  params["scale"] = scale;
  params["offset"] = offset;
  return SymmetricFunction("affine:" + fn.id(), std::move(params), fn.domain(), fn.declared_class(),
                           [fn, scale, offset](const Eigen::VectorXd& u) {
                             return scale * fn(u) + offset;
                           },
                           fn.arity());
}

SymmetricFunction builtin(std::string_view name, const FunctionParams& params) {
  auto param = [&](const char* key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "schatten" || name == "schatten_p") return schatten(param("p", 2.0));
  if (name == "squared_norm") return squared_norm();
  if (name == "cond_vector_norm" || name == "condition_vector_norm") return condition_vector_norm();
  if (name == "spread_vector_norm") return spread_vector_norm();
  if (name == "cond_number" || name == "condition_number") return condition_number();
  if (name == "spread") return spread();
  if (name == "max_plus_quadratic") return max_plus_quadratic(param("eps", 1e-3));
  throw DomainError("builtin: unknown function '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
  return {"schatten",    "squared_norm", "cond_vector_norm",  "spread_vector_norm",
          "cond_number", "spread",       "max_plus_quadratic"};
}

double eval_spectral(const SymmetricFunction& fn, const Element& x) { return fn(eigenvalues(x)); }

StrictPair sample_strict_pair(FunctionDomain domain, int n, Rng& rng) {
  if (n < 2) throw DomainError("sample_strict_pair: need n >= 2");
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    const Eigen::VectorXd v = sample_in_domain(domain, n, rng);
    const double spread_floor = 1e-3 * (1.0 + v.cwiseAbs().maxCoeff());

    Eigen::VectorXd u = v;
    const int steps = 1 + static_cast<int>(rng.index(3));
    bool moved = false;
    for (int s = 0; s < steps; ++s) {
      const int i = static_cast<int>(rng.index(static_cast<std::size_t>(n)));
      int j = static_cast<int>(rng.index(static_cast<std::size_t>(n - 1)));
      if (j >= i) ++j;
      if (!moved && std::abs(u(i) - u(j)) <= spread_floor) continue;
      u = t_transform(u, i, j, rng.uniform(0.05, 0.95));
      moved = true;
    }
    if (!moved) continue;
    if (domain == FunctionDomain::kPositiveOrthant && u.minCoeff() <= 0.0) continue;
    if (majorizes(v, u, 1e-12).strict) return {std::move(u), v};
  }
  throw DomainError("sample_strict_pair: resample cap exceeded");
}

SchurCheckReport check_schur_convexity(const SymmetricFunction& fn, Rng& rng,
                                       const SchurCheckOptions& options) {
  if (options.trials < 1) throw DomainError("check_schur_convexity: trials must be >= 1");
  const int n = fn.arity().value_or(options.n);

  SchurCheckReport report;
  report.min_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < options.trials; ++t) {
    StrictPair pair = sample_strict_pair(fn.domain(), n, rng);
    const double fu = fn(pair.u);
    const double fv = fn(pair.v);
    ++report.trials_run;
    report.min_margin = std::min(report.min_margin, fv - fu);

    const bool violated =
        options.strict ? !(fu < fv) : fu > fv + 1e-12 * (1.0 + std::abs(fv));
    if (!violated) continue;
    ++report.violation_count;
    if (report.violations.size() < options.max_recorded) {
      report.violations.push_back({std::move(pair.u), std::move(pair.v), fu, fv});
    }
    if (options.stop_at_first) break;
  }
  report.passed = report.violation_count == 0;
  return report;
}

}  // namespace ejaopt
