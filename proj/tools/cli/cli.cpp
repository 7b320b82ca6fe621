#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <sstream>

#include "ejaopt/algebra.hpp"
#include "ejaopt/automorphism.hpp"
#include "ejaopt/condition.hpp"
#include "ejaopt/errors.hpp"
#include "ejaopt/io.hpp"
#include "ejaopt/majorization.hpp"
#include "ejaopt/orbit_opt.hpp"
#include "ejaopt/schur_functions.hpp"

namespace ejaopt::cli {
namespace {

using nlohmann::json;

constexpr double kGenericAgreementTol = 1e-7;

struct TrialOutcome {
  bool pass = true;
  double residual = 0.0;
};

using Trial = std::function<TrialOutcome(const Algebra&, Rng&, double tol)>;

std::vector<Algebra> verify_algebras() {
  std::vector<Algebra> out{Algebra::real_diagonal(4)};
  for (int n = 2; n <= 5; ++n) out.push_back(Algebra::sym_matrix(n));
  for (int d = 3; d <= 6; ++d) out.push_back(Algebra::spin_factor(d));
  out.push_back(Algebra::product({Algebra::sym_matrix(2), Algebra::sym_matrix(2)}));
  return out;
}

Element with_spectrum(const Algebra& alg, const Eigen::VectorXd& spectrum, Rng& rng) {
  return synthesize_from_frame(spectral_decompose(random_element(alg, rng)).frame, sort_desc(spectrum));
}

Eigen::VectorXd random_spectrum(int n, Rng& rng, bool positive) {
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) s(i) = positive ? std::exp(rng.normal()) : rng.normal();
  return s;
}

TrialOutcome within(double residual, double tol) { return {residual <= tol, residual}; }

TrialOutcome jordan_identity(const Algebra& alg, Rng& rng, double tol) {
  const Element x = random_element(alg, rng);
  const Element y = random_element(alg, rng);
  const Element x2 = jordan_product(x, x);
  const Element lhs = jordan_product(jordan_product(x2, y), x);
  const Element rhs = jordan_product(x2, jordan_product(y, x));
  const double scale = std::pow(1.0 + norm(x), 3) * (1.0 + norm(y));
  return within(norm(lhs - rhs) / scale, tol);
}

TrialOutcome trace_inner(const Algebra& alg, Rng& rng, double tol) {
  const Element x = random_element(alg, rng);
  const Element y = random_element(alg, rng);
  const double r1 = std::abs(inner(x, y) - trace(jordan_product(x, y))) / ((1.0 + norm(x)) * (1.0 + norm(y)));
  const double r2 = std::abs(trace(x) - eigenvalues(x).sum()) / (1.0 + norm(x));
  return within(std::max(r1, r2), tol);
}

TrialOutcome spectral_roundtrip(const Algebra& alg, Rng& rng, double tol) {
  Element x = random_element(alg, rng);
  if (rng.uniform() < 0.5) {
    // Repeated eigenvalues: entries drawn from a two-point set.
    Eigen::VectorXd s(alg.rank());
    for (int i = 0; i < alg.rank(); ++i) s(i) = rng.uniform() < 0.5 ? -1.0 : 2.0;
    x = with_spectrum(alg, s, rng);
  }
  const SpectralDecomposition sd = spectral_decompose(x);
  try {
    validate_frame(sd.frame, tol);
  } catch (const DomainError&) {
    return {false, 1.0};
  }
  return within(norm(synthesize_from_frame(sd.frame, sd.eigenvalues, tol) - x) / (1.0 + norm(x)), tol);
}

TrialOutcome automorphism_invariance(const Algebra& alg, Rng& rng, double tol) {
  const Element x = random_element(alg, rng);
  const Element y = random_element(alg, rng);
  const Automorphism g = random_automorphism(alg, rng);
  const double scale = (1.0 + norm(x)) * (1.0 + norm(y));
  double r = (eigenvalues(g.apply(x)) - eigenvalues(x)).cwiseAbs().maxCoeff() / (1.0 + norm(x));
  r = std::max(r, std::abs(inner(g.apply(x), g.apply(y)) - inner(x, y)) / scale);
  r = std::max(r, norm(g.apply(jordan_product(x, y)) - jordan_product(g.apply(x), g.apply(y))) / scale);
  r = std::max(r, norm(g.apply(Element::unit(alg)) - Element::unit(alg)));
  return within(r, tol);
}

TrialOutcome verdict_outcome(const MajorizationVerdict& v, const Element& a, const Element& b) {
  const double r = std::max({0.0, -v.worst_prefix_gap, v.sum_gap}) / (1.0 + norm(a) + norm(b));
  return {v.holds, r};
}

TrialOutcome lidskii(const Algebra& alg, Rng& rng, double tol) {
  const Element a = random_element(alg, rng);
  const Element b = random_element(alg, rng);
  return verdict_outcome(lidskii_holds(a, b, tol), a, b);
}

TrialOutcome kyfan(const Algebra& alg, Rng& rng, double tol) {
  const Element a = random_element(alg, rng);
  const Element b = random_element(alg, rng);
  return verdict_outcome(kyfan_holds(a, b, tol), a, b);
}

TrialOutcome strong_equivalence(const Algebra& alg, Rng& rng, double tol) {
  if (rng.uniform() < 0.5) {
    const auto frame = spectral_decompose(random_element(alg, rng)).frame;
    const Element a = synthesize_from_frame(frame, sort_desc(random_spectrum(alg.rank(), rng, false)));
    const Element b = synthesize_from_frame(frame, sort_desc(random_spectrum(alg.rank(), rng, false)));
    const StrongCommuteConditions c = strong_commute_conditions(a, b, tol);
    const double r = std::max(c.additive_gap, c.lidskii_gap) / (1.0 + norm(a) + norm(b));
    return {c.strong && c.additive && c.lidskii, r};
  }
  const Element a = random_element(alg, rng);
  const Element b = random_element(alg, rng);
  return {strong_commute_conditions(a, b, kGenericAgreementTol).agree(), 0.0};
}

TrialOutcome condition_bounds(const Algebra& alg, Rng& rng, double tol) {
  const Element x = with_spectrum(alg, random_spectrum(alg.rank(), rng, true), rng);
  const ConditionReport r = condition_report(x, tol * 1e-3);
  const double half = static_cast<double>(alg.rank() / 2);
  const double excess = std::max({0.0, r.kappa_norm / std::sqrt(half) - r.cond, r.cond - r.kappa_norm});
  return {r.bounds_ok, excess / r.kappa_norm};
}

struct SuiteCase {
  std::string suite;
  Algebra algebra;
  int trials = 0;
  int passed = 0;
  double worst = 0.0;

  std::string id() const { return suite + "/" + algebra.to_string(); }
};

std::string perm_label(const std::vector<int>& perm) {
  std::string out;
  for (std::size_t i = 0; i < perm.size(); ++i) out += (i ? "-" : "") + std::to_string(perm[i]);
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void sort_rows(std::vector<CsvRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const CsvRow& l, const CsvRow& r) { return l.case_id < r.case_id; });
}

CsvRow solution_row(std::string id, const OrbitProblem& problem, const Solution& sol) {
  return {std::move(id),
          problem.algebra.to_string(),
          problem.fn.describe(),
          to_string(problem.sense),
          sol.value,
          to_string(sol.certificate.kind),
          sol.certificate.passed,
          sol.certificate.deciding_residual()};
}

// Start on the orbit feasible set: λ(b) synthesized on a random frame.
Element random_start(const Algebra& alg, const Eigen::VectorXd& lam_b, Rng& rng) {
  return with_spectrum(alg, lam_b, rng);
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.trials < 1) throw ParseError("--trials must be >= 1");
  if (!(config.tol > 0.0) || !std::isfinite(config.tol)) throw ParseError("--tol must be a positive number");
  if (config.local_search < 0) throw ParseError("--local-search must be >= 0");
}

CommandResult cmd_verify(const RunConfig& config) {
  const std::vector<std::pair<std::string, Trial>> suites = {
      {"automorphism_invariance", automorphism_invariance},
      {"condition_bounds", condition_bounds},
      {"jordan_identity", jordan_identity},
      {"kyfan", kyfan},
      {"lidskii", lidskii},
      {"spectral_roundtrip", spectral_roundtrip},
      {"strong_equivalence", strong_equivalence},
      {"trace_inner", trace_inner},
  };

  const Rng root(config.seed);
  std::uint64_t stream = 0;
  std::vector<SuiteCase> cases;
  for (const auto& [name, trial] : suites) {
    for (const Algebra& alg : verify_algebras()) {
      Rng rng = root.split(stream++);
      SuiteCase c{name, alg, 0, 0, 0.0};
      for (int t = 0; t < config.trials; ++t) {
        const TrialOutcome o = trial(alg, rng, config.tol);
        ++c.trials;
        c.passed += o.pass ? 1 : 0;
        c.worst = std::max(c.worst, o.residual);
      }
      cases.push_back(std::move(c));
    }
  }

  CommandResult result;
  json case_list = json::array();
  int failures = 0;
  auto add_case = [&](const std::string& id, const std::string& suite, const std::string& algebra, int trials,
                      int passed, double worst) {
    failures += trials - passed;
    case_list.push_back({{"id", id},
                         {"suite", suite},
                         {"algebra", algebra},
                         {"trials", trials},
                         {"passed", passed},
                         {"failed", trials - passed},
                         {"worst_residual", worst}});
    result.rows.push_back({id, algebra, "", "", worst, "", passed == trials, worst});
  };
  for (const SuiteCase& c : cases) add_case(c.id(), c.suite, c.algebra.to_string(), c.trials, c.passed, c.worst);

  const std::vector<SymmetricFunction> catalog = {
      schatten(1.0), schatten(2.0),     schatten(4.0), squared_norm(),          condition_vector_norm(),
      spread_vector_norm(), condition_number(), spread(), max_plus_quadratic(1e-3)};
  for (const SymmetricFunction& fn : catalog) {
    Rng rng = root.split(stream++);
    SchurCheckOptions opts;
    opts.trials = config.trials;
    opts.strict = fn.is_strict();
    const SchurCheckReport r = check_schur_convexity(fn, rng, opts);
    const std::string suite = opts.strict ? "function_strict_schur" : "function_schur";
    add_case(suite + "/" + fn.describe(), suite, "R^4", r.trials_run, r.trials_run - r.violation_count,
             std::max(0.0, -r.min_margin));
  }

  std::sort(case_list.begin(), case_list.end(),
            [](const json& l, const json& r) { return l.at("id").get<std::string>() < r.at("id").get<std::string>(); });
  sort_rows(result.rows);
  result.report = {{"command", "verify"},
                   {"seed", config.seed},
                   {"trials", config.trials},
                   {"tol", config.tol},
                   {"cases", case_list},
                   {"total_failures", failures}};
  result.exit_code = failures == 0 ? kExitOk : kExitPropertyFailure;
  return result;
}

CommandResult cmd_solve(const RunConfig& config) {
  if (!config.input_path) throw ParseError("solve: a problem file is required");
  CommandResult result;
  const OrbitProblem problem = problem_from_json(read_json_file(*config.input_path), &result.diagnostics);
  const Solution global = solve_global(problem, config.tol);
  bool ok = global.certificate.passed;
  result.rows.push_back(solution_row("global", problem, global));

  json locals = json::array();
  double best_local = 0.0;
  bool have_local = false;
  const Rng root(config.seed);
  for (int s = 0; s < config.local_search; ++s) {
    Rng rng = root.split(static_cast<std::uint64_t>(s));
    OrbitProblem sub = problem;
    Element x0 = Element::zero(problem.algebra);
    if (const auto* o = std::get_if<EigenvalueOrbit>(&problem.feasible)) {
      x0 = random_start(problem.algebra, eigenvalues(o->b), rng);
    } else if (const auto* w = std::get_if<WeakOrbit>(&problem.feasible)) {
      // Stay inside the weak orbit: the local search keeps x0's component.
      x0 = random_automorphism(problem.algebra, rng).apply(w->b);
      sub.feasible = EigenvalueOrbit{w->b};
    } else {
      const auto& spectra = std::get<FiniteSpectralSet>(problem.feasible).spectra;
      const Eigen::VectorXd& member = spectra[static_cast<std::size_t>(s) % spectra.size()];
      x0 = random_start(problem.algebra, member, rng);
      sub.feasible = EigenvalueOrbit{x0};
    }
    const Solution local = local_search_orbit(sub, x0);
    if (local.converged && !local.certificate.passed) ok = false;
    if (!have_local || (problem.sense == Sense::kMin ? local.value < best_local : local.value > best_local)) {
      best_local = local.value;
      have_local = true;
    }
    char id[32];
    std::snprintf(id, sizeof id, "local/%03d", s);
    json entry = to_json(local);
    entry["start"] = s;
    locals.push_back(std::move(entry));
    result.rows.push_back(solution_row(id, problem, local));
  }

  sort_rows(result.rows);
  result.report = {{"command", "solve"},
                   {"seed", config.seed},
                   {"tol", config.tol},
                   {"problem", to_json(problem)},
                   {"global", to_json(global)},
                   {"local_search", locals},
                   {"diagnostics", result.diagnostics}};
  result.report["agreement_gap"] = have_local ? json(std::abs(best_local - global.value)) : json(nullptr);
  result.exit_code = ok ? kExitOk : kExitPropertyFailure;
  return result;
}

CommandResult cmd_condition(const RunConfig& config) {
  CommandResult result;
  Element a = Element::zero(Algebra::sym_matrix(2));
  Element b = a;
  if (config.input_path) {
    json j = read_json_file(*config.input_path);
    if (j.is_object() && !j.contains("fn")) j["fn"] = "cond_vector_norm";
    const OrbitProblem problem = problem_from_json(j, &result.diagnostics);
    const auto* orbit = std::get_if<EigenvalueOrbit>(&problem.feasible);
    if (!orbit) throw ParseError("condition: feasible must be \"orbit_of\" or \"orbit_spectrum\"");
    a = problem.a;
    b = orbit->b;
  } else {
    const Algebra s2 = Algebra::sym_matrix(2);
    a = from_matrix(s2, Eigen::Vector2d(3.0, 1.0).asDiagonal().toDenseMatrix());
    b = from_matrix(s2, Eigen::Vector2d(2.0, 1.0).asDiagonal().toDenseMatrix());
  }

  const Solution sol = minimize_condition_norm_orbit(b, a, config.tol);
  const ConditionReport at_optimum = condition_report(sol.x_star + a, config.tol);
  const OrbitProblem shown{a.algebra(), condition_vector_norm(), a, EigenvalueOrbit{b}, Sense::kMin};
  result.rows.push_back(solution_row("optimum", shown, sol));

  json pairings = json::array();
  for (const PairingValue& p : condition_pairings(eigenvalues(b), eigenvalues(a))) {
    pairings.push_back({{"perm", p.perm}, {"value", p.value}});
    result.rows.push_back({"pairing/" + perm_label(p.perm), a.algebra().to_string(), "cond_vector_norm", "min",
                           p.value, "", false, 0.0});
  }

  sort_rows(result.rows);
  result.report = {{"command", "condition"},
                   {"tol", config.tol},
                   {"problem", to_json(shown)},
                   {"solution", to_json(sol)},
                   {"min_kappa_norm", sol.value},
                   {"condition_at_optimum", to_json(at_optimum)},
                   {"pairings", pairings},
                   {"feasibility_test", "lambda_n(b) + lambda_n(a) > tol (sufficient, not necessary)"},
                   {"diagnostics", result.diagnostics}};
  result.exit_code = sol.certificate.passed && at_optimum.bounds_ok ? kExitOk : kExitPropertyFailure;
  return result;
}

CommandResult cmd_counterexample(const RunConfig& config) {
  CommandResult result;
  SymmetricFunction fn = schatten(2.0);
  auto [a, b] = builtin_counterexample_instance();
  const bool builtin_instance = !config.input_path;
  if (config.input_path) {
    const OrbitProblem problem = problem_from_json(read_json_file(*config.input_path), &result.diagnostics);
    fn = problem.fn;
    a = problem.a;
    if (const auto* w = std::get_if<WeakOrbit>(&problem.feasible)) {
      b = w->b;
    } else if (const auto* o = std::get_if<EigenvalueOrbit>(&problem.feasible)) {
      b = o->b;
    } else {
      throw ParseError("counterexample: feasible must be \"weak_orbit_of\" or \"orbit_of\"");
    }
  }

  const CounterexampleReport report = counterexample_no_strong(a, b, fn, config.tol);
  const double scale = 1.0 + norm(a) + norm(b);

  bool component_positive = true;
  bool operator_everywhere = true;
  for (const ComponentResult& c : report.components) {
    component_positive = component_positive && c.solution.value > config.tol * scale;
    operator_everywhere = operator_everywhere && c.operator_commutes;
    char id[32];
    std::snprintf(id, sizeof id, "component/%03zu", result.rows.size());
    result.rows.push_back({id, a.algebra().to_string(), fn.describe(), "min", c.solution.value,
                           to_string(c.solution.certificate.kind), c.solution.certificate.passed,
                           c.solution.certificate.residuals.at("gap_a")});
  }
  const bool orbit_zero_at_a = report.spectral_set_opt.value <= config.tol * scale &&
                               norm(report.spectral_set_opt.x_star - a) <= config.tol * scale;
  const OrbitProblem over_orbit{a.algebra(), fn, a, EigenvalueOrbit{b}, Sense::kMin};
  result.rows.push_back(solution_row("orbit", over_orbit, report.spectral_set_opt));
  sort_rows(result.rows);

  const json verdicts = {{"weak_orbit_min_positive", component_positive},
                         {"no_strong_commutation", !report.any_strong},
                         {"operator_commutation_holds", operator_everywhere},
                         {"orbit_optimum_zero_at_a", orbit_zero_at_a},
                         {"is_counterexample", report.is_counterexample}};
  result.report = {{"command", "counterexample"},
                   {"tol", config.tol},
                   {"builtin_instance", builtin_instance},
                   {"a", to_json(a)},
                   {"b", to_json(b)},
                   {"fn", to_json(fn)},
                   {"report", to_json(report)},
                   {"verdicts", verdicts},
                   {"diagnostics", result.diagnostics}};
  if (!report.is_counterexample) result.report["note"] = "not a counterexample";

  bool ok = operator_everywhere;
  if (builtin_instance) ok = ok && component_positive && !report.any_strong && orbit_zero_at_a;
  result.exit_code = ok ? kExitOk : kExitPropertyFailure;
  return result;
}

CommandResult run(const RunConfig& config) {
  CommandResult result;
  try {
    validate(config);
    switch (config.command) {
      case Command::kVerify:
        result = cmd_verify(config);
        break;
      case Command::kSolve:
        result = cmd_solve(config);
        break;
      case Command::kCondition:
        result = cmd_condition(config);
        break;
      case Command::kCounterexample:
        result = cmd_counterexample(config);
        break;
    }
  } catch (const ParseError& e) {
    result = {kExitUsage, {{"error", e.what()}}, {}, {e.what()}};
  } catch (const HypothesisError& e) {
    result = {kExitUsage, {{"error", e.what()}}, {}, {e.what()}};
  } catch (const AlgebraMismatch& e) {
    result = {kExitUsage, {{"error", e.what()}}, {}, {e.what()}};
  } catch (const InfeasibleError& e) {
    result = {kExitInfeasible, {{"error", e.what()}}, {}, {e.what()}};
  } catch (const DomainError& e) {
    result = {kExitInfeasible, {{"error", e.what()}}, {}, {e.what()}};
  } catch (const Error& e) {
    result = {kExitPropertyFailure, {{"error", e.what()}}, {}, {e.what()}};
  }
  result.report["exit_code"] = result.exit_code;
  if (config.timestamp) result.report["generated_at"] = utc_timestamp();
  return result;
}

std::string csv_header() { return "case_id,algebra,fn,sense,value,cert_kind,cert_pass,residual"; }

std::string render(const CommandResult& result, Format format) {
  if (format == Format::kJson) return dump_report(result.report) + "\n";

  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  };
  auto number = [](double v) {
    if (!std::isfinite(v)) return std::string(std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf"));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const CsvRow& r : result.rows) {
    os << field(r.case_id) << ',' << field(r.algebra) << ',' << field(r.fn) << ',' << field(r.sense) << ','
       << number(r.value) << ',' << field(r.cert_kind) << ',' << (r.cert_pass ? "true" : "false") << ','
       << number(r.residual) << '\n';
  }
  return os.str();
}

}  // namespace ejaopt::cli
