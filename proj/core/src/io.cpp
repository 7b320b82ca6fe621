#include "ejaopt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ejaopt {
namespace {

using nlohmann::json;

template <class F>
auto guarded(const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const ParseError&) {
    throw;
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const Error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError("expected an array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

bool all_numbers(const json& j) {
  for (const auto& item : j) {
    if (!item.is_number()) return false;
  }
  return true;
}

Element symmetrized(const Algebra& alg, Eigen::MatrixXd m, std::vector<std::string>* diagnostics) {
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kAsymmetryReportThreshold && diagnostics) {
    std::ostringstream os;
    os << "matrix input for " << alg.to_string() << " symmetrized; max |M - M^T| = " << asym;
    diagnostics->push_back(os.str());
  }
  return from_matrix(alg, 0.5 * (m + m.transpose()));
}

Element element_from_array(const Algebra& alg, const json& j, std::vector<std::string>* diagnostics) {
  const auto size = static_cast<int>(j.size());
  const bool sym = alg.kind() == AlgebraKind::kSymMatrix;
  if (all_numbers(j)) {
    if (size == alg.dim()) return Element(alg, vector_from_json(j));
    const int n = alg.param();
    if (sym && size == n * n) {
      const Eigen::VectorXd flat = vector_from_json(j);
      Eigen::MatrixXd m(n, n);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) m(r, c) = flat(r * n + c);
      }
      return symmetrized(alg, std::move(m), diagnostics);
    }
    throw ParseError("element of " + alg.to_string() + " needs " + std::to_string(alg.dim()) +
                     " coordinates, got " + std::to_string(size));
  }
  if (sym && size == alg.param()) {
    const int n = alg.param();
    Eigen::MatrixXd m(n, n);
    for (int r = 0; r < n; ++r) {
      const Eigen::VectorXd row = vector_from_json(j[static_cast<std::size_t>(r)]);
      if (row.size() != n) throw ParseError("matrix rows must have length " + std::to_string(n));
      m.row(r) = row.transpose();
    }
    return symmetrized(alg, std::move(m), diagnostics);
  }
  throw ParseError("unrecognized element shape for " + alg.to_string());
}

Element orbit_spectrum_element(const Algebra& alg, const Eigen::VectorXd& spectrum) {
  if (spectrum.size() != alg.rank()) {
    throw ParseError("orbit_spectrum needs " + std::to_string(alg.rank()) + " entries");
  }
  return synthesize_from_frame(spectral_decompose(Element::unit(alg)).frame, sort_desc(spectrum));
}

void write_json(const json& j, int indent, int depth, std::string& out) {
  const auto pad = [&](int d) {
    if (indent >= 0) out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  const char* newline = indent >= 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      out += newline;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ',';
          out += newline;
        }
        first = false;
        pad(depth + 1);
        out += json(it.key()).dump();
        out += indent >= 0 ? ": " : ":";
        write_json(it.value(), indent, depth + 1, out);
      }
      out += newline;
      pad(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      out += newline;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) {
          out += ',';
          out += newline;
        }
        pad(depth + 1);
        write_json(j[i], indent, depth + 1, out);
      }
      out += newline;
      pad(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

json to_json(const Algebra& algebra) {
  switch (algebra.kind()) {
    case AlgebraKind::kRealDiagonal:
      return {{"kind", "diag"}, {"n", algebra.param()}};
    case AlgebraKind::kSymMatrix:
      return {{"kind", "sym"}, {"n", algebra.param()}};
    case AlgebraKind::kSpinFactor:
      return {{"kind", "spin"}, {"d", algebra.param()}};
    case AlgebraKind::kProduct: {
      json factors = json::array();
      for (int i = 0; i < algebra.factor_count(); ++i) factors.push_back(to_json(algebra.factor(i)));
      return {{"kind", "product"}, {"factors", factors}};
    }
  }
  return {};
}

Algebra algebra_from_json(const json& j) {
  return guarded("algebra", [&] {
    if (!j.is_object()) throw ParseError("algebra: expected an object");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "diag" || kind == "real_diagonal") return Algebra::real_diagonal(j.at("n").get<int>());
    if (kind == "sym" || kind == "sym_matrix") return Algebra::sym_matrix(j.at("n").get<int>());
    if (kind == "spin" || kind == "spin_factor") return Algebra::spin_factor(j.at("d").get<int>());
    if (kind == "product") {
      std::vector<Algebra> factors;
      for (const auto& f : j.at("factors")) factors.push_back(algebra_from_json(f));
      return Algebra::product(factors);
    }
    throw ParseError("algebra: unknown kind '" + kind + "'");
  });
}

json to_json(const Element& x) {
  return {{"algebra", to_json(x.algebra())}, {"coords", vector_json(x.coords())}};
}

Element element_from_json(const json& j, std::vector<std::string>* diagnostics) {
  return guarded("element", [&] {
    if (!j.is_object() || !j.contains("algebra")) throw ParseError("element: missing \"algebra\"");
    return element_from_json(algebra_from_json(j.at("algebra")), j, diagnostics);
  });
}

Element element_from_json(const Algebra& algebra, const json& j, std::vector<std::string>* diagnostics) {
  return guarded("element", [&] {
    if (j.is_array()) return element_from_array(algebra, j, diagnostics);
    if (!j.is_object()) throw ParseError("element: expected an array or an object");
    if (j.contains("algebra") && algebra_from_json(j.at("algebra")) != algebra) {
      throw ParseError("element: algebra differs from the expected " + algebra.to_string());
    }
    if (j.contains("coords")) return element_from_array(algebra, j.at("coords"), diagnostics);
    if (j.contains("factors")) {
      const json& parts = j.at("factors");
      if (!parts.is_array() || static_cast<int>(parts.size()) != algebra.factor_count()) {
        throw ParseError("element: need one entry per factor of " + algebra.to_string());
      }
      std::vector<Element> factors;
      for (int i = 0; i < algebra.factor_count(); ++i) {
        factors.push_back(element_from_json(algebra.factor(i), parts[static_cast<std::size_t>(i)], diagnostics));
      }
      return Element::from_factors(algebra, factors);
    }
    throw ParseError("element: expected \"coords\" or \"factors\"");
  });
}

json to_json(const SymmetricFunction& fn) {
  json j = {{"fn", fn.id()},
            {"domain", to_string(fn.domain())},
            {"declared_class", to_string(fn.declared_class())}};
  for (const auto& [key, value] : fn.params()) j[key] = value;
  return j;
}

SymmetricFunction function_from_json(const json& j) {
  return guarded("function", [&]() -> SymmetricFunction {
    if (j.is_string()) return builtin(j.get<std::string>(), {});
    if (!j.is_object()) throw ParseError("function: expected a name or an object");
    const std::string name = j.at("fn").get<std::string>();
    if (name == "affine") {
      return affine(function_from_json(j.at("of")), j.value("scale", 1.0), j.value("offset", 0.0));
    }
    FunctionParams params;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_number()) params[it.key()] = it.value().get<double>();
    }
    return builtin(name, params);
  });
}

json to_json(const MajorizationVerdict& verdict) {
  return {{"holds", verdict.holds},
          {"strict", verdict.strict},
          {"worst_prefix_gap", verdict.worst_prefix_gap},
          {"sum_gap", verdict.sum_gap}};
}

json to_json(const Certificate& certificate) {
  json residuals = json::object();
  for (const auto& [key, value] : certificate.residuals) residuals[key] = value;
  return {{"kind", to_string(certificate.kind)},
          {"passed", certificate.passed},
          {"residuals", residuals},
          {"deciding_residual", certificate.deciding_residual()},
          {"tol", certificate.tol}};
}

json to_json(const Solution& solution) {
  json trace = json::array();
  for (const auto& [sweep, value] : solution.trace) trace.push_back({sweep, value});
  return {{"x_star", to_json(solution.x_star)},
          {"value", solution.value},
          {"certificate", to_json(solution.certificate)},
          {"iterations", solution.iterations},
          {"trace", trace},
          {"converged", solution.converged},
          {"warnings", solution.warnings}};
}

json to_json(const ConditionReport& report) {
  return {{"cond", report.cond},
          {"kappa", vector_json(report.kappa)},
          {"kappa_norm", report.kappa_norm},
          {"bounds_ok", report.bounds_ok}};
}

json to_json(const CounterexampleReport& report) {
  json components = json::array();
  for (const ComponentResult& c : report.components) {
    json spectra = json::array();
    for (const auto& s : c.factor_spectra) spectra.push_back(vector_json(s));
    components.push_back({{"factor_spectra", spectra},
                          {"solution", to_json(c.solution)},
                          {"strongly_commutes", c.strongly_commutes},
                          {"operator_commutes", c.operator_commutes},
                          {"contains_a", c.contains_a}});
  }
  return {{"simple_algebra", report.simple_algebra},
          {"components", components},
          {"any_strong", report.any_strong},
          {"weak_orbit_min", report.weak_orbit_min},
          {"spectral_set_opt", to_json(report.spectral_set_opt)},
          {"gap", report.gap},
          {"is_counterexample", report.is_counterexample},
          {"warnings", report.warnings}};
}

OrbitProblem problem_from_json(const json& j, std::vector<std::string>* diagnostics) {
  return guarded("problem", [&] {
    if (!j.is_object()) throw ParseError("problem: expected an object");
    const Algebra alg = algebra_from_json(j.at("algebra"));
    SymmetricFunction fn = function_from_json(j.at("fn"));
    Element a = element_from_json(alg, j.at("a"), diagnostics);

    Sense sense = Sense::kMin;
    const std::string s = j.value("sense", std::string("min"));
    if (s == "max") {
      sense = Sense::kMax;
    } else if (s != "min") {
      throw ParseError("problem: sense must be \"min\" or \"max\"");
    }

    const json& f = j.at("feasible");
    if (!f.is_object() || f.size() != 1) throw ParseError("problem: feasible needs exactly one key");
    FeasibleSet feasible = FiniteSpectralSet{};
    if (f.contains("orbit_of")) {
      feasible = EigenvalueOrbit{element_from_json(alg, f.at("orbit_of"), diagnostics)};
    } else if (f.contains("weak_orbit_of")) {
      feasible = WeakOrbit{element_from_json(alg, f.at("weak_orbit_of"), diagnostics)};
    } else if (f.contains("orbit_spectrum")) {
      feasible = EigenvalueOrbit{orbit_spectrum_element(alg, vector_from_json(f.at("orbit_spectrum")))};
    } else if (f.contains("spectral_set")) {
      FiniteSpectralSet set;
      for (const auto& member : f.at("spectral_set")) {
        Eigen::VectorXd u = vector_from_json(member);
        if (u.size() != alg.rank()) {
          throw ParseError("problem: spectral_set members need " + std::to_string(alg.rank()) + " entries");
        }
        set.spectra.push_back(sort_desc(u));
      }
      if (set.spectra.empty()) throw ParseError("problem: spectral_set is empty");
      feasible = std::move(set);
    } else {
      throw ParseError("problem: unknown feasible set '" + f.begin().key() + "'");
    }
    return OrbitProblem{alg, std::move(fn), std::move(a), std::move(feasible), sense};
  });
}

json to_json(const OrbitProblem& problem) {
  json feasible;
  if (const auto* o = std::get_if<EigenvalueOrbit>(&problem.feasible)) {
    feasible = {{"orbit_of", vector_json(o->b.coords())}};
  } else if (const auto* w = std::get_if<WeakOrbit>(&problem.feasible)) {
    feasible = {{"weak_orbit_of", vector_json(w->b.coords())}};
  } else {
    json members = json::array();
    for (const auto& u : std::get<FiniteSpectralSet>(problem.feasible).spectra) members.push_back(vector_json(u));
    feasible = {{"spectral_set", members}};
  }
  return {{"algebra", to_json(problem.algebra)},
          {"fn", to_json(problem.fn)},
          {"a", vector_json(problem.a.coords())},
          {"feasible", feasible},
          {"sense", to_string(problem.sense)}};
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

std::string dump_report(const json& j, int indent) {
  std::string out;
  write_json(j, indent, 0, out);
  return out;
}

}  // namespace ejaopt
