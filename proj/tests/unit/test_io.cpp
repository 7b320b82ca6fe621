#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <limits>

#include "ejaopt/automorphism.hpp"
#include "ejaopt/io.hpp"

namespace ejaopt {
namespace {

using nlohmann::json;

TEST(AlgebraJson, RoundTrip) {
  for (const Algebra& alg : {Algebra::real_diagonal(3), Algebra::sym_matrix(4), Algebra::spin_factor(5),
                             Algebra::product({Algebra::sym_matrix(2), Algebra::spin_factor(3)})}) {
    EXPECT_EQ(algebra_from_json(to_json(alg)), alg) << alg.to_string();
  }
  EXPECT_EQ(algebra_from_json(json::parse(R"({"kind":"sym_matrix","n":3})")), Algebra::sym_matrix(3));
}

TEST(AlgebraJson, Errors) {
  EXPECT_THROW(algebra_from_json(json::parse(R"({"kind":"octonion","n":3})")), ParseError);
  EXPECT_THROW(algebra_from_json(json::parse(R"({"kind":"sym"})")), ParseError);
  EXPECT_THROW(algebra_from_json(json::parse(R"({"kind":"spin","d":2})")), ParseError);
  EXPECT_THROW(algebra_from_json(json::parse(R"([1,2])")), ParseError);
}

TEST(ElementJson, Shapes) {
  const Algebra s2 = Algebra::sym_matrix(2);
  const Element coords = element_from_json(s2, json::parse("[2, 1.4142135623730951, 1]"));
  const Element flat = element_from_json(s2, json::parse("[2, 1, 1, 1]"));
  const Element nested = element_from_json(s2, json::parse("[[2, 1], [1, 1]]"));
  const Element object = element_from_json(json::parse(R"({"algebra":{"kind":"sym","n":2},"coords":[[2,1],[1,1]]})"));
  EXPECT_NEAR((flat.coords() - coords.coords()).norm(), 0.0, 1e-15);
  EXPECT_NEAR((nested.coords() - coords.coords()).norm(), 0.0, 1e-15);
  EXPECT_NEAR((object.coords() - coords.coords()).norm(), 0.0, 1e-15);

  const Algebra prod = Algebra::product({Algebra::sym_matrix(2), Algebra::spin_factor(3)});
  const Element parts = element_from_json(prod, json::parse(R"({"factors":[[[1,0],[0,2]],[3,0.5,0]]})"));
  EXPECT_EQ(parts.coords(), (Eigen::VectorXd(6) << 1, 0, 2, 3, 0.5, 0).finished());
}

TEST(ElementJson, AsymmetryIsSymmetrizedAndReported) {
  const Algebra s2 = Algebra::sym_matrix(2);
  std::vector<std::string> diag;
  const Element x = element_from_json(s2, json::parse("[[1, 2], [0, 1]]"), &diag);
  EXPECT_NEAR(to_matrix(x)(0, 1), 1.0, 1e-15);
  ASSERT_EQ(diag.size(), 1u);
  std::vector<std::string> quiet;
  element_from_json(s2, json::parse("[[1, 1], [1.000000000001, 1]]"), &quiet);
  EXPECT_TRUE(quiet.empty());
}

TEST(ElementJson, Errors) {
  const Algebra s2 = Algebra::sym_matrix(2);
  EXPECT_THROW(element_from_json(s2, json::parse("[1, 2]")), ParseError);
  EXPECT_THROW(element_from_json(s2, json::parse(R"(["a", 1, 2])")), ParseError);
  EXPECT_THROW(element_from_json(s2, json::parse(R"({"coords":[1,2,3],"algebra":{"kind":"diag","n":3}})")),
               ParseError);
  EXPECT_THROW(element_from_json(s2, json::parse(R"({"stuff":1})")), ParseError);
  EXPECT_THROW(element_from_json(json::parse("[1,2,3]")), ParseError);
}

TEST(ElementJson, RoundTrip) {
  Rng rng(81);
  const Algebra alg = Algebra::product({Algebra::sym_matrix(3), Algebra::spin_factor(4)});
  const Element x = random_element(alg, rng);
  const Element back = element_from_json(parse_json_text(dump_report(to_json(x))));
  EXPECT_EQ(back.coords(), x.coords());
  EXPECT_EQ(back.algebra(), alg);
}

TEST(FunctionJson, ParseAndRoundTrip) {
  EXPECT_EQ(function_from_json(json("squared_norm")).describe(), squared_norm().describe());
  const SymmetricFunction s4 = function_from_json(json::parse(R"({"fn":"schatten","p":4})"));
  EXPECT_EQ(s4.describe(), schatten(4.0).describe());
  EXPECT_EQ(function_from_json(to_json(s4)).describe(), s4.describe());
  const SymmetricFunction af = function_from_json(json::parse(R"({"fn":"affine","of":"spread","scale":2,"offset":1})"));
  EXPECT_DOUBLE_EQ(af((Eigen::VectorXd(2) << 3, 1).finished()), 5.0);
  EXPECT_THROW(function_from_json(json("nope")), ParseError);
  EXPECT_THROW(function_from_json(json::parse(R"({"fn":"schatten","p":0.5})")), ParseError);
  EXPECT_THROW(function_from_json(json(3)), ParseError);
}

TEST(ProblemJson, DataFiles) {
  const std::string dir = EJAOPT_TEST_DATA_DIR;
  const OrbitProblem mn = problem_from_json(read_json_file(dir + "/sqrt2_min.json"));
  EXPECT_EQ(mn.sense, Sense::kMin);
  EXPECT_NEAR(solve_global(mn).value, std::sqrt(2.0), 1e-12);
  const OrbitProblem mx = problem_from_json(read_json_file(dir + "/sqrt2_max.json"));
  EXPECT_NEAR(solve_global(mx).value, 2.0 * std::sqrt(2.0), 1e-12);
  const OrbitProblem ss = problem_from_json(read_json_file(dir + "/spectral_set_self.json"));
  EXPECT_TRUE(std::holds_alternative<FiniteSpectralSet>(ss.feasible));
  EXPECT_NEAR(solve_global(ss).value, 0.0, 1e-12);
  const OrbitProblem wk = problem_from_json(read_json_file(dir + "/weak_orbit_contains_a.json"));
  EXPECT_TRUE(std::holds_alternative<WeakOrbit>(wk.feasible));
  EXPECT_THROW(problem_from_json(read_json_file(dir + "/bad_sense.json")), ParseError);
  EXPECT_THROW(read_json_file(dir + "/does_not_exist.json"), ParseError);
}

TEST(ProblemJson, RoundTrip) {
  Rng rng(82);
  const Algebra alg = Algebra::spin_factor(4);
  const OrbitProblem p{alg, schatten(4.0), random_element(alg, rng), EigenvalueOrbit{random_element(alg, rng)},
                       Sense::kMax};
  const OrbitProblem back = problem_from_json(parse_json_text(dump_report(to_json(p))));
  EXPECT_EQ(back.sense, Sense::kMax);
  EXPECT_EQ(back.a.coords(), p.a.coords());
  EXPECT_EQ(std::get<EigenvalueOrbit>(back.feasible).b.coords(), std::get<EigenvalueOrbit>(p.feasible).b.coords());
  EXPECT_EQ(solve_global(back).value, solve_global(p).value);
}

TEST(ProblemJson, Errors) {
  EXPECT_THROW(parse_json_text("{not json"), ParseError);
  EXPECT_THROW(problem_from_json(json::parse(R"({"algebra":{"kind":"sym","n":2},"fn":"squared_norm","a":[1,0,1]})")),
               ParseError);
  EXPECT_THROW(problem_from_json(json::parse(
                   R"({"algebra":{"kind":"sym","n":2},"fn":"squared_norm","a":[1,0,1],"feasible":{"nothing":1}})")),
               ParseError);
}

TEST(DumpReport, Format) {
  json j;
  j["zeta"] = 0.1;
  j["alpha"] = 1.0 / 3.0;
  j["inf"] = std::numeric_limits<double>::infinity();
  j["nan"] = std::nan("");
  j["n"] = 3;
  j["list"] = json::array({1.5, true, "s"});
  EXPECT_EQ(dump_report(j, -1),
            R"({"alpha":0.33333333333333331,"inf":null,"list":[1.5,true,"s"],"n":3,"nan":null,"zeta":0.10000000000000001})");
  EXPECT_EQ(dump_report(json::object({{"b", json::array()}, {"a", json::object()}}), 2),
            "{\n  \"a\": {},\n  \"b\": []\n}");
}

TEST(DumpReport, DoublesSurviveRoundTrip) {
  Rng rng(83);
  for (int t = 0; t < 1000; ++t) {
    const double v = rng.normal() * std::pow(10.0, rng.uniform(-20, 20));
    EXPECT_EQ(parse_json_text(dump_report(json::array({v}), -1))[0].get<double>(), v);
  }
}

TEST(ReportJson, SolutionAndCertificate) {
  const Solution s = solve_global(problem_from_json(read_json_file(std::string(EJAOPT_TEST_DATA_DIR) + "/sqrt2_min.json")));
  const json j = to_json(s);
  EXPECT_EQ(j.at("certificate").at("kind"), "strong_commute_with_a");
  EXPECT_TRUE(j.at("certificate").at("passed").get<bool>());
  EXPECT_TRUE(j.at("certificate").contains("deciding_residual"));
  EXPECT_TRUE(j.at("certificate").at("residuals").contains("commutator_norm"));
  EXPECT_DOUBLE_EQ(j.at("value").get<double>(), s.value);
  EXPECT_EQ(element_from_json(j.at("x_star")).coords(), s.x_star.coords());
}

}  // namespace
}  // namespace ejaopt
