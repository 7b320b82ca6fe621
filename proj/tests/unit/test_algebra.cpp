#include <gtest/gtest.h>

#include <cmath>

#include "ejaopt/algebra.hpp"
#include "ejaopt/automorphism.hpp"
#include "ejaopt/errors.hpp"
#include "ejaopt/majorization.hpp"
#include "oracles.hpp"

namespace ejaopt {
namespace {

const Algebra kS2 = Algebra::sym_matrix(2);
const Algebra kS3 = Algebra::sym_matrix(3);
const Algebra kSpin3 = Algebra::spin_factor(3);

Element sym(const Algebra& alg, const Eigen::MatrixXd& m) { return from_matrix(alg, m); }

Element diag2(double p, double q) { return sym(kS2, Eigen::Vector2d(p, q).asDiagonal().toDenseMatrix()); }

Element spin(const Algebra& alg, std::initializer_list<double> c) {
  return Element(alg, Eigen::Map<const Eigen::VectorXd>(c.begin(), static_cast<Eigen::Index>(c.size())));
}

std::vector<Algebra> kinds() {
  return {Algebra::real_diagonal(4),   Algebra::sym_matrix(1),  kS2,    kS3, Algebra::sym_matrix(5),
          Algebra::spin_factor(3),     Algebra::spin_factor(6),
          Algebra::product({kS2, kS2}), Algebra::product({kS3, Algebra::spin_factor(4), Algebra::real_diagonal(2)})};
}

TEST(AlgebraDescriptor, RankDimAndNames) {
  EXPECT_EQ(Algebra::real_diagonal(4).rank(), 4);
  EXPECT_EQ(kS3.dim(), 6);
  EXPECT_EQ(Algebra::spin_factor(5).rank(), 2);
  EXPECT_EQ(Algebra::spin_factor(5).dim(), 5);
  const Algebra p = Algebra::product({kS2, Algebra::spin_factor(4)});
  EXPECT_EQ(p.rank(), 4);
  EXPECT_EQ(p.dim(), 7);
  EXPECT_EQ(p.to_string(), "sym(2)*spin(4)");
  EXPECT_FALSE(p.is_simple());
  EXPECT_TRUE(kS3.is_simple());
}

TEST(AlgebraDescriptor, SingleFactorProductCollapsesAndNestedProductsFlatten) {
  EXPECT_EQ(Algebra::product({kS3}), kS3);
  const Algebra nested = Algebra::product({Algebra::product({kS2, kS2}), kSpin3});
  EXPECT_EQ(nested.factor_count(), 3);
  EXPECT_EQ(nested, Algebra::product({kS2, kS2, kSpin3}));
}

TEST(AlgebraDescriptor, RejectsInvalidParameters) {
  EXPECT_THROW(Algebra::spin_factor(2), AlgebraMismatch);
  EXPECT_THROW(Algebra::sym_matrix(0), AlgebraMismatch);
  EXPECT_THROW(Algebra::product({}), AlgebraMismatch);
}

TEST(Element, ValidatesLengthAndFiniteness) {
  EXPECT_THROW(Element(kS2, Eigen::VectorXd::Zero(2)), AlgebraMismatch);
  Eigen::VectorXd bad = Eigen::VectorXd::Zero(3);
  bad(1) = std::nan("");
  EXPECT_THROW(Element(kS2, bad), DomainError);
}

TEST(JordanProduct, DiagonalMatricesMultiplyEntrywise) {
  const Element z = jordan_product(diag2(1, 2), diag2(3, 4));
  EXPECT_TRUE(to_matrix(z).isApprox(Eigen::Vector2d(3, 8).asDiagonal().toDenseMatrix(), 1e-15));
}

TEST(JordanProduct, SpinRule) {
  const Element z = jordan_product(spin(kSpin3, {1, 1, 0}), spin(kSpin3, {2, 0, 1}));
  EXPECT_TRUE(z.coords().isApprox(Eigen::Vector3d(2, 2, 1), 1e-15));
}

TEST(JordanProduct, UnitIsNeutralAndMatchesOracle) {
  Rng rng(11);
  for (const Algebra& alg : kinds()) {
    const Element x = random_element(alg, rng);
    const Element y = random_element(alg, rng);
    EXPECT_LE(norm(jordan_product(Element::unit(alg), x) - x), 1e-14 * norm(x)) << alg.to_string();
    const Eigen::VectorXd expected = oracle::product(alg, x.coords(), y.coords());
    EXPECT_LE((jordan_product(x, y).coords() - expected).norm(), 1e-13 * (1 + expected.norm())) << alg.to_string();
    EXPECT_LE(norm(jordan_product(x, y) - jordan_product(y, x)), 1e-14 * (1 + norm(x) * norm(y)));
  }
}

TEST(JordanProduct, AlgebraMismatchThrows) {
  EXPECT_THROW(jordan_product(Element::unit(kS2), Element::unit(kS3)), AlgebraMismatch);
}

TEST(JordanProduct, JordanIdentityOnRandomProbes) {
  Rng rng(12);
  for (const Algebra& alg : kinds()) {
    for (int t = 0; t < 200; ++t) {
      const Element x = random_element(alg, rng);
      const Element y = random_element(alg, rng);
      const Element x2 = jordan_product(x, x);
      const Element lhs = jordan_product(jordan_product(x, y), x2);
      const Element rhs = jordan_product(x, jordan_product(y, x2));
      EXPECT_LE(norm(lhs - rhs), 1e-9 * std::pow(1 + norm(x), 3) * (1 + norm(y)));
    }
  }
}

TEST(Inner, Examples) {
  EXPECT_DOUBLE_EQ(inner(diag2(2, 1), diag2(5, 3)), 13.0);
  EXPECT_DOUBLE_EQ(inner(Element::unit(kS3), Element::unit(kS3)), 3.0);
  EXPECT_DOUBLE_EQ(inner(spin(kSpin3, {1, 1, 0}), spin(kSpin3, {1, 1, 0})), 4.0);
}

TEST(Inner, EqualsTraceOfProductAndFrobenius) {
  Rng rng(13);
  for (const Algebra& alg : kinds()) {
    const Element x = random_element(alg, rng);
    const Element y = random_element(alg, rng);
    const double expected = oracle::inner(alg, x.coords(), y.coords());
    EXPECT_NEAR(inner(x, y), expected, 1e-12 * (1 + std::abs(expected))) << alg.to_string();
    EXPECT_NEAR(trace(x), oracle::trace(alg, x.coords()), 1e-12 * (1 + norm(x)));
    EXPECT_NEAR(norm(x), std::sqrt(inner(x, x)), 1e-12 * norm(x));
  }
  const Element x = random_element(kS3, rng);
  const Element y = random_element(kS3, rng);
  EXPECT_NEAR(inner(x, y), (to_matrix(x).cwiseProduct(to_matrix(y))).sum(), 1e-12);
}

TEST(Eigenvalues, Examples) {
  Eigen::Matrix2d swap;
  swap << 0, 1, 1, 0;
  EXPECT_TRUE(eigenvalues(sym(kS2, swap)).isApprox(Eigen::Vector2d(1, -1), 1e-14));
  EXPECT_TRUE(eigenvalues(spin(kSpin3, {1, 3, 4})).isApprox(Eigen::Vector2d(6, -4), 1e-14));

  const Algebra p = Algebra::product({kS2, kS2});
  const Element b = Element::from_factors(p, {diag2(4, 1), diag2(3, 2)});
  EXPECT_TRUE(eigenvalues(b).isApprox(Eigen::Vector4d(4, 3, 2, 1), 1e-14));
}

TEST(Eigenvalues, MatchOracleSortedAndSumToTrace) {
  Rng rng(14);
  for (const Algebra& alg : kinds()) {
    for (int t = 0; t < 50; ++t) {
      const Element x = random_element(alg, rng);
      const Eigen::VectorXd lam = eigenvalues(x);
      ASSERT_EQ(lam.size(), alg.rank());
      for (Eigen::Index i = 1; i < lam.size(); ++i) EXPECT_GE(lam(i - 1), lam(i));
      EXPECT_LE((lam - oracle::eigenvalues(alg, x.coords())).cwiseAbs().maxCoeff(), 1e-12 * (1 + norm(x)));
      EXPECT_NEAR(lam.sum(), trace(x), 1e-12 * (1 + norm(x)));
    }
  }
}

TEST(Eigenvalues, JacobiHandlesLargerAndClusteredMatrices) {
  Rng rng(15);
  const Algebra s20 = Algebra::sym_matrix(20);
  const Eigen::MatrixXd q = random_orthogonal(20, rng);
  Eigen::VectorXd spectrum(20);
  for (int i = 0; i < 20; ++i) spectrum(i) = i < 10 ? 1.0 : 1.0 + 1e-9 * i;
  const Element x = from_matrix(s20, q * spectrum.asDiagonal() * q.transpose());
  EXPECT_LE((eigenvalues(x) - oracle::sorted_desc(spectrum)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(SpectralDecompose, DiagonalInput) {
  const SpectralDecomposition sd = spectral_decompose(diag2(2, 1));
  EXPECT_TRUE(sd.eigenvalues.isApprox(Eigen::Vector2d(2, 1), 1e-15));
  EXPECT_TRUE(to_matrix(sd.frame[0]).isApprox(Eigen::Vector2d(1, 0).asDiagonal().toDenseMatrix(), 1e-14));
  EXPECT_LE(to_matrix(sd.frame[1] - diag2(0, 1)).norm(), 1e-14);
}

TEST(SpectralDecompose, SpinFrameClosedForm) {
  const Algebra s5 = Algebra::spin_factor(5);
  const Element x = spin(s5, {0.5, 1, -2, 2, 0});
  const SpectralDecomposition sd = spectral_decompose(x);
  const Eigen::Vector4d u = Eigen::Vector4d(1, -2, 2, 0) / 3.0;
  EXPECT_NEAR(sd.frame[0].coords()(0), 0.5, 1e-15);
  EXPECT_LE((sd.frame[0].coords().tail(4) - u / 2).norm(), 1e-15);
  EXPECT_LE((sd.frame[1].coords().tail(4) + u / 2).norm(), 1e-15);
  EXPECT_LE(norm(jordan_product(sd.frame[0], sd.frame[1])), 1e-15);
  EXPECT_LE(norm(jordan_product(sd.frame[0], sd.frame[0]) - sd.frame[0]), 1e-15);
}

TEST(SpectralDecompose, SpinDegenerateUsesFixedAxis) {
  const SpectralDecomposition sd = spectral_decompose(spin(kSpin3, {2, 0, 0}));
  EXPECT_TRUE(sd.eigenvalues.isApprox(Eigen::Vector2d(2, 2)));
  EXPECT_NO_THROW(validate_frame(sd.frame));
}

TEST(SpectralDecompose, FrameInvariantsAndRoundTripIncludingRepeats) {
  Rng rng(16);
  for (const Algebra& alg : kinds()) {
    for (int t = 0; t < 40; ++t) {
      Element x = random_element(alg, rng);
      if (t % 2) {
        Eigen::VectorXd s(alg.rank());
        for (int i = 0; i < alg.rank(); ++i) s(i) = static_cast<double>(rng.index(2));
        x = synthesize_from_frame(spectral_decompose(x).frame, s);
      }
      const SpectralDecomposition sd = spectral_decompose(x);
      EXPECT_NO_THROW(validate_frame(sd.frame, 1e-9)) << alg.to_string();
      Element sum = Element::zero(alg);
      for (std::size_t i = 0; i < sd.frame.size(); ++i) {
        EXPECT_NEAR(trace(sd.frame[i]), 1.0, 1e-12);
        sum += sd.frame[i];
      }
      EXPECT_LE(norm(sum - Element::unit(alg)), 1e-12);
      EXPECT_LE(norm(synthesize_from_frame(sd.frame, sd.eigenvalues) - x), 1e-9 * (1 + norm(x)));
    }
  }
}

TEST(SpectralDecompose, UnitHasAllOnes) {
  for (const Algebra& alg : kinds()) {
    EXPECT_TRUE(spectral_decompose(Element::unit(alg)).eigenvalues.isApprox(Eigen::VectorXd::Ones(alg.rank())));
  }
}

TEST(LOperator, UnitGivesIdentityAndDiagonalIsDiagonal) {
  for (const Algebra& alg : kinds()) {
    EXPECT_TRUE(l_operator(Element::unit(alg)).isApprox(Eigen::MatrixXd::Identity(alg.dim(), alg.dim())));
  }
  const Algebra r4 = Algebra::real_diagonal(4);
  const Element x(r4, Eigen::Vector4d(1, -2, 3, 0.5));
  EXPECT_TRUE(l_operator(x).isApprox(x.coords().asDiagonal().toDenseMatrix()));
}

TEST(LOperator, MatchesColumnByColumnOracleAndIsSymmetric) {
  Rng rng(17);
  Eigen::Matrix2d swap;
  swap << 0, 1, 1, 0;
  const Element s = sym(kS2, swap);
  EXPECT_LE((l_operator(s) - oracle::l_operator(kS2, s.coords())).norm(), 1e-15);
  for (const Algebra& alg : kinds()) {
    const Element x = random_element(alg, rng);
    const Eigen::MatrixXd L = l_operator(x);
    EXPECT_LE((L - oracle::l_operator(alg, x.coords())).norm(), 1e-13 * (1 + norm(x))) << alg.to_string();
    EXPECT_LE((L - L.transpose()).norm(), 1e-14 * (1 + norm(x)));
  }
}

TEST(Peirce, UnitAndZeroIdempotents) {
  Rng rng(18);
  const Element x = random_element(kS3, rng);
  const PeirceParts e = peirce_project(Element::unit(kS3), x);
  EXPECT_LE(norm(e.one - x), 1e-14);
  EXPECT_LE(norm(e.zero) + norm(e.half), 1e-14);
  const PeirceParts z = peirce_project(Element::zero(kS3), x);
  EXPECT_LE(norm(z.zero - x), 1e-14);
  EXPECT_LE(norm(z.one) + norm(z.half), 1e-14);
}

TEST(Peirce, TwoByTwoExample) {
  Eigen::Matrix2d m;
  m << 5, 7, 7, -3;
  const PeirceParts parts = peirce_project(diag2(1, 0), sym(kS2, m));
  EXPECT_LE(norm(parts.one - diag2(5, 0)), 1e-14);
  EXPECT_LE(norm(parts.zero - diag2(0, -3)), 1e-14);
  Eigen::Matrix2d off;
  off << 0, 7, 7, 0;
  EXPECT_LE(norm(parts.half - sym(kS2, off)), 1e-14);
}

TEST(Peirce, MatchesEigenspaceProjectionsOfL) {
  Rng rng(19);
  for (const Algebra& alg : kinds()) {
    const SpectralDecomposition sd = spectral_decompose(random_element(alg, rng));
    Element p = sd.frame[0];
    if (alg.rank() > 2) p += sd.frame[2];
    const Element x = random_element(alg, rng);
    const PeirceParts parts = peirce_project(p, x);
    const oracle::PeirceParts expected = oracle::peirce(alg, p.coords(), x.coords());
    EXPECT_LE((parts.one.coords() - expected.one).norm(), 1e-10) << alg.to_string();
    EXPECT_LE((parts.zero.coords() - expected.zero).norm(), 1e-10) << alg.to_string();
    EXPECT_LE((parts.half.coords() - expected.half).norm(), 1e-10) << alg.to_string();
    EXPECT_LE(norm(parts.one + parts.zero + parts.half - x), 1e-12 * (1 + norm(x)));
    EXPECT_LE(std::abs(inner(parts.one, parts.half)) + std::abs(inner(parts.zero, parts.half)) +
                  std::abs(inner(parts.one, parts.zero)),
              1e-11 * (1 + norm(x) * norm(x)));
  }
}

TEST(Peirce, RejectsNonIdempotent) {
  EXPECT_THROW(peirce_project(diag2(2, 0), diag2(1, 1)), DomainError);
}

TEST(Commutation, OperatorCommuteExamples) {
  Eigen::Matrix2d swap;
  swap << 0, 1, 1, 0;
  EXPECT_TRUE(operator_commute(diag2(3, -1), diag2(0.5, 7)));
  EXPECT_FALSE(operator_commute(diag2(1, 0), sym(kS2, swap)));
  EXPECT_GT(commutator_norm(diag2(1, 0), sym(kS2, swap)), 0.1);
  Rng rng(20);
  const Element x = random_element(kS3, rng);
  EXPECT_TRUE(operator_commute(x, Element::unit(kS3)));
  const Algebra r1 = Algebra::real_diagonal(1);
  EXPECT_TRUE(operator_commute(Element(r1, Eigen::VectorXd::Constant(1, 3.0)),
                               Element(r1, Eigen::VectorXd::Constant(1, -2.0))));
}

TEST(Commutation, StrongCommuteExamples) {
  EXPECT_TRUE(strongly_operator_commute(diag2(2, 1), diag2(5, 3)));
  EXPECT_FALSE(strongly_operator_commute(diag2(2, 1), diag2(3, 5)));
  EXPECT_NEAR(strong_commute_gap(diag2(2, 1), diag2(3, 5)), 2.0, 1e-14);
  Rng rng(21);
  EXPECT_TRUE(strongly_operator_commute(Element::zero(kS3), random_element(kS3, rng)));
}

TEST(Commutation, SharedFrameByConstruction) {
  Rng rng(22);
  for (const Algebra& alg : kinds()) {
    if (alg.rank() < 2) continue;
    const auto frame = spectral_decompose(random_element(alg, rng)).frame;
    Eigen::VectorXd alpha(alg.rank());
    Eigen::VectorXd beta(alg.rank());
    for (int i = 0; i < alg.rank(); ++i) {
      alpha(i) = alg.rank() - i;
      beta(i) = 2.0 * (alg.rank() - i) + 1.0;
    }
    const Element a = synthesize_from_frame(frame, alpha);
    const Element aligned = synthesize_from_frame(frame, beta);
    const Element reversed = synthesize_from_frame(frame, beta.reverse());
    EXPECT_TRUE(operator_commute(a, aligned)) << alg.to_string();
    EXPECT_TRUE(operator_commute(a, reversed)) << alg.to_string();
    EXPECT_TRUE(strongly_operator_commute(a, aligned)) << alg.to_string();
    EXPECT_FALSE(strongly_operator_commute(a, reversed)) << alg.to_string();
  }
}

TEST(Commutation, StrongImpliesOperatorOnRandomPairs) {
  Rng rng(23);
  for (const Algebra& alg : kinds()) {
    for (int t = 0; t < 30; ++t) {
      const Element a = random_element(alg, rng);
      const Element b = random_element(alg, rng);
      if (strongly_operator_commute(a, b)) EXPECT_TRUE(operator_commute(a, b));
    }
  }
}

TEST(Commutation, DerivationResidualAgreesWithOperatorCommute) {
  Rng rng(24);
  const auto frame = spectral_decompose(random_element(kS3, rng)).frame;
  const Element a = synthesize_from_frame(frame, Eigen::Vector3d(3, 1, -2));
  const Element b = synthesize_from_frame(frame, Eigen::Vector3d(-1, 4, 0.5));
  EXPECT_LE(derivation_commute_residual(a, b), 1e-12);
  const Element c = random_element(kS3, rng);
  EXPECT_GT(derivation_commute_residual(a, c), 1e-3);
  EXPECT_FALSE(operator_commute(a, c));
  EXPECT_THROW(derivation_commute_residual(Element::unit(kSpin3), Element::unit(kSpin3)), AlgebraMismatch);
}

TEST(Synthesis, Examples) {
  Rng rng(25);
  const auto frame = spectral_decompose(random_element(kS3, rng)).frame;
  EXPECT_LE(norm(synthesize_from_frame(frame, Eigen::Vector3d::Constant(2.5)) - 2.5 * Element::unit(kS3)), 1e-13);

  const auto standard = spectral_decompose(Element::unit(kS3)).frame;
  const Element x = synthesize_from_frame(standard, Eigen::Vector3d(3, 1, 2));
  EXPECT_TRUE(eigenvalues(x).isApprox(Eigen::Vector3d(3, 2, 1), 1e-14));
  EXPECT_TRUE(to_matrix(x).isDiagonal(1e-14));
}

TEST(Synthesis, RejectsInvalidFrameOrLength) {
  const auto frame = spectral_decompose(Element::unit(kS2)).frame;
  EXPECT_THROW(synthesize_from_frame(frame, Eigen::Vector3d(1, 2, 3)), AlgebraMismatch);
  std::vector<Element> bad = frame;
  bad[1] = bad[0];
  EXPECT_THROW(synthesize_from_frame(bad, Eigen::Vector2d(1, 2)), DomainError);
}

TEST(PeirceHalfUnits, SquareToSumOfIdempotents) {
  Rng rng(26);
  for (const Algebra& alg : {kS2, kS3, Algebra::sym_matrix(4), kSpin3, Algebra::spin_factor(6)}) {
    const auto frame = spectral_decompose(random_element(alg, rng)).frame;
    const auto ws = peirce_half_units(frame[0], frame[1]);
    const std::size_t expected = alg.kind() == AlgebraKind::kSpinFactor ? static_cast<std::size_t>(alg.dim() - 2) : 1;
    ASSERT_EQ(ws.size(), expected) << alg.to_string();
    for (const Element& w : ws) {
      EXPECT_NEAR(inner(w, w), 2.0, 1e-12);
      EXPECT_LE(norm(jordan_product(frame[0], w) - 0.5 * w), 1e-12);
      EXPECT_LE(norm(jordan_product(frame[1], w) - 0.5 * w), 1e-12);
      EXPECT_LE(norm(jordan_product(w, w) - frame[0] - frame[1]), 1e-12);
    }
  }
}

TEST(PeirceHalfUnits, EmptyAcrossFactorsAndForDiagonal) {
  const Algebra p = Algebra::product({kS2, kS2});
  const auto frame = spectral_decompose(Element::unit(p)).frame;
  EXPECT_TRUE(peirce_half_units(frame[0], frame[2]).empty());
  const auto diag_frame = spectral_decompose(Element::unit(Algebra::real_diagonal(3))).frame;
  EXPECT_TRUE(peirce_half_units(diag_frame[0], diag_frame[1]).empty());
}

TEST(Automorphism, FixesUnitPreservesProductAndSpectrum) {
  Rng rng(27);
  for (const Algebra& alg : kinds()) {
    for (int t = 0; t < 100; ++t) {
      const Automorphism g = random_automorphism(alg, rng);
      const Element x = random_element(alg, rng);
      const Element y = random_element(alg, rng);
      EXPECT_LE(norm(g.apply(Element::unit(alg)) - Element::unit(alg)), 1e-12);
      EXPECT_LE((eigenvalues(g.apply(x)) - eigenvalues(x)).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LE(norm(g.apply(jordan_product(x, y)) - jordan_product(g.apply(x), g.apply(y))),
                1e-9 * (1 + norm(x) * norm(y)));
      EXPECT_LE(norm(g.inverse().apply(g.apply(x)) - x), 1e-12 * (1 + norm(x)));
    }
  }
}

TEST(Automorphism, IdentityAndFactorSwap) {
  Rng rng(28);
  const Algebra p = Algebra::product({kS2, kS2});
  const Element x = random_element(p, rng);
  EXPECT_LE((Automorphism::identity(p).apply(x).coords() - x.coords()).cwiseAbs().maxCoeff(), 1e-15);

  bool swapped = false;
  for (int t = 0; t < 50 && !swapped; ++t) {
    const Element y = random_automorphism(p, rng).apply(x);
    swapped = std::abs(trace(y.factor(0)) - trace(x.factor(1))) < 1e-12 &&
              std::abs(trace(x.factor(0)) - trace(x.factor(1))) > 1e-6;
  }
  EXPECT_TRUE(swapped);
}

TEST(Automorphism, RejectsBadMaps) {
  std::vector<Eigen::MatrixXd> maps{2.0 * Eigen::MatrixXd::Identity(2, 2)};
  EXPECT_THROW(Automorphism(kS2, maps, {0}), AlgebraMismatch);
  const Algebra p = Algebra::product({kS2, kS3});
  EXPECT_THROW(Automorphism(p, {Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(3, 3)}, {1, 0}),
               AlgebraMismatch);
}

TEST(RandomOrthogonal, IsOrthogonal) {
  Rng rng(29);
  const Eigen::MatrixXd q = random_orthogonal(6, rng);
  EXPECT_LE((q.transpose() * q - Eigen::MatrixXd::Identity(6, 6)).norm(), 1e-13);
}

}  // namespace
}  // namespace ejaopt
