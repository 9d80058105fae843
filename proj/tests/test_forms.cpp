#include <gtest/gtest.h>

#include "hopfcalc/forms.hpp"
#include "hopfcalc/generators.hpp"
#include "oracles.hpp"

using namespace hopfcalc;

namespace {

BilinearForm e8h() { return BilinearForm::symmetric(direct_sum(e8_matrix(), h_matrix())); }

}  // namespace

TEST(BilinearForm, ValidatesSymmetry) {
  EXPECT_NO_THROW(BilinearForm::symmetric(h_matrix()));
  EXPECT_NO_THROW(BilinearForm::skew(j_matrix()));
  EXPECT_THROW(BilinearForm::skew(h_matrix()), SymmetryError);
  EXPECT_THROW(BilinearForm::symmetric(j_matrix()), SymmetryError);
  EXPECT_THROW(BilinearForm(IntMatrix{{1, 2, 3}}, 1), DimensionError);
  EXPECT_THROW(BilinearForm(h_matrix(), 0), DomainError);
}

TEST(E8, GroundTruth) {
  EXPECT_EQ(oracle::cofactor_det(e8_matrix()), 1);
  EXPECT_EQ(oracle::cofactor_det(h_matrix()), -1);
  const FormClass c = form_type(BilinearForm::symmetric(e8_matrix()));
  EXPECT_EQ(c.parity, Parity::even);
  EXPECT_EQ(c.definiteness, Definiteness::positive);
  EXPECT_TRUE(c.unimodular);
  EXPECT_EQ(*c.inertia, (Inertia{8, 0, 0}));
  EXPECT_FALSE(c.p.has_value());
}

TEST(FormType, SkewAndOddAndDegenerate) {
  const FormClass skew = form_type(BilinearForm::skew(j_matrix()));
  EXPECT_EQ(skew.definiteness, Definiteness::not_applicable);
  EXPECT_FALSE(skew.inertia.has_value());
  EXPECT_TRUE(skew.unimodular);

  const FormClass odd = form_type(BilinearForm::symmetric(IntMatrix{{1, 0}, {0, -1}}));
  EXPECT_EQ(odd.parity, Parity::odd);
  EXPECT_EQ(odd.definiteness, Definiteness::indefinite);
  EXPECT_FALSE(odd.p.has_value());

  const FormClass deg = form_type(BilinearForm::symmetric(IntMatrix{{0, 0}, {0, 2}}));
  EXPECT_EQ(deg.definiteness, Definiteness::degenerate);
  EXPECT_FALSE(deg.unimodular);
}

TEST(Classify, E8PlusH) {
  EXPECT_EQ(classify_indefinite(e8h()), (IndefiniteClass{1, 1}));
  EXPECT_EQ(classify_indefinite(BilinearForm::symmetric(h_matrix())), (IndefiniteClass{0, 1}));
  EXPECT_EQ(classify_indefinite(build_standard(-2, 3)), (IndefiniteClass{-2, 3}));
}

TEST(Classify, RejectsOutsideHypotheses) {
  EXPECT_THROW(classify_indefinite(BilinearForm::symmetric(e8_matrix())), DomainError);           // definite
  EXPECT_THROW(classify_indefinite(BilinearForm::symmetric(IntMatrix{{1, 0}, {0, -1}})), DomainError);  // odd
  EXPECT_THROW(classify_indefinite(BilinearForm::skew(j_matrix())), DomainError);
  EXPECT_THROW(classify_indefinite(BilinearForm::symmetric(IntMatrix{{0, 2}, {2, 0}})), DomainError);  // det -4
  EXPECT_THROW(classify_indefinite(BilinearForm::symmetric(IntMatrix{{0, 0}, {0, 0}})), DomainError);
}

TEST(Classify, InvariantUnderRandomCongruence) {
  FormGenerator gen(21);
  for (const auto& seed : {e8h(), build_standard(0, 3), build_standard(-1, 2), build_standard(1, 1)}) {
    const IndefiniteClass expected = classify_indefinite(seed);
    for (int t = 0; t < 20; ++t) {
      const IntMatrix m = gen.unimodular(seed.rank());
      EXPECT_EQ(classify_indefinite(BilinearForm::symmetric(congruence_apply(m, seed.matrix()))), expected);
    }
  }
}

class ZeroDiagonalModel : public ::testing::TestWithParam<std::pair<long long, long long>> {};

TEST_P(ZeroDiagonalModel, Postconditions) {
  const auto [p, q] = GetParam();
  const BilinearForm z = zero_diagonal_model(p, q);
  EXPECT_TRUE(z.has_zero_diagonal());
  EXPECT_EQ(z.rank(), static_cast<std::size_t>(8 * std::abs(p) + 2 * q));
  EXPECT_EQ(abs(oracle::gauss_det(z.matrix())), 1);
  const FormClass c = form_type(z);
  EXPECT_EQ(c.parity, Parity::even);
  EXPECT_EQ(c.inertia->signature(), 8 * p);
  EXPECT_EQ(classify_indefinite(z), (IndefiniteClass{p, q}));
  // The basis change is unimodular, so the model is congruent to the standard form.
  const IntMatrix m = zero_diagonal_basis_change(p, q);
  EXPECT_EQ(abs(det_bareiss(m)), 1);
}

INSTANTIATE_TEST_SUITE_P(Forms, ZeroDiagonalModel,
                         ::testing::Values(std::pair{1LL, 1LL}, std::pair{1LL, 2LL}, std::pair{2LL, 1LL},
                                           std::pair{-1LL, 1LL}, std::pair{0LL, 2LL}));

TEST(ZeroDiagonalModel, NeedsHyperbolicSummand) { EXPECT_THROW(zero_diagonal_model(1, 0), DomainError); }

TEST(ZeroDiagonalModel, CrossTermsWithFirstHyperbolicPair) {
  const IntMatrix& z = zero_diagonal_model(1, 1).matrix();
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(z(i, 8), -1);
    EXPECT_EQ(z(i, 9), 1);
  }
  EXPECT_EQ(z(0, 1), e8_matrix()(0, 1) - 2);
}

TEST(TildeExtend, BordersWithOnesAndEpsilon) {
  const BilinearForm t = tilde_extend(BilinearForm::skew(j_matrix()));
  EXPECT_EQ(t.matrix(), (IntMatrix{{0, 1, 1}, {-1, 0, 1}, {-1, -1, 0}}));
  EXPECT_EQ(tilde_extend(BilinearForm::symmetric(h_matrix())).matrix(), (IntMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  EXPECT_THROW(tilde_extend(BilinearForm::symmetric(e8_matrix())), DomainError);
}

TEST(DecideEquivalent, Examples) {
  FormGenerator gen(22);
  const BilinearForm f = e8h();
  const BilinearForm g = BilinearForm::symmetric(congruence_apply(gen.unimodular(10), f.matrix()));
  EXPECT_EQ(decide_equivalent(f, g), Equivalence::equivalent);
  EXPECT_EQ(decide_equivalent(f, build_standard(0, 5)), Equivalence::inequivalent);  // signature
  EXPECT_EQ(decide_equivalent(BilinearForm::symmetric(h_matrix()), BilinearForm::symmetric(IntMatrix{{1, 0}, {0, -1}})),
            Equivalence::inequivalent);  // parity
  EXPECT_EQ(decide_equivalent(BilinearForm::symmetric(h_matrix()), BilinearForm::symmetric(e8_matrix())),
            Equivalence::inequivalent);  // rank
  // Two positive definite forms with equal invariants: no classification applies.
  const BilinearForm e8e8 = BilinearForm::symmetric(direct_sum(e8_matrix(), e8_matrix()));
  EXPECT_EQ(decide_equivalent(e8e8, e8e8), Equivalence::unknown);
  EXPECT_EQ(decide_equivalent(BilinearForm::skew(j_matrix()), BilinearForm::symmetric(h_matrix())),
            Equivalence::inequivalent);
  EXPECT_EQ(decide_equivalent(BilinearForm::skew(j_matrix()), BilinearForm::skew(IntMatrix{{0, -1}, {1, 0}})),
            Equivalence::equivalent);
}
