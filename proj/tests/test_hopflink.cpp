#include <gtest/gtest.h>

#include "hopfcalc/generators.hpp"
#include "hopfcalc/hopflink.hpp"
#include "oracles.hpp"

using namespace hopfcalc;

namespace {

/// A* built from the adjugate inverse, following the closed form entry by entry.
IntMatrix reference_star(const BilinearForm& a) {
  const IntMatrix inv = oracle::gauss_jordan_inverse(a.matrix());
  const std::size_t d = a.rank();
  IntMatrix s(d + 1, d + 1);
  for (std::size_t i = 1; i <= d; ++i)
    for (std::size_t j = 1; j <= d; ++j) s(i, j) = inv(i - 1, j - 1);
  for (std::size_t j = 1; j <= d; ++j) {
    for (std::size_t k = 1; k <= d; ++k) s(0, j) -= s(k, j);
    s(j, 0) = a.epsilon() * s(0, j);
    s(0, 0) -= s(0, j);
  }
  return s;
}

bool rows_vanish(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer sum = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) sum += m(i, j);
    if (sum != 0) return false;
  }
  return true;
}

}  // namespace

TEST(HopfLinkSpec, Validation) {
  EXPECT_NO_THROW(HopfLinkSpec(BilinearForm::skew(j_matrix()), 3));
  EXPECT_THROW(HopfLinkSpec(BilinearForm::symmetric(h_matrix()), 3), SymmetryError);
  EXPECT_THROW(HopfLinkSpec(BilinearForm::symmetric(e8_matrix()), 4), DomainError);  // diagonal
  EXPECT_THROW(HopfLinkSpec(BilinearForm::symmetric(h_matrix()), 4, 4), DomainError);
  EXPECT_THROW(HopfLinkSpec(BilinearForm::symmetric(h_matrix()), 4, 0, 0), DomainError);
  EXPECT_EQ(HopfLinkSpec(BilinearForm::symmetric(h_matrix()), 4).component_count(), 3u);
  EXPECT_EQ(HopfLinkSpec(BilinearForm::symmetric(h_matrix()), 4, 1).component_count(), 1u);
}

TEST(LinkingMatrix, HyperbolicExample) {
  EXPECT_EQ(derived_linking_matrix(BilinearForm::symmetric(h_matrix())),
            (IntMatrix{{2, -1, -1}, {-1, 0, 1}, {-1, 1, 0}}));
}

TEST(LinkingMatrix, SkewExample) {
  EXPECT_EQ(derived_linking_matrix(BilinearForm::skew(j_matrix())), (IntMatrix{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}));
}

TEST(LinkingMatrix, NonUnimodularRejected) {
  EXPECT_THROW(derived_linking_matrix(BilinearForm::symmetric(IntMatrix{{0, 2}, {2, 0}})), NotUnimodularError);
}

TEST(LinkingMatrix, RandomFormsMatchReferenceAndRowSumsVanish) {
  FormGenerator gen(31);
  for (int t = 0; t < 60; ++t) {
    const BilinearForm a = gen.zero_diagonal_unimodular(t % 2 ? 3 : 4, 2);
    const IntMatrix star = derived_linking_matrix(a);
    EXPECT_EQ(star, reference_star(a));
    EXPECT_TRUE(rows_vanish(star));
    EXPECT_EQ(star.transpose(), a.epsilon() * star);
  }
}

TEST(PresentationOracle, MatchesLinkingMatrixColumns) {
  FormGenerator gen(32);
  std::vector<BilinearForm> corpus{BilinearForm::symmetric(h_matrix()), BilinearForm::skew(j_matrix()),
                                   BilinearForm::symmetric(direct_sum(e8_matrix(), h_matrix())),
                                   zero_diagonal_model(1, 1)};
  for (int t = 0; t < 20; ++t) corpus.push_back(gen.zero_diagonal_unimodular(t % 2 ? 3 : 4, 2));
  for (const auto& a : corpus) {
    const IntMatrix star = derived_linking_matrix(a);
    for (std::size_t s = 0; s <= a.rank(); ++s) {
      const PresentationResult p = presentation_oracle(a, s);
      EXPECT_TRUE(equal_up_to_sign(p.linking, star.col(s))) << "s = " << s << " A = " << a.matrix().str();
      EXPECT_EQ(p.generators.size(), 2 * a.rank() + 1);
    }
  }
}

TEST(PresentationOracle, TorsionForNonUnimodular) {
  try {
    presentation_oracle(BilinearForm::symmetric(IntMatrix{{0, 3}, {3, 0}}), 1);
    FAIL() << "expected CokernelError";
  } catch (const CokernelError& e) {
    EXPECT_FALSE(e.torsion().empty());
  }
  EXPECT_THROW(presentation_oracle(BilinearForm::symmetric(h_matrix()), 3), DomainError);
}

TEST(PresentationOracle, EqualUpToSign) {
  EXPECT_TRUE(equal_up_to_sign({1, -2, 1}, {-1, 2, -1}));
  EXPECT_FALSE(equal_up_to_sign({1, -2, 1}, {-1, 2, 1}));
  EXPECT_FALSE(equal_up_to_sign({1}, {1, 0}));
}

TEST(Admissibility, Cases) {
  const auto h3 = admissibility_check(HopfLinkSpec(BilinearForm::skew(j_matrix()), 3));
  EXPECT_TRUE(h3.admissible);
  EXPECT_TRUE(h3.directly_fibered);

  const auto e8 = admissibility_check(HopfLinkSpec(zero_diagonal_model(1, 1), 4, 0, 28));
  EXPECT_TRUE(e8.admissible);
  EXPECT_FALSE(e8.directly_fibered);
  EXPECT_EQ(e8.doubled_components, 21u);
  EXPECT_EQ(e8.theta_sum_size, 280);

  const auto bad = admissibility_check(HopfLinkSpec(BilinearForm::symmetric(IntMatrix{{0, 2}, {2, 0}}), 4));
  EXPECT_FALSE(bad.admissible);
  EXPECT_EQ(bad.det, -4);

  const auto odd = admissibility_check(HopfLinkSpec(BilinearForm::skew(IntMatrix{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}), 3));
  EXPECT_FALSE(odd.skew_size_even);
  EXPECT_FALSE(odd.admissible);
}

TEST(LinkDescriptors, ProjectedLinks) {
  const auto k0 = project_link_descriptor(HopfLinkSpec(BilinearForm::skew(j_matrix()), 3));
  EXPECT_EQ(k0.fiber.betti, (std::vector<long long>{1, 0, 2, 0}));
  EXPECT_EQ(k0.fiber.euler, 3);  // D^3 minus two balls
  EXPECT_EQ(k0.fiber.boundary_components, 3u);
  EXPECT_EQ(k0.link.betti, (std::vector<long long>{3, 0, 3}));

  const auto k1 = project_link_descriptor(HopfLinkSpec(BilinearForm::symmetric(h_matrix()), 4, 1));
  EXPECT_EQ(k1.fiber.dim, 5);
  EXPECT_EQ(k1.fiber.betti, (std::vector<long long>{1, 0, 0, 2, 0, 0}));
  EXPECT_EQ(k1.link.betti, (std::vector<long long>{1, 2, 0, 2, 1}));
  EXPECT_EQ(k1.link.euler, -2);
}

TEST(LinkDescriptors, SpinningKeepsEulerOne) {
  for (int n = 2; n <= 6; ++n) {
    const BilinearForm a = n % 2 == 0 ? BilinearForm::symmetric(h_matrix()) : BilinearForm::skew(j_matrix());
    const SpinDescriptor s = spin_link_descriptor(HopfLinkSpec(a, n), 0);
    EXPECT_EQ(s.fiber.euler, 1);
    EXPECT_EQ(s.components[0], (LinkComponent{0, n}));
    EXPECT_EQ(s.components[1].name(), "S^1 x S^" + std::to_string(n - 1));
    EXPECT_EQ(s.fiber.betti[static_cast<std::size_t>(n)], 2);
    EXPECT_EQ(s.fiber.betti[static_cast<std::size_t>(n - 1)], 2);
  }
  EXPECT_THROW(spin_link_descriptor(HopfLinkSpec(BilinearForm::skew(j_matrix()), 3), 3), DomainError);
}

TEST(FiberDescriptor, Consistency) {
  const FiberDescriptor f = FiberDescriptor::from_betti({1, 2}, 3, 1);
  EXPECT_EQ(f.betti.size(), 4u);
  EXPECT_EQ(f.euler, -1);
  EXPECT_THROW(FiberDescriptor::from_betti({0}, 2, 1), DomainError);
  EXPECT_THROW(FiberDescriptor::from_betti({1, 0, 0, 0}, 2, 1), DomainError);
}
