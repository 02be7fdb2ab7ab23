#include <cbo/linalg.hpp>
#include <cbo/order.hpp>
#include <cbo/partial_perm.hpp>

#include <gtest/gtest.h>

using namespace cbo;

namespace {

RankControl rc(const IntMatrix& pattern) { return pattern_rank_control(PartialPermutation::from_matrix(pattern)); }

PartialInvolution inv(const IntMatrix& m) { return PartialInvolution::from_matrix(m); }

PartialPermutation perm(std::string_view w) { return PartialPermutation::from_permutation(Permutation::parse(w)); }

const FieldSpec Q = FieldSpec::rationals();

} // namespace

TEST(LeqR, Examples) {
  RankControl id3 = rc({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_TRUE(leq_R(RankControl::zero(3, 3), id3));
  RankControl e11 = rc({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  EXPECT_EQ(e11.matrix(), (IntMatrix{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}));
  EXPECT_TRUE(leq_R(e11, id3));
  EXPECT_FALSE(leq_R(id3, e11));

  RankControl p = rc({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  RankControl q = rc({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
  EXPECT_FALSE(leq_R(p, q));
  EXPECT_FALSE(leq_R(q, p));
  EXPECT_EQ(compare_R(p, q), Comparison::incomparable);
  EXPECT_STREQ(to_symbol(compare_R(e11, id3)), "<");
  EXPECT_STREQ(to_symbol(compare_R(id3, e11)), ">");
  EXPECT_STREQ(to_symbol(compare_R(p, p)), "=");

  EXPECT_THROW(leq_R(RankControl::zero(2, 2), id3), DomainError);
}

TEST(BruhatLeq, Examples) {
  for (const auto& w : enumerate_permutations(3)) {
    auto s = PartialPermutation::from_permutation(w);
    EXPECT_TRUE(bruhat_leq(perm("123"), s));
    EXPECT_TRUE(bruhat_leq(s, s));
    EXPECT_TRUE(bruhat_leq(s, perm("321")));
  }
  EXPECT_TRUE(bruhat_leq(perm("213"), perm("321")));
  EXPECT_FALSE(bruhat_leq(perm("321"), perm("213")));
  EXPECT_FALSE(bruhat_leq(perm("213"), perm("132")));
  EXPECT_FALSE(bruhat_leq(perm("132"), perm("213")));
  EXPECT_THROW(bruhat_leq(perm("12"), perm("123")), DomainError);
}

TEST(OrbitLeq, Examples) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& pi : enumerate_partial_involutions(n)) {
      EXPECT_TRUE(orbit_leq(PartialInvolution::zero(n), pi));
      EXPECT_TRUE(orbit_leq(pi, PartialInvolution::identity(n)));
    }
  auto a = inv({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  auto b = inv({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
  EXPECT_FALSE(orbit_leq(a, b));
  EXPECT_FALSE(orbit_leq(b, a));
}

TEST(OrbitLeq, IsPartialOrder) {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto all = enumerate_partial_involutions(n);
    const std::size_t m = all.size();
    std::vector<char> le(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) le[i * m + j] = orbit_leq(all[i], all[j]);
    for (std::size_t i = 0; i < m; ++i) {
      ASSERT_TRUE(le[i * m + i]);
      for (std::size_t j = 0; j < m; ++j) {
        if (i != j) {
          ASSERT_FALSE(le[i * m + j] && le[j * m + i]);
        }
        if (!le[i * m + j]) continue;
        for (std::size_t k = 0; k < m; ++k) {
          if (le[j * m + k]) {
            ASSERT_TRUE(le[i * m + k]);
          }
        }
      }
    }
  }
}

TEST(ClosureContains, Examples) {
  auto swap12 = inv({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  EXPECT_TRUE(closure_contains(swap12, Matrix::from_ints(swap12.matrix(), Q)));
  EXPECT_FALSE(closure_contains(swap12, Matrix::identity(3, Q)));
  for (const auto& pi : enumerate_partial_involutions(3)) EXPECT_TRUE(closure_contains(pi, Matrix(3, 3, Q)));
  EXPECT_THROW(closure_contains(swap12, Matrix::from_ints({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}, Q)), DomainError);
  EXPECT_THROW(closure_contains(swap12, Matrix::identity(2, Q)), DomainError);
}

TEST(ClosureContains, ConsistentWithOrbitOrder) {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto all = enumerate_partial_involutions(n);
    for (const auto& pi : all)
      for (const auto& sigma : all) {
        bool below = orbit_leq(sigma, pi);
        ASSERT_EQ(closure_contains(pi, Matrix::from_ints(sigma.matrix(), Q)), below);
        ASSERT_EQ(closure_contains(pi, Matrix::from_ints(sigma.matrix(), FieldSpec::prime(3))), below);
      }
  }
}

TEST(ClosureContains, OrbitPointsLieInClosure) {
  FieldSpec f = FieldSpec::prime(7);
  Rng rng(3);
  for (const auto& pi : enumerate_partial_involutions(4)) {
    Matrix s = Matrix::from_ints(pi.matrix(), f);
    for (int t = 0; t < 20; ++t) {
      Matrix b = borel_random(4, f, rng.next());
      ASSERT_TRUE(closure_contains(pi, congruence_transform(b, s)));
    }
  }
}
