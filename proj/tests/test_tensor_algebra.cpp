#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "sigtensor/sigtensor.hpp"
#include "test_util.hpp"

using namespace sigtensor;
using testutil::exp_embedded;
using testutil::sequences_equal;

namespace {

TensorAlgebra<Rational> space23() { return TensorAlgebra<Rational>(2, 3); }

// ============================================================================
// Construction, identity, vector-space structure
// ============================================================================

TEST(TensorAlgebra, SpaceValidation) {
  EXPECT_THROW(TensorAlgebra<Rational>(0, 3), std::invalid_argument);
  EXPECT_THROW(TensorAlgebra<Rational>(2, 0), std::invalid_argument);
  EXPECT_EQ(TensorAlgebra<Rational>(1, 4).flat_size(), 5u);   // k+1 for d=1
  EXPECT_EQ(TensorAlgebra<Rational>(2, 4).flat_size(), 31u);  // (2^5-1)/(2-1)
  EXPECT_EQ(TensorAlgebra<Rational>(3, 3).flat_size(), 40u);  // (3^4-1)/(3-1)
}

TEST(TensorAlgebra, OneHasUnitConstantTermAndZeroHigherLevels) {
  const auto u = one(space23());
  EXPECT_EQ(u.level(0)[0], Rational(1));
  for (int l = 1; l <= 3; ++l)
    for (const auto& v : u.level(l)) EXPECT_EQ(v, Rational(0));
}

TEST(TensorAlgebra, OneIsNeutralForMul) {
  std::mt19937_64 rng(7);
  const auto x = testutil::random_sparse_sequence(space23(), rng);
  EXPECT_TRUE(sequences_equal(mul(one(space23()), x), x));
  EXPECT_TRUE(sequences_equal(mul(x, one(space23())), x));
}

TEST(TensorAlgebra, ExpOfZeroIsOne) {
  EXPECT_TRUE(sequences_equal(exp(zero(space23())), one(space23())));
}

TEST(TensorAlgebra, AddScaleSubTrivialCases) {
  std::mt19937_64 rng(11);
  const auto x = testutil::random_sparse_sequence(space23(), rng);
  EXPECT_TRUE(sequences_equal(add(x, zero(space23())), x));
  EXPECT_TRUE(sequences_equal(scale(Rational(0), x), zero(space23())));
  const auto axis = fixtures::axis_d2k3();
  EXPECT_TRUE(sequences_equal(sub(axis, axis), zero(space23())));
}

TEST(TensorAlgebra, SpaceMismatchIsRejected) {
  const auto x = one(TensorAlgebra<Rational>(2, 3));
  const auto y = one(TensorAlgebra<Rational>(3, 3));
  const auto z = one(TensorAlgebra<Rational>(2, 2));
  EXPECT_THROW(add(x, y), std::invalid_argument);
  EXPECT_THROW(sub(x, z), std::invalid_argument);
  EXPECT_THROW(mul(x, y), std::invalid_argument);
  EXPECT_THROW(approx_equal(x, z, 0, 0), std::invalid_argument);
}

// ============================================================================
// Graded product
// ============================================================================

// The axis signature of T_{2,3} is exp(e1)*exp(e2).
TEST(TensorAlgebra, MulOfExponentialsMatchesAxisFixture) {
  const auto space = space23();
  std::vector<Rational> e1{Rational(1), Rational(0)};
  std::vector<Rational> e2{Rational(0), Rational(1)};
  const auto product = mul(exp_embedded(space, e1), exp_embedded(space, e2));
  EXPECT_TRUE(sequences_equal(product, fixtures::axis_d2k3()));
}

TEST(TensorAlgebra, MulAgreesWithBruteForceSplitOracle) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    const int d = static_cast<int>(uniform_int(rng, 1, 3));
    const int k = static_cast<int>(uniform_int(rng, 1, 4));
    TensorAlgebra<Rational> space(d, k);
    const auto x = testutil::random_sparse_sequence(space, rng);
    const auto y = testutil::random_sparse_sequence(space, rng);
    EXPECT_TRUE(sequences_equal(mul(x, y), testutil::brute_force_mul(x, y)));
  }
}

TEST(TensorAlgebra, MulIsAssociative) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 8; ++trial) {
    const int d = static_cast<int>(uniform_int(rng, 1, 3));
    const int k = static_cast<int>(uniform_int(rng, 1, 4));
    TensorAlgebra<Rational> space(d, k);
    const auto x = testutil::random_sparse_sequence(space, rng);
    const auto y = testutil::random_sparse_sequence(space, rng);
    const auto z = testutil::random_sparse_sequence(space, rng);
    EXPECT_TRUE(sequences_equal(mul(mul(x, y), z), mul(x, mul(y, z))));
  }
}

TEST(TensorAlgebra, MulDistributesOverAdd) {
  std::mt19937_64 rng(31);
  TensorAlgebra<Rational> space(3, 3);
  const auto x = testutil::random_sparse_sequence(space, rng);
  const auto y = testutil::random_sparse_sequence(space, rng);
  const auto z = testutil::random_sparse_sequence(space, rng);
  EXPECT_TRUE(sequences_equal(mul(add(x, y), z), add(mul(x, z), mul(y, z))));
}

// An element supported on level i times one supported on level j is supported
// on level i+j (empty when i+j > k).
TEST(TensorAlgebra, MulRespectsGrading) {
  TensorAlgebra<Rational> space(2, 4);
  std::mt19937_64 rng(37);
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; j <= 4; ++j) {
      TensorSequence<Rational> x(space), y(space);
      for (auto& v : x.level(i)) v = testutil::random_rational(rng);
      for (auto& v : y.level(j)) v = testutil::random_rational(rng);
      const auto product = mul(x, y);
      for (int l = 0; l <= 4; ++l) {
        if (l == i + j) continue;
        for (const auto& v : product.level(l)) EXPECT_EQ(v, Rational(0));
      }
    }
  }
}

// ============================================================================
// exp / log / inverse
// ============================================================================

TEST(TensorAlgebra, ExpOfLinearEmbeddingHasTensorPowerLevels) {
  TensorAlgebra<Rational> space(2, 2);
  std::vector<Rational> a{Rational(1), Rational(0)};
  const auto g = exp_embedded(space, a);
  EXPECT_EQ(get_entry(g, {1}), Rational(1));
  EXPECT_EQ(get_entry(g, {2}), Rational(0));
  EXPECT_EQ(get_entry(g, {1, 1}), field_traits<Rational>::ratio(1, 2));
  EXPECT_EQ(get_entry(g, {1, 2}), Rational(0));
  EXPECT_EQ(get_entry(g, {2, 1}), Rational(0));
  EXPECT_EQ(get_entry(g, {2, 2}), Rational(0));
}

TEST(TensorAlgebra, ExpRejectsNonzeroConstantTerm) {
  auto x = zero(space23());
  x.level(0)[0] = Rational(1);
  EXPECT_THROW(exp(x), std::invalid_argument);
}

TEST(TensorAlgebra, LogAndInverseRejectNonUnitConstantTerm) {
  const auto x = zero(space23());
  EXPECT_THROW(log(x), std::invalid_argument);
  EXPECT_THROW(inverse(x), std::invalid_argument);
}

TEST(TensorAlgebra, LogExpRoundTripOnRandomElements) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = static_cast<int>(uniform_int(rng, 1, 3));
    const int k = static_cast<int>(uniform_int(rng, 1, 4));
    TensorAlgebra<Rational> space(d, k);
    auto x = testutil::random_sparse_sequence(space, rng);
    x.level(0)[0] = Rational(0);
    EXPECT_TRUE(sequences_equal(log(exp(x)), x));
  }
}

TEST(TensorAlgebra, ExpLogRoundTripOnAxisFixture) {
  const auto axis = fixtures::axis_d2k3();
  EXPECT_TRUE(sequences_equal(exp(log(axis)), axis));
}

TEST(TensorAlgebra, LogOfOneIsZero) {
  EXPECT_TRUE(sequences_equal(log(one(space23())), zero(space23())));
}

TEST(TensorAlgebra, InverseOfOneIsOne) {
  EXPECT_TRUE(sequences_equal(inverse(one(space23())), one(space23())));
}

TEST(TensorAlgebra, InverseOfExpIsExpOfNegation) {
  TensorAlgebra<Rational> space(2, 4);
  std::vector<Rational> a{field_traits<Rational>::ratio(3, 2), Rational(-2)};
  std::vector<Rational> neg{field_traits<Rational>::ratio(-3, 2), Rational(2)};
  EXPECT_TRUE(sequences_equal(inverse(exp_embedded(space, a)), exp_embedded(space, neg)));
}

TEST(TensorAlgebra, GroupInverseOnPolyFixture) {
  const auto g = fixtures::poly_d2k3();
  EXPECT_TRUE(sequences_equal(mul(g, inverse(g)), one(space23())));
  EXPECT_TRUE(sequences_equal(mul(inverse(g), g), one(space23())));
}

TEST(TensorAlgebra, GroupInverseOnRandomGroupElements) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    TensorAlgebra<Rational> space(2, 4);
    auto x = testutil::random_sparse_sequence(space, rng);
    x.level(0)[0] = Rational(0);
    const auto g = exp(x);  // arbitrary group element
    EXPECT_TRUE(sequences_equal(mul(g, inverse(g)), one(space)));
  }
}

// ============================================================================
// Entry access and flattening
// ============================================================================

TEST(TensorAlgebra, GetEntryOnFixtures) {
  EXPECT_EQ(get_entry(fixtures::axis_d2k3(), {1, 2}), Rational(1));
  EXPECT_EQ(get_entry(fixtures::poly_d2k3(), {1, 2}), rational_from_string("61/6"));
  EXPECT_EQ(get_entry(fixtures::poly_d2k3(), {}), Rational(1));
}

TEST(TensorAlgebra, GetEntryValidatesWord) {
  const auto axis = fixtures::axis_d2k3();
  EXPECT_THROW(get_entry(axis, {1, 2, 3}), std::invalid_argument);     // letter out of range
  EXPECT_THROW(get_entry(axis, {0}), std::invalid_argument);           // letters are 1-based
  EXPECT_THROW(get_entry(axis, {1, 1, 1, 1}), std::invalid_argument);  // word too long
}

// Flatten order is level-major, lexicographic within each level. The expected
// vector is produced independently by enumerating words and reading entries.
TEST(TensorAlgebra, FlattenFollowsLexicographicWordOrder) {
  const auto axis = fixtures::axis_d2k3();
  std::vector<Rational> expected;
  for (int l = 0; l <= 3; ++l)
    for (const auto& w : testutil::words_of_length(2, l))
      expected.push_back(get_entry(axis, std::span<const int>(w)));
  EXPECT_EQ(flatten(axis), expected);

  const char* frozen[] = {"1", "1", "1", "1/2", "1",   "0", "1/2", "1/6",
                          "1/2", "0", "1/2", "0", "0", "0", "1/6"};
  ASSERT_EQ(expected.size(), 15u);
  for (std::size_t i = 0; i < expected.size(); ++i)
    EXPECT_EQ(expected[i], rational_from_string(frozen[i])) << "position " << i;
}

TEST(TensorAlgebra, FlattenLengthMatchesAmbientDimension) {
  EXPECT_EQ(flatten(one(TensorAlgebra<Rational>(2, 4))).size(), 31u);
  EXPECT_EQ(flatten(one(TensorAlgebra<Rational>(3, 3))).size(), 40u);
  EXPECT_EQ(flatten(one(TensorAlgebra<Rational>(1, 4))).size(), 5u);
  const auto flat = flatten(one(space23()));
  EXPECT_EQ(flat[0], Rational(1));
  for (std::size_t i = 1; i < flat.size(); ++i) EXPECT_EQ(flat[i], Rational(0));
}

// ============================================================================
// approx_equal
// ============================================================================

TEST(TensorAlgebra, ApproxEqualExactFieldIgnoresTolerances) {
  const auto axis = fixtures::axis_d2k3();
  EXPECT_TRUE(approx_equal(axis, axis, 0.0, 0.0));
  EXPECT_FALSE(approx_equal(axis, one(space23()), 1.0, 1.0));
}

TEST(TensorAlgebra, ApproxEqualFloatUsesTolerances) {
  TensorAlgebra<double> space(2, 2);
  auto x = one(space);
  auto y = one(space);
  y.level(2)[1] = 1e-13;
  EXPECT_TRUE(approx_equal(x, y, 1e-9, 1e-12));
  y.level(2)[1] = 1e-3;
  EXPECT_FALSE(approx_equal(x, y, 1e-9, 1e-12));
}

TEST(TensorAlgebra, RationalStringRoundTrip) {
  EXPECT_EQ(rational_to_string(rational_from_string("-61/6")), "-61/6");
  EXPECT_EQ(rational_to_string(rational_from_string("4/2")), "2");
  EXPECT_EQ(rational_to_string(rational_from_string("1/-2")), "-1/2");
  EXPECT_THROW(rational_from_string("1/0"), std::invalid_argument);
  EXPECT_THROW(rational_from_string("1.5"), std::invalid_argument);
  EXPECT_THROW(rational_from_string(""), std::invalid_argument);
  EXPECT_THROW(rational_from_string("1/2/3"), std::invalid_argument);
}

}  // namespace
