#include "ccmorse/morse.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ccmorse::morse;

namespace {

IntPolynomial poly(std::vector<std::int64_t> c) { return IntPolynomial(std::move(c)); }

}  // namespace

TEST(IntPolynomial, TrimsAndFormats) {
  EXPECT_EQ(poly({1, 2, 0, 0}).degree(), 1);
  EXPECT_TRUE(poly({0, 0}).is_zero());
  EXPECT_EQ(poly({}).to_string(), "0");
  EXPECT_EQ(poly({6, 24, 20}).to_string(), "6 + 24t + 20t^2");
  EXPECT_EQ(poly({0, 1, -3}).to_string(), "t - 3t^2");
  EXPECT_EQ(poly({1, 1}) * poly({1, 2}), poly({1, 3, 2}));
  EXPECT_EQ(poly({5, 2}).evaluate(-1), 3);
}

TEST(PoincarePolynomial, Variants) {
  EXPECT_EQ(poincare_polynomial(3, PoincareVariant::full), poly({1, 3, 2}));
  EXPECT_EQ(poincare_polynomial(3, PoincareVariant::reduced), poly({1, 2}));
  EXPECT_EQ(poincare_polynomial(4, PoincareVariant::reduced), poly({1, 5, 6}));
  EXPECT_EQ(poincare_polynomial(5, PoincareVariant::reduced), poly({1, 9, 26, 24}));
  EXPECT_EQ(poincare_polynomial(6, PoincareVariant::reduced), poly({1, 14, 71, 154, 120}));
  EXPECT_EQ(poincare_polynomial(2, PoincareVariant::reduced), poly({1}));
  for (int n = 2; n <= 10; ++n)
    EXPECT_EQ(poincare_polynomial(n, PoincareVariant::full),
              poly({1, 1}) * poincare_polynomial(n, PoincareVariant::reduced));
  EXPECT_THROW(poincare_polynomial(1), std::invalid_argument);
}

TEST(MorsePolynomial, FromCensus) {
  EXPECT_EQ(morse_polynomial({{0, 2}, {1, 3}}), poly({2, 3}));
  EXPECT_EQ(morse_polynomial({{0, 6}, {1, 24}, {2, 8}, {2, 12}}), poly({6, 24, 20}));
  EXPECT_TRUE(morse_polynomial({}).is_zero());
  EXPECT_THROW(morse_polynomial({{-1, 2}}), std::invalid_argument);
  EXPECT_THROW(morse_polynomial({{0, 0}}), std::invalid_argument);
}

TEST(MorseConsistency, Examples) {
  const auto four = morse_consistency(poly({6, 24, 20}), poincare_polynomial(4, PoincareVariant::reduced));
  ASSERT_TRUE(four.ok);
  EXPECT_EQ(four.remainder, poly({5, 14}));
  const auto five = morse_consistency(poly({120, 240, 174, 60}), poincare_polynomial(5, PoincareVariant::reduced));
  ASSERT_TRUE(five.ok);
  EXPECT_EQ(five.remainder, poly({119, 112, 36}));
  const auto same = morse_consistency(poly({1, 5, 6}), poly({1, 5, 6}));
  EXPECT_TRUE(same.ok);
  EXPECT_TRUE(same.remainder.is_zero());
}

TEST(MorseConsistency, Failures) {
  const auto nd = morse_consistency(poly({6, 24, 21}), poincare_polynomial(4, PoincareVariant::reduced));
  EXPECT_FALSE(nd.ok);
  EXPECT_EQ(nd.failure, ConsistencyFailure::not_divisible);
  // M - P = (1 + t)(1 - t) -> R = 1 - t
  const auto neg = morse_consistency(poly({2, 0, -1}), poly({1}));
  EXPECT_FALSE(neg.ok);
  EXPECT_EQ(neg.failure, ConsistencyFailure::negative_coefficient);
  EXPECT_EQ(neg.degree, 1);
  const auto constant = morse_consistency(poly({3}), poly({1}));
  EXPECT_EQ(constant.failure, ConsistencyFailure::not_divisible);
}

TEST(MorseConsistency, AllKnownCensusPolynomials) {
  struct Case { int n; std::vector<std::int64_t> m; std::vector<std::int64_t> r; };
  const Case cases[] = {
      {3, {2, 3}, {1}},
      {4, {6, 24, 20}, {5, 14}},
      {5, {54, 120, 120, 60}, {53, 58, 36}},
      {5, {150, 240, 144, 60}, {149, 82, 36}},
      {5, {120, 240, 174, 60}, {119, 112, 36}},
      {6, {384, 1440, 2520, 2520, 1080}, {383, 1043, 1406, 960}},
      {6, {384, 840, 1080, 960, 360}, {383, 443, 566, 240}},
  };
  for (const auto& c : cases) {
    const auto res = morse_consistency(poly(c.m), poincare_polynomial(c.n, PoincareVariant::reduced));
    ASSERT_TRUE(res.ok) << c.n << ": " << res.message;
    EXPECT_EQ(res.remainder, poly(c.r));
  }
  const std::pair<int, IntPolynomial> scaled[] = {
      {7, 120 * poly({7, 84, 132, 105, 84, 35})},
      {8, 720 * poly({8, 56, 224, 301, 210, 112, 28})},
      {9, 5040 * poly({81, 216, 384, 732, 746, 396, 168, 36})},
  };
  for (const auto& [n, m] : scaled) {
    const auto res = morse_consistency(m, poincare_polynomial(n, PoincareVariant::reduced));
    EXPECT_TRUE(res.ok) << n << ": " << res.message;
  }
}

TEST(MorseConsistency, ReconstructionAndEulerIdentity) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(0, 50);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 6;
    const auto p = poincare_polynomial(n, PoincareVariant::reduced);
    std::vector<std::int64_t> rc(static_cast<std::size_t>(n - 2));
    for (auto& x : rc) x = coef(rng);
    const IntPolynomial m = p + poly({1, 1}) * poly(rc);
    const auto res = morse_consistency(m, p);
    ASSERT_TRUE(res.ok);
    EXPECT_EQ(p + poly({1, 1}) * res.remainder, m);
    EXPECT_EQ(m.evaluate(-1), p.evaluate(-1));
  }
}
