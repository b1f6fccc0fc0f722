#include <gtest/gtest.h>

#include "toda/characters.hpp"

using namespace toda;

namespace {

std::vector<Rational> ints(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

QSeries leading(const QSeries& s, int order) {
  QSeries out(order);
  for (int k = 0; k <= order; ++k) out[k] = s[k];
  return out;
}

}  // namespace

TEST(QBinomial, TwoChooseOne) {
  EXPECT_EQ(q_binomial(2, 1, 10), QSeries(10, ints({1, 1})));
}

TEST(QBinomial, Symmetry) {
  for (int n = 0; n <= 12; ++n)
    for (int m = 0; m <= n; ++m) EXPECT_EQ(q_binomial(n, m), q_binomial(n, n - m)) << n << " " << m;
}

TEST(QBinomial, PascalRecurrence) {
  for (int n = 1; n <= 12; ++n)
    for (int m = 1; m < n; ++m)
      EXPECT_EQ(q_binomial(n, m),
                q_binomial(n - 1, m - 1) + QSeries::monomial(40, m) * q_binomial(n - 1, m))
          << n << " " << m;
}

TEST(QBinomial, IsAPolynomialOfDegreeMTimesNMinusM) {
  const QSeries b = q_binomial(9, 4, 40);
  for (int k = 0; k <= 40; ++k) EXPECT_EQ(b[k] != 0, k <= 20) << k;
  EXPECT_TRUE(b.all_nonnegative_integers());
}

TEST(QBinomial, RejectsOutOfRange) { EXPECT_THROW(q_binomial(3, 4), std::invalid_argument); }

TEST(Character, FrozenCoefficients) {
  // independent expansion of the product formula
  EXPECT_EQ(leading(character_product(2).chi, 12), QSeries(12, ints({1, 2, 5, 8, 13, 18, 25, 32, 41, 50, 61, 72, 85})));
  EXPECT_EQ(leading(character_product(3).chi, 12),
            QSeries(12, ints({1, 2, 6, 12, 24, 41, 70, 108, 165, 238, 338, 462, 624})));
  EXPECT_EQ(leading(character_product(4).chi, 12),
            QSeries(12, ints({1, 2, 6, 13, 28, 52, 97, 165, 277, 441, 689, 1037, 1537})));
}

TEST(Character, ThreeFormsAgree) {
  for (int n = 2; n <= 6; ++n) {
    const QSeries p = character_product(n).chi;
    EXPECT_EQ(p, character_binomial(n).chi) << "n=" << n;
    EXPECT_EQ(p, character_resolution(n)) << "n=" << n;
  }
}

TEST(Character, DimensionsAreNonnegativeIntegers) {
  for (int n = 2; n <= 6; ++n) {
    const GradedCharacter c = character_product(n);
    EXPECT_TRUE(c.chi.all_nonnegative_integers()) << "n=" << n;
    EXPECT_EQ(c.delta(0), 1);
  }
}

TEST(Character, DegreeOneDimensionAgrees) {
  for (int n = 2; n <= 6; ++n) {
    EXPECT_EQ(character_product(n).delta(1), character_binomial(n).delta(1));
    EXPECT_EQ(character_product(n).delta(1), character_resolution(n)[1]);
  }
}

TEST(Character, TwoSitesUnsimplified) {
  EXPECT_EQ(character_product(2).chi, character_two_unsimplified());
}

TEST(Character, TwoSitesSimplified) {
  // the closed form (1/[2]!)(1 + q^2) as printed
  EXPECT_EQ(character_product(2).chi, character_two_simplified());
}

TEST(Character, RejectsSmallN) { EXPECT_THROW(character_product(1), std::invalid_argument); }
