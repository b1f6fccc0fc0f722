#include <gtest/gtest.h>

#include <random>

#include "toda/difference.hpp"
#include "toda/poly.hpp"
#include "toda/qseries.hpp"
#include "toda/schur.hpp"

using namespace toda;

namespace {

const CRational I = CRational::i();

ExactPoly random_exact_poly(std::mt19937& rng, int degree) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  std::vector<CRational> c;
  for (int k = 0; k <= degree; ++k)
    c.emplace_back(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
  if (c.back().is_zero()) c.back() = CRational(1);
  return ExactPoly(c);
}

QSeries random_series(std::mt19937& rng, int order) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  QSeries s(order);
  for (int k = 0; k <= order; ++k) s[k] = Rational(num(rng), den(rng));
  return s;
}

}  // namespace

TEST(Delta, Quadratic) {
  const ExactPoly f = ExactPoly::monomial(2);
  EXPECT_EQ(delta(f, CRational(1)), ExactPoly({CRational(0), CRational(0, 4)}));
}

TEST(Delta, ConstantIsAnnihilated) {
  EXPECT_TRUE(delta(ExactPoly::constant(CRational(Rational(7, 3))), CRational(Rational(1, 3))).is_zero());
}

TEST(Delta, Cubic) {
  // 6i x^2 - 2i
  EXPECT_EQ(delta(ExactPoly::monomial(3), CRational(1)),
            ExactPoly({CRational(0, -2), CRational(0), CRational(0, 6)}));
}

TEST(Delta, RealInputGivesImaginaryOutput) {
  const ExactPoly f({CRational(3), CRational(-1), CRational(Rational(1, 2)), CRational(5)});
  const ExactPoly d = delta(f, CRational(Rational(3, 4)));
  EXPECT_EQ(d.degree(), f.degree() - 1);
  for (const auto& c : d.coeffs()) EXPECT_EQ(c.re, 0);
}

TEST(DeltaInverse, Constant) {
  // x / (2i)
  EXPECT_EQ(delta_inverse(ExactPoly::constant(CRational(1)), CRational(1)),
            ExactPoly({CRational(0), CRational(1) / (CRational(2) * I)}));
}

TEST(DeltaInverse, Linear) {
  EXPECT_EQ(delta_inverse(ExactPoly::monomial(1), CRational(1)),
            ExactPoly({CRational(0), CRational(0), CRational(1) / (CRational(4) * I)}));
}

TEST(DeltaInverse, RoundTripDegreeTenHalfHbar) {
  std::mt19937 rng(7);
  const ExactPoly l = random_exact_poly(rng, 10);
  const CRational hbar(Rational(1, 2));
  const ExactPoly f = delta_inverse(l, hbar);
  EXPECT_EQ(delta(f, hbar), l);
  EXPECT_TRUE(f(CRational(0)).is_zero());
  EXPECT_EQ(f.degree(), 11);
}

TEST(DeltaInverse, RoundTripAllDegreesUpToTwelve) {
  std::mt19937 rng(11);
  for (int d = 0; d <= 12; ++d) {
    const ExactPoly l = random_exact_poly(rng, d);
    const CRational hbar(Rational(d + 2, 7));
    const ExactPoly f = delta_inverse(l, hbar);
    EXPECT_EQ(delta(f, hbar), l) << "degree " << d;
    EXPECT_TRUE(f(CRational(0)).is_zero());
    EXPECT_EQ(f.degree(), d + 1);
  }
}

TEST(DividedDifference, DifferenceOfSquares) {
  const ExactPoly t({CRational(-3), CRational(0), CRational(1)});
  ExactBiPoly expect;
  expect.set(1, 0, CRational(1));
  expect.set(0, 1, CRational(1));
  EXPECT_EQ(divided_difference(t), expect);
}

TEST(DividedDifference, Cube) {
  ExactBiPoly expect;
  expect.set(2, 0, CRational(1));
  expect.set(1, 1, CRational(1));
  expect.set(0, 2, CRational(1));
  EXPECT_EQ(divided_difference(ExactPoly::monomial(3)), expect);
}

TEST(DividedDifference, DiagonalIsDerivative) {
  std::mt19937 rng(3);
  const ExactPoly t = random_exact_poly(rng, 7);
  const ExactBiPoly u = divided_difference(t);
  const ExactPoly dt = t.derivative();
  std::uniform_int_distribution<int> num(-50, 50);
  for (int k = 0; k < 20; ++k) {
    const CRational x(Rational(num(rng), 13), Rational(num(rng), 17));
    EXPECT_EQ(u(x, x), dt(x));
  }
}

TEST(DividedDifference, MatchesExactQuotient) {
  std::mt19937 rng(5);
  const ExactPoly t = random_exact_poly(rng, 6);
  const ExactBiPoly diff = ExactBiPoly::in_x(t) - ExactBiPoly::in_y(t);
  EXPECT_EQ(diff.divide_by_x_minus_y(), divided_difference(t));
}

TEST(Schur, VandermondeTwoVariables) {
  const auto blocks = antisym_to_schur(MultiPoly<Rational>::constant(2, Rational(1)));
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].rows[0], RationalPoly({Rational(1)}));
  EXPECT_EQ(blocks[0].rows[1], RationalPoly::monomial(1));
}

TEST(Schur, SumOfVariables) {
  const auto blocks = antisym_to_schur(MultiPoly<Rational>::elementary(2, 1));
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].rows[0], RationalPoly({Rational(1)}));
  EXPECT_EQ(blocks[0].rows[1], RationalPoly::monomial(2));
}

TEST(Schur, VandermondeThreeVariables) {
  const auto blocks = antisym_to_schur(MultiPoly<Rational>::constant(3, Rational(1)));
  ASSERT_EQ(blocks.size(), 1u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(blocks[0].rows[static_cast<std::size_t>(i)], RationalPoly::monomial(i));
}

TEST(Schur, RoundTripReproducesInputTimesVandermonde) {
  using MP = MultiPoly<Rational>;
  for (int m = 2; m <= 4; ++m) {
    // a mixed symmetric polynomial: e1^2 e2 - 3 e_m + 5/2 e1
    const MP f = MP::elementary(m, 1) * MP::elementary(m, 1) * MP::elementary(m, 2) -
                 MP::elementary(m, m) * Rational(3) + MP::elementary(m, 1) * Rational(5, 2);
    const auto blocks = antisym_to_schur(f);
    MP sum(m);
    for (const auto& b : blocks) sum += expand_block(b);
    EXPECT_EQ(sum, MP::vandermonde(m) * f) << "m=" << m;
  }
}

TEST(Schur, RejectsNonSymmetric) {
  using MP = MultiPoly<Rational>;
  const MP f = MP::variable(2, 0) * MP::variable(2, 0) + MP::variable(2, 1);
  EXPECT_THROW(antisym_to_schur(f), std::invalid_argument);
}

TEST(QSeriesRing, AssociativityAndDistributivity) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const QSeries a = random_series(rng, 40), b = random_series(rng, 40), c = random_series(rng, 40);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * b, b * a);
  }
}

TEST(QSeriesRing, UnitsInvertExactly) {
  for (int m = 1; m <= 12; ++m) {
    const QSeries u = QSeries::q_number(40, m);
    EXPECT_EQ(u * u.inverse(), QSeries::one(40));
  }
  EXPECT_THROW(QSeries::monomial(40, 1).inverse(), std::domain_error);
}

TEST(QSeriesRing, GeometricSeries) {
  const QSeries g = QSeries::q_number(10, 1).inverse();
  for (int k = 0; k <= 10; ++k) EXPECT_EQ(g[k], 1);
}
