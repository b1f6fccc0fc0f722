#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "toda/matrix_elements.hpp"

using namespace toda;

namespace {

const std::vector<EigenPair>& spectrum(double hbar, int levels) {
  static std::map<std::pair<double, int>, std::vector<EigenPair>> cache;
  auto it = cache.find({hbar, levels});
  if (it == cache.end()) it = cache.emplace(std::make_pair(hbar, levels), solve_relative_spectrum(hbar, levels)).first;
  return it->second;
}

std::vector<QFunction> qfunctions(double hbar, int levels) {
  std::vector<QFunction> out;
  for (const auto& p : spectrum(hbar, levels)) out.emplace_back(p);
  return out;
}

// Level whose Bohr-Sommerfeld energy is closest to E.
int level_near(double E, double hbar) {
  return static_cast<int>(std::lround(bs_action(-E) / (2.0 * std::numbers::pi * hbar) - 0.5));
}

CRational cr(long re, long den_re, long im = 0, long den_im = 1) { return {Rational(re, den_re), Rational(im, den_im)}; }

ExactPoly exact(std::vector<CRational> c) { return ExactPoly(std::move(c)); }

}  // namespace

// t = g^2 - 3, t' = g^2 - 5, hbar = 1/2, expanded term by term with the
// inverse difference found by undetermined coefficients in a computer algebra system.
TEST(QuantumPolys, ExactFormMatchesTermByTermExpansion) {
  const ExactPoly t = exact({cr(-3, 1), 0, 1}), tp = exact({cr(-5, 1), 0, 1});
  const CRational h = cr(1, 2);
  const ExactPoly D1 = quantum_exact_form(t, tp, h, ExactPoly::constant(1));
  EXPECT_EQ(D1, exact({0, cr(0, 1, -2, 1), 0, cr(0, 1, -1, 2)}));
  const ExactPoly Dg = quantum_exact_form(t, tp, h, ExactPoly::monomial(1));
  EXPECT_EQ(Dg, exact({cr(0, 1, -21, 8), 0, cr(0, 1, 63, 32), 0, cr(0, 1, -3, 4)}));
  const ExactPoly Dg2 = quantum_exact_form(t, tp, h, ExactPoly::monomial(2));
  EXPECT_EQ(Dg2, exact({0, cr(0, 1, -16, 3), 0, cr(0, 1, 109, 24), 0, cr(0, 1, -1, 1)}));
}

TEST(QuantumPolys, BilinearFormIsAntisymmetric) {
  const ExactPoly t = exact({cr(-7, 3), 0, 1}), tp = exact({cr(5, 2), 0, 1});
  const ExactBiPoly C = quantum_bilinear(t, tp, cr(3, 4));
  EXPECT_EQ(C + C.swapped(), ExactBiPoly());
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
  for (int s = 0; s < 50; ++s) {
    const CRational x(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    const CRational y(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    EXPECT_EQ(C(x, y), -C(y, x));
  }
}

TEST(QuantumPolys, DifferenceVanishesForEqualEigenvalues) {
  const ExactPoly t = exact({cr(-9, 4), 0, 1});
  const auto p = build_quantum_identity_polys(t, t, cr(1, 3));
  EXPECT_TRUE(p.Sq.is_zero());
  const auto q = build_quantum_identity_polys(t, exact({cr(-2, 1), 0, 1}), cr(1, 3));
  EXPECT_FALSE(q.Sq.is_zero());
  EXPECT_FALSE(q.Dq.is_zero());
}

TEST(QuantumPolys, RequiresMonicOfEqualDegree) {
  const CRational h = cr(1, 2);
  EXPECT_THROW(build_quantum_identity_polys(exact({0, 0, 2}), exact({0, 0, 1}), h), std::invalid_argument);
  EXPECT_THROW(build_quantum_identity_polys(exact({0, 0, 1}), exact({0, 0, 0, 1}), h), std::invalid_argument);
}

TEST(DeformedMeasure, WindowFollowsDecayRatesAndIsStable) {
  const auto qs = qfunctions(1.0, 2);
  const DeformedMeasure m(qs[0], qs[1], 1);
  EXPECT_LT(m.window_lo(), -3.0);
  EXPECT_GT(m.window_hi(), 3.0);
  EXPECT_NEAR(-m.window_lo(), m.window_hi(), 1e-12);
  EXPECT_LT(m.window_change(), 1e-8);
  EXPECT_THROW(DeformedMeasure(qs[0], qs[1], 0), std::invalid_argument);
  EXPECT_THROW(DeformedMeasure(qs[0], qs[1], 2), std::invalid_argument);
}

TEST(QuantumIdentities, ExactFormIntegralVanishes) {
  for (double hbar : {1.0, 0.5}) {
    const auto qs = qfunctions(hbar, 4);
    for (int a = 0; a < 3; ++a)
      for (int d = 0; d <= 3; ++d) {
        QuantumPropInput in;
        in.L = RealPoly::monomial(d);
        EXPECT_LT(quantum_prop_check(qs[a], qs[a + 1], in), 1e-6) << hbar << " " << a << " " << d;
        EXPECT_LT(quantum_prop_check(qs[a], qs[a], in), 1e-6) << hbar << " " << a << " " << d;
      }
  }
}

TEST(QuantumIdentities, RandomPolynomialDoesNotVanish) {
  const auto qs = qfunctions(1.0, 2);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::complex<double>> c(6);
    for (auto& v : c) v = {U(rng), U(rng)};
    EXPECT_GT(quantum_form_residual(qs[0], qs[1], Poly(c)), 1e-2);
  }
}

TEST(QuantumIdentities, ContourShiftUnderPeriodicWeight) {
  for (double hbar : {1.0, 0.5}) {
    const auto qs = qfunctions(hbar, 3);
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) EXPECT_LT(contour_shift_check(qs[a], qs[b]), 1e-7) << hbar << a << b;
  }
}

TEST(QuantumIdentities, DifferenceIntegralVanishesAtUnitWeight) {
  const auto qs = qfunctions(0.5, 3);
  QuantumPropInput in;
  in.kind = QuantumProp::P3pp;
  EXPECT_LT(quantum_prop_check(qs[0], qs[1], in), 1e-6);
  EXPECT_LT(quantum_prop_check(qs[1], qs[2], in), 1e-6);
}

TEST(QuantumIdentities, BilinearDoubleIntegralIsFinite) {
  const auto qs = qfunctions(1.0, 2);
  QuantumPropInput in;
  in.kind = QuantumProp::P2pp;
  const double r = quantum_prop_check(qs[0], qs[1], in);
  EXPECT_TRUE(std::isfinite(r));
  EXPECT_GE(r, 0.0);
}

TEST(MatrixElements, DistinctLevelsAreOrthogonal) {
  for (double hbar : {1.0, 0.5}) {
    const auto qs = qfunctions(hbar, 5);
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) EXPECT_LT(orthogonality(qs[a], qs[b]), 1e-6) << hbar << " " << a << b;
  }
}

TEST(MatrixElements, NormIsPositiveAndElementsSymmetric) {
  const auto qs = qfunctions(0.5, 4);
  const MultiPoly<std::complex<double>> one = MultiPoly<std::complex<double>>::constant(1, 1.0);
  const MultiPoly<std::complex<double>> b1 = MultiPoly<std::complex<double>>::variable(1, 0);
  for (int a = 0; a < 4; ++a) {
    const std::complex<double> norm = matrix_element(qs[a], qs[a], one);
    EXPECT_GT(norm.real(), 0.0);
    EXPECT_LT(std::abs(norm.imag()), 1e-10 * norm.real());
    const std::complex<double> diag = matrix_element(qs[a], qs[a], b1 * b1);
    EXPECT_LT(std::abs(diag.imag()), 1e-10 * std::abs(diag));
    for (int b = a + 1; b < 4; ++b) {
      const std::complex<double> ab = matrix_element(qs[a], qs[b], b1), ba = matrix_element(qs[b], qs[a], b1);
      EXPECT_LT(std::abs(ab - ba), 1e-8 * std::abs(ab)) << a << b;
    }
  }
}

TEST(QuasiClassical, ZerosInsideTheZoneFollowThePhaseCondition) {
  const double hbar = 0.15;
  const int m = level_near(6.0, hbar);
  const QFunction q(spectrum(hbar, m + 1)[m]);
  const ZoneZeroReport r = compare_zone_zeros(q);
  EXPECT_EQ(r.exact_count, r.predicted_count);
  EXPECT_LT(r.max_offset, 0.2);
}

TEST(QuasiClassical, ApproximationIsRealOnTheZone) {
  const auto& p = spectrum(0.2, 4)[3];
  const QuasiClassicalState s = quasiclassical_q(p.t, p.hbar);
  ASSERT_EQ(s.grid.size(), s.q_qc.size());
  EXPECT_LT(s.zone_lo, s.zone_hi);
  for (double v : s.q_qc) EXPECT_TRUE(std::isfinite(v));
  EXPECT_EQ(static_cast<int>(s.zeros.size()), p.level);
}

TEST(QuasiClassical, ZeroCountDoublesWhenHbarHalves) {
  const double E = 6.0;
  const int m1 = level_near(E, 0.2), m2 = level_near(E, 0.1);
  const int c1 = static_cast<int>(q_zeros(QFunction(spectrum(0.2, m1 + 2)[m1]), -std::sqrt(E - 2), std::sqrt(E - 2)).size());
  const int c2 = static_cast<int>(q_zeros(QFunction(spectrum(0.1, m2 + 2)[m2]), -std::sqrt(E - 2), std::sqrt(E - 2)).size());
  EXPECT_GT(c1, 4);
  EXPECT_LE(std::abs(c2 - 2 * c1), 1) << c1 << " " << c2;
}

TEST(CloseStates, DeviationFromFourierCoefficientShrinks) {
  const RealPoly F({0.0, 1.0});
  double dev[2];
  int i = 0;
  for (double hbar : {0.2, 0.1}) {
    const int m = level_near(6.0, hbar);
    const auto& s = spectrum(hbar, m + 2);
    const CloseStateReport r = close_state_compare(s[m], s[m + 1], F);
    EXPECT_LT(r.spacing_error, 0.05);
    dev[i++] = r.deviation;
  }
  EXPECT_GE(dev[0] / dev[1], 1.5) << dev[0] << " " << dev[1];
}

TEST(CloseStates, SpacingAtLowLevel) {
  const auto& s = spectrum(0.1, 7);
  const CloseStateReport r = close_state_compare(s[5], s[6], RealPoly({0.0, 1.0}));
  EXPECT_LT(r.spacing_error, 0.05);
}

TEST(CloseStates, DiagonalElementMatchesTorusAverage) {
  const double hbar = 0.2;
  const int m = level_near(6.0, hbar);
  const auto& s = spectrum(hbar, m + 1);
  const CloseStateReport odd = close_state_compare(s[m], s[m], RealPoly({0.0, 1.0}));
  EXPECT_LT(std::abs(odd.quantum), 1e-8);
  EXPECT_LT(std::abs(odd.classical), 1e-8);
  const CloseStateReport sq = close_state_compare(s[m], s[m], RealPoly({0.0, 0.0, 1.0}));
  EXPECT_LT(sq.deviation, hbar);
}

TEST(CloseStates, DeformationOfTheBilinearFormConverges) {
  const int m = level_near(4.0, 0.05);
  const auto& s = spectrum(0.05, m + 2);
  EXPECT_LT(deformation_error(s[m], s[m + 1]), 0.10);
}
