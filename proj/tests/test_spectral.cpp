#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "toda/classical_identities.hpp"
#include "toda/errors.hpp"
#include "toda/lax.hpp"
#include "toda/spectral.hpp"

using namespace toda;

namespace {

constexpr double kPi = std::numbers::pi;

SpectralData genus1() { return build_spectral(RealPoly({-3, 0, 1})); }
SpectralData genus2() { return build_spectral(RealPoly({0, -7, 0, 1})); }
SpectralData genus3() { return build_spectral(RealPoly({4, 0, -8, 0, 1})); }
SpectralData from_point(const PhasePoint& x) { return build_spectral(conserved_poly(build_monodromy(x))); }

std::vector<SpectralData> curves() {
  return {genus1(), genus2(), genus3(), from_point({{0.4, -0.1, -0.3}, {0.0, 0.5, -0.2}}),
          from_point({{0.3, 0.2, -0.6, 0.1}, {0.1, -0.4, 0.3, 0.0}})};
}

}  // namespace

TEST(Spectral, GenusOneBranchPoints) {
  const SpectralData s = genus1();
  EXPECT_EQ(s.genus, 1);
  EXPECT_NEAR(s.zone_lo(1), -1.0, 1e-15);
  EXPECT_NEAR(s.zone_hi(1), 1.0, 1e-15);
}

TEST(Spectral, CubicHasSixBranchPoints) {
  const SpectralData s = genus2();
  EXPECT_EQ(s.branch.size(), 6u);
  EXPECT_EQ(s.genus, 2);
  for (double l : s.branch) EXPECT_NEAR(s.P(l), 0.0, 1e-11);
  for (int j = 1; j <= 2; ++j) EXPECT_GT(s.P(0.5 * (s.zone_lo(j) + s.zone_hi(j))), 0.0);
}

TEST(Spectral, DegenerateCurveIsRejected) {
  EXPECT_THROW(build_spectral(RealPoly({-2, 0, 1})), DegenerateCurve);
  EXPECT_NO_THROW(build_spectral(RealPoly({-2, 0, 1}), true));
}

TEST(CycleIntegral, OddMomentVanishesOnSymmetricZone) {
  const PeriodData pd = period_matrix(genus1());
  EXPECT_NEAR(std::abs(cycle_integral(pd, 1, 1)), 0.0, 1e-14);
}

TEST(CycleIntegral, TrapezoidMatchesTanhSinh) {
  for (const SpectralData& s : curves()) {
    const PeriodData pd = period_matrix(s);
    for (int j = 1; j <= s.genus; ++j)
      for (int m = 0; m <= 3; ++m) {
        const double a = cycle_integral(pd, m, j).real();
        const double b = cycle_integral_tanh_sinh(s, m, j);
        EXPECT_NEAR(a, b, 1e-10 * std::max(1.0, std::abs(b))) << "j=" << j << " m=" << m;
      }
    EXPECT_GT(cycle_integral(pd, 0, 1).real(), 0.0);
  }
}

TEST(PeriodMatrix, GenusOneIsScalarInverse) {
  const PeriodData pd = period_matrix(genus1());
  EXPECT_NEAR(pd.A(0, 0), 2 * kPi / pd.raw(0, 0), 1e-14);
}

TEST(PeriodMatrix, NormalizationAgainstIndependentQuadrature) {
  for (const SpectralData& s : curves()) {
    const PeriodData pd = period_matrix(s);
    ASSERT_GT(std::abs(pd.raw.determinant()), 1e-12);
    for (int j = 1; j <= s.genus; ++j)
      for (int k = 1; k <= s.genus; ++k) {
        double v = 0.0;
        for (int m = 0; m < s.genus; ++m) v += pd.A(k - 1, m) * cycle_integral_tanh_sinh(s, m, j);
        EXPECT_NEAR(v / (2 * kPi), j == k ? 1.0 : 0.0, 1e-8);
      }
  }
}

TEST(PeriodMatrix, OddRowsVanishForEvenT) {
  const PeriodData pd = period_matrix(genus3());
  // t even: zones are mirror images, so odd moments cancel only within a symmetric zone (zone 2)
  EXPECT_NEAR(pd.raw(1, 1), 0.0, 1e-13);
  EXPECT_NEAR(pd.raw(1, 0), -pd.raw(1, 2), 1e-12);
}

TEST(Actions, PositiveAndMonotoneInEnergy) {
  const double j1 = classical_action(build_spectral(RealPoly({-3, 0, 1})), 1);
  const double j2 = classical_action(build_spectral(RealPoly({-4, 0, 1})), 1);
  EXPECT_GT(j1, 0.0);
  EXPECT_GT(j2, j1);
}

TEST(Actions, GradientMatchesPeriods) {
  for (const SpectralData& s : curves()) {
    const PeriodData pd = period_matrix(s);
    const double h = 1e-4;
    for (int l = 1; l <= s.genus; ++l) {
      // t_{n-l+1} multiplies lambda^{l-1}
      RealPoly up = s.t + RealPoly::monomial(l - 1, h);
      RealPoly dn = s.t - RealPoly::monomial(l - 1, h);
      const SpectralData su = build_spectral(up), sd = build_spectral(dn);
      for (int j = 1; j <= s.genus; ++j) {
        const double fd = (classical_action(su, j) - classical_action(sd, j)) / (2 * h);
        const double sign = ((s.n - j) % 2 == 0) ? 1.0 : -1.0;
        EXPECT_NEAR(fd, sign * pd.raw(l - 1, j - 1), 1e-6 * std::max(1.0, std::abs(fd))) << "l=" << l << " j=" << j;
      }
    }
  }
}

TEST(ClassicalProps, ExactFormsVanish) {
  for (const SpectralData& s : curves()) {
    const PeriodData pd = period_matrix(s);
    for (int j = 1; j <= s.genus; ++j)
      for (int d = 0; d <= 3; ++d) {
        ClassicalPropInput in{ClassicalProp::P1, RealPoly::monomial(d), {}, j, j};
        EXPECT_LT(prop_check_classical(s, pd, in), 1e-8) << "deg " << d << " cycle " << j;
      }
  }
}

TEST(ClassicalProps, NegativeControlPlainForm) {
  const PeriodData pd = period_matrix(genus1());
  EXPECT_GT(plain_form_residual(pd, RealPoly({1.0}), 1), 0.5);
}

TEST(ClassicalProps, BilinearIdentityOnACycles) {
  for (const SpectralData& s : curves()) {
    const PeriodData pd = period_matrix(s);
    for (int j = 1; j <= s.genus; ++j)
      for (int k = 1; k <= s.genus; ++k) {
        ClassicalPropInput in{ClassicalProp::P2, {}, {}, j, k};
        EXPECT_LT(prop_check_classical(s, pd, in), 1e-8) << j << "," << k;
      }
  }
}

TEST(ClassicalProps, CtIsAntisymmetric) {
  const RealBiPoly c = c_t_numeric(genus2().P);
  EXPECT_TRUE(c == c.swapped() * -1.0);
}

TEST(ClassicalProps, PhasedIdentitiesGenusTwo) {
  const SpectralData s = genus2();
  const PeriodData pd = period_matrix(s);
  double worst1 = 0, worst2 = 0, worst3 = 0;
  for (int k1 = -2; k1 <= 2; ++k1)
    for (int k2 = -2; k2 <= 2; ++k2) {
      const std::vector<int> k{k1, k2};
      for (int j = 1; j <= 2; ++j) {
        for (int d = 0; d <= 3; ++d)
          worst1 = std::max(worst1, prop_check_classical(s, pd, {ClassicalProp::P1p, RealPoly::monomial(d), k, j, j}));
        worst3 = std::max(worst3, prop_check_classical(s, pd, {ClassicalProp::P3p, {}, k, j, j}));
        for (int jj = 1; jj <= 2; ++jj)
          worst2 = std::max(worst2, prop_check_classical(s, pd, {ClassicalProp::P2p, {}, k, j, jj}));
      }
    }
  EXPECT_LT(worst1, 1e-8);
  EXPECT_LT(worst2, 1e-8);
  EXPECT_LT(worst3, 1e-8);
}

TEST(CyclePhase, WindsByTwoPiK) {
  const SpectralData s = genus2();
  const PeriodData pd = period_matrix(s);
  for (int j = 1; j <= 2; ++j) {
    const CyclePhase ph(pd.grids[static_cast<std::size_t>(j - 1)], omega_numerator(pd, {2, -1}));
    EXPECT_NEAR(ph.winding(), 2 * kPi * (j == 1 ? 2 : -1), 1e-10);
    EXPECT_NEAR(ph(kPi / 2), 0.0, 1e-14);
    EXPECT_NEAR(ph(2 * kPi + 0.3) - ph(0.3), ph.winding(), 1e-10);
    // interpolant agrees with node values
    const auto& g = pd.grids[static_cast<std::size_t>(j - 1)];
    EXPECT_NEAR(ph(g.phi[5]), ph.values()[5], 1e-10);
  }
}
