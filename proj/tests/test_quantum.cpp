#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "toda/errors.hpp"
#include "toda/quantum.hpp"
#include "toda/spectral.hpp"

using namespace toda;

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<EigenPair>& spectrum(double hbar, int levels) {
  static std::map<std::pair<double, int>, std::vector<EigenPair>> cache;
  auto it = cache.find({hbar, levels});
  if (it == cache.end()) it = cache.emplace(std::make_pair(hbar, levels), solve_relative_spectrum(hbar, levels)).first;
  return it->second;
}

}  // namespace

// Independent finite-difference grid diagonalization with two Richardson steps on [-12, 12].
TEST(Spectrum, LowestLevelsMatchOracle) {
  const auto& a = spectrum(1.0, 2);
  EXPECT_NEAR(a[0].E, 3.0591745972126, 1e-9);
  EXPECT_NEAR(a[1].E, 5.2851259666760, 1e-9);
  const auto& b = spectrum(0.5, 2);
  EXPECT_NEAR(b[0].E, 2.5151770967228, 1e-9);
  EXPECT_NEAR(b[1].E, 3.5742971369064, 1e-9);
}

TEST(Spectrum, HigherLevelsMatchOracle) {
  const double ref[] = {3.0591745972126, 5.2851259666760, 7.7145795725081,
                        10.3276669444852, 13.1100958889814, 16.0509214242164};
  const auto& s = spectrum(1.0, 6);
  for (int m = 0; m < 6; ++m) EXPECT_NEAR(s[m].E, ref[m], 1e-9 * ref[m]) << m;
}

TEST(Spectrum, IncreasingAboveTheMinimumWithAlternatingParity) {
  for (double hbar : {1.0, 0.5}) {
    const auto& s = spectrum(hbar, 6);
    for (int m = 0; m < 6; ++m) {
      EXPECT_EQ(s[m].level, m);
      EXPECT_GT(s[m].E, 2.0);
      EXPECT_EQ(s[m].parity, m % 2 == 0 ? 1 : -1);
      if (m > 0) EXPECT_GT(s[m].E, s[m - 1].E);
    }
  }
}

TEST(Spectrum, DiscretizationSeedAgreesWithShooting) {
  const auto& s = spectrum(0.5, 6);
  for (const auto& p : s) EXPECT_NEAR(p.E_seed, p.E, 1e-8 * p.E);
  const auto coarse = dvr_energies(0.5, 8.0, 0.4, 4);
  const auto fine = dvr_energies(0.5, 8.0, 0.1, 4);
  for (int m = 0; m < 4; ++m) EXPECT_NEAR(fine[m], s[m].E, 1e-10 * s[m].E);
  EXPECT_GT(std::abs(coarse[3] - s[3].E), std::abs(fine[3] - s[3].E));
}

TEST(Spectrum, RejectsInvalidArguments) {
  EXPECT_THROW(solve_relative_spectrum(0.0, 3), std::invalid_argument);
  EXPECT_THROW(solve_relative_spectrum(1.0, 0), std::invalid_argument);
  EXPECT_THROW(dvr_energies(1.0, 1.0, 0.5, 10), std::invalid_argument);
}

TEST(Baxter, ExponentialWithCosineEigenvalueHasZeroResidual) {
  for (double a : {0.3, -1.1, 2.0}) {
    const double hbar = 0.7;
    const QEvaluator q = [&](std::complex<double> g) { return std::exp(a * g); };
    const RealPoly t({2.0 * std::cos(a * hbar)});
    EXPECT_LT(baxter_residual(q, t, hbar), 1e-13) << a;
    EXPECT_GT(baxter_residual(q, RealPoly({2.0 * std::cos(a * hbar) + 0.1}), hbar), 1e-3) << a;
  }
}

TEST(Baxter, ResidualSmallForSixLevels) {
  for (double hbar : {1.0, 0.5}) {
    for (const auto& p : spectrum(hbar, 6)) {
      const QFunction q = build_q(p);
      EXPECT_LT(baxter_residual(q), 1e-6) << hbar << " " << p.level;
      EXPECT_LT(p.residual, 1e-6);
    }
  }
}

TEST(Baxter, SelectedCandidateIsStableAcrossLevels) {
  for (double hbar : {1.0, 0.5}) {
    const auto& s = spectrum(hbar, 6);
    for (const auto& p : s) {
      EXPECT_EQ(p.t2_sign, s[0].t2_sign);
      EXPECT_EQ(p.gauge, s[0].gauge);
      EXPECT_DOUBLE_EQ(std::abs(p.t.coeff(0)), p.E);
      EXPECT_DOUBLE_EQ(p.t.coeff(2), 1.0);
      EXPECT_EQ(p.t.coeff(1), 0.0);
    }
  }
}

TEST(Baxter, RejectedCandidatesAreFarFromZero) {
  for (const auto& p : spectrum(1.0, 4)) {
    const TSelection sel = eigen_to_t(p);
    ASSERT_EQ(sel.candidates.size(), 6u);
    int small = 0;
    for (double r : sel.candidates) {
      if (r < 1e-6) ++small;
      else EXPECT_GT(r, 1e-2);
    }
    EXPECT_EQ(small, 1);
  }
}

TEST(Baxter, PerturbedEigenvalueRaisesResidual) {
  for (const auto& p : spectrum(0.5, 4)) {
    const QFunction q(p);
    const double base = baxter_residual(q);
    const RealPoly t = p.t + RealPoly({0.01 * p.t.coeff(0)});
    const double bumped = baxter_residual([&](std::complex<double> g) { return q(g); }, t, p.hbar);
    EXPECT_GT(bumped, 10.0 * base) << p.level;
  }
}

TEST(Baxter, ResidualHoldsBeyondTheRealContourAtSmallHbar) {
  const auto& s = spectrum(0.1, 3);
  for (const auto& p : s) {
    const QFunction q(p);
    EXPECT_LT(q.re_cap(), 5.0);
    EXPECT_LT(baxter_residual(q), 1e-6) << p.level;
  }
}

TEST(QFunction, RealOnTheRealAxisAndNormalized) {
  for (const auto& p : spectrum(1.0, 4)) {
    const QFunction q(p);
    for (double g : {-3.0, -0.4, 0.0, 1.3, 4.5}) EXPECT_LT(std::abs(q(g).imag()), 1e-12 * (1.0 + std::abs(q(g))));
    if (p.parity > 0) {
      EXPECT_NEAR(q(0.0).real(), 1.0, 1e-12);
    } else {
      const double h = 1e-5;
      const double d = (q(h).real() - q(-h).real()) / (2 * h);
      // Q'(0) includes the derivative of the exponential factor, which vanishes with psi_hat(0) = 0.
      EXPECT_NEAR(d, 1.0, 1e-7);
    }
  }
}

TEST(QFunction, MomentumParityMatchesEigenfunction) {
  for (const auto& p : spectrum(0.5, 4)) {
    const QFunction q(p);
    for (std::complex<double> g : {std::complex<double>(0.7, 0.2), std::complex<double>(1.9, -0.5),
                                   std::complex<double>(3.2, 0.0)}) {
      const std::complex<double> a = q.momentum(g).value(), b = q.momentum(-g).value();
      EXPECT_LT(std::abs(b - double(p.parity) * a), 1e-8 * std::abs(a)) << p.level;
      // Q itself carries exp(pi g / hbar): exp(-2 pi g / hbar) Q(g) = parity Q(-g).
      const std::complex<double> lhs = std::exp(-2.0 * kPi * g / p.hbar) * q(g);
      EXPECT_LT(std::abs(lhs - double(p.parity) * q(-g)), 1e-8 * std::abs(q(-g)));
    }
  }
}

TEST(QFunction, EvaluationDomainIsEnforced) {
  const QFunction q(spectrum(1.0, 1)[0]);
  EXPECT_THROW(q(std::complex<double>(0.0, 1.01 * q.im_cap())), std::domain_error);
  EXPECT_NO_THROW(q(std::complex<double>(0.0, q.im_cap())));
  const auto samples = q.psi_samples();
  ASSERT_GT(samples.size(), 10u);
  EXPECT_LT(std::abs(samples.back()), 1e-14 * std::abs(samples.front()));
}

TEST(Asymptotics, GroundStateZerosAndGrowth) {
  const QFunction q(spectrum(1.0, 1)[0]);
  const AsymptoticsReport r = asymptotics_check(q);
  EXPECT_DOUBLE_EQ(r.lambda0, 50.0);
  EXPECT_TRUE(r.zeros_ok) << r.zeros_counted << " vs " << r.zeros_predicted;
  EXPECT_TRUE(r.growth_ok) << r.slope_minus << " vs " << r.slope_expected;
  EXPECT_TRUE(r.bounded_ok) << r.slope_plus;
}

TEST(BohrSommerfeld, ActionIsMonotone) {
  double prev = bs_action(-2.05);
  for (double t2 = -2.5; t2 > -20.0; t2 -= 0.5) {
    const double J = bs_action(t2);
    EXPECT_GT(J, prev) << t2;
    prev = J;
  }
}

TEST(BohrSommerfeld, ErrorShrinksQuadratically) {
  const int nj = 3;
  const double e1 = std::abs(-bs_quantize(0.5, nj) - spectrum(0.5, 6)[nj].E);
  const double e2 = std::abs(-bs_quantize(0.25, nj) - spectrum(0.25, 4)[nj].E);
  const double ratio = e1 / e2;
  EXPECT_GE(ratio, 2.5);
  EXPECT_LE(ratio, 6.0);
}

TEST(BohrSommerfeld, RejectsNegativeQuantumNumber) {
  EXPECT_THROW(bs_quantize(0.5, -1), std::invalid_argument);
}

TEST(BohrSommerfeld, SpacingMatchesClassicalFrequency) {
  const auto& s = spectrum(0.1, 7);
  const int m = 5;
  const double spacing = s[m + 1].E - s[m].E;
  const double predicted = 0.1 * std::abs(classical_frequency(-s[m].E));
  EXPECT_LT(std::abs(spacing - predicted) / predicted, 0.05);
}
