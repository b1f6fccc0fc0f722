#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "toda/dynamics.hpp"
#include "toda/errors.hpp"
#include "toda/roots.hpp"

using namespace toda;

namespace {

const PhasePoint kTwo{{0.6, -0.6}, {0.0, 0.4}};
const PhasePoint kThree{{0.5, -0.2, -0.3}, {0.0, 0.3, -0.1}};
const PhasePoint kFour{{0.4, -0.1, -0.5, 0.2}, {0.0, 0.2, 0.5, 0.1}};

SpectralData spectral_of(const PhasePoint& x) { return build_spectral(conserved_poly(build_monodromy(x))); }

double gamma_period(const PhasePoint& x) {
  const PeriodData pd = period_matrix(spectral_of(x));
  return pd.raw(0, 0);
}

double max_abs_diff(const PhasePoint& a, const PhasePoint& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.p.size(); ++i) {
    d = std::max(d, std::abs(a.p[i] - b.p[i]));
    d = std::max(d, std::abs(a.q[i] - b.q[i]));
  }
  return d;
}

}  // namespace

TEST(TraceGradient, MatchesCentralDifferences) {
  const TraceGradient tg = trace_gradient(kFour);
  const double h = 1e-6;
  for (std::size_t i = 0; i < 8; ++i) {
    PhasePoint up = kFour, dn = kFour;
    if (i < 4) {
      up.q[i] += h;
      dn.q[i] -= h;
    } else {
      up.p[i - 4] += h;
      dn.p[i - 4] -= h;
    }
    const TraceGradient a = trace_gradient(up), b = trace_gradient(dn);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(tg.grad[k][i], (a.t[k] - b.t[k]) / (2 * h), 1e-8);
  }
}

TEST(TraceGradient, SecondCoefficientGeneratesNewtonFlow) {
  // t_2 = (sum p)^2 / 2 - H, so {t_2, q_i} = sum p - p_i
  const std::vector<double> dz = flow_vector_field(kThree, {0.0, 1.0, 0.0});
  const double sum_p = kThree.p[0] + kThree.p[1] + kThree.p[2];
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(dz[i], sum_p - kThree.p[i], 1e-13);
}

TEST(TraceGradient, SeparatedVariablesAreConjugate) {
  // with sqrt(P(gamma_j)) = D - A the equations of motion need {gamma_i, log Lambda_j} = -delta_ij
  const PhasePoint& x = kThree;
  const double h = 1e-6;
  auto obs = [](const PhasePoint& y) {
    const MonodromyData m = build_monodromy(y);
    const SovCoords sc = sov_coords(m);
    std::vector<double> v = sc.gamma;
    for (double L : sc.Lambda) v.push_back(std::log(std::abs(L)));
    return v;
  };
  std::vector<std::vector<double>> dq(3), dp(3);
  for (std::size_t i = 0; i < 3; ++i) {
    PhasePoint a = x, b = x, c = x, d = x;
    a.q[i] += h;
    b.q[i] -= h;
    c.p[i] += h;
    d.p[i] -= h;
    const auto fa = obs(a), fb = obs(b), fc = obs(c), fd = obs(d);
    for (std::size_t k = 0; k < fa.size(); ++k) {
      dq[i].push_back((fa[k] - fb[k]) / (2 * h));
      dp[i].push_back((fc[k] - fd[k]) / (2 * h));
    }
  }
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      double br = 0.0;
      for (std::size_t i = 0; i < 3; ++i) br += dp[i][a] * dq[i][2 + b] - dq[i][a] * dp[i][2 + b];
      EXPECT_NEAR(br, a == b ? -1.0 : 0.0, 1e-6) << a << "," << b;
    }
}

TEST(Flow, ClosedOrbitReturnTimeIsThePeriod) {
  const double T = gamma_period(kTwo);
  // orbit closes in (p, q) since sum p = 0
  const PhasePoint back = evolve_flow(kTwo, 1, T);
  EXPECT_LT(max_abs_diff(back, kTwo), 1e-6);
  const double g0 = sov_coords(build_monodromy(kTwo)).gamma[0];
  auto f = [&](double tau) { return sov_coords(build_monodromy(evolve_flow(kTwo, 1, tau))).gamma[0] - g0; };
  const double root = bracketed_root(f, 0.97 * T, 1.03 * T);
  EXPECT_NEAR(root, T, 1e-6);
}

TEST(Flow, ConservesEveryCoefficient) {
  for (const PhasePoint* x : {&kTwo, &kThree, &kFour}) {
    for (int l = 0; l < x->n(); ++l) {
      const Trajectory tr = hamiltonian_flow(*x, l, 6.0, 60);
      EXPECT_LT(conservation_error(tr), 1e-9) << "n=" << x->n() << " flow " << l;
    }
  }
}

TEST(Flow, TighterToleranceAgrees) {
  const PhasePoint a = evolve_flow(kThree, 1, 3.0, {1e-11, 1e-11});
  const PhasePoint b = evolve_flow(kThree, 1, 3.0, {1e-13, 1e-13});
  EXPECT_LT(max_abs_diff(a, b), 1e-8);
}

TEST(Flow, FlowsCommute) {
  for (const PhasePoint* x : {&kThree, &kFour}) {
    const int n = x->n();
    for (int l = 1; l < n; ++l)
      for (int m = l + 1; m < n; ++m) {
        const PhasePoint lm = evolve_flow(evolve_flow(*x, l, 0.7), m, -0.9);
        const PhasePoint ml = evolve_flow(evolve_flow(*x, m, -0.9), l, 0.7);
        EXPECT_LT(max_abs_diff(lm, ml), 1e-7) << "n=" << n << " l=" << l << " m=" << m;
      }
  }
}

TEST(Flow, GammasStayInTheirZones) {
  const SpectralData s = spectral_of(kThree);
  const Trajectory tr = hamiltonian_flow(kThree, 2, 8.0, 80);
  for (const auto& sc : tr.sov)
    for (int j = 1; j <= s.genus; ++j) {
      EXPECT_GE(sc.gamma[static_cast<std::size_t>(j - 1)], s.zone_lo(j) - 1e-9);
      EXPECT_LE(sc.gamma[static_cast<std::size_t>(j - 1)], s.zone_hi(j) + 1e-9);
    }
}

TEST(Em, SignedRootSquaresToP) {
  const MonodromyData m = build_monodromy(kFour);
  const SovCoords sc = sov_coords(m);
  const RealPoly t = conserved_poly(m);
  const std::vector<double> sp = signed_sqrt_p(m, sc);
  for (std::size_t j = 0; j < sp.size(); ++j) {
    const double P = t(sc.gamma[j]) * t(sc.gamma[j]) - 4.0;
    EXPECT_NEAR(sp[j] * sp[j], P, 1e-11 * std::max(1.0, std::abs(P)));
  }
}

TEST(Em, GenusOneOrbit) {
  const Trajectory tr = hamiltonian_flow(kTwo, 1, gamma_period(kTwo), 24);
  const EmReport r = em_residual(tr);
  EXPECT_LT(r.residual_fine, 1e-5);
  EXPECT_GE(r.order, 1.8);
}

TEST(Em, GenusTwoBothFlows) {
  for (int l = 1; l <= 2; ++l) {
    const Trajectory tr = hamiltonian_flow(kThree, l, 4.0, 16);
    const EmReport r = em_residual(tr);
    EXPECT_LT(r.residual_fine, 1e-5) << "flow " << l;
    EXPECT_GE(r.order, 1.8) << "flow " << l;
  }
}

TEST(Em, FirstFlowLeavesGammasFixedUpToTranslation) {
  // t_1 = -sum p generates a common shift of q, which only rescales B
  const Trajectory tr = hamiltonian_flow(kThree, 0, 2.0, 4);
  for (const auto& sc : tr.sov)
    for (std::size_t j = 0; j < sc.gamma.size(); ++j) EXPECT_NEAR(sc.gamma[j], tr.sov[0].gamma[j], 1e-9);
}

TEST(Abel, GenusOneLinear) {
  const SpectralData s = spectral_of(kTwo);
  const PeriodData pd = period_matrix(s);
  const Trajectory tr = hamiltonian_flow(kTwo, 1, 2.0 * pd.raw(0, 0), 80);
  const AbelReport r = abel_linearization(tr, s, pd);
  EXPECT_LT(r.drift, 1e-5);
  EXPECT_LT(r.slope_error, 1e-6);
}

TEST(Abel, GenusTwoEveryFlow) {
  const SpectralData s = spectral_of(kThree);
  const PeriodData pd = period_matrix(s);
  for (int l = 0; l <= 2; ++l) {
    const Trajectory tr = hamiltonian_flow(kThree, l, 5.0, 100);
    EXPECT_LT(abel_linearization(tr, s, pd).drift, 1e-5) << "flow " << l;
  }
}

TEST(Abel, GenusThree) {
  const SpectralData s = spectral_of(kFour);
  const PeriodData pd = period_matrix(s);
  const Trajectory tr = hamiltonian_flow(kFour, 2, 4.0, 60);
  EXPECT_LT(abel_linearization(tr, s, pd).drift, 1e-5);
}

TEST(Abel, ZeroDurationHasNoDrift) {
  const SpectralData s = spectral_of(kThree);
  const PeriodData pd = period_matrix(s);
  const Trajectory tr = hamiltonian_flow(kThree, 1, 0.0, 3);
  const AbelReport r = abel_linearization(tr, s, pd);
  EXPECT_EQ(r.drift, 0.0);
}

TEST(Fourier, UnitNormalization) {
  const SpectralData s = spectral_of(kThree);
  const PeriodData pd = period_matrix(s);
  const auto c = fourier_coefficient(s, pd, [](const std::vector<double>&) { return 1.0; }, {0, 0});
  EXPECT_NEAR(c.real(), 1.0, 1e-14);
  EXPECT_NEAR(c.imag(), 0.0, 1e-14);
}

TEST(Fourier, GenusOneAverageIsTimeAverage) {
  const SpectralData s = spectral_of(kTwo);
  const PeriodData pd = period_matrix(s);
  const int samples = 64;
  const Trajectory tr = hamiltonian_flow(kTwo, 1, pd.raw(0, 0), samples);
  double avg = 0.0;
  for (int i = 0; i < samples; ++i) avg += tr.sov[static_cast<std::size_t>(i)].gamma[0];
  avg /= samples;
  const auto c = fourier_coefficient(s, pd, [](const std::vector<double>& g) { return g[0]; }, {0});
  EXPECT_NEAR(c.real(), avg, 1e-5);
  EXPECT_NEAR(c.imag(), 0.0, 1e-12);
}

TEST(Fourier, GenusOneResummationReproducesGamma) {
  const SpectralData s = spectral_of(kTwo);
  const PeriodData pd = period_matrix(s);
  std::vector<std::complex<double>> c;
  for (int k = -6; k <= 6; ++k)
    c.push_back(fourier_coefficient(s, pd, [](const std::vector<double>& g) { return g[0]; }, {k}));
  const Trajectory tr = hamiltonian_flow(kTwo, 1, pd.raw(0, 0), 20);
  for (std::size_t i = 0; i < tr.points.size(); ++i) {
    const double theta = abel_angles(s, pd, tr.points[i])[0];
    std::complex<double> sum = 0.0;
    for (int k = -6; k <= 6; ++k) sum += c[static_cast<std::size_t>(k + 6)] * std::polar(1.0, -k * theta);
    EXPECT_NEAR(sum.real(), tr.sov[i].gamma[0], 1e-4);
    EXPECT_NEAR(sum.imag(), 0.0, 1e-4);
  }
}

TEST(Fourier, RandomObservablesMatchTorusAverages) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (const PhasePoint* x : {&kTwo, &kThree}) {
    const SpectralData s = spectral_of(*x);
    const PeriodData pd = period_matrix(s);
    const std::vector<int> zero(static_cast<std::size_t>(s.genus), 0);
    for (int trial = 0; trial < 5; ++trial) {
      // a random symmetric polynomial of degree <= 2 in the elementary symmetric functions
      const double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
      const SymmetricFunction f = [=](const std::vector<double>& g) {
        double e1 = 0.0, e2 = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
          e1 += g[i];
          for (std::size_t j = i + 1; j < g.size(); ++j) e2 += g[i] * g[j];
        }
        return std::complex<double>(a + b * e1 + c * e1 * e1 + d * e2);
      };
      const auto expected = torus_average(*x, s, pd, f, s.genus == 1 ? 48 : 20);
      const auto got = fourier_coefficient(s, pd, f, zero);
      EXPECT_NEAR(got.real(), expected.real(), 1e-5) << "genus " << s.genus << " trial " << trial;
      EXPECT_NEAR(got.imag(), 0.0, 1e-10);
    }
  }
}

TEST(Pde, WeierstrassPowers) {
  const Trajectory tr = hamiltonian_flow(kTwo, 1, gamma_period(kTwo), 6);
  for (int p = 0; p <= 2; ++p) {
    PdeInput in;
    in.kind = PdeKind::WEI;
    in.p = p;
    const PdeResidualReport r = pde_residual(tr.points, in, 0.01);
    EXPECT_LT(r.residual, 1e-4) << "p=" << p;
    EXPECT_GE(r.order, 1.8) << "p=" << p;
  }
}

TEST(Pde, ExfoGenusTwo) {
  const Trajectory tr = hamiltonian_flow(kThree, 1, 3.0, 3);
  PdeInput in;
  in.kind = PdeKind::EXFO;
  in.L = RealPoly({0.5, -1.0, 2.0});
  in.G = [](const std::vector<double>& g) { return 1.0 + g[0] * g[0]; };
  const PdeResidualReport r = pde_residual(tr.points, in, 0.01);
  EXPECT_LT(r.residual, 1e-4);
  EXPECT_GE(r.order, 1.8);
}

TEST(Pde, QGenusTwo) {
  const Trajectory tr = hamiltonian_flow(kThree, 2, 3.0, 3);
  PdeInput in;
  in.kind = PdeKind::Q;
  EXPECT_LT(pde_residual(tr.points, in, 0.02).residual, 1e-4);
  in.G = [](const std::vector<double>& g) { return g[0] * g[0]; };
  const PdeResidualReport r = pde_residual(tr.points, in, 0.02);
  EXPECT_LT(r.residual, 1e-4);
  EXPECT_GE(r.order, 1.8);
}

TEST(Pde, CGenusThree) {
  const Trajectory tr = hamiltonian_flow(kFour, 1, 2.0, 2);
  PdeInput in;
  in.kind = PdeKind::C;
  const PdeResidualReport r = pde_residual(tr.points, in, 0.02);
  EXPECT_LT(r.residual, 1e-4);
  EXPECT_GE(r.order, 1.8);
}

TEST(Flow, StepFailureOnBlowUp) {
  const PhasePoint wild{{0.0, 0.0}, {0.0, 40.0}};
  EXPECT_THROW(evolve_flow(wild, 1, 50.0), StepFailure);
}
